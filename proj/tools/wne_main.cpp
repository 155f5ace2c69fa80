// Command-line front end for libwne. Talks to the engine exclusively
// through the public C API.
//
// Exit codes: 0 = decision YES / property holds, 1 = decision NO / property
// fails, 2 = usage or input error.

#include <wne/wne.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int exit_yes = 0;
constexpr int exit_no = 1;
constexpr int exit_bad_input = 2;

struct engine_handle {
    wne_engine* eng = wne_engine_new();
    ~engine_handle() { wne_engine_free(eng); }
};

struct owned_string {
    char* ptr = nullptr;
    ~owned_string() { wne_string_free(ptr); }
    [[nodiscard]] std::string str() const { return ptr ? ptr : ""; }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int report_failure(const engine_handle& h) {
    std::cerr << "error: " << wne_last_error(h.eng) << "\n";
    return exit_bad_input;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"W-NE realizability and verification toolkit"};
    app.require_subcommand(1);

    std::string file, coalition = "none", out_prefix;
    std::vector<std::string> profile_files;
    std::string gen_kind, gen_input;
    int64_t cap = 0;
    uint32_t tape_cells = 1;
    uint64_t seed = 0;
    uint32_t count = 0;
    bool with_certificate = false;

    CLI::App* validate = app.add_subcommand("validate", "check a document's invariants");
    validate->add_option("file", file)->required();

    CLI::App* unfold = app.add_subcommand("unfold", "expand a cmas document into emas form");
    unfold->add_option("file", file)->required();
    unfold->add_option("--cap", cap, "table row cap (default 2^24)");

    CLI::App* solve = app.add_subcommand("solve-game", "partition a reachability game");
    solve->add_option("file", file)->required();

    CLI::App* realize = app.add_subcommand("realize", "decide W-NE realizability");
    realize->add_option("file", file)->required();
    realize->add_option("--coalition", coalition, "'none' or indices like 0,2")->required();
    realize->add_flag("--witness", with_certificate, "include certificate receipts");
    realize->add_option("--cap", cap, "row cap for circuit systems");

    CLI::App* verify = app.add_subcommand("verify", "check a strategy profile for W-NE");
    verify->add_option("file", file)->required();
    verify->add_option("--profile", profile_files, "one transducer document per agent")
        ->required()
        ->expected(-1);
    verify->add_option("--coalition", coalition)->required();

    CLI::App* gen = app.add_subcommand("gen", "produce a gadget instance");
    gen->add_option("kind", gen_kind, "a3|a4|a6|a7")->required();
    gen->add_option("input", gen_input, "game (a3), atm (a4) or dtm (a6, a7) document")
        ->required();
    gen->add_option("n", tape_cells, "tape cells for a4, a6, a7");
    gen->add_option("--out", out_prefix, "output path prefix (required for a6, a7)");

    CLI::App* oracle = app.add_subcommand("oracle", "run the brute-force consistency suite");
    oracle->add_option("--seed", seed)->required();
    oracle->add_option("--count", count)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_bad_input; // usage problems exit with 2
    }

    engine_handle h;
    if (!h.eng) {
        std::cerr << "error: engine allocation failed\n";
        return exit_bad_input;
    }

    try {
        if (*validate) {
            int valid = 0;
            owned_string verdict;
            if (wne_validate(h.eng, read_file(file).c_str(), &valid, &verdict.ptr) != WNE_OK)
                return report_failure(h);
            std::cout << verdict.str();
            return valid ? exit_yes : exit_no;
        }
        if (*unfold) {
            owned_string emas;
            if (wne_unfold(h.eng, read_file(file).c_str(), cap, &emas.ptr) != WNE_OK)
                return report_failure(h);
            std::cout << emas.str();
            return exit_yes;
        }
        if (*solve) {
            int agent0_wins = -1;
            owned_string verdict;
            if (wne_solve_game(h.eng, read_file(file).c_str(), &agent0_wins, &verdict.ptr) !=
                WNE_OK)
                return report_failure(h);
            std::cout << verdict.str();
            return agent0_wins == 0 ? exit_no : exit_yes;
        }
        if (*realize) {
            int answer = 0;
            owned_string verdict;
            if (wne_realize(h.eng, read_file(file).c_str(), coalition.c_str(), cap,
                            with_certificate ? 1 : 0, &answer, &verdict.ptr) != WNE_OK)
                return report_failure(h);
            std::cout << verdict.str();
            return answer ? exit_yes : exit_no;
        }
        if (*verify) {
            std::vector<std::string> texts;
            std::vector<const char*> ptrs;
            for (const std::string& p : profile_files) texts.push_back(read_file(p));
            for (const std::string& t : texts) ptrs.push_back(t.c_str());
            int answer = 0;
            owned_string verdict;
            if (wne_verify(h.eng, read_file(file).c_str(), ptrs.data(), ptrs.size(),
                           coalition.c_str(), &answer, &verdict.ptr) != WNE_OK)
                return report_failure(h);
            std::cout << verdict.str();
            return answer ? exit_yes : exit_no;
        }
        if (*gen) {
            const std::string input = read_file(gen_input);
            if (gen_kind == "a3") {
                owned_string emas;
                if (wne_gen_a3(h.eng, input.c_str(), &emas.ptr) != WNE_OK)
                    return report_failure(h);
                std::cout << emas.str();
                return exit_yes;
            }
            if (gen_kind == "a4") {
                owned_string cmas;
                if (wne_gen_a4(h.eng, input.c_str(), tape_cells, &cmas.ptr) != WNE_OK)
                    return report_failure(h);
                std::cout << cmas.str();
                return exit_yes;
            }
            if (gen_kind == "a6") {
                if (out_prefix.empty()) {
                    std::cerr << "error: gen a6 needs --out PREFIX\n";
                    return exit_bad_input;
                }
                owned_string emas;
                char** trans = nullptr;
                size_t tcount = 0;
                if (wne_gen_a6(h.eng, input.c_str(), tape_cells, &emas.ptr, &trans, &tcount) !=
                    WNE_OK)
                    return report_failure(h);
                write_file(out_prefix + ".emas", emas.str());
                std::cout << "wrote: " << out_prefix << ".emas\n";
                for (size_t i = 0; i < tcount; ++i) {
                    const std::string path = out_prefix + "." + std::to_string(i) + ".etrans";
                    write_file(path, trans[i]);
                    std::cout << "wrote: " << path << "\n";
                }
                wne_string_array_free(trans, tcount);
                return exit_yes;
            }
            if (gen_kind == "a7") {
                if (out_prefix.empty()) {
                    std::cerr << "error: gen a7 needs --out PREFIX\n";
                    return exit_bad_input;
                }
                owned_string cmas, ctrans;
                if (wne_gen_a7(h.eng, input.c_str(), tape_cells, &cmas.ptr, &ctrans.ptr) !=
                    WNE_OK)
                    return report_failure(h);
                write_file(out_prefix + ".cmas", cmas.str());
                write_file(out_prefix + ".0.ctrans", ctrans.str());
                std::cout << "wrote: " << out_prefix << ".cmas\n";
                std::cout << "wrote: " << out_prefix << ".0.ctrans\n";
                return exit_yes;
            }
            std::cerr << "error: unknown gadget '" << gen_kind << "'\n";
            return exit_bad_input;
        }
        if (*oracle) {
            int passed = 0;
            owned_string report;
            if (wne_oracle(h.eng, seed, count, &passed, &report.ptr) != WNE_OK)
                return report_failure(h);
            std::cout << report.str();
            return passed ? exit_yes : exit_no;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_bad_input;
    }
    return exit_bad_input;
}
