#include "wne/wne.h"

#include "gadgets.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "realize.hpp"
#include "verify.hpp"

#include <cstring>
#include <new>
#include <string>

using namespace wne;

struct wne_engine {
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(::operator new(s.size() + 1, std::nothrow));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int fail(wne_engine* eng, int code, const std::string& msg) {
    if (eng) eng->last_error = msg;
    return code;
}

template <class Fn>
int guarded(wne_engine* eng, Fn&& fn) {
    if (!eng) return WNE_ERR_USAGE;
    try {
        eng->last_error.clear();
        return fn();
    } catch (const parse_error& e) {
        return fail(eng, WNE_ERR_SYNTAX, e.what());
    } catch (const validation_error& e) {
        return fail(eng, WNE_ERR_VALIDATION, e.what());
    } catch (const cap_error& e) {
        return fail(eng, WNE_ERR_CAP, e.what());
    } catch (const error& e) {
        return fail(eng, WNE_ERR_USAGE, e.what());
    } catch (const std::exception& e) {
        return fail(eng, WNE_ERR_INTERNAL, e.what());
    }
}

uint64_t effective_cap(int64_t cap_rows) {
    return cap_rows > 0 ? static_cast<uint64_t>(cap_rows) : default_row_cap;
}

int emit(char** slot, const std::string& text) {
    if (!slot) return WNE_OK;
    *slot = dup_string(text);
    return *slot ? WNE_OK : WNE_ERR_INTERNAL;
}

// Coalition strings may name agents beyond what the system has; parse with
// the system's agent count so the message points at the real problem.
struct loaded_system {
    explicit_system sys;          // explicit form used by the engines
    bool from_circuit = false;
};

loaded_system load_system(const std::string& text, uint64_t cap) {
    const std::string kind = io::document_kind(text);
    if (kind == "emas") return {io::parse_emas(text), false};
    if (kind == "cmas") return {unfold_reachable(io::parse_cmas(text), cap), true};
    throw error("expected an emas or cmas document, got '" + kind + "'");
}

} // namespace

wne_engine* wne_engine_new(void) { return new (std::nothrow) wne_engine; }

void wne_engine_free(wne_engine* eng) { delete eng; }

const char* wne_last_error(const wne_engine* eng) {
    return eng ? eng->last_error.c_str() : "no engine";
}

const char* wne_version(void) { return "1.0.0"; }

void wne_string_free(char* s) { ::operator delete(s); }

void wne_string_array_free(char** strings, size_t count) {
    if (!strings) return;
    for (size_t i = 0; i < count; ++i) wne_string_free(strings[i]);
    delete[] strings;
}

int wne_canonicalize(wne_engine* eng, const char* text, char** out_text, char** out_kind) {
    return guarded(eng, [&]() -> int {
        if (!text) throw error("null document text");
        const std::string kind = io::document_kind(text);
        std::string canonical;
        if (kind == "emas") canonical = io::serialize_emas(io::parse_emas(text));
        else if (kind == "cmas") canonical = io::serialize_cmas(io::parse_cmas(text));
        else if (kind == "etrans") canonical = io::serialize_etrans(io::parse_etrans(text));
        else if (kind == "ctrans") canonical = io::serialize_ctrans(io::parse_ctrans(text));
        else if (kind == "game") canonical = io::serialize_game(io::parse_game(text));
        else if (kind == "dtm") canonical = io::serialize_dtm(io::parse_dtm(text));
        else if (kind == "atm") canonical = io::serialize_atm(io::parse_atm(text));
        else if (kind == "verdict" || kind == "report")
            canonical = io::serialize_keyvalue(io::parse_keyvalue(text));
        else throw error("unknown document kind '" + kind + "'");
        if (const int rc = emit(out_text, canonical); rc != WNE_OK) return rc;
        return emit(out_kind, kind);
    });
}

int wne_validate(wne_engine* eng, const char* text, int* out_valid, char** out_verdict) {
    return guarded(eng, [&]() -> int {
        if (!text) throw error("null document text");
        std::vector<issue> issues;
        try {
            const std::string kind = io::document_kind(text);
            if (kind == "emas") io::parse_emas(text);
            else if (kind == "cmas") io::parse_cmas(text);
            else if (kind == "etrans") io::parse_etrans(text);
            else if (kind == "ctrans") io::parse_ctrans(text);
            else if (kind == "game") io::parse_game(text);
            else if (kind == "dtm") io::parse_dtm(text);
            else if (kind == "atm") io::parse_atm(text);
            else if (kind == "verdict" || kind == "report") io::parse_keyvalue(text);
            else throw error("unknown document kind '" + kind + "'");
        } catch (const validation_error& e) {
            issues = e.issues; // syntax errors propagate and fail the call
        }
        if (out_valid) *out_valid = issues.empty() ? 1 : 0;
        return emit(out_verdict, io::serialize_keyvalue(io::make_validate_verdict(issues)));
    });
}

int wne_unfold(wne_engine* eng, const char* cmas_text, int64_t cap_rows, char** out_emas) {
    return guarded(eng, [&]() -> int {
        if (!cmas_text) throw error("null document text");
        const circuit_system cs = io::parse_cmas(cmas_text);
        return emit(out_emas, io::serialize_emas(unfold(cs, effective_cap(cap_rows))));
    });
}

int wne_solve_game(wne_engine* eng, const char* game_text, int* out_agent0_wins,
                   char** out_verdict) {
    return guarded(eng, [&]() -> int {
        if (!game_text) throw error("null document text");
        const reachability_game g = io::parse_game(game_text);
        const win_partition wp = solve(g);
        if (out_agent0_wins) *out_agent0_wins = g.init ? (wp.winner[*g.init] == 0 ? 1 : 0) : -1;
        return emit(out_verdict, io::serialize_keyvalue(io::make_game_verdict(g, wp)));
    });
}

int wne_realize(wne_engine* eng, const char* system_text, const char* coalition,
                int64_t cap_rows, int with_certificate, int* out_answer, char** out_verdict) {
    return guarded(eng, [&]() -> int {
        if (!system_text || !coalition) throw error("null argument");
        const loaded_system loaded = load_system(system_text, effective_cap(cap_rows));
        const agent_set w = io::parse_coalition(coalition, loaded.sys.agent_count());
        const realizability_verdict v = realize_explicit(loaded.sys, w);
        if (out_answer) *out_answer = v.yes ? 1 : 0;
        return emit(out_verdict, io::serialize_keyvalue(io::make_realize_verdict(
                                     loaded.sys, w, v, with_certificate != 0)));
    });
}

int wne_verify(wne_engine* eng, const char* system_text, const char* const* profile_texts,
               size_t profile_count, const char* coalition, int* out_answer,
               char** out_verdict) {
    return guarded(eng, [&]() -> int {
        if (!system_text || !coalition || (!profile_texts && profile_count > 0))
            throw error("null argument");
        const std::string kind = io::document_kind(system_text);
        verify_verdict v;
        agent_set w = 0;
        size_t agents = 0;
        if (kind == "emas") {
            const explicit_system sys = io::parse_emas(system_text);
            agents = sys.agent_count();
            w = io::parse_coalition(coalition, agents);
            explicit_profile prof;
            for (size_t i = 0; i < profile_count; ++i) {
                if (io::document_kind(profile_texts[i]) != "etrans")
                    throw error("RepresentationMismatch: emas systems take etrans profiles");
                prof.strategies.push_back(io::parse_etrans(profile_texts[i]));
            }
            v = verify(sys, prof, w);
        } else if (kind == "cmas") {
            const circuit_system sys = io::parse_cmas(system_text);
            agents = sys.agent_count();
            w = io::parse_coalition(coalition, agents);
            circuit_profile prof;
            for (size_t i = 0; i < profile_count; ++i) {
                if (io::document_kind(profile_texts[i]) != "ctrans")
                    throw error("RepresentationMismatch: cmas systems take ctrans profiles");
                prof.strategies.push_back(io::parse_ctrans(profile_texts[i]));
            }
            v = verify(sys, prof, w);
        } else {
            throw error("expected an emas or cmas document, got '" + kind + "'");
        }
        if (out_answer) *out_answer = v.is_wne ? 1 : 0;
        return emit(out_verdict, io::serialize_keyvalue(io::make_verify_verdict(w, agents, v)));
    });
}

int wne_gen_a3(wne_engine* eng, const char* game_text, char** out_emas) {
    return guarded(eng, [&]() -> int {
        if (!game_text) throw error("null document text");
        const reachability_game g = io::parse_game(game_text);
        return emit(out_emas, io::serialize_emas(game_to_system(g)));
    });
}

int wne_gen_a4(wne_engine* eng, const char* atm_text, uint32_t n, char** out_cmas) {
    return guarded(eng, [&]() -> int {
        if (!atm_text) throw error("null document text");
        const alt_tm m = io::parse_atm(atm_text);
        return emit(out_cmas, io::serialize_cmas(atm_to_circuit_system(m, n)));
    });
}

int wne_gen_a6(wne_engine* eng, const char* dtm_text, uint32_t n, char** out_emas,
               char*** out_etrans, size_t* out_count) {
    return guarded(eng, [&]() -> int {
        if (!dtm_text) throw error("null document text");
        const det_tm m = io::parse_dtm(dtm_text);
        const turnbased_gadget gadget = dtm_to_turnbased(m, n);
        if (const int rc = emit(out_emas, io::serialize_emas(gadget.sys)); rc != WNE_OK)
            return rc;
        if (out_etrans && out_count) {
            const size_t k = gadget.profile.strategies.size();
            char** arr = new (std::nothrow) char*[k]();
            if (!arr) return WNE_ERR_INTERNAL;
            for (size_t i = 0; i < k; ++i) {
                arr[i] = dup_string(io::serialize_etrans(gadget.profile.strategies[i]));
                if (!arr[i]) {
                    wne_string_array_free(arr, i);
                    return WNE_ERR_INTERNAL;
                }
            }
            *out_etrans = arr;
            *out_count = k;
        }
        return WNE_OK;
    });
}

int wne_gen_a7(wne_engine* eng, const char* dtm_text, uint32_t n, char** out_cmas,
               char** out_ctrans) {
    return guarded(eng, [&]() -> int {
        if (!dtm_text) throw error("null document text");
        const det_tm m = io::parse_dtm(dtm_text);
        const one_agent_gadget gadget = dtm_to_one_agent_circuit(m, n);
        if (const int rc = emit(out_cmas, io::serialize_cmas(gadget.sys)); rc != WNE_OK)
            return rc;
        return emit(out_ctrans, io::serialize_ctrans(gadget.profile.strategies[0]));
    });
}

int wne_oracle(wne_engine* eng, uint64_t seed, uint32_t count, int* out_passed,
               char** out_report) {
    return guarded(eng, [&]() -> int {
        const suite_report report = consistency_suite(seed, count);
        if (out_passed) *out_passed = report.passed() ? 1 : 0;
        return emit(out_report, io::serialize_keyvalue(io::make_report(report)));
    });
}
