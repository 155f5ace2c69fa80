#pragma once

#include "game.hpp"
#include "oracle.hpp"
#include "realize.hpp"
#include "system.hpp"
#include "tm.hpp"
#include "transducer.hpp"
#include "verify.hpp"

#include <string>
#include <utility>
#include <vector>

namespace wne::io {

// Every document is line oriented and starts with "<kind> v1". Parsing a
// canonical document and serializing it again reproduces the text exactly.

std::string document_kind(const std::string& text);

explicit_system parse_emas(const std::string& text);
std::string serialize_emas(const explicit_system& sys);

circuit_system parse_cmas(const std::string& text);
std::string serialize_cmas(const circuit_system& cs);

explicit_transducer parse_etrans(const std::string& text);
std::string serialize_etrans(const explicit_transducer& tr);

circuit_transducer parse_ctrans(const std::string& text);
std::string serialize_ctrans(const circuit_transducer& ct);

reachability_game parse_game(const std::string& text);
std::string serialize_game(const reachability_game& g);

det_tm parse_dtm(const std::string& text);
std::string serialize_dtm(const det_tm& m);

alt_tm parse_atm(const std::string& text);
std::string serialize_atm(const alt_tm& m);

// Verdict and report documents are ordered key/value lines.
struct document {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;

    [[nodiscard]] std::string get(const std::string& key) const;
    void add(std::string key, std::string value) {
        fields.emplace_back(std::move(key), std::move(value));
    }
};

document parse_keyvalue(const std::string& text);
std::string serialize_keyvalue(const document& doc);

// Agent sets are rendered as comma-joined indices, the empty set as "none".
agent_set parse_coalition(const std::string& text, size_t agent_count);
std::string render_coalition(agent_set w, size_t agent_count);

std::string render_decision(const explicit_system& sys, uint64_t d);

document make_validate_verdict(const std::vector<issue>& issues);
document make_game_verdict(const reachability_game& g, const win_partition& wp);
document make_realize_verdict(const explicit_system& sys, agent_set w,
                              const realizability_verdict& v, bool with_certificate);
document make_verify_verdict(agent_set w, size_t agent_count, const verify_verdict& v);
document make_report(const suite_report& r);

} // namespace wne::io
