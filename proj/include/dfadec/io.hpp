#pragma once

#include <string>

#include <json.hpp>

#include "dfadec/dfa.hpp"

namespace dfadec {

// Canonical interchange format:
//   { "alphabet": ["a","b"], "initial": 0, "accepting": [0,3],
//     "transitions": [[1,2],[0,3], ...] }
// where transitions[q][i] is the successor of state q on alphabet[i] and the
// state count is the length of "transitions". Validation errors carry the
// offending field path.
Dfa parse_dfa(const std::string& text);
Dfa dfa_from_json(const nlohmann::json& j);
nlohmann::json dfa_to_json(const Dfa& a);
std::string serialize_dfa(const Dfa& a);

// Graphviz export: one node per state, doublecircle for accepting states,
// labeled edges, initial state marked by an arrow from a point node. The
// alphabet order travels in a comment so the output can be read back.
std::string to_dot(const Dfa& a);

// Reads the exporter's output format only; not a general DOT parser.
Dfa parse_dot(const std::string& text);

}  // namespace dfadec
