#include "dfadec/io.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <sstream>
#include <tuple>

using nlohmann::json;

namespace dfadec {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw std::invalid_argument(path + ": " + what);
}

int require_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

}  // namespace

Dfa dfa_from_json(const json& j) {
  if (!j.is_object()) fail("$", "expected a JSON object");
  for (const char* key : {"alphabet", "initial", "accepting", "transitions"}) {
    if (!j.contains(key)) fail(key, "missing field");
  }

  Dfa a;
  const json& alpha = j["alphabet"];
  if (!alpha.is_array() || alpha.empty()) fail("alphabet", "expected a non-empty array");
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (!alpha[i].is_string())
      fail("alphabet[" + std::to_string(i) + "]", "expected a string");
    a.alphabet.push_back(alpha[i].get<std::string>());
  }

  const json& trans = j["transitions"];
  if (!trans.is_array() || trans.empty())
    fail("transitions", "expected a non-empty array (one row per state)");
  int n = static_cast<int>(trans.size());
  for (int q = 0; q < n; ++q) {
    const json& row = trans[q];
    std::string rpath = "transitions[" + std::to_string(q) + "]";
    if (!row.is_array() || row.size() != a.alphabet.size())
      fail(rpath, "expected one target per letter");
    a.transitions.emplace_back();
    for (std::size_t l = 0; l < row.size(); ++l) {
      int t = require_int(row[l], rpath + "[" + std::to_string(l) + "]");
      if (t < 0 || t >= n) fail(rpath + "[" + std::to_string(l) + "]", "state index out of range");
      a.transitions.back().push_back(t);
    }
  }

  int init = require_int(j["initial"], "initial");
  if (init < 0 || init >= n) fail("initial", "state index out of range");
  a.initial = init;

  a.accepting.assign(n, false);
  const json& acc = j["accepting"];
  if (!acc.is_array()) fail("accepting", "expected an array of state indices");
  for (std::size_t i = 0; i < acc.size(); ++i) {
    int q = require_int(acc[i], "accepting[" + std::to_string(i) + "]");
    if (q < 0 || q >= n) fail("accepting[" + std::to_string(i) + "]", "state index out of range");
    a.accepting[q] = true;
  }

  a.validate();
  return a;
}

Dfa parse_dfa(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  return dfa_from_json(j);
}

json dfa_to_json(const Dfa& a) {
  json j;
  j["alphabet"] = a.alphabet;
  j["initial"] = a.initial;
  json acc = json::array();
  for (int q = 0; q < a.size(); ++q) {
    if (a.accepting[q]) acc.push_back(q);
  }
  j["accepting"] = std::move(acc);
  j["transitions"] = a.transitions;
  return j;
}

std::string serialize_dfa(const Dfa& a) {
  // Fixed key order so identical automata serialize to identical bytes.
  std::ostringstream out;
  json j = dfa_to_json(a);
  out << "{\"alphabet\":" << j["alphabet"].dump()
      << ",\"initial\":" << j["initial"].dump()
      << ",\"accepting\":" << j["accepting"].dump()
      << ",\"transitions\":" << j["transitions"].dump() << "}\n";
  return out.str();
}

std::string to_dot(const Dfa& a) {
  std::ostringstream out;
  out << "digraph dfa {\n";
  out << "  rankdir=LR;\n";
  out << "  // alphabet: ";
  for (int l = 0; l < a.letters(); ++l) {
    if (l) out << ",";
    out << a.alphabet[l];
  }
  out << "\n";
  out << "  __init [shape=point];\n";
  for (int q = 0; q < a.size(); ++q)
    out << "  q" << q << " [shape=" << (a.accepting[q] ? "doublecircle" : "circle") << "];\n";
  out << "  __init -> q" << a.initial << ";\n";
  for (int q = 0; q < a.size(); ++q) {
    // One edge per target, letters merged into the label.
    std::map<State, std::string> edges;
    for (int l = 0; l < a.letters(); ++l) {
      std::string& label = edges[a.step(q, l)];
      if (!label.empty()) label += ",";
      label += a.alphabet[l];
    }
    for (const auto& [t, label] : edges)
      out << "  q" << q << " -> q" << t << " [label=\"" << label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Dfa parse_dot(const std::string& text) {
  static const std::regex alpha_re(R"(^\s*//\s*alphabet:\s*(.*?)\s*$)");
  static const std::regex node_re(R"(^\s*q(\d+)\s*\[shape=(doublecircle|circle)\];\s*$)");
  static const std::regex init_re(R"(^\s*__init\s*->\s*q(\d+);\s*$)");
  static const std::regex edge_re(R"re(^\s*q(\d+)\s*->\s*q(\d+)\s*\[label="([^"]*)"\];\s*$)re");

  std::vector<std::string> alphabet;
  std::map<int, bool> nodes;
  int initial = -1;
  std::vector<std::tuple<int, int, std::string>> edges;

  std::istringstream in(text);
  std::string line;
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, alpha_re)) {
      std::istringstream letters(m[1].str());
      std::string letter;
      while (std::getline(letters, letter, ',')) alphabet.push_back(letter);
    } else if (std::regex_match(line, m, node_re)) {
      nodes[std::stoi(m[1])] = m[2] == "doublecircle";
    } else if (std::regex_match(line, m, init_re)) {
      initial = std::stoi(m[1]);
    } else if (std::regex_match(line, m, edge_re)) {
      edges.emplace_back(std::stoi(m[1]), std::stoi(m[2]), m[3]);
    }
  }

  if (alphabet.empty()) fail("dot", "missing '// alphabet:' comment");
  if (nodes.empty()) fail("dot", "no state nodes found");
  if (initial < 0) fail("dot", "no initial-state arrow found");

  Dfa a;
  a.alphabet = alphabet;
  int n = static_cast<int>(nodes.size());
  a.transitions.assign(n, std::vector<State>(alphabet.size(), -1));
  a.accepting.assign(n, false);
  for (const auto& [q, acc] : nodes) {
    if (q < 0 || q >= n) fail("dot", "state nodes must be numbered 0..n-1");
    a.accepting[q] = acc;
  }
  a.initial = initial;
  auto letter_index = [&](const std::string& name) {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) fail("dot", "edge label '" + name + "' not in alphabet");
    return static_cast<int>(it - alphabet.begin());
  };
  for (const auto& [src, dst, label] : edges) {
    std::istringstream labels(label);
    std::string name;
    while (std::getline(labels, name, ',')) {
      if (src < 0 || src >= n || dst < 0 || dst >= n) fail("dot", "edge state out of range");
      a.transitions[src][letter_index(name)] = dst;
    }
  }
  for (int q = 0; q < n; ++q) {
    for (std::size_t l = 0; l < alphabet.size(); ++l) {
      if (a.transitions[q][l] < 0)
        fail("dot", "state q" + std::to_string(q) + " has no edge for letter '" +
                        alphabet[l] + "'");
    }
  }
  a.validate();
  return a;
}

}  // namespace dfadec
