#include "cli_app.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dfadec/commutative.hpp"
#include "dfadec/dfa.hpp"
#include "dfadec/generators.hpp"
#include "dfadec/io.hpp"
#include "dfadec/oracle.hpp"
#include "dfadec/orbit.hpp"
#include "dfadec/unary.hpp"

namespace dfadec {

namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << content;
}

ojson class_json(const DfaClass& c) {
  ojson j;
  j["trim"] = c.trim;
  j["permutation"] = c.permutation;
  j["commutative"] = c.commutative;
  j["unary"] = c.unary;
  j["minimal"] = c.minimal;
  return j;
}

ojson input_summary(const Dfa& a, const DfaClass& c) {
  ojson j;
  j["states"] = a.size();
  j["letters"] = a.letters();
  j["class"] = class_json(c);
  return j;
}

ojson words_json(const std::vector<ParikhWord>& words) {
  ojson arr = ojson::array();
  for (const ParikhWord& w : words) arr.push_back(w.counts);
  return arr;
}

struct Report {
  ojson body;
  bool human = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  explicit Report(const std::string& command, bool human_rendering = false)
      : human(human_rendering) {
    body["command"] = command;
  }

  void print(std::ostream& out) {
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    if (human) {
      print_human(out, ms);
      return;
    }
    // Timing stays the last key so reports are byte-stable up to it.
    body["timing_ms"] = ms;
    out << body.dump(2) << "\n";
  }

  void print_human(std::ostream& out, double ms) const {
    out << body["command"].get<std::string>();
    if (body.contains("path")) out << " [" << body["path"].get<std::string>() << "]";
    if (body.contains("input")) {
      const ojson& in = body["input"];
      out << ": " << in["states"] << " states, " << in["letters"] << " letters";
      std::string flags;
      for (const auto& [name, value] : in["class"].items()) {
        if (!value.get<bool>()) continue;
        if (!flags.empty()) flags += ", ";
        flags += name;
      }
      if (!flags.empty()) out << " (" << flags << ")";
    }
    out << "\n";
    if (body.contains("result")) {
      for (const auto& [name, value] : body["result"].items())
        out << "  " << name << ": " << value.dump() << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", ms);
    out << "  time: " << buf << " ms\n";
  }
};

struct CapsFlags {
  OracleCaps caps;
  void attach(CLI::App* cmd) {
    cmd->add_option("--max-states", caps.max_states, "oracle cap: input state count");
    cmd->add_option("--max-letters", caps.max_letters, "oracle cap: input alphabet size");
    cmd->add_option("--max-factor-enum", caps.max_factor_enum, "oracle cap: enumerated candidates");
    cmd->add_option("--max-product-states", caps.max_product_states,
                    "oracle cap: explored joint-product states");
  }
};

// Routing order: unary, then commutative, then permutation, then oracle.
enum class Route { core, unary, commutative, orbit, oracle, unsupported };

Route route_for(const DfaClass& c, bool use_oracle) {
  if (!c.trim) return Route::core;
  if (c.unary) return Route::unary;
  if (c.permutation && c.commutative) return Route::commutative;
  if (c.permutation) return Route::orbit;
  return use_oracle ? Route::oracle : Route::unsupported;
}

const char* route_name(Route r) {
  switch (r) {
    case Route::core: return "core";
    case Route::unary: return "unary";
    case Route::commutative: return "commutative";
    case Route::orbit: return "orbit";
    case Route::oracle: return "oracle";
    case Route::unsupported: return "unsupported";
  }
  return "?";
}

int cmd_classify(const std::string& file, bool human, std::ostream& out) {
  Report report("classify", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass c = classify(a);
  report.body["input"] = input_summary(a, c);
  report.body["result"] = class_json(c);
  report.print(out);
  return 0;
}

int cmd_check(const std::string& file, bool use_oracle, const OracleCaps& caps,
              bool human, std::ostream& out) {
  Report report("check", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass cls = classify(a);
  report.body["input"] = input_summary(a, cls);
  Route route = route_for(cls, use_oracle);
  if (route == Route::unsupported)
    throw std::invalid_argument("general DFAs are only supported with --oracle");

  ojson result;
  switch (route) {
    case Route::core:
      // Non-trim: the reachable restriction is a strictly smaller factor.
      result["composite"] = true;
      result["reason"] = "not-trim";
      break;
    case Route::unary:
      result["composite"] = is_composite_unary(a);
      break;
    case Route::commutative: {
      CompositeVerdict v = is_composite_commutative(a);
      result["composite"] = v.composite;
      result["reason"] = to_string(v.reason);
      if (v.reason == VerdictReason::uncovered_state) result["uncovered_state"] = v.uncovered;
      break;
    }
    case Route::orbit: {
      CompositeVerdict v = is_composite_permutation(a);
      result["composite"] = v.composite;
      result["reason"] = to_string(v.reason);
      if (v.reason == VerdictReason::uncovered_state) result["uncovered_state"] = v.uncovered;
      break;
    }
    case Route::oracle:
      result["composite"] = brute_composite(a, caps);
      break;
    default:
      break;
  }
  report.body["result"] = std::move(result);
  report.body["path"] = route_name(route);
  report.print(out);
  return 0;
}

// Smallest known decomposition for the width/decompose commands; nullopt
// means prime.
std::optional<Decomposition> decompose_for(const Dfa& a, Route route, const OracleCaps& caps,
                                           std::size_t cap) {
  switch (route) {
    case Route::core: {  // not trim
      Decomposition dec = verify_decomposition(a, {minimize(a)}, cap);
      if (!dec.verified) throw std::logic_error("minimal-equivalent factor failed verification");
      return dec;
    }
    case Route::unary: {
      UnaryShape shape = unary_structure(a);
      if (shape.chain_len == 0 && a.rejecting_count() > 0 && a.size() > 1) {
        WidthResult w = width_commutative(a);
        if (w.width == 0) return std::nullopt;
        return decomposition_from_words(a, w.words);
      }
      if (minimize(a).size() < a.size()) {
        Decomposition dec = verify_decomposition(a, {minimize(a)}, cap);
        if (!dec.verified) throw std::logic_error("minimal-equivalent factor failed verification");
        return dec;
      }
      if (a.size() == 1 || !is_k_factor_composite_unary(a, 2)) return std::nullopt;
      OracleCaps unary_caps;
      unary_caps.max_states = a.size();
      unary_caps.max_letters = 1;
      auto witness = brute_k_factor_witness(a, 2, unary_caps);
      if (!witness) throw std::logic_error("unary verdict and oracle witness disagree");
      Decomposition dec = verify_decomposition(a, std::move(*witness), cap);
      if (!dec.verified) throw std::logic_error("unary witness failed verification");
      return dec;
    }
    case Route::commutative: {
      if (a.size() == 1) return std::nullopt;
      if (a.rejecting_count() == 0) {
        Decomposition dec = verify_decomposition(a, {minimize(a)}, cap);
        if (!dec.verified) throw std::logic_error("minimal-equivalent factor failed verification");
        return dec;
      }
      WidthResult w = width_commutative(a);
      if (w.width == 0) return std::nullopt;
      return decomposition_from_words(a, w.words);
    }
    case Route::orbit: {
      CompositeVerdict v = is_composite_permutation(a);
      if (!v.composite) return std::nullopt;
      return extract_orbit_decomposition(a, v);
    }
    case Route::oracle: {
      if (!brute_composite(a, caps)) return std::nullopt;
      auto witness = brute_k_factor_witness(a, a.size(), caps);
      if (!witness) throw std::logic_error("oracle compositeness and witness search disagree");
      Decomposition dec = verify_decomposition(a, std::move(*witness), cap);
      if (!dec.verified) throw std::logic_error("oracle witness failed verification");
      return dec;
    }
    default:
      throw std::invalid_argument("general DFAs are only supported with --oracle");
  }
}

int cmd_decompose(const std::string& file, const std::string& out_dir,
                  const std::string& prefix, bool use_oracle, const OracleCaps& caps,
                  std::size_t cap, bool human, std::ostream& out) {
  Report report("decompose", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass cls = classify(a);
  report.body["input"] = input_summary(a, cls);
  Route route = route_for(cls, use_oracle);
  if (route == Route::unsupported)
    throw std::invalid_argument("general DFAs are only supported with --oracle");

  auto dec = decompose_for(a, route, caps, cap);
  ojson result;
  if (!dec) {
    result["composite"] = false;
  } else {
    result["composite"] = true;
    result["verified"] = dec->verified;
    result["factor_count"] = dec->factors.size();
    ojson files = ojson::array();
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < dec->factors.size(); ++i) {
      fs::path path = fs::path(out_dir) / (prefix + std::to_string(i) + ".json");
      write_file(path.string(), serialize_dfa(dec->factors[i]));
      files.push_back(path.string());
    }
    result["factors"] = std::move(files);
  }
  report.body["result"] = std::move(result);
  report.body["path"] = route_name(route);
  report.print(out);
  return 0;
}

int cmd_width(const std::string& file, bool use_oracle, const OracleCaps& caps,
              bool human, std::ostream& out) {
  Report report("width", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass cls = classify(a);
  report.body["input"] = input_summary(a, cls);
  Route route = route_for(cls, use_oracle);

  ojson result;
  const auto prime = [&result] {
    result["width"] = 0;
    result["prime"] = true;
  };
  switch (route) {
    case Route::core:  // not trim: the trimmed equivalent is a single factor
      result["width"] = 1;
      break;
    case Route::unary: {
      UnaryShape shape = unary_structure(a);
      if (a.size() == 1) {
        prime();
        break;
      }
      if (shape.chain_len == 0) {
        if (a.rejecting_count() == 0) {
          result["width"] = 1;  // language is all words, minimal equivalent suffices
          break;
        }
        WidthResult w = width_commutative(a);
        if (w.width == 0)
          prime();
        else {
          result["width"] = w.width;
          result["words"] = words_json(w.words);
        }
        break;
      }
      if (minimize(a).size() < a.size())
        result["width"] = 1;
      else if (is_k_factor_composite_unary(a, 2))
        result["width"] = 2;
      else
        prime();
      break;
    }
    case Route::commutative: {
      if (a.size() == 1) {
        prime();
        break;
      }
      if (a.rejecting_count() == 0) {
        result["width"] = 1;
        break;
      }
      WidthResult w = width_commutative(a);
      if (w.width == 0)
        prime();
      else {
        result["width"] = w.width;
        result["words"] = words_json(w.words);
      }
      break;
    }
    case Route::oracle: {
      if (!brute_composite(a, caps)) {
        prime();
        break;
      }
      int k = 1;
      while (!brute_k_factor(a, k, caps)) ++k;
      result["width"] = k;
      break;
    }
    case Route::orbit:
      throw std::invalid_argument(
          "width for non-commutative permutation DFAs needs --oracle");
    default:
      throw std::invalid_argument("general DFAs are only supported with --oracle");
  }
  report.body["result"] = std::move(result);
  report.body["path"] = route_name(route);
  report.print(out);
  return 0;
}

int cmd_bounded(const std::string& file, int k, bool use_oracle, const OracleCaps& caps,
                bool human, std::ostream& out) {
  Report report("bounded", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass cls = classify(a);
  report.body["input"] = input_summary(a, cls);
  Route route = route_for(cls, use_oracle);

  bool verdict = false;
  if (k == 0) {
    // Empty-intersection convention: true iff the language is all words.
    Dfa min = minimize(a);
    verdict = min.size() == 1 && min.accepting[0];
    route = Route::core;
  } else {
    switch (route) {
      case Route::core:  // not trim: width is 1
        verdict = true;
        break;
      case Route::unary:
        verdict = is_k_factor_composite_unary(a, k);
        break;
      case Route::commutative:
        verdict = is_k_factor_composite_commutative(a, k);
        break;
      case Route::oracle:
        verdict = brute_k_factor(a, k, caps);
        break;
      case Route::orbit:
        throw std::invalid_argument(
            "bounded decision for non-commutative permutation DFAs needs --oracle");
      default:
        throw std::invalid_argument("general DFAs are only supported with --oracle");
    }
  }
  ojson result;
  result["k"] = k;
  result["k_factor_composite"] = verdict;
  report.body["result"] = std::move(result);
  report.body["path"] = route_name(route);
  report.print(out);
  return 0;
}

int cmd_oracle(const std::string& mode, const std::string& file, int k, int state,
               long long max_total, const OracleCaps& caps, bool human, std::ostream& out) {
  Report report("oracle", human);
  Dfa a = parse_dfa(read_file(file));
  DfaClass cls = classify(a);
  report.body["input"] = input_summary(a, cls);
  ojson result;
  if (mode == "composite") {
    result["composite"] = brute_composite(a, caps);
  } else if (mode == "k-factor") {
    result["k"] = k;
    result["k_factor_composite"] = brute_k_factor(a, k, caps);
  } else if (mode == "width") {
    result["width"] = brute_width(a);
  } else if (mode == "cover-word") {
    if (state < 0 || state >= a.size())
      throw std::invalid_argument("--state: state index out of range");
    long long budget = max_total > 0 ? max_total : a.size();
    auto w = brute_cover_word(a, state, budget);
    result["state"] = state;
    result["max_total"] = budget;
    if (w)
      result["word"] = w->counts;
    else
      result["word"] = nullptr;
  } else {
    throw std::invalid_argument("unknown oracle mode: " + mode);
  }
  report.body["result"] = std::move(result);
  report.body["path"] = "oracle";
  report.print(out);
  return 0;
}

int cmd_generate(const std::string& family, int n, int m, int clients, int letters,
                 std::uint64_t seed, bool perm_flag, bool comm_flag, bool trivial_acc,
                 const std::string& instance_file, const std::string& out_file,
                 const std::string& factors_dir, std::ostream& out, std::ostream& err) {
  Dfa dfa;
  ojson meta;
  std::vector<Dfa> extra_factors;

  if (family == "gridmod") {
    dfa = gen_gridmod(n, m);
  } else if (family == "hitting-set") {
    if (instance_file.empty())
      throw std::invalid_argument("generate hitting-set needs --instance FILE");
    ReductionOutput red = gen_hitting_set(parse_hitting_set(read_file(instance_file)));
    dfa = std::move(red.dfa);
    meta["mu"] = red.mu;
    meta["tau"] = red.tau;
    meta["factor_bound"] = red.factor_bound;
  } else if (family == "requests") {
    RequestsOutput req = gen_requests(clients);
    dfa = std::move(req.monolith);
    extra_factors = std::move(req.factors);
  } else if (family == "random") {
    RandomDfaFlags flags;
    flags.permutation = perm_flag || comm_flag;
    flags.commutative = comm_flag;
    flags.allow_trivial_acceptance = trivial_acc;
    dfa = gen_random(n, letters, seed, flags);
  } else {
    throw std::invalid_argument("unknown family: " + family +
                                " (expected gridmod, hitting-set, requests, random)");
  }

  ojson factor_files = ojson::array();
  if (!factors_dir.empty()) {
    if (extra_factors.empty())
      throw std::invalid_argument("--factors-dir only applies to the requests family");
    fs::create_directories(factors_dir);
    for (std::size_t i = 0; i < extra_factors.size(); ++i) {
      fs::path path = fs::path(factors_dir) / ("factor_" + std::to_string(i) + ".json");
      write_file(path.string(), serialize_dfa(extra_factors[i]));
      factor_files.push_back(path.string());
    }
  }

  if (out_file.empty()) {
    out << serialize_dfa(dfa);
    if (!meta.empty()) err << meta.dump() << "\n";
  } else {
    write_file(out_file, serialize_dfa(dfa));
    Report report("generate");
    report.body["family"] = family;
    report.body["states"] = dfa.size();
    report.body["letters"] = dfa.letters();
    if (!meta.empty()) report.body["meta"] = meta;
    if (!factor_files.empty()) report.body["factors"] = factor_files;
    report.body["output"] = out_file;
    report.print(out);
  }
  return 0;
}

int cmd_convert(const std::string& file, std::string to, const std::string& out_file,
                std::ostream& out) {
  std::string text = read_file(file);
  bool input_is_json = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                       text[text.find_first_not_of(" \t\r\n")] == '{';
  if (to.empty()) to = input_is_json ? "dot" : "json";
  if (to != "dot" && to != "json")
    throw std::invalid_argument("convert: --to must be dot or json");

  Dfa a = input_is_json ? parse_dfa(text) : parse_dot(text);
  std::string rendered = to == "dot" ? to_dot(a) : serialize_dfa(a);
  if (out_file.empty())
    out << rendered;
  else
    write_file(out_file, rendered);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DFA decomposition toolkit: composite/prime decisions, widths, and "
               "witness decompositions with brute-force cross-checks"};
  app.require_subcommand(1);

  std::string file, out_dir = ".", prefix = "factor_", out_file, instance_file, factors_dir;
  std::string oracle_mode, convert_to, family;
  bool use_oracle = false, perm_flag = false, comm_flag = false, trivial_acc = false;
  bool human = false;
  int k = 1, n = 2, m = 1, clients = 1, letters = 1, state = 0;
  long long max_total = 0;
  std::uint64_t seed = 0;
  std::size_t verify_cap = kDefaultProductCap;
  CapsFlags caps_flags;

  auto* classify_cmd = app.add_subcommand("classify", "report the input's class flags");
  classify_cmd->add_option("file", file)->required();
  classify_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");

  auto* check_cmd = app.add_subcommand("check", "decide composite or prime");
  check_cmd->add_option("file", file)->required();
  check_cmd->add_flag("--oracle", use_oracle, "allow the brute-force fallback");
  check_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  caps_flags.attach(check_cmd);

  auto* decompose_cmd =
      app.add_subcommand("decompose", "emit a verified decomposition as JSON files");
  decompose_cmd->add_option("file", file)->required();
  decompose_cmd->add_option("--out-dir", out_dir, "directory for factor files");
  decompose_cmd->add_option("--prefix", prefix, "factor file name prefix");
  decompose_cmd->add_option("--cap", verify_cap, "verification product-state cap");
  decompose_cmd->add_flag("--oracle", use_oracle, "allow the brute-force fallback");
  decompose_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  caps_flags.attach(decompose_cmd);

  auto* width_cmd = app.add_subcommand("width", "exact width (0 means prime)");
  width_cmd->add_option("file", file)->required();
  width_cmd->add_flag("--oracle", use_oracle, "allow the brute-force fallback");
  width_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  caps_flags.attach(width_cmd);

  auto* bounded_cmd = app.add_subcommand("bounded", "decide k-factor compositeness");
  bounded_cmd->add_option("file", file)->required();
  bounded_cmd->add_option("--k", k, "factor budget")->required();
  bounded_cmd->add_flag("--oracle", use_oracle, "allow the brute-force fallback");
  bounded_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  caps_flags.attach(bounded_cmd);

  auto* generate_cmd = app.add_subcommand("generate", "construct a named DFA family");
  generate_cmd->add_option("family", family, "gridmod | hitting-set | requests | random")
      ->required()
      ->check(CLI::IsMember({"gridmod", "hitting-set", "requests", "random"}));
  generate_cmd->add_option("-n,--n", n, "modulus (gridmod) or state count (random)");
  generate_cmd->add_option("-m,--m", m, "letter count (gridmod)");
  generate_cmd->add_option("--clients", clients, "client count (requests)");
  generate_cmd->add_option("--letters", letters, "alphabet size (random)");
  generate_cmd->add_option("--seed", seed, "RNG seed (random)");
  generate_cmd->add_flag("--permutation", perm_flag, "random: letters are permutations");
  generate_cmd->add_flag("--commutative", comm_flag, "random: commuting permutations");
  generate_cmd->add_flag("--allow-trivial-acceptance", trivial_acc,
                         "random: allow empty or full accepting sets");
  generate_cmd->add_option("--instance", instance_file, "hitting-set instance JSON");
  generate_cmd->add_option("-o,--output", out_file, "write the DFA here instead of stdout");
  generate_cmd->add_option("--factors-dir", factors_dir,
                           "requests: also write the per-client factors");

  auto* oracle_cmd = app.add_subcommand("oracle", "run a brute-force ground-truth check");
  oracle_cmd->add_option("mode", oracle_mode, "composite | k-factor | width | cover-word")
      ->required()
      ->check(CLI::IsMember({"composite", "k-factor", "width", "cover-word"}));
  oracle_cmd->add_option("file", file)->required();
  oracle_cmd->add_option("--k", k, "factor budget (k-factor)");
  oracle_cmd->add_option("--state", state, "rejecting state (cover-word)");
  oracle_cmd->add_option("--max-total", max_total, "Parikh total bound (cover-word)");
  oracle_cmd->add_flag("--human", human, "plain-text rendering instead of JSON");
  caps_flags.attach(oracle_cmd);

  auto* convert_cmd = app.add_subcommand("convert", "convert between JSON and DOT");
  convert_cmd->add_option("file", file)->required();
  convert_cmd->add_option("--to", convert_to, "dot | json (default: the other format)");
  convert_cmd->add_option("-o,--output", out_file, "write here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(file, human, out);
    if (check_cmd->parsed()) return cmd_check(file, use_oracle, caps_flags.caps, human, out);
    if (decompose_cmd->parsed())
      return cmd_decompose(file, out_dir, prefix, use_oracle, caps_flags.caps, verify_cap,
                           human, out);
    if (width_cmd->parsed()) return cmd_width(file, use_oracle, caps_flags.caps, human, out);
    if (bounded_cmd->parsed())
      return cmd_bounded(file, k, use_oracle, caps_flags.caps, human, out);
    if (generate_cmd->parsed())
      return cmd_generate(family, n, m, clients, letters, seed, perm_flag, comm_flag,
                          trivial_acc, instance_file, out_file, factors_dir, out, err);
    if (oracle_cmd->parsed())
      return cmd_oracle(oracle_mode, file, k, state, max_total, caps_flags.caps, human, out);
    if (convert_cmd->parsed()) return cmd_convert(file, convert_to, out_file, out);
  } catch (const CapExceeded& e) {
    err << "inconclusive: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace dfadec
