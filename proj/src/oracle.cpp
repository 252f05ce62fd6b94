#include "dfadec/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "dfadec/io.hpp"

namespace dfadec {

namespace {

// Recursively fills the transition table in row-major order so that states
// appear in BFS discovery order (entry <= max_seen + 1) and all states get
// discovered before their row is reached. This generates exactly one table
// per isomorphism class of initially-connected DFA.
void enumerate_tables(int states, int letters, std::int64_t cap,
                      std::vector<std::vector<State>>& table, int pos, int max_seen,
                      std::int64_t& produced,
                      const std::function<void(const std::vector<std::vector<State>>&)>& emit) {
  int total = states * letters;
  if (pos == total) {
    if (max_seen == states - 1) {
      if (++produced > cap) throw CapExceeded("oracle: candidate enumeration exceeded cap");
      emit(table);
    }
    return;
  }
  int q = pos / letters;
  int l = pos % letters;
  if (q > max_seen) return;  // row of an undiscovered state: not canonical
  // Remaining entries must be able to introduce the missing states.
  if (states - 1 - max_seen > total - pos) return;
  for (State t = 0; t <= std::min(max_seen + 1, states - 1); ++t) {
    table[q][l] = t;
    enumerate_tables(states, letters, cap, table, pos + 1, std::max(max_seen, t), produced, emit);
  }
}

// Incremental candidate-factor pool for one target: strictly smaller trim
// DFAs over the same alphabet whose language contains L(a), deduplicated by
// language, enumerated one state-count tier at a time. Tiering lets callers
// stop as soon as small factors already decompose the target.
struct CandidatePool {
  const Dfa& a;
  const OracleCaps& caps;
  std::vector<Dfa> kept;
  std::unordered_set<std::string> languages;
  std::int64_t produced = 0;

  CandidatePool(const Dfa& target, const OracleCaps& limits) : a(target), caps(limits) {}

  void add_tier(int s) {
    std::vector<std::vector<State>> table(s, std::vector<State>(a.letters()));
    enumerate_tables(s, a.letters(), caps.max_factor_enum, table, 0, 0, produced,
                     [&](const std::vector<std::vector<State>>& t) {
                       Dfa b;
                       b.alphabet = a.alphabet;
                       b.initial = 0;
                       b.transitions = t;
                       b.accepting.assign(s, false);
                       for (std::uint32_t acc = 0; acc < (1u << s); ++acc) {
                         for (int q = 0; q < s; ++q) b.accepting[q] = (acc >> q) & 1;
                         if (!language_inclusion(a, b).holds) continue;
                         std::string canon = serialize_dfa(minimize(b));
                         if (languages.insert(canon).second) kept.push_back(b);
                       }
                     });
  }

  // Languages with no strictly smaller candidate language below them.
  // Replacing each factor of a decomposition by a minimal candidate below it
  // keeps the intersection pinched at L(a), so the reduction loses no
  // decompositions.
  std::vector<Dfa> minimal() const {
    std::vector<Dfa> out;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      bool has_smaller = false;
      for (std::size_t j = 0; j < kept.size() && !has_smaller; ++j) {
        if (i == j) continue;
        if (language_inclusion(kept[j], kept[i]).holds &&
            !language_inclusion(kept[i], kept[j]).holds)
          has_smaller = true;
      }
      if (!has_smaller) out.push_back(kept[i]);
    }
    return out;
  }
};

std::vector<Dfa> candidate_factors(const Dfa& a, const OracleCaps& caps) {
  CandidatePool pool(a, caps);
  for (int s = 1; s < a.size(); ++s) pool.add_tier(s);
  return pool.minimal();
}

void require_caps(const Dfa& a, const OracleCaps& caps) {
  if (a.size() > caps.max_states)
    throw CapExceeded("oracle: input has " + std::to_string(a.size()) +
                      " states, cap is " + std::to_string(caps.max_states));
  if (a.letters() > caps.max_letters)
    throw CapExceeded("oracle: input has " + std::to_string(a.letters()) +
                      " letters, cap is " + std::to_string(caps.max_letters));
}

// True iff no word is accepted by every chosen factor but rejected by a.
// Budget counts explored joint states cumulatively across calls.
bool intersection_equals(const Dfa& a, const std::vector<const Dfa*>& factors,
                         std::int64_t& budget) {
  struct VecHash {
    std::size_t operator()(const std::vector<State>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (State s : v) {
        h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  std::unordered_set<std::vector<State>, VecHash> seen;
  std::deque<std::vector<State>> queue;
  std::vector<State> start(factors.size() + 1);
  start[0] = a.initial;
  for (std::size_t i = 0; i < factors.size(); ++i) start[i + 1] = factors[i]->initial;
  seen.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    std::vector<State> node = std::move(queue.front());
    queue.pop_front();
    bool all_accept = true;
    for (std::size_t i = 0; i < factors.size() && all_accept; ++i)
      all_accept = factors[i]->accepting[node[i + 1]];
    if (all_accept && !a.accepting[node[0]]) return false;
    for (int l = 0; l < a.letters(); ++l) {
      std::vector<State> succ(node.size());
      succ[0] = a.step(node[0], l);
      for (std::size_t i = 0; i < factors.size(); ++i)
        succ[i + 1] = factors[i]->step(node[i + 1], l);
      if (seen.insert(succ).second) {
        if (--budget < 0)
          throw CapExceeded("oracle: joint product exploration exceeded cap");
        queue.push_back(std::move(succ));
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Dfa> enumerate_trim_dfas(const std::vector<std::string>& alphabet,
                                     int max_states, std::int64_t cap) {
  std::vector<Dfa> out;
  std::int64_t produced = 0;
  int letters = static_cast<int>(alphabet.size());
  for (int s = 1; s <= max_states; ++s) {
    std::vector<std::vector<State>> table(s, std::vector<State>(letters));
    enumerate_tables(s, letters, cap, table, 0, 0, produced,
                     [&](const std::vector<std::vector<State>>& t) {
                       Dfa b;
                       b.alphabet = alphabet;
                       b.initial = 0;
                       b.transitions = t;
                       for (std::uint32_t acc = 0; acc < (1u << s); ++acc) {
                         b.accepting.assign(s, false);
                         for (int q = 0; q < s; ++q) b.accepting[q] = (acc >> q) & 1;
                         out.push_back(b);
                       }
                     });
  }
  return out;
}

bool brute_composite(const Dfa& a, const OracleCaps& caps) {
  require_caps(a, caps);
  if (a.size() == 1) return false;  // no smaller DFA exists
  if (minimize(a).size() < a.size()) return true;  // minimal equivalent is a factor

  std::vector<Dfa> candidates = candidate_factors(a, caps);
  if (candidates.empty()) return false;
  std::vector<const Dfa*> all;
  all.reserve(candidates.size());
  for (const Dfa& c : candidates) all.push_back(&c);
  std::int64_t budget = caps.max_product_states;
  return intersection_equals(a, all, budget);
}

std::optional<std::vector<Dfa>> brute_k_factor_witness(const Dfa& a, int k,
                                                       const OracleCaps& caps) {
  require_caps(a, caps);
  if (k < 0) throw std::invalid_argument("k must be non-negative");
  if (k == 0) {
    // Empty intersection convention: all words.
    Dfa min = minimize(a);
    if (min.size() == 1 && min.accepting[0]) return std::vector<Dfa>{};
    return std::nullopt;
  }
  if (a.size() == 1) return std::nullopt;
  {
    Dfa min = minimize(a);
    if (min.size() < a.size()) return std::vector<Dfa>{std::move(min)};
  }

  // Tiered search: after each candidate size tier, try every combination of
  // the inclusion-minimal pool. Decompositions into small factors are found
  // without ever enumerating the larger tiers.
  CandidatePool pool(a, caps);
  std::int64_t budget = caps.max_product_states;
  std::int64_t combos = 0;
  for (int tier = 1; tier < a.size(); ++tier) {
    pool.add_tier(tier);
    std::vector<Dfa> candidates = pool.minimal();
    int f = static_cast<int>(candidates.size());
    for (int size = 1; size <= std::min(k, f); ++size) {
      std::vector<int> comb(size);
      for (int i = 0; i < size; ++i) comb[i] = i;
      while (true) {
        if (++combos > caps.max_factor_enum)
          throw CapExceeded("oracle: factor combination count exceeded cap");
        std::vector<const Dfa*> chosen;
        chosen.reserve(size);
        for (int i : comb) chosen.push_back(&candidates[i]);
        if (intersection_equals(a, chosen, budget)) {
          std::vector<Dfa> witness;
          for (int i : comb) witness.push_back(candidates[i]);
          return witness;
        }
        int i = size - 1;
        while (i >= 0 && comb[i] == f - size + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
  }
  return std::nullopt;
}

bool brute_k_factor(const Dfa& a, int k, const OracleCaps& caps) {
  return brute_k_factor_witness(a, k, caps).has_value();
}

std::optional<ParikhWord> brute_cover_word(const Dfa& a, State q, long long max_total) {
  if (!is_permutation(a) || !is_commutative(a) || !is_trim(a))
    throw std::invalid_argument("brute_cover_word: trim commutative permutation DFA required");
  if (a.accepting[q]) throw std::invalid_argument("brute_cover_word: q must be rejecting");

  int letters = a.letters();
  std::vector<long long> counts(letters, 0);
  // Lexicographic odometer over vectors with total <= max_total.
  std::function<std::optional<ParikhWord>(int, long long)> scan =
      [&](int pos, long long budget) -> std::optional<ParikhWord> {
    if (pos == letters) {
      ParikhWord w{counts};
      if (w.total() == 0) return std::nullopt;
      WordAction act = word_action(a, w);
      // Inline cycle walk, independent of covers().
      State s = act.perm[q];
      if (s == q) return std::nullopt;
      while (s != q) {
        if (a.accepting[s]) return std::nullopt;
        s = act.perm[s];
      }
      return w;
    }
    for (long long v = 0; v <= budget; ++v) {
      counts[pos] = v;
      if (auto hit = scan(pos + 1, budget - v)) return hit;
    }
    counts[pos] = 0;
    return std::nullopt;
  };
  return scan(0, max_total);
}

int brute_width(const Dfa& a) {
  if (!is_permutation(a) || !is_commutative(a) || !is_trim(a))
    throw std::invalid_argument("brute_width: trim commutative permutation DFA required");
  std::vector<State> universe;
  for (State q = 0; q < a.size(); ++q) {
    if (!a.accepting[q]) universe.push_back(q);
  }
  if (universe.empty())
    throw std::invalid_argument("brute_width: no rejecting states; handle via the degenerate path");

  // Deduplicate actions of all vectors with 1 <= total < n, lexicographic
  // first representative kept.
  int n = a.size();
  std::vector<std::vector<State>> perms;
  std::vector<long long> counts(a.letters(), 0);
  std::function<void(int, long long)> scan = [&](int pos, long long budget) {
    if (pos == a.letters()) {
      ParikhWord w{counts};
      if (w.total() == 0) return;
      WordAction act = word_action(a, w);
      if (std::find(perms.begin(), perms.end(), act.perm) == perms.end())
        perms.push_back(act.perm);
      return;
    }
    for (long long v = 0; v <= budget; ++v) {
      counts[pos] = v;
      scan(pos + 1, budget - v);
    }
    counts[pos] = 0;
  };
  scan(0, n - 1);

  std::vector<StateSet> covered;
  for (const auto& perm : perms) {
    StateSet set(n);
    for (State q : universe) {
      // inline cycle walk
      State s = perm[q];
      if (s == q) continue;
      bool ok = true;
      while (s != q) {
        if (a.accepting[s]) {
          ok = false;
          break;
        }
        s = perm[s];
      }
      if (ok) set.set(q);
    }
    covered.push_back(std::move(set));
  }

  StateSet want = StateSet::of(n, universe);
  int f = static_cast<int>(covered.size());
  for (int size = 1; size <= f; ++size) {
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      StateSet acc(n);
      for (int i : comb) {
        covered[i].for_each([&](int q) { acc.set(q); });
      }
      if (acc == want) return size;
      int i = size - 1;
      while (i >= 0 && comb[i] == f - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw std::invalid_argument("brute_width: input is prime (no covering word set exists)");
}

}  // namespace dfadec
