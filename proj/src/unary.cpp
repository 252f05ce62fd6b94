#include "dfadec/unary.hpp"

#include <algorithm>

#include "dfadec/commutative.hpp"

namespace dfadec {

namespace {

void require_trim_unary(const Dfa& a) {
  if (a.letters() != 1) throw std::invalid_argument("not unary");
  if (!is_trim(a)) throw std::invalid_argument("not trim");
}

// Sub-automaton consisting of the cycle only, renumbered from the entry.
Dfa cycle_only(const Dfa& a, const UnaryShape& shape, std::vector<State>& cycle_states) {
  cycle_states.clear();
  State s = shape.entry;
  for (int i = 0; i < shape.cycle_len; ++i) {
    cycle_states.push_back(s);
    s = a.step(s, 0);
  }
  Dfa c;
  c.alphabet = a.alphabet;
  c.initial = 0;
  c.transitions.assign(shape.cycle_len, std::vector<State>(1));
  c.accepting.assign(shape.cycle_len, false);
  for (int i = 0; i < shape.cycle_len; ++i) {
    c.transitions[i][0] = (i + 1) % shape.cycle_len;
    c.accepting[i] = a.accepting[cycle_states[i]];
  }
  return c;
}

// Rejecting states of the cycle-only permutation DFA covered by a^exp.
StateSet covered_by_exponent(const Dfa& cycle, long long exp) {
  WordAction act = word_action(cycle, ParikhWord{{exp}});
  StateSet covered(cycle.size());
  for (State q = 0; q < cycle.size(); ++q) {
    if (!cycle.accepting[q] && covers(cycle, act, q)) covered.set(q);
  }
  return covered;
}

}  // namespace

UnaryShape unary_structure(const Dfa& a) {
  require_trim_unary(a);
  std::vector<int> visit_pos(a.size(), -1);
  State s = a.initial;
  int pos = 0;
  while (visit_pos[s] < 0) {
    visit_pos[s] = pos++;
    s = a.step(s, 0);
  }
  UnaryShape shape;
  shape.entry = s;
  shape.chain_len = visit_pos[s];
  shape.cycle_len = pos - visit_pos[s];
  return shape;
}

std::vector<long long> candidate_divisor_words(long long cycle_len) {
  if (cycle_len < 2) throw std::invalid_argument("candidate_divisor_words: cycle_len must be >= 2");
  std::vector<long long> exps;
  long long rest = cycle_len;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p == 0) {
      exps.push_back(cycle_len / p);
      while (rest % p == 0) rest /= p;
    }
  }
  if (rest > 1) exps.push_back(cycle_len / rest);
  return exps;
}

bool is_k_factor_composite_unary(const Dfa& a, int k) {
  require_trim_unary(a);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  int n = a.size();
  if (n == 1) return false;  // no smaller DFA exists

  UnaryShape shape = unary_structure(a);

  if (shape.chain_len == 0) {
    // Cycle only: the DFA is a commutative permutation DFA and covering
    // words reduce to the maximal divisors of the cycle length.
    std::vector<State> rejecting;
    for (State q = 0; q < n; ++q) {
      if (!a.accepting[q]) rejecting.push_back(q);
    }
    if (rejecting.empty()) return true;  // language is all words, not minimal

    std::vector<long long> exps = candidate_divisor_words(shape.cycle_len);
    std::vector<StateSet> covered;
    covered.reserve(exps.size());
    for (long long e : exps) covered.push_back(covered_by_exponent(a, e));

    int f = static_cast<int>(exps.size());
    int limit = std::min(k, f);
    StateSet want = StateSet::of(n, rejecting);
    for (std::uint32_t mask = 0; mask < (1u << f); ++mask) {
      if (__builtin_popcount(mask) > limit) continue;
      StateSet acc(n);
      for (int i = 0; i < f; ++i) {
        if ((mask >> i) & 1) covered[i].for_each([&](int q) { acc.set(q); });
      }
      if (want.is_subset_of(acc)) return true;
    }
    return false;
  }

  // Chain case. One factor suffices iff the DFA is not minimal; beyond that,
  // composite coincides with 2-factor composite, so any k >= 2 reduces to 2.
  Dfa minimal = minimize(a);
  if (minimal.size() < n) return true;
  if (k == 1) return false;

  // Cycle-preimage criterion: applicable when the entry state's chain
  // preimage accepts and its cycle preimage rejects; then the DFA is
  // composite iff the cycle preimage is covered inside the cycle-only
  // sub-automaton.
  std::vector<State> chain;
  {
    State s = a.initial;
    for (int i = 0; i < shape.chain_len; ++i) {
      chain.push_back(s);
      s = a.step(s, 0);
    }
  }
  std::vector<State> cycle_states;
  Dfa cycle = cycle_only(a, shape, cycle_states);
  State chain_pre = chain.back();
  int cycle_pre_idx = shape.cycle_len - 1;  // predecessor of the entry on the cycle

  if (a.accepting[chain_pre] && !cycle.accepting[cycle_pre_idx]) {
    if (shape.cycle_len < 2) return false;  // self-loop: nothing can move the preimage
    for (long long e : candidate_divisor_words(shape.cycle_len)) {
      if (covered_by_exponent(cycle, e).test(cycle_pre_idx)) return true;
    }
    return false;
  }

  // Criterion precondition absent: fall back to the brute-force oracle.
  // Unary candidate enumeration is linear in the number of shapes, so lift
  // the state cap to the input size.
  OracleCaps caps;
  caps.max_states = n;
  caps.max_letters = 1;
  return brute_k_factor(a, 2, caps);
}

bool is_composite_unary(const Dfa& a) {
  return is_k_factor_composite_unary(a, std::max(1, a.size()));
}

}  // namespace dfadec
