#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "dfadec/dfa.hpp"

namespace dfadec::test {

// Compact DFA literal: one transition row per state.
inline Dfa make_dfa(std::vector<std::string> alphabet,
                    std::vector<std::vector<State>> transitions,
                    std::vector<int> accepting, State initial = 0) {
  Dfa a;
  a.alphabet = std::move(alphabet);
  a.initial = initial;
  a.transitions = std::move(transitions);
  a.accepting.assign(a.transitions.size(), false);
  for (int q : accepting) a.accepting[q] = true;
  a.validate();
  return a;
}

// Independent minimality oracle: two states are distinguishable iff some word
// separates their acceptance, found by fixpoint over pairs. A trim DFA is
// minimal iff all state pairs are distinguishable.
inline bool all_pairs_distinguishable(const Dfa& a) {
  int n = a.size();
  std::vector<std::vector<bool>> dist(n, std::vector<bool>(n, false));
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) dist[p][q] = a.accepting[p] != a.accepting[q];
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        if (dist[p][q]) continue;
        for (int l = 0; l < a.letters(); ++l) {
          if (dist[a.step(p, l)][a.step(q, l)]) {
            dist[p][q] = true;
            changed = true;
            break;
          }
        }
      }
    }
  }
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      if (!dist[p][q]) return false;
    }
  }
  return true;
}

inline void for_each_permutation(int n, const std::function<void(const std::vector<State>&)>& f) {
  std::vector<State> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

// Every trim permutation DFA over two letters with the given state count,
// with every acceptance pattern.
inline void for_each_trim_permutation_dfa(
    int n, const std::function<void(const Dfa&)>& f) {
  for_each_permutation(n, [&](const std::vector<State>& p1) {
    for_each_permutation(n, [&](const std::vector<State>& p2) {
      Dfa a;
      a.alphabet = {"a", "b"};
      a.initial = 0;
      a.transitions.assign(n, std::vector<State>(2));
      for (int q = 0; q < n; ++q) {
        a.transitions[q][0] = p1[q];
        a.transitions[q][1] = p2[q];
      }
      a.accepting.assign(n, false);
      if (!is_trim(a)) return;
      for (unsigned acc = 0; acc < (1u << n); ++acc) {
        for (int q = 0; q < n; ++q) a.accepting[q] = (acc >> q) & 1;
        f(a);
      }
    });
  });
}

}  // namespace dfadec::test
