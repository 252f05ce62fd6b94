#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dfadec/commutative.hpp"
#include "dfadec/dfa.hpp"

namespace dfadec {

// Budgets that keep the brute-force searches total. Exceeding one throws
// CapExceeded (inconclusive), never a wrong answer.
struct OracleCaps {
  int max_states = 5;
  int max_letters = 2;
  std::int64_t max_factor_enum = 50'000;
  std::int64_t max_product_states = 1'000'000;
};

// Every trim DFA with up to max_states states over the given alphabet, one
// per initial-state-rooted canonical form (states numbered in BFS discovery
// order, letters expanded in alphabet order), with every acceptance pattern.
std::vector<Dfa> enumerate_trim_dfas(const std::vector<std::string>& alphabet,
                                     int max_states, std::int64_t cap);

// Ground truth for compositeness: enumerates all candidate factors (smaller
// trim DFAs whose language contains L(a)) and checks whether their joint
// intersection equals L(a).
bool brute_composite(const Dfa& a, const OracleCaps& caps = {});

// Ground truth for the k-bounded variant. k = 0 uses the empty-intersection
// convention: true iff L(a) is all words.
bool brute_k_factor(const Dfa& a, int k, const OracleCaps& caps = {});
std::optional<std::vector<Dfa>> brute_k_factor_witness(const Dfa& a, int k,
                                                       const OracleCaps& caps = {});

// First covering Parikh vector in lexicographic order with
// 1 <= total <= max_total, or nothing. Exhaustive scan, independent of the
// cover-set enumeration.
std::optional<ParikhWord> brute_cover_word(const Dfa& a, State q, long long max_total);

// Exhaustive minimum cover over the full deduplicated action set; ground
// truth for width_commutative. Requires a composite input.
int brute_width(const Dfa& a);

}  // namespace dfadec
