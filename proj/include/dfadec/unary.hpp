#pragma once

#include <vector>

#include "dfadec/dfa.hpp"
#include "dfadec/oracle.hpp"

namespace dfadec {

// A trim single-letter DFA is a chain of chain_len states feeding a cycle of
// cycle_len states; entry is the state where the chain meets the cycle.
// chain_len = 0 iff the DFA is a permutation DFA.
struct UnaryShape {
  int chain_len = 0;
  int cycle_len = 0;
  State entry = 0;
};

UnaryShape unary_structure(const Dfa& a);

// Exponents cycle_len / p for each prime divisor p: the maximal divisors of
// the cycle length. Covering words over one letter reduce to these.
std::vector<long long> candidate_divisor_words(long long cycle_len);

// Bounded decomposition decision for trim unary DFAs. Cycle-only inputs use
// subsets of the maximal-divisor words; chain inputs use the minimality
// check, then the cycle-preimage criterion when its precondition holds
// (chain preimage accepting, cycle preimage rejecting), else the brute-force
// oracle over unary factors.
bool is_k_factor_composite_unary(const Dfa& a, int k);

// Unbounded variant: k-factor composite for some k (k = n is always enough).
bool is_composite_unary(const Dfa& a);

}  // namespace dfadec
