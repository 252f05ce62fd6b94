#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dfadec/dfa.hpp"

namespace dfadec {

// DFA over (Z/nZ)^m: letter a_i increments component i; a state accepts iff
// it has at least one zero component and at least one non-zero component.
// n >= 2, m >= 1; n prime is only needed for the width statements, not for
// the construction.
Dfa gen_gridmod(int n, int m);

// Hitting-set instance: universe S = {1..n}, a collection of non-empty
// subsets of S, and a budget k.
// JSON form: {"n": 2, "sets": [[1],[1,2],[2]], "k": 2}
struct HittingSetInstance {
  int n = 0;
  std::vector<std::vector<int>> sets;
  int k = 0;
};

HittingSetInstance parse_hitting_set(const std::string& text);

struct ReductionOutput {
  Dfa dfa;
  long long mu = 0;   // smallest prime > max(n, 2)
  long long tau = 0;  // smallest prime > max(m, mu)
  int factor_bound = 0;  // k + 1
};

// Four-letter commutative permutation DFA over
// {0..mu-1} x {0..mu-1} x {0..tau-1} x {0,1} that is (k+1)-factor composite
// exactly when the instance has a hitting set of size k.
ReductionOutput gen_hitting_set(const HittingSetInstance& inst);

// Exact minimum hitting set size, by exhaustive subset search. Test oracle
// for the reduction.
int min_hitting_set(const HittingSetInstance& inst);

struct RequestsOutput {
  Dfa monolith;                // 2^clients states over {r1..rn, g1..gn, i}
  std::vector<Dfa> factors;    // one two-state DFA per client
};

// Request/grant specification: the monolith tracks the set of open requests
// and accepts when none is open; factor j checks client j alone.
RequestsOutput gen_requests(int clients);

struct RandomDfaFlags {
  bool permutation = false;
  bool commutative = false;  // requires permutation
  bool allow_trivial_acceptance = false;
};

// Seeded, reproducible random DFA. permutation: each letter is a uniform
// random permutation, resampled until trim. commutative+permutation: letters
// are random powers of one random n-cycle with gcd(exponents, n) = 1, which
// makes the action regular and the DFA trim. plain: uniform random table,
// then trimmed (may shrink the state count). The accepting set is uniform
// and non-trivial unless allow_trivial_acceptance is set.
Dfa gen_random(int n, int letters, std::uint64_t seed, const RandomDfaFlags& flags = {});

}  // namespace dfadec
