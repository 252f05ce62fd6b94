#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "dfadec/dfa.hpp"
#include "dfadec/state_set.hpp"

namespace dfadec {

// Closure of a seed set under all letter-image maps, in BFS discovery order.
// complete is false when the search was aborted at the cap.
struct Orbit {
  std::vector<StateSet> members;
  bool complete = false;
};

// Image of U under one letter's transition map.
StateSet subset_step(const Dfa& a, const StateSet& u, int letter);

// BFS closure of `seed`; aborts with complete=false as soon as the member
// count reaches `cap`.
Orbit orbit_of(const Dfa& a, const StateSet& seed, std::size_t cap);

// DFA whose states are the orbit members of a seed containing the host's
// initial state; a member accepts iff it intersects the host's accepting set.
struct OrbitDfa {
  StateSet seed;
  std::vector<StateSet> members;  // state i of as_dfa is members[i]
  Dfa as_dfa;
};

// cap = 0 explores until closure (bounded by 2^n); a positive cap throws
// CapExceeded when reached. Requires the host's initial state in `seed`.
OrbitDfa orbit_dfa(const Dfa& a, const StateSet& seed, std::size_t cap = 0);

// Checks whether the orbit of `uprime` (a set of rejecting states containing
// the rejecting state q) stays smaller than the host; when it does, returns
// the orbit member containing the initial state, which seeds an orbit-DFA
// covering q. Requires a trim permutation host.
std::optional<StateSet> orbit_covers(const Dfa& a, const StateSet& uprime, State q);

enum class VerdictReason {
  prime_state_count,  // state count is prime, no decomposition exists
  all_covered,        // every rejecting state has a covering orbit
  uncovered_state,    // some rejecting state admits no covering orbit
  not_applicable,     // size-1 DFA: no smaller DFA exists
};

const char* to_string(VerdictReason r);

struct CompositeVerdict {
  bool composite = false;
  VerdictReason reason = VerdictReason::not_applicable;
  State uncovered = -1;              // set when reason == uncovered_state
  std::map<State, StateSet> covers;  // rejecting state -> witness seed
};

// Composite/prime decision for trim permutation DFAs. Degenerate acceptance
// (F = Q or F = empty, n > 1) short-circuits to composite; a prime state
// count (with mixed acceptance) short-circuits to prime. Otherwise subsets of
// the rejecting states are searched in increasing cardinality, lexicographic
// within a cardinality, for orbits smaller than the host. Orbit outcomes are
// memoised per call; there is no shared mutable state, so concurrent calls on
// shared Dfa values are safe.
CompositeVerdict is_composite_permutation(const Dfa& a);

// Builds the decomposition witnessed by a composite verdict:
// for every witness orbit, every orbit member containing the initial state
// seeds one factor; identical factors are deduplicated. The result is
// re-verified and an unverifiable result raises std::logic_error.
Decomposition extract_orbit_decomposition(const Dfa& a, const CompositeVerdict& v);

}  // namespace dfadec
