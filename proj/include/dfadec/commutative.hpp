#pragma once

#include <optional>
#include <vector>

#include "dfadec/dfa.hpp"
#include "dfadec/orbit.hpp"
#include "dfadec/state_set.hpp"

namespace dfadec {

// Letter-count vector; in a commutative DFA a word's action depends only on
// its Parikh vector. Canonical covering candidates keep total() < n.
struct ParikhWord {
  std::vector<long long> counts;  // one entry per alphabet letter

  long long total() const {
    long long t = 0;
    for (long long c : counts) t += c;
    return t;
  }
  bool operator==(const ParikhWord&) const = default;
};

// The permutation a word induces on a commutative permutation DFA's states,
// together with one Parikh vector producing it.
struct WordAction {
  std::vector<State> perm;
  ParikhWord representative;
};

struct CoverSet {
  WordAction action;
  StateSet covered;  // rejecting states whose action-cycle avoids accepting states
};

// Composes each letter's permutation counts[i] times (fast exponentiation);
// composition order is immaterial by commutativity. Requires a trim
// commutative permutation DFA.
WordAction word_action(const Dfa& a, const ParikhWord& p);

// True iff the action moves q and q's whole cycle under it is rejecting.
bool covers(const Dfa& a, const WordAction& w, State q);

// All distinct non-identity word actions with a non-empty covered set. For a
// trim commutative permutation DFA the action group acts regularly, so the
// distinct actions correspond one-to-one with states; they are enumerated by
// BFS from the initial state and each representative has total() < n.
std::vector<CoverSet> enumerate_cover_sets(const Dfa& a);

// Composite iff every rejecting state appears in some cover set. The witness
// seeds in the verdict are the initial-state cycles of the covering actions.
CompositeVerdict is_composite_commutative(const Dfa& a);

// Exact width via minimum set cover over the cover sets; width 0 is the
// prime sentinel (then words is empty). Witness words are returned so
// decomposition extraction needs no re-search. Degenerate acceptance (no
// rejecting states) is rejected; route such inputs through the degenerate
// path first.
struct WidthResult {
  int width = 0;
  std::vector<ParikhWord> words;
};
WidthResult width_commutative(const Dfa& a);

// Equivalent to width_commutative(a).width <= k, with the cover search cut
// off at depth k.
bool is_k_factor_composite_commutative(const Dfa& a, int k);
std::optional<std::vector<ParikhWord>> k_factor_witness_commutative(const Dfa& a, int k);

// Builds one factor per word: the word's initial-state cycle seeds an
// orbit-DFA. Requires the words to jointly cover all rejecting states and
// none of them to act as the identity.
Decomposition decomposition_from_words(const Dfa& a, const std::vector<ParikhWord>& words);

}  // namespace dfadec
