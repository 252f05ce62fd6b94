#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfadec {

using State = int;

// A word is a sequence of letter indices into a DFA's alphabet.
using Word = std::vector<int>;

// Thrown when a capped exploration runs out of budget before reaching a
// verdict. Distinct from a negative answer: the question stays undecided.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Complete deterministic finite automaton. States are dense indices
// 0..size()-1, letters are indices into the ordered alphabet. Values are
// immutable after construction; every operation in this library is a pure
// function, so Dfa values can be shared freely across threads.
struct Dfa {
  std::vector<std::string> alphabet;
  State initial = 0;
  std::vector<std::vector<State>> transitions;  // [state][letter]
  std::vector<bool> accepting;                  // [state]

  int size() const { return static_cast<int>(transitions.size()); }
  int letters() const { return static_cast<int>(alphabet.size()); }

  State step(State q, int letter) const {
    assert(q >= 0 && q < size() && letter >= 0 && letter < letters());
    return transitions[q][letter];
  }

  State run(State q, const Word& w) const {
    for (int letter : w) q = step(q, letter);
    return q;
  }

  bool accepts(const Word& w) const { return accepting[run(initial, w)]; }

  int rejecting_count() const {
    int c = 0;
    for (bool a : accepting) c += !a;
    return c;
  }

  // Enforces the structural invariants (total transition table, non-empty
  // alphabet with distinct letters, indices in range). Throws
  // std::invalid_argument naming the offending field.
  void validate() const;

  bool operator==(const Dfa&) const = default;
};

struct DfaClass {
  bool trim = false;
  bool permutation = false;
  bool commutative = false;
  bool unary = false;
  bool minimal = false;
};

// A list of candidate factors for some DFA, plus the result of checking them.
struct Decomposition {
  std::vector<Dfa> factors;
  bool verified = false;
};

// Result of a language inclusion test; counterexample is a shortest word
// accepted by the left DFA and rejected by the right one when !holds.
struct Inclusion {
  bool holds = false;
  Word counterexample;
};

DfaClass classify(const Dfa& a);
bool is_trim(const Dfa& a);
bool is_permutation(const Dfa& a);
bool is_commutative(const Dfa& a);

// Restriction to the states reachable from the initial state, renumbered in
// BFS discovery order (letters expanded in alphabet order).
Dfa trim(const Dfa& a);

// Language-equivalent DFA of minimum size, in BFS-canonical numbering.
Dfa minimize(const Dfa& a);

// Reachable product; accepts the intersection of the two languages.
// Requires identical alphabets.
Dfa product(const Dfa& a, const Dfa& b);

Inclusion language_inclusion(const Dfa& a, const Dfa& b);
std::optional<Word> equivalence_counterexample(const Dfa& a, const Dfa& b);
bool language_equivalent(const Dfa& a, const Dfa& b);

inline constexpr std::size_t kDefaultProductCap = 1'000'000;

// Checks that `factors` is a decomposition of `a`: every factor strictly
// smaller, every factor language a superset of L(a), and no word accepted by
// all factors but rejected by a. The last check walks the joint product
// lazily and throws CapExceeded after `cap` explored states.
Decomposition verify_decomposition(const Dfa& a, std::vector<Dfa> factors,
                                   std::size_t cap = kDefaultProductCap);

}  // namespace dfadec
