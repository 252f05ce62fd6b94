#include <doctest.h>

#include <random>
#include <set>

#include "dfadec/generators.hpp"
#include "dfadec/oracle.hpp"
#include "helpers.hpp"

using namespace dfadec;
using test::make_dfa;

TEST_CASE("brute_composite is inconclusive above its caps") {
  Dfa a = gen_gridmod(3, 2);  // 9 states, above the default cap of 5
  CHECK_THROWS_AS(brute_composite(a), CapExceeded);
}

TEST_CASE("one-state DFAs are not composite") {
  CHECK(!brute_composite(make_dfa({"a"}, {{0}}, {0})));
  CHECK(!brute_composite(make_dfa({"a"}, {{0}}, {})));
}

TEST_CASE("brute_k_factor on the two-client requests monolith") {
  Dfa a = gen_requests(2).monolith;  // 4 states over 5 letters
  OracleCaps caps;
  caps.max_states = 4;
  caps.max_letters = 5;
  caps.max_factor_enum = 2'000'000;
  CHECK(brute_k_factor(a, 2, caps));
  auto witness = brute_k_factor_witness(a, 2, caps);
  REQUIRE(witness.has_value());
  CHECK(verify_decomposition(a, *witness).verified);
}

TEST_CASE("k = 0 uses the empty-intersection convention") {
  Dfa all = make_dfa({"a"}, {{1}, {0}}, {0, 1});
  Dfa some = make_dfa({"a"}, {{1}, {0}}, {0});
  CHECK(brute_k_factor(all, 0));
  CHECK(!brute_k_factor(some, 0));
}

TEST_CASE("brute_k_factor is monotone in k") {
  // The padding argument needs a smaller all-accepting DFA, so sizes >= 2.
  std::mt19937_64 seeds(149);
  for (int i = 0; i < 30; ++i) {
    Dfa a = gen_random(4, 2, seeds());
    if (a.size() < 2) continue;
    OracleCaps caps;
    for (int k = 1; k <= 3; ++k) {
      if (brute_k_factor(a, k, caps)) {
        CHECK(brute_k_factor(a, k + 1, caps));
      }
    }
  }
}

TEST_CASE("composite coincides with k-factor composite at the candidate bound") {
  std::mt19937_64 seeds(151);
  RandomDfaFlags perm{.permutation = true};
  for (int i = 0; i < 20; ++i) {
    Dfa a = gen_random(4, 2, seeds(), perm);
    CHECK(brute_composite(a) == brute_k_factor(a, a.size(), OracleCaps{}));
  }
}

TEST_CASE("brute_cover_word finds the lexicographic first cover") {
  Dfa a = gen_gridmod(3, 2);
  auto w = brute_cover_word(a, 0, 9);  // origin state
  REQUIRE(w.has_value());
  CHECK(w->counts == std::vector<long long>{1, 1});
}

TEST_CASE("brute_cover_word returns nothing on prime instances") {
  Dfa a = make_dfa({"a"}, {{1}, {2}, {3}, {4}, {0}}, {0});
  for (State q = 1; q <= 4; ++q) CHECK(!brute_cover_word(a, q, 5).has_value());
}

TEST_CASE("brute_cover_word agrees with covers on random instances") {
  std::mt19937_64 seeds(157);
  RandomDfaFlags flags{.permutation = true, .commutative = true};
  for (int i = 0; i < 50; ++i) {
    int n = 3 + static_cast<int>(seeds() % 8);
    Dfa a = gen_random(n, 2, seeds(), flags);
    for (State q = 0; q < a.size(); ++q) {
      if (a.accepting[q]) continue;
      auto w = brute_cover_word(a, q, n);
      if (w) {
        CHECK(covers(a, word_action(a, *w), q));
      } else {
        // No vector with total <= n covers q; check a sample of vectors.
        for (long long x = 0; x <= n; ++x) {
          for (long long y = 0; x + y <= n; ++y) {
            if (x + y == 0) continue;
            CHECK(!covers(a, word_action(a, ParikhWord{{x, y}}), q));
          }
        }
      }
    }
  }
}

TEST_CASE("brute_width on the grid instances") {
  CHECK(brute_width(gen_gridmod(3, 2)) == 2);
  CHECK(brute_width(gen_gridmod(5, 2)) == 4);
}

TEST_CASE("brute_width rejects prime inputs") {
  Dfa a = make_dfa({"a"}, {{1}, {2}, {3}, {4}, {0}}, {0});
  CHECK_THROWS_AS(brute_width(a), std::invalid_argument);
}

TEST_CASE("brute_width agrees with width_commutative on random instances") {
  std::mt19937_64 seeds(163);
  RandomDfaFlags flags{.permutation = true, .commutative = true};
  int composites = 0;
  for (int i = 0; i < 20'000 && composites < 100; ++i) {
    int n = 4 + static_cast<int>(seeds() % 9);  // up to 12
    Dfa a = gen_random(n, 2, seeds(), flags);
    WidthResult w = width_commutative(a);
    if (w.width == 0) continue;
    ++composites;
    CHECK(brute_width(a) == w.width);
  }
  CHECK(composites == 100);
}

TEST_CASE("canonical enumeration covers every trim DFA's language") {
  for (int letters = 1; letters <= 2; ++letters) {
    std::vector<std::string> alphabet(letters == 1 ? std::vector<std::string>{"a"}
                                                   : std::vector<std::string>{"a", "b"});
    for (int n = 1; n <= 3; ++n) {
      std::vector<Dfa> canonical;
      for (const Dfa& b : enumerate_trim_dfas(alphabet, n, 1'000'000)) {
        if (b.size() == n) canonical.push_back(b);
      }

      // Raw enumeration: every total table, every acceptance pattern.
      long long tables = 1;
      for (int i = 0; i < n * letters; ++i) tables *= n;
      for (long long t = 0; t < tables; ++t) {
        Dfa raw;
        raw.alphabet = alphabet;
        raw.initial = 0;
        raw.transitions.assign(n, std::vector<State>(letters));
        long long rest = t;
        for (int q = 0; q < n; ++q) {
          for (int l = 0; l < letters; ++l) {
            raw.transitions[q][l] = static_cast<State>(rest % n);
            rest /= n;
          }
        }
        if (!is_trim(raw)) continue;
        raw.accepting.assign(n, false);
        for (unsigned acc = 0; acc < (1u << n); ++acc) {
          for (int q = 0; q < n; ++q) raw.accepting[q] = (acc >> q) & 1;
          bool represented = false;
          for (const Dfa& c : canonical) {
            if (language_equivalent(raw, c)) {
              represented = true;
              break;
            }
          }
          CHECK(represented);
        }
      }
    }
  }
}

TEST_CASE("enumeration respects the cap") {
  CHECK_THROWS_AS(enumerate_trim_dfas({"a", "b"}, 4, 10), CapExceeded);
}
