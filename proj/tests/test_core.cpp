#include <doctest.h>

#include <random>

#include "dfadec/dfa.hpp"
#include "dfadec/generators.hpp"
#include "dfadec/io.hpp"
#include "helpers.hpp"

using namespace dfadec;
using test::make_dfa;

TEST_CASE("parse round-trips a two-state unary cycle") {
  Dfa a = parse_dfa(R"({"alphabet":["a"],"initial":0,"accepting":[0],
                        "transitions":[[1],[0]]})");
  CHECK(a.size() == 2);
  CHECK(a.initial == 0);
  CHECK(a.accepting[0]);
  CHECK(!a.accepting[1]);
  CHECK(a.step(0, 0) == 1);
  CHECK(a.step(1, 0) == 0);
}

TEST_CASE("parse rejects out-of-range transition targets with the field path") {
  auto text = R"({"alphabet":["a"],"initial":0,"accepting":[0],
                  "transitions":[[1],[5],[0]]})";
  CHECK_THROWS_WITH_AS(parse_dfa(text), "transitions[1][0]: state index out of range",
                       std::invalid_argument);
}

TEST_CASE("parse validation errors") {
  CHECK_THROWS_AS(parse_dfa("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_dfa(R"({"alphabet":[],"initial":0,"accepting":[],"transitions":[[]]})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_dfa(R"({"alphabet":["a","a"],"initial":0,"accepting":[],"transitions":[[0,0]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_dfa(R"({"alphabet":["a"],"initial":7,"accepting":[],"transitions":[[0]]})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_dfa(R"({"alphabet":["a"],"initial":0,"accepting":[9],"transitions":[[0]]})"),
      std::invalid_argument);
}

TEST_CASE("per-client request factor round-trips to an identical DFA") {
  Dfa a1 = gen_requests(2).factors[0];  // 2 states over {r1,r2,g1,g2,i}
  CHECK(a1.size() == 2);
  CHECK(a1.letters() == 5);
  Dfa again = parse_dfa(serialize_dfa(a1));
  CHECK(again == a1);
  CHECK(parse_dfa(serialize_dfa(again)) == again);
}

TEST_CASE("dot export round-trips through the narrow reader") {
  Dfa a = gen_requests(2).monolith;
  Dfa back = parse_dot(to_dot(a));
  CHECK(back == a);
}

TEST_CASE("classify: modular grid is a trim commutative permutation DFA") {
  DfaClass c = classify(gen_gridmod(3, 2));
  CHECK(c.trim);
  CHECK(c.permutation);
  CHECK(c.commutative);
  CHECK(!c.unary);
}

TEST_CASE("classify: the requests monolith is not a permutation DFA") {
  // g1 merges the states with and without an open first request.
  DfaClass c = classify(gen_requests(2).monolith);
  CHECK(c.trim);
  CHECK(!c.permutation);
}

TEST_CASE("classify: one-state DFAs") {
  Dfa a = make_dfa({"a"}, {{0}}, {0});
  DfaClass c = classify(a);
  CHECK(c.trim);
  CHECK(c.permutation);
  CHECK(c.commutative);
  CHECK(c.unary);
  CHECK(c.minimal);
}

TEST_CASE("product of the two request factors recognises the monolith language") {
  RequestsOutput req = gen_requests(2);
  Dfa both = product(req.factors[0], req.factors[1]);
  CHECK(language_equivalent(both, req.monolith));
}

TEST_CASE("product is idempotent on the language") {
  Dfa a = gen_gridmod(3, 2);
  CHECK(language_equivalent(product(a, a), a));
}

TEST_CASE("product requires matching alphabets") {
  Dfa a = make_dfa({"a"}, {{0}}, {0});
  Dfa b = make_dfa({"b"}, {{0}}, {0});
  CHECK_THROWS_AS(product(a, b), std::invalid_argument);
}

TEST_CASE("language inclusion is reflexive and produces shortest witnesses") {
  Dfa a = gen_gridmod(3, 2);
  CHECK(language_inclusion(a, a).holds);

  Dfa all = make_dfa({"a"}, {{0}}, {0});
  Dfa none = make_dfa({"a"}, {{0}}, {});
  Inclusion inc = language_inclusion(all, none);
  CHECK(!inc.holds);
  CHECK(inc.counterexample.empty());  // the empty word is the shortest witness
}

TEST_CASE("minimize: the grid family members are already minimal") {
  Dfa a = gen_gridmod(3, 2);
  CHECK(test::all_pairs_distinguishable(a));  // independent oracle
  CHECK(minimize(a).size() == 9);
}

TEST_CASE("minimize drops unreachable states") {
  Dfa a = make_dfa({"a"}, {{0}, {0}}, {0});  // state 1 unreachable
  CHECK(minimize(a).size() == 1);
}

TEST_CASE("minimize collapses an all-accepting DFA to one state") {
  Dfa a = make_dfa({"a", "b"}, {{1, 2}, {2, 0}, {0, 1}}, {0, 1, 2});
  Dfa m = minimize(a);
  CHECK(m.size() == 1);
  CHECK(m.accepting[0]);
}

TEST_CASE("minimize is idempotent") {
  std::mt19937_64 seeds(11);
  for (int i = 0; i < 25; ++i) {
    Dfa a = gen_random(6, 2, seeds());
    Dfa m = minimize(a);
    CHECK(minimize(m).size() == m.size());
    CHECK(language_equivalent(m, a));
  }
}

TEST_CASE("verify_decomposition accepts the requests decomposition") {
  RequestsOutput req = gen_requests(2);
  Decomposition dec = verify_decomposition(req.monolith, req.factors);
  CHECK(dec.verified);
}

TEST_CASE("verify_decomposition rejects a factor that is not smaller") {
  Dfa a = gen_gridmod(3, 2);
  Decomposition dec = verify_decomposition(a, {a});
  CHECK(!dec.verified);
}

TEST_CASE("verify_decomposition is inconclusive when the cap is hit") {
  RequestsOutput req = gen_requests(3);
  CHECK_THROWS_AS(verify_decomposition(req.monolith, req.factors, 2), CapExceeded);
}

TEST_CASE("product languages are included in both operands") {
  std::mt19937_64 seeds(23);
  for (int i = 0; i < 25; ++i) {
    Dfa a = gen_random(5, 2, seeds());
    Dfa b = gen_random(4, 2, seeds());
    b.alphabet = a.alphabet;
    Dfa p = product(a, b);
    CHECK(language_inclusion(p, a).holds);
    CHECK(language_inclusion(p, b).holds);
  }
}

TEST_CASE("permutation classification means every letter column is onto") {
  std::mt19937_64 seeds(37);
  RandomDfaFlags perm{.permutation = true};
  for (int i = 0; i < 20; ++i) {
    Dfa a = gen_random(6, 2, seeds(), perm);
    REQUIRE(classify(a).permutation);
    for (int l = 0; l < a.letters(); ++l) {
      std::vector<bool> image(a.size(), false);
      for (int q = 0; q < a.size(); ++q) image[a.step(q, l)] = true;
      int count = 0;
      for (bool b : image) count += b;
      CHECK(count == a.size());
    }
  }
}

TEST_CASE("a verified decomposition matches the folded product language") {
  RequestsOutput req = gen_requests(3);
  Decomposition dec = verify_decomposition(req.monolith, req.factors);
  REQUIRE(dec.verified);
  Dfa folded = dec.factors[0];
  for (std::size_t i = 1; i < dec.factors.size(); ++i) folded = product(folded, dec.factors[i]);
  CHECK(language_inclusion(req.monolith, folded).holds);
  CHECK(language_inclusion(folded, req.monolith).holds);
}
