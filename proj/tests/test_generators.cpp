#include <doctest.h>

#include <random>
#include <set>

#include "dfadec/commutative.hpp"
#include "dfadec/generators.hpp"
#include "dfadec/orbit.hpp"
#include "helpers.hpp"

using namespace dfadec;

TEST_CASE("gridmod counts: states and accepting set by direct enumeration") {
  Dfa a = gen_gridmod(5, 2);
  CHECK(a.size() == 25);
  int accepting = 0;
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      bool has_zero = x == 0 || y == 0;
      bool has_nonzero = x != 0 || y != 0;
      bool expect = has_zero && has_nonzero;
      CHECK(a.accepting[x * 5 + y] == expect);
      accepting += expect;
    }
  }
  CHECK(accepting == 8);  // exactly one zero coordinate: 2 * 4
  DfaClass c = classify(a);
  CHECK(c.trim);
  CHECK(c.permutation);
  CHECK(c.commutative);
}

TEST_CASE("gridmod with one letter recognises the empty language") {
  Dfa a = gen_gridmod(4, 1);
  for (int q = 0; q < a.size(); ++q) CHECK(!a.accepting[q]);
}

TEST_CASE("the gridmod origin rejects") {
  CHECK(!gen_gridmod(3, 2).accepting[0]);
}

TEST_CASE("gridmod class flags hold for a parameter sweep") {
  for (int n = 2; n <= 7; ++n) {
    for (int m = 1; m <= 3; ++m) {
      Dfa a = gen_gridmod(n, m);
      int expect = 1;
      for (int i = 0; i < m; ++i) expect *= n;
      CHECK(a.size() == expect);
      DfaClass c = classify(a);
      CHECK(c.trim);
      CHECK(c.permutation);
      CHECK(c.commutative);
      CHECK(c.unary == (m == 1));
    }
  }
}

TEST_CASE("hitting-set reduction: the documented instance") {
  HittingSetInstance inst{2, {{1}, {1, 2}, {2}}, 2};
  ReductionOutput red = gen_hitting_set(inst);
  CHECK(red.mu == 3);
  CHECK(red.tau == 5);
  CHECK(red.dfa.size() == 90);
  CHECK(red.factor_bound == 3);
  DfaClass c = classify(red.dfa);
  CHECK(c.trim);
  CHECK(c.permutation);
  CHECK(c.commutative);

  CHECK(min_hitting_set(inst) == 2);
  CHECK(width_commutative(red.dfa).width == 3);
}

TEST_CASE("hitting-set reduction: a single singleton set") {
  HittingSetInstance inst{1, {{1}}, 1};
  ReductionOutput red = gen_hitting_set(inst);
  CHECK(red.mu == 3);
  CHECK(red.tau == 5);
  CHECK(red.dfa.size() == 90);
  CHECK(min_hitting_set(inst) == 1);
  CHECK(width_commutative(red.dfa).width == 2);
}

TEST_CASE("hitting-set reduction rejects malformed instances") {
  CHECK_THROWS_AS(gen_hitting_set(HittingSetInstance{2, {{}}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_hitting_set(HittingSetInstance{2, {{3}}, 1}), std::invalid_argument);
  CHECK_THROWS_AS(gen_hitting_set(HittingSetInstance{0, {}, 1}), std::invalid_argument);
}

TEST_CASE("hitting-set instance JSON parsing") {
  HittingSetInstance inst = parse_hitting_set(R"({"n": 2, "sets": [[1],[1,2],[2]], "k": 2})");
  CHECK(inst.n == 2);
  CHECK(inst.sets.size() == 3);
  CHECK(inst.k == 2);
  CHECK_THROWS_AS(parse_hitting_set("no"), std::invalid_argument);
}

namespace {

// Claims about covering words on a reduction output, asserted over the
// deduplicated action table. O is the set of axis states (0, 0, i, *).
struct ReductionFacts {
  ReductionOutput red;
  std::vector<CoverSet> sets;
  StateSet rejecting;
  StateSet axis_rejecting;   // rejecting states with q1 = q2 = 0
  StateSet top;              // q4 = 1
  std::vector<State> d_perm;

  explicit ReductionFacts(const HittingSetInstance& inst) : red(gen_hitting_set(inst)) {
    const Dfa& a = red.dfa;
    sets = enumerate_cover_sets(a);
    rejecting = StateSet(a.size());
    axis_rejecting = StateSet(a.size());
    top = StateSet(a.size());
    long long mu = red.mu, tau = red.tau;
    for (State q = 0; q < a.size(); ++q) {
      long long q4 = q % 2;
      long long q3 = (q / 2) % tau;
      long long q2 = (q / (2 * tau)) % mu;
      long long q1 = q / (2 * tau * mu);
      (void)q3;
      if (!a.accepting[q]) rejecting.set(q);
      if (!a.accepting[q] && q1 == 0 && q2 == 0) axis_rejecting.set(q);
      if (q4 == 1) top.set(q);
    }
    d_perm = word_action(a, ParikhWord{{0, 0, 0, 1}}).perm;
  }
};

}  // namespace

TEST_CASE("reduction claims on covering actions") {
  for (const HittingSetInstance& inst :
       {HittingSetInstance{2, {{1}, {1, 2}, {2}}, 2}, HittingSetInstance{3, {{1, 3}, {2}}, 2},
        HittingSetInstance{2, {{2}}, 1}}) {
    ReductionFacts facts(inst);
    const Dfa& a = facts.red.dfa;
    long long mu = facts.red.mu;

    // Claim: every covering action's canonical word uses only the flip
    // letter, or both grid letters and nothing else.
    for (const CoverSet& cs : facts.sets) {
      const auto& counts = cs.action.representative.counts;
      REQUIRE(counts.size() == 4);
      bool only_flip = counts[0] == 0 && counts[1] == 0 && counts[2] == 0 && counts[3] > 0;
      bool both_grid = counts[0] > 0 && counts[1] > 0 && counts[2] == 0 && counts[3] == 0;
      CHECK((only_flip || both_grid));
    }

    // Claim: the flip letter covers exactly the rejecting states off the
    // axis, and it is the only action covering any top-copy state.
    StateSet off_axis(a.size());
    facts.rejecting.for_each([&](int q) {
      if (!facts.axis_rejecting.test(q)) off_axis.set(q);
    });
    bool saw_flip = false;
    for (const CoverSet& cs : facts.sets) {
      if (cs.action.perm == facts.d_perm) {
        saw_flip = true;
        CHECK(cs.covered == off_axis);
      } else {
        CHECK(!cs.covered.intersects(facts.top));
      }
    }
    CHECK(saw_flip);

    // Claim: an action covers the axis state of plane i exactly when it uses
    // the two grid letters with counts[1] = v * counts[0] mod mu for some v
    // in the i-th set.
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
      long long tau = facts.red.tau;
      State axis_state = static_cast<State>((0 * mu + 0) * tau * 2 + (i + 1) * 2 + 0);
      REQUIRE(facts.axis_rejecting.test(axis_state));
      for (const CoverSet& cs : facts.sets) {
        const auto& counts = cs.action.representative.counts;
        bool grid_word = counts[0] > 0 && counts[1] > 0 && counts[2] == 0 && counts[3] == 0;
        bool slope_matches = false;
        if (grid_word) {
          for (int v : inst.sets[i])
            slope_matches = slope_matches || (counts[1] % mu == (v * counts[0]) % mu);
        }
        CHECK(cs.covered.test(axis_state) == (grid_word && slope_matches));
      }
    }
  }
}

TEST_CASE("requests: monolith sizes, factor shapes, verification") {
  for (int clients : {2, 3}) {
    RequestsOutput req = gen_requests(clients);
    CHECK(req.monolith.size() == (1 << clients));
    CHECK(req.factors.size() == static_cast<std::size_t>(clients));
    for (const Dfa& f : req.factors) CHECK(f.size() == 2);
    CHECK(verify_decomposition(req.monolith, req.factors).verified);
  }
}

TEST_CASE("requests with one client cannot decompose into itself-sized factors") {
  RequestsOutput req = gen_requests(1);
  CHECK(req.monolith.size() == 2);
  CHECK(req.factors.size() == 1);
  CHECK(req.factors[0].size() == 2);
  CHECK(!verify_decomposition(req.monolith, req.factors).verified);
}

TEST_CASE("random generation is deterministic per seed") {
  RandomDfaFlags perm{.permutation = true};
  CHECK(gen_random(7, 2, 42, perm) == gen_random(7, 2, 42, perm));
  CHECK(gen_random(9, 3, 7) == gen_random(9, 3, 7));
  CHECK(gen_random(7, 2, 42, perm) != gen_random(7, 2, 43, perm));
}

TEST_CASE("random class flags match the request") {
  std::mt19937_64 seeds(137);
  RandomDfaFlags perm{.permutation = true};
  RandomDfaFlags comm{.permutation = true, .commutative = true};
  for (int i = 0; i < 20; ++i) {
    Dfa p = gen_random(7, 2, seeds(), perm);
    DfaClass pc = classify(p);
    CHECK(pc.trim);
    CHECK(pc.permutation);

    Dfa c = gen_random(6, 2, seeds(), comm);
    DfaClass cc = classify(c);
    CHECK(cc.trim);
    CHECK(cc.permutation);
    CHECK(cc.commutative);
  }
}

TEST_CASE("random prime-size permutation DFAs are prime") {
  std::mt19937_64 seeds(139);
  RandomDfaFlags perm{.permutation = true};
  for (int i = 0; i < 10; ++i) {
    Dfa a = gen_random(7, 2, seeds(), perm);
    CHECK(!is_composite_permutation(a).composite);
  }
}

TEST_CASE("contradictory random flags are rejected") {
  RandomDfaFlags bad{.permutation = false, .commutative = true};
  CHECK_THROWS_AS(gen_random(5, 2, 1, bad), std::invalid_argument);
}

TEST_CASE("reduction correctness on a couple of instances") {
  // The exhaustive sweep runs in the acceptance suite.
  for (const HittingSetInstance& inst :
       {HittingSetInstance{2, {{1}, {2}}, 2}, HittingSetInstance{2, {{1, 2}}, 1}}) {
    ReductionOutput red = gen_hitting_set(inst);
    int h = min_hitting_set(inst);
    CHECK(is_k_factor_composite_commutative(red.dfa, h + 1));
    if (h > 0) CHECK(!is_k_factor_composite_commutative(red.dfa, h));
  }
}
