#include "dfadec/orbit.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace dfadec {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_trim_permutation(const Dfa& a) {
  if (!is_permutation(a)) throw std::invalid_argument("not a permutation DFA");
  if (!is_trim(a)) throw std::invalid_argument("not trim");
}

}  // namespace

const char* to_string(VerdictReason r) {
  switch (r) {
    case VerdictReason::prime_state_count: return "prime-state-count";
    case VerdictReason::all_covered: return "all-covered";
    case VerdictReason::uncovered_state: return "uncovered-state";
    case VerdictReason::not_applicable: return "not-applicable";
  }
  return "?";
}

StateSet subset_step(const Dfa& a, const StateSet& u, int letter) {
  StateSet r(a.size());
  u.for_each([&](int q) { r.set(a.step(q, letter)); });
  return r;
}

Orbit orbit_of(const Dfa& a, const StateSet& seed, std::size_t cap) {
  assert(cap >= 1);
  Orbit orbit;
  std::unordered_set<StateSet> seen;
  orbit.members.push_back(seed);
  seen.insert(seed);
  if (orbit.members.size() >= cap) return orbit;  // complete = false
  for (std::size_t i = 0; i < orbit.members.size(); ++i) {
    for (int l = 0; l < a.letters(); ++l) {
      StateSet next = subset_step(a, orbit.members[i], l);
      if (seen.insert(next).second) {
        orbit.members.push_back(std::move(next));
        if (orbit.members.size() >= cap) return orbit;
      }
    }
  }
  orbit.complete = true;
  return orbit;
}

OrbitDfa orbit_dfa(const Dfa& a, const StateSet& seed, std::size_t cap) {
  if (!seed.test(a.initial))
    throw std::invalid_argument("orbit_dfa: seed must contain the initial state");

  OrbitDfa od;
  od.seed = seed;
  std::unordered_map<StateSet, State> index;
  od.members.push_back(seed);
  index.emplace(seed, 0);

  Dfa& d = od.as_dfa;
  d.alphabet = a.alphabet;
  d.initial = 0;
  StateSet acc(a.size());
  for (int q = 0; q < a.size(); ++q) {
    if (a.accepting[q]) acc.set(q);
  }
  for (std::size_t i = 0; i < od.members.size(); ++i) {
    d.transitions.emplace_back();
    d.accepting.push_back(od.members[i].intersects(acc));
    for (int l = 0; l < a.letters(); ++l) {
      StateSet next = subset_step(a, od.members[i], l);
      auto [it, fresh] = index.try_emplace(next, static_cast<State>(od.members.size()));
      if (fresh) {
        od.members.push_back(std::move(next));
        if (cap > 0 && od.members.size() > cap)
          throw CapExceeded("orbit_dfa: orbit exceeded cap of " + std::to_string(cap));
      }
      d.transitions.back().push_back(it->second);
    }
  }
  return od;
}

namespace {

// Orbit search engine used by the composite decision. Seeds are subsets of
// the rejecting set, so members keep a fixed small cardinality (the host is a
// permutation DFA) and are stored as sorted index vectors; steps then cost
// O(|U|) instead of O(n/64).
struct CoverSearch {
  const Dfa& a;
  std::vector<std::vector<State>> letter_perm;  // [letter][state]
  StateSet rejecting;

  struct VecHash {
    std::size_t operator()(const std::vector<State>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (State s : v) {
        h ^= static_cast<std::size_t>(s) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
      }
      return h;
    }
  };
  // seed -> member containing the initial state, or nullopt when the orbit
  // reached host size. Every discovered member inside the rejecting set is a
  // key: in a permutation DFA all members of an orbit generate that orbit.
  std::unordered_map<std::vector<State>, std::optional<std::vector<State>>, VecHash> memo;

  explicit CoverSearch(const Dfa& host) : a(host) {
    letter_perm.assign(a.letters(), std::vector<State>(a.size()));
    for (int l = 0; l < a.letters(); ++l) {
      for (State q = 0; q < a.size(); ++q) letter_perm[l][q] = a.step(q, l);
    }
    rejecting = StateSet(a.size());
    for (State q = 0; q < a.size(); ++q) {
      if (!a.accepting[q]) rejecting.set(q);
    }
  }

  bool inside_rejecting(const std::vector<State>& u) const {
    for (State q : u) {
      if (!rejecting.test(q)) return false;
    }
    return true;
  }

  // BFS closure with cap n. Returns the first discovered member containing
  // the initial state when the orbit stays smaller than the host.
  std::optional<std::vector<State>> run(const std::vector<State>& seed) {
    if (auto it = memo.find(seed); it != memo.end()) return it->second;

    std::size_t cap = static_cast<std::size_t>(a.size());
    std::vector<std::vector<State>> members{seed};
    std::unordered_set<std::vector<State>, VecHash> seen{seed};
    bool complete = members.size() < cap;
    for (std::size_t i = 0; i < members.size() && complete; ++i) {
      for (int l = 0; l < a.letters(); ++l) {
        std::vector<State> next(members[i].size());
        for (std::size_t j = 0; j < next.size(); ++j) next[j] = letter_perm[l][members[i][j]];
        std::sort(next.begin(), next.end());
        if (seen.insert(next).second) {
          members.push_back(std::move(next));
          if (members.size() >= cap) {
            complete = false;
            break;
          }
        }
      }
    }

    std::optional<std::vector<State>> result;
    if (complete) {
      for (const auto& m : members) {
        if (std::binary_search(m.begin(), m.end(), a.initial)) {
          result = m;
          break;
        }
      }
      // Trim permutation host: some member holds the initial state.
      assert(result.has_value());
    }
    for (const auto& m : members) {
      if (inside_rejecting(m)) memo.try_emplace(m, result);
    }
    return result;
  }

  // Subsets of the rejecting states containing p, in increasing cardinality
  // and lexicographic order within a cardinality.
  std::optional<std::vector<State>> cover(State p) {
    std::vector<State> others;
    rejecting.for_each([&](int q) {
      if (q != p) others.push_back(q);
    });
    int m = static_cast<int>(others.size());
    for (int extra = 0; extra <= m; ++extra) {
      std::vector<int> comb(extra);
      for (int i = 0; i < extra; ++i) comb[i] = i;
      while (true) {
        std::vector<State> seed;
        seed.reserve(extra + 1);
        for (int i : comb) seed.push_back(others[i]);
        seed.push_back(p);
        std::sort(seed.begin(), seed.end());
        if (auto hit = run(seed)) return hit;
        // next combination
        int i = extra - 1;
        while (i >= 0 && comb[i] == m - extra + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < extra; ++j) comb[j] = comb[j - 1] + 1;
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<StateSet> orbit_covers(const Dfa& a, const StateSet& uprime, State q) {
  require_trim_permutation(a);
  if (a.accepting[q]) throw std::invalid_argument("orbit_covers: q must be rejecting");
  if (!uprime.test(q)) throw std::invalid_argument("orbit_covers: q must be in the seed");
  bool all_rejecting = true;
  uprime.for_each([&](int s) { all_rejecting = all_rejecting && !a.accepting[s]; });
  if (!all_rejecting)
    throw std::invalid_argument("orbit_covers: seed must contain only rejecting states");

  CoverSearch search(a);
  auto member = search.run(uprime.to_vector());
  if (!member) return std::nullopt;
  return StateSet::of(a.size(), *member);
}

CompositeVerdict is_composite_permutation(const Dfa& a) {
  require_trim_permutation(a);

  CompositeVerdict v;
  int n = a.size();
  if (n == 1) {
    // No smaller DFA exists.
    v.composite = false;
    v.reason = VerdictReason::not_applicable;
    return v;
  }

  std::vector<State> rejecting;
  for (State q = 0; q < n; ++q) {
    if (!a.accepting[q]) rejecting.push_back(q);
  }

  if (rejecting.empty()) {
    // Language is Sigma*; the one-state minimal DFA is a decomposition.
    v.composite = true;
    v.reason = VerdictReason::all_covered;
    return v;
  }
  if (static_cast<int>(rejecting.size()) == n) {
    // Language is empty; the full set Q seeds a one-state rejecting factor.
    v.composite = true;
    v.reason = VerdictReason::all_covered;
    for (State q : rejecting) v.covers.emplace(q, StateSet::full(n));
    return v;
  }

  if (is_prime(n)) {
    v.composite = false;
    v.reason = VerdictReason::prime_state_count;
    return v;
  }

  CoverSearch search(a);
  for (State p : rejecting) {
    auto witness = search.cover(p);
    if (!witness) {
      v.composite = false;
      v.reason = VerdictReason::uncovered_state;
      v.uncovered = p;
      v.covers.clear();
      return v;
    }
    v.covers.emplace(p, StateSet::of(n, *witness));
  }
  v.composite = true;
  v.reason = VerdictReason::all_covered;
  return v;
}

Decomposition extract_orbit_decomposition(const Dfa& a, const CompositeVerdict& v) {
  if (!v.composite)
    throw std::invalid_argument("extract_orbit_decomposition: verdict is not composite");

  if (a.rejecting_count() == 0) {
    // Sigma* with more than one state: the minimal equivalent is the factor.
    Decomposition dec = verify_decomposition(a, {minimize(a)});
    if (!dec.verified) throw std::logic_error("degenerate decomposition failed verification");
    return dec;
  }

  // One factor per orbit member containing the initial state, for every
  // distinct witness orbit; identical seeds are built once.
  std::vector<StateSet> seeds;
  std::unordered_set<StateSet> seen_witness;
  std::unordered_set<StateSet> seen_seed;
  for (const auto& [state, witness] : v.covers) {
    (void)state;
    if (!seen_witness.insert(witness).second) continue;
    Orbit orbit = orbit_of(a, witness, static_cast<std::size_t>(a.size()));
    assert(orbit.complete);
    for (const StateSet& member : orbit.members) {
      if (member.test(a.initial) && seen_seed.insert(member).second) seeds.push_back(member);
    }
  }

  std::vector<Dfa> factors;
  factors.reserve(seeds.size());
  for (const StateSet& seed : seeds)
    factors.push_back(orbit_dfa(a, seed, static_cast<std::size_t>(a.size())).as_dfa);

  Decomposition dec = verify_decomposition(a, std::move(factors));
  if (!dec.verified)
    throw std::logic_error("extract_orbit_decomposition: witnessed factors failed verification");
  return dec;
}

}  // namespace dfadec
