#include "dfadec/commutative.hpp"

#include <algorithm>
#include <numeric>

namespace dfadec {

namespace {

void require_trim_commutative_permutation(const Dfa& a) {
  if (!is_permutation(a)) throw std::invalid_argument("not a permutation DFA");
  if (!is_commutative(a)) throw std::invalid_argument("not commutative");
  if (!is_trim(a)) throw std::invalid_argument("not trim");
}

std::vector<State> identity_perm(int n) {
  std::vector<State> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// r[q] = g[f[q]]: apply f, then g.
std::vector<State> compose(const std::vector<State>& f, const std::vector<State>& g) {
  std::vector<State> r(f.size());
  for (std::size_t q = 0; q < f.size(); ++q) r[q] = g[f[q]];
  return r;
}

std::vector<State> perm_power(std::vector<State> base, long long e) {
  std::vector<State> r = identity_perm(static_cast<int>(base.size()));
  while (e > 0) {
    if (e & 1) r = compose(r, base);
    base = compose(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<State> letter_column(const Dfa& a, int l) {
  std::vector<State> p(a.size());
  for (State q = 0; q < a.size(); ++q) p[q] = a.step(q, l);
  return p;
}

StateSet covered_states(const Dfa& a, const std::vector<State>& perm) {
  // Cycle decomposition; a cycle contributes iff it is non-trivial and free
  // of accepting states.
  int n = a.size();
  StateSet covered(n);
  std::vector<bool> visited(n, false);
  for (State q = 0; q < n; ++q) {
    if (visited[q]) continue;
    std::vector<State> cycle;
    State s = q;
    bool rejecting_only = true;
    do {
      visited[s] = true;
      cycle.push_back(s);
      rejecting_only = rejecting_only && !a.accepting[s];
      s = perm[s];
    } while (s != q);
    if (cycle.size() > 1 && rejecting_only) {
      for (State c : cycle) covered.set(c);
    }
  }
  return covered;
}

StateSet initial_cycle(const Dfa& a, const std::vector<State>& perm) {
  StateSet u(a.size());
  State s = a.initial;
  do {
    u.set(s);
    s = perm[s];
  } while (s != a.initial);
  return u;
}

struct ActionTable {
  std::vector<WordAction> actions;  // non-identity, BFS discovery order
};

// Distinct word actions of a trim commutative permutation DFA. The action
// group is abelian and transitive, hence regular: an action is determined by
// the image of the initial state, so BFS over states enumerates the whole
// group with shortest representative words.
ActionTable enumerate_actions(const Dfa& a) {
  int n = a.size();
  std::vector<std::vector<State>> cols(a.letters());
  for (int l = 0; l < a.letters(); ++l) cols[l] = letter_column(a, l);

  std::vector<int> kind(n, -1);  // discovery order, -1 = unseen
  std::vector<std::vector<State>> perm_of(n);
  std::vector<ParikhWord> word_of(n);
  std::vector<State> order;

  kind[a.initial] = 0;
  perm_of[a.initial] = identity_perm(n);
  word_of[a.initial].counts.assign(a.letters(), 0);
  order.push_back(a.initial);
  for (std::size_t i = 0; i < order.size(); ++i) {
    State s = order[i];
    for (int l = 0; l < a.letters(); ++l) {
      State t = cols[l][s];
      if (kind[t] >= 0) continue;
      kind[t] = static_cast<int>(order.size());
      perm_of[t] = compose(perm_of[s], cols[l]);
      word_of[t] = word_of[s];
      word_of[t].counts[l] += 1;
      order.push_back(t);
    }
  }

  ActionTable table;
  for (std::size_t i = 1; i < order.size(); ++i) {
    State s = order[i];
    table.actions.push_back({std::move(perm_of[s]), std::move(word_of[s])});
  }
  return table;
}

StateSet rejecting_set(const Dfa& a) {
  StateSet r(a.size());
  for (State q = 0; q < a.size(); ++q) {
    if (!a.accepting[q]) r.set(q);
  }
  return r;
}

// Exact minimum set cover with witness. Universe elements are indices into
// `rejecting_list`; sets[i] covers the elements of cover_sets[i]. Branches on
// the uncovered element with the fewest covering sets; candidate sets tried
// in descending covered-size order; pruned by an incumbent from the greedy
// bound and by ceil(uncovered / max set size).
struct SetCover {
  int universe = 0;
  std::vector<std::vector<int>> sets;       // element lists
  std::vector<std::vector<int>> coverers;   // element -> set indices
  int best = 0;
  std::vector<int> best_pick;
  int cutoff = 0;  // do not search deeper than this many sets

  explicit SetCover(int universe_size, const std::vector<std::vector<int>>& s)
      : universe(universe_size), sets(s), coverers(universe_size) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
      for (int e : sets[i]) coverers[e].push_back(static_cast<int>(i));
    }
  }

  bool coverable() const {
    for (int e = 0; e < universe; ++e) {
      if (coverers[e].empty()) return false;
    }
    return true;
  }

  std::vector<int> greedy() const {
    std::vector<bool> covered(universe, false);
    int remaining = universe;
    std::vector<int> pick;
    while (remaining > 0) {
      int best_set = -1, best_gain = 0;
      for (std::size_t i = 0; i < sets.size(); ++i) {
        int gain = 0;
        for (int e : sets[i]) gain += !covered[e];
        if (gain > best_gain) {
          best_gain = gain;
          best_set = static_cast<int>(i);
        }
      }
      assert(best_set >= 0);
      pick.push_back(best_set);
      for (int e : sets[best_set]) {
        if (!covered[e]) {
          covered[e] = true;
          --remaining;
        }
      }
    }
    return pick;
  }

  void search(std::vector<bool>& covered, int remaining, std::vector<int>& pick) {
    if (remaining == 0) {
      if (static_cast<int>(pick.size()) < best) {
        best = static_cast<int>(pick.size());
        best_pick = pick;
      }
      return;
    }
    int max_set = 0;
    for (const auto& s : sets) max_set = std::max(max_set, static_cast<int>(s.size()));
    int lower = static_cast<int>(pick.size()) + (remaining + max_set - 1) / max_set;
    if (lower >= best || static_cast<int>(pick.size()) + 1 > cutoff) return;

    int branch_elem = -1;
    std::size_t fewest = SIZE_MAX;
    for (int e = 0; e < universe; ++e) {
      if (!covered[e] && coverers[e].size() < fewest) {
        fewest = coverers[e].size();
        branch_elem = e;
      }
    }
    std::vector<int> options = coverers[branch_elem];
    std::stable_sort(options.begin(), options.end(), [&](int x, int y) {
      return sets[x].size() > sets[y].size();
    });
    for (int s : options) {
      std::vector<int> newly;
      for (int e : sets[s]) {
        if (!covered[e]) {
          covered[e] = true;
          newly.push_back(e);
        }
      }
      pick.push_back(s);
      search(covered, remaining - static_cast<int>(newly.size()), pick);
      pick.pop_back();
      for (int e : newly) covered[e] = false;
    }
  }

  // Minimum cover of size <= limit, or nullopt. Exact when limit >= universe.
  std::optional<std::vector<int>> solve(int limit) {
    if (universe == 0) return std::vector<int>{};
    if (!coverable()) return std::nullopt;
    std::vector<int> g = greedy();
    best = static_cast<int>(g.size()) + 1;
    best_pick.clear();
    cutoff = std::min(limit, static_cast<int>(g.size()));
    // The greedy pick is an incumbent when it fits the limit.
    if (static_cast<int>(g.size()) <= limit) {
      best = static_cast<int>(g.size());
      best_pick = g;
    }
    std::vector<bool> covered(universe, false);
    std::vector<int> pick;
    search(covered, universe, pick);
    if (best_pick.empty() && universe > 0 && best > limit) return std::nullopt;
    if (static_cast<int>(best_pick.size()) > limit) return std::nullopt;
    return best_pick;
  }
};

std::optional<std::vector<ParikhWord>> cover_words(const Dfa& a, int limit) {
  StateSet rejecting = rejecting_set(a);
  std::vector<State> universe = rejecting.to_vector();
  std::vector<int> elem_of(a.size(), -1);
  for (std::size_t i = 0; i < universe.size(); ++i) elem_of[universe[i]] = static_cast<int>(i);

  std::vector<CoverSet> cover_sets = enumerate_cover_sets(a);
  std::vector<std::vector<int>> sets;
  sets.reserve(cover_sets.size());
  for (const CoverSet& cs : cover_sets) {
    std::vector<int> elems;
    cs.covered.for_each([&](int q) { elems.push_back(elem_of[q]); });
    sets.push_back(std::move(elems));
  }

  SetCover solver(static_cast<int>(universe.size()), sets);
  auto pick = solver.solve(limit);
  if (!pick) return std::nullopt;
  std::vector<ParikhWord> words;
  words.reserve(pick->size());
  for (int i : *pick) words.push_back(cover_sets[i].action.representative);
  return words;
}

}  // namespace

WordAction word_action(const Dfa& a, const ParikhWord& p) {
  require_trim_commutative_permutation(a);
  if (p.counts.size() != static_cast<std::size_t>(a.letters()))
    throw std::invalid_argument("word_action: one count per letter expected");
  std::vector<State> perm = identity_perm(a.size());
  for (int l = 0; l < a.letters(); ++l) {
    if (p.counts[l] < 0) throw std::invalid_argument("word_action: negative letter count");
    if (p.counts[l] > 0) perm = compose(perm, perm_power(letter_column(a, l), p.counts[l]));
  }
  return {std::move(perm), p};
}

bool covers(const Dfa& a, const WordAction& w, State q) {
  if (a.accepting[q]) throw std::invalid_argument("covers: q must be rejecting");
  State s = w.perm[q];
  if (s == q) return false;  // a non-trivial cycle is required
  while (s != q) {
    if (a.accepting[s]) return false;
    s = w.perm[s];
  }
  return true;
}

std::vector<CoverSet> enumerate_cover_sets(const Dfa& a) {
  require_trim_commutative_permutation(a);
  ActionTable table = enumerate_actions(a);
  std::vector<CoverSet> result;
  for (WordAction& action : table.actions) {
    StateSet covered = covered_states(a, action.perm);
    if (!covered.empty()) result.push_back({std::move(action), std::move(covered)});
  }
  return result;
}

CompositeVerdict is_composite_commutative(const Dfa& a) {
  require_trim_commutative_permutation(a);
  CompositeVerdict v;
  if (a.size() == 1) {
    v.composite = false;
    v.reason = VerdictReason::not_applicable;
    return v;
  }

  std::vector<CoverSet> cover_sets = enumerate_cover_sets(a);
  StateSet rejecting = rejecting_set(a);
  bool all_covered = true;
  rejecting.for_each([&](int q) {
    if (!all_covered) return;
    for (const CoverSet& cs : cover_sets) {
      if (cs.covered.test(q)) {
        v.covers.emplace(q, initial_cycle(a, cs.action.perm));
        return;
      }
    }
    all_covered = false;
    v.uncovered = q;
  });

  if (all_covered) {
    v.composite = true;
    v.reason = VerdictReason::all_covered;
  } else {
    v.composite = false;
    v.reason = VerdictReason::uncovered_state;
    v.covers.clear();
  }
  return v;
}

WidthResult width_commutative(const Dfa& a) {
  require_trim_commutative_permutation(a);
  if (a.rejecting_count() == 0)
    throw std::invalid_argument(
        "width_commutative: no rejecting states; handle via the degenerate path");
  if (a.size() == 1) return {};  // prime sentinel

  auto words = cover_words(a, a.size());
  if (!words) return {};  // prime sentinel
  return {static_cast<int>(words->size()), std::move(*words)};
}

std::optional<std::vector<ParikhWord>> k_factor_witness_commutative(const Dfa& a, int k) {
  require_trim_commutative_permutation(a);
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  if (a.size() == 1) return std::nullopt;
  if (a.rejecting_count() == 0) return std::vector<ParikhWord>{};  // Sigma*, not minimal
  return cover_words(a, k);
}

bool is_k_factor_composite_commutative(const Dfa& a, int k) {
  return k_factor_witness_commutative(a, k).has_value();
}

Decomposition decomposition_from_words(const Dfa& a, const std::vector<ParikhWord>& words) {
  require_trim_commutative_permutation(a);
  std::vector<WordAction> actions;
  actions.reserve(words.size());
  for (const ParikhWord& w : words) {
    WordAction act = word_action(a, w);
    if (act.perm == identity_perm(a.size()))
      throw std::invalid_argument("decomposition_from_words: a word acts as the identity");
    actions.push_back(std::move(act));
  }

  for (State q = 0; q < a.size(); ++q) {
    if (a.accepting[q]) continue;
    bool hit = false;
    for (const WordAction& act : actions) {
      if (covers(a, act, q)) {
        hit = true;
        break;
      }
    }
    if (!hit)
      throw std::invalid_argument("decomposition_from_words: state " + std::to_string(q) +
                                  " is not covered by the given words");
  }

  std::vector<StateSet> seeds;
  for (const WordAction& act : actions) {
    StateSet u = initial_cycle(a, act.perm);
    if (std::find(seeds.begin(), seeds.end(), u) == seeds.end()) seeds.push_back(u);
  }
  std::vector<Dfa> factors;
  factors.reserve(seeds.size());
  for (const StateSet& seed : seeds)
    factors.push_back(orbit_dfa(a, seed, static_cast<std::size_t>(a.size())).as_dfa);

  Decomposition dec = verify_decomposition(a, std::move(factors));
  if (!dec.verified)
    throw std::logic_error("decomposition_from_words: constructed factors failed verification");
  return dec;
}

}  // namespace dfadec
