#include "dfadec/dfa.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace dfadec {

void Dfa::validate() const {
  if (alphabet.empty()) throw std::invalid_argument("alphabet: must be non-empty");
  {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
      if (!seen.insert(alphabet[i]).second)
        throw std::invalid_argument("alphabet[" + std::to_string(i) +
                                    "]: duplicate letter '" + alphabet[i] + "'");
    }
  }
  int n = size();
  if (n == 0) throw std::invalid_argument("transitions: must list at least one state");
  if (initial < 0 || initial >= n)
    throw std::invalid_argument("initial: state index out of range");
  for (int q = 0; q < n; ++q) {
    if (transitions[q].size() != alphabet.size())
      throw std::invalid_argument("transitions[" + std::to_string(q) +
                                  "]: expected one target per letter");
    for (int l = 0; l < letters(); ++l) {
      State t = transitions[q][l];
      if (t < 0 || t >= n)
        throw std::invalid_argument("transitions[" + std::to_string(q) + "][" +
                                    std::to_string(l) + "]: state index out of range");
    }
  }
  if (accepting.size() != transitions.size())
    throw std::invalid_argument("accepting: must cover every state");
}

namespace {

// Reachable states in BFS discovery order, letters expanded in alphabet order.
std::vector<State> bfs_order(const Dfa& a) {
  std::vector<State> order;
  std::vector<bool> seen(a.size(), false);
  order.push_back(a.initial);
  seen[a.initial] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    State q = order[i];
    for (int l = 0; l < a.letters(); ++l) {
      State t = a.step(q, l);
      if (!seen[t]) {
        seen[t] = true;
        order.push_back(t);
      }
    }
  }
  return order;
}

Dfa renumber(const Dfa& a, const std::vector<State>& order) {
  std::vector<State> pos(a.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<State>(i);
  Dfa r;
  r.alphabet = a.alphabet;
  r.initial = pos[a.initial];
  r.transitions.resize(order.size(), std::vector<State>(a.letters()));
  r.accepting.resize(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    State q = order[i];
    r.accepting[i] = a.accepting[q];
    for (int l = 0; l < a.letters(); ++l) r.transitions[i][l] = pos[a.step(q, l)];
  }
  return r;
}

void require_same_alphabet(const Dfa& a, const Dfa& b) {
  if (a.alphabet != b.alphabet)
    throw std::invalid_argument("alphabet mismatch: operands must share the same "
                                "letters in the same order");
}

}  // namespace

bool is_trim(const Dfa& a) {
  return bfs_order(a).size() == static_cast<std::size_t>(a.size());
}

Dfa trim(const Dfa& a) { return renumber(a, bfs_order(a)); }

bool is_permutation(const Dfa& a) {
  for (int l = 0; l < a.letters(); ++l) {
    std::vector<bool> hit(a.size(), false);
    for (int q = 0; q < a.size(); ++q) {
      State t = a.step(q, l);
      if (hit[t]) return false;
      hit[t] = true;
    }
  }
  return true;
}

bool is_commutative(const Dfa& a) {
  // Letter-level commutation implies word-level commutation, since every word
  // action is a composition of letter actions.
  for (int l1 = 0; l1 < a.letters(); ++l1) {
    for (int l2 = l1 + 1; l2 < a.letters(); ++l2) {
      for (int q = 0; q < a.size(); ++q) {
        if (a.step(a.step(q, l1), l2) != a.step(a.step(q, l2), l1)) return false;
      }
    }
  }
  return true;
}

DfaClass classify(const Dfa& a) {
  DfaClass c;
  c.trim = is_trim(a);
  c.unary = a.letters() == 1;
  c.permutation = is_permutation(a);
  c.commutative = is_commutative(a);
  c.minimal = c.trim && minimize(a).size() == a.size();
  return c;
}

Dfa product(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  Dfa p;
  p.alphabet = a.alphabet;
  p.initial = 0;
  std::unordered_map<std::int64_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  auto key = [&](State qa, State qb) {
    return static_cast<std::int64_t>(qa) * b.size() + qb;
  };
  auto intern = [&](State qa, State qb) {
    auto [it, fresh] = index.try_emplace(key(qa, qb), static_cast<State>(pairs.size()));
    if (fresh) pairs.emplace_back(qa, qb);
    return it->second;
  };
  intern(a.initial, b.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    p.transitions.emplace_back();
    p.transitions.back().reserve(a.letters());
    for (int l = 0; l < a.letters(); ++l)
      p.transitions.back().push_back(intern(a.step(qa, l), b.step(qb, l)));
    p.accepting.push_back(a.accepting[qa] && b.accepting[qb]);
  }
  return p;
}

namespace {

// Shortest word leading the pair (a.initial, b.initial) to a pair matching
// `goal`, found by BFS over the reachable pair space.
template <typename Goal>
std::optional<Word> pair_search(const Dfa& a, const Dfa& b, Goal goal) {
  struct Node {
    State qa, qb;
    int parent;
    int letter;
  };
  std::vector<Node> nodes;
  std::vector<bool> seen(static_cast<std::size_t>(a.size()) * b.size(), false);
  auto idx = [&](State qa, State qb) {
    return static_cast<std::size_t>(qa) * b.size() + qb;
  };
  auto emit = [&](int at) {
    Word w;
    for (int i = at; nodes[i].parent >= 0; i = nodes[i].parent) w.push_back(nodes[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
  };
  nodes.push_back({a.initial, b.initial, -1, -1});
  seen[idx(a.initial, b.initial)] = true;
  if (goal(a.initial, b.initial)) return emit(0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int l = 0; l < a.letters(); ++l) {
      State ta = a.step(nodes[i].qa, l);
      State tb = b.step(nodes[i].qb, l);
      if (seen[idx(ta, tb)]) continue;
      seen[idx(ta, tb)] = true;
      nodes.push_back({ta, tb, static_cast<int>(i), l});
      if (goal(ta, tb)) return emit(static_cast<int>(nodes.size()) - 1);
    }
  }
  return std::nullopt;
}

}  // namespace

Inclusion language_inclusion(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  auto witness = pair_search(a, b, [&](State qa, State qb) {
    return a.accepting[qa] && !b.accepting[qb];
  });
  if (witness) return {false, *witness};
  return {true, {}};
}

std::optional<Word> equivalence_counterexample(const Dfa& a, const Dfa& b) {
  require_same_alphabet(a, b);
  return pair_search(a, b, [&](State qa, State qb) {
    return a.accepting[qa] != b.accepting[qb];
  });
}

bool language_equivalent(const Dfa& a, const Dfa& b) {
  return !equivalence_counterexample(a, b).has_value();
}

Dfa minimize(const Dfa& a0) {
  Dfa a = trim(a0);
  int n = a.size();

  // Moore refinement: split blocks by (own block, successor blocks) signature
  // until stable. Block ids are assigned by first occurrence in state order,
  // which keeps the result deterministic.
  std::vector<int> block(n);
  for (int q = 0; q < n; ++q) block[q] = a.accepting[q] ? 1 : 0;
  // Normalize in case one of the two classes is empty.
  {
    std::map<int, int> remap;
    for (int q = 0; q < n; ++q) {
      auto [it, fresh] = remap.try_emplace(block[q], static_cast<int>(remap.size()));
      (void)fresh;
      block[q] = it->second;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig;
      sig.reserve(a.letters() + 1);
      sig.push_back(block[q]);
      for (int l = 0; l < a.letters(); ++l) sig.push_back(block[a.step(q, l)]);
      auto [it, fresh] = sig_ids.try_emplace(std::move(sig), static_cast<int>(sig_ids.size()));
      (void)fresh;
      next[q] = it->second;
    }
    bool stable = sig_ids.size() == static_cast<std::size_t>(*std::max_element(block.begin(), block.end()) + 1);
    block = std::move(next);
    if (stable) break;
  }

  int blocks = *std::max_element(block.begin(), block.end()) + 1;
  Dfa q;
  q.alphabet = a.alphabet;
  q.initial = block[a.initial];
  q.transitions.assign(blocks, std::vector<State>(a.letters()));
  q.accepting.assign(blocks, false);
  for (int s = 0; s < n; ++s) {
    q.accepting[block[s]] = a.accepting[s];
    for (int l = 0; l < a.letters(); ++l) q.transitions[block[s]][l] = block[a.step(s, l)];
  }
  return renumber(q, bfs_order(q));
}

Decomposition verify_decomposition(const Dfa& a, std::vector<Dfa> factors,
                                   std::size_t cap) {
  for (const Dfa& f : factors) require_same_alphabet(a, f);

  Decomposition dec;
  dec.factors = std::move(factors);
  for (const Dfa& f : dec.factors) {
    if (f.size() >= a.size()) return dec;  // not strictly smaller
  }
  for (const Dfa& f : dec.factors) {
    if (!language_inclusion(a, f).holds) return dec;
  }

  // Remains to rule out a word accepted by every factor but rejected by a:
  // lazy BFS over the joint product of a with all factors.
  std::size_t k = dec.factors.size();
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
  std::unordered_set<std::vector<State>, VecHash> seen;
  std::deque<std::vector<State>> queue;
  std::vector<State> start(k + 1);
  start[0] = a.initial;
  for (std::size_t i = 0; i < k; ++i) start[i + 1] = dec.factors[i].initial;
  seen.insert(start);
  queue.push_back(std::move(start));
  while (!queue.empty()) {
    std::vector<State> node = std::move(queue.front());
    queue.pop_front();
    bool all_accept = true;
    for (std::size_t i = 0; i < k && all_accept; ++i)
      all_accept = dec.factors[i].accepting[node[i + 1]];
    if (all_accept && !a.accepting[node[0]]) return dec;  // strict superset word
    for (int l = 0; l < a.letters(); ++l) {
      std::vector<State> succ(k + 1);
      succ[0] = a.step(node[0], l);
      for (std::size_t i = 0; i < k; ++i) succ[i + 1] = dec.factors[i].step(node[i + 1], l);
      if (seen.insert(succ).second) {
        if (seen.size() > cap)
          throw CapExceeded("verify_decomposition: joint product exceeded " +
                            std::to_string(cap) + " explored states; inconclusive");
        queue.push_back(std::move(succ));
      }
    }
  }
  dec.verified = true;
  return dec;
}

}  // namespace dfadec
