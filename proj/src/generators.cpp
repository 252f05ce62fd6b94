#include "dfadec/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <json.hpp>

namespace dfadec {

namespace {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

long long next_prime_above(long long n) {
  long long p = n + 1;
  while (!is_prime(p)) ++p;
  return p;
}

}  // namespace

Dfa gen_gridmod(int n, int m) {
  if (n < 2) throw std::invalid_argument("gen_gridmod: n must be at least 2");
  if (m < 1) throw std::invalid_argument("gen_gridmod: m must be at least 1");

  long long total = 1;
  for (int i = 0; i < m; ++i) {
    total *= n;
    if (total > 1'000'000) throw std::invalid_argument("gen_gridmod: n^m too large");
  }
  int states = static_cast<int>(total);

  Dfa a;
  for (int i = 1; i <= m; ++i) a.alphabet.push_back("a" + std::to_string(i));
  a.initial = 0;
  a.transitions.assign(states, std::vector<State>(m));
  a.accepting.assign(states, false);

  // State index encodes the tuple in mixed radix, component 1 most
  // significant: index = j_1*n^(m-1) + ... + j_m.
  std::vector<int> digits(m, 0);
  std::vector<long long> weight(m, 1);
  for (int i = m - 2; i >= 0; --i) weight[i] = weight[i + 1] * n;
  for (int q = 0; q < states; ++q) {
    int rest = q;
    bool has_zero = false, has_nonzero = false;
    for (int i = 0; i < m; ++i) {
      digits[i] = static_cast<int>(rest / weight[i]);
      rest = static_cast<int>(rest % weight[i]);
      (digits[i] == 0 ? has_zero : has_nonzero) = true;
    }
    a.accepting[q] = has_zero && has_nonzero;
    for (int i = 0; i < m; ++i) {
      int inc = (digits[i] + 1) % n;
      a.transitions[q][i] = static_cast<State>(q + (inc - digits[i]) * weight[i]);
    }
  }
  return a;
}

HittingSetInstance parse_hitting_set(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
    throw std::invalid_argument("hitting-set instance: expected fields n, sets, k");
  HittingSetInstance inst;
  inst.n = j["n"].get<int>();
  inst.sets = j["sets"].get<std::vector<std::vector<int>>>();
  inst.k = j.value("k", 0);
  return inst;
}

ReductionOutput gen_hitting_set(const HittingSetInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("hitting-set instance: n must be positive");
  for (std::size_t i = 0; i < inst.sets.size(); ++i) {
    if (inst.sets[i].empty())
      throw std::invalid_argument("hitting-set instance: sets[" + std::to_string(i) +
                                  "] is empty");
    for (int v : inst.sets[i]) {
      if (v < 1 || v > inst.n)
        throw std::invalid_argument("hitting-set instance: sets[" + std::to_string(i) +
                                    "] contains an element outside 1..n");
    }
  }

  int m = static_cast<int>(inst.sets.size());
  ReductionOutput out;
  out.mu = next_prime_above(std::max<long long>(inst.n, 2));
  out.tau = next_prime_above(std::max<long long>(m, out.mu));
  out.factor_bound = inst.k + 1;

  long long mu = out.mu, tau = out.tau;
  long long states = mu * mu * tau * 2;
  if (states > 2'000'000) throw std::invalid_argument("hitting-set instance: too large");

  Dfa& a = out.dfa;
  a.alphabet = {"a", "b", "c", "d"};
  a.initial = 0;
  a.transitions.assign(states, std::vector<State>(4));
  a.accepting.assign(states, true);

  auto index = [&](long long q1, long long q2, long long q3, long long q4) {
    return static_cast<State>(((q1 * mu + q2) * tau + q3) * 2 + q4);
  };
  for (long long q1 = 0; q1 < mu; ++q1) {
    for (long long q2 = 0; q2 < mu; ++q2) {
      for (long long q3 = 0; q3 < tau; ++q3) {
        for (long long q4 = 0; q4 < 2; ++q4) {
          State q = index(q1, q2, q3, q4);
          a.transitions[q][0] = index((q1 + 1) % mu, q2, q3, q4);
          a.transitions[q][1] = index(q1, (q2 + 1) % mu, q3, q4);
          a.transitions[q][2] = index(q1, q2, (q3 + 1) % tau, q4);
          a.transitions[q][3] = index(q1, q2, q3, (q4 + 1) % 2);
        }
      }
    }
  }

  // Rejecting states encode the collection: the line q2 = v*q1 (mod mu) of
  // plane q3 = i rejects for every v in the i-th set; the top copy (q4 = 1)
  // mirrors that off the axes.
  for (int i = 1; i <= m; ++i) {
    for (int v : inst.sets[i - 1]) {
      for (long long q1 = 0; q1 < mu; ++q1) {
        long long q2 = (static_cast<long long>(v) * q1) % mu;
        a.accepting[index(q1, q2, i, 0)] = false;
        if (q1 != 0 && q2 != 0) a.accepting[index(q1, q2, i, 1)] = false;
      }
    }
  }
  return out;
}

int min_hitting_set(const HittingSetInstance& inst) {
  int n = inst.n;
  if (inst.sets.empty()) return 0;
  for (int size = 1; size <= n; ++size) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      bool hits_all = true;
      for (const auto& set : inst.sets) {
        bool hit = false;
        for (int v : set) hit = hit || ((mask >> (v - 1)) & 1);
        if (!hit) {
          hits_all = false;
          break;
        }
      }
      if (hits_all) return size;
    }
  }
  throw std::logic_error("min_hitting_set: no hitting set found");  // sets non-empty
}

RequestsOutput gen_requests(int clients) {
  if (clients < 1) throw std::invalid_argument("gen_requests: clients must be at least 1");
  if (clients > 20) throw std::invalid_argument("gen_requests: too many clients");

  RequestsOutput out;
  std::vector<std::string> alphabet;
  for (int j = 1; j <= clients; ++j) alphabet.push_back("r" + std::to_string(j));
  for (int j = 1; j <= clients; ++j) alphabet.push_back("g" + std::to_string(j));
  alphabet.push_back("i");

  // Monolith: state = bitmask of open requests, accepting iff none open.
  Dfa& mono = out.monolith;
  mono.alphabet = alphabet;
  mono.initial = 0;
  int states = 1 << clients;
  mono.transitions.assign(states, std::vector<State>(alphabet.size()));
  mono.accepting.assign(states, false);
  mono.accepting[0] = true;
  for (int q = 0; q < states; ++q) {
    for (int j = 0; j < clients; ++j) {
      mono.transitions[q][j] = q | (1 << j);                // r_{j+1}
      mono.transitions[q][clients + j] = q & ~(1 << j);     // g_{j+1}
    }
    mono.transitions[q][2 * clients] = q;                   // i
  }

  for (int j = 0; j < clients; ++j) {
    Dfa f;
    f.alphabet = alphabet;
    f.initial = 0;
    f.transitions.assign(2, std::vector<State>(alphabet.size()));
    f.accepting = {true, false};
    for (int s = 0; s < 2; ++s) {
      for (std::size_t l = 0; l < alphabet.size(); ++l) f.transitions[s][l] = s;
      f.transitions[s][j] = 1;            // own request opens
      f.transitions[s][clients + j] = 0;  // own grant closes
    }
    out.factors.push_back(std::move(f));
  }
  return out;
}

Dfa gen_random(int n, int letters, std::uint64_t seed, const RandomDfaFlags& flags) {
  if (n < 1) throw std::invalid_argument("gen_random: n must be at least 1");
  if (letters < 1) throw std::invalid_argument("gen_random: letters must be at least 1");
  if (flags.commutative && !flags.permutation)
    throw std::invalid_argument("gen_random: commutative requires permutation");

  std::mt19937_64 rng(seed);
  auto below = [&rng](std::uint64_t bound) {
    return static_cast<int>(rng() % bound);  // slight bias is fine for test data
  };
  // Hand-rolled Fisher-Yates: std::shuffle is implementation-defined.
  auto random_perm = [&](int size) {
    std::vector<State> p(size);
    std::iota(p.begin(), p.end(), 0);
    for (int i = size - 1; i > 0; --i) std::swap(p[i], p[below(i + 1)]);
    return p;
  };

  Dfa a;
  for (int l = 0; l < letters; ++l) {
    if (l < 26)
      a.alphabet.push_back(std::string(1, static_cast<char>('a' + l)));
    else
      a.alphabet.push_back("s" + std::to_string(l));
  }
  a.initial = 0;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    a.transitions.assign(n, std::vector<State>(letters));
    if (flags.commutative) {
      std::vector<State> cycle_order = random_perm(n);
      std::vector<State> cycle(n);
      for (int i = 0; i < n; ++i) cycle[cycle_order[i]] = cycle_order[(i + 1) % n];
      std::vector<long long> exps(letters);
      for (int l = 0; l < letters; ++l) exps[l] = below(n);
      long long g = n;
      for (long long e : exps) g = std::gcd(g, e);
      if (g != 1 && n > 1) continue;  // powers must generate the whole cycle
      for (int l = 0; l < letters; ++l) {
        std::vector<State> p(n);
        std::iota(p.begin(), p.end(), 0);
        for (long long e = 0; e < exps[l]; ++e) {
          for (int q = 0; q < n; ++q) p[q] = cycle[p[q]];
        }
        for (int q = 0; q < n; ++q) a.transitions[q][l] = p[q];
      }
    } else if (flags.permutation) {
      for (int l = 0; l < letters; ++l) {
        std::vector<State> p = random_perm(n);
        for (int q = 0; q < n; ++q) a.transitions[q][l] = p[q];
      }
    } else {
      for (int q = 0; q < n; ++q) {
        for (int l = 0; l < letters; ++l) a.transitions[q][l] = below(n);
      }
    }

    a.accepting.assign(n, false);
    bool ok_acc = false;
    for (int tries = 0; tries < 1000 && !ok_acc; ++tries) {
      int count = 0;
      for (int q = 0; q < n; ++q) {
        a.accepting[q] = rng() & 1;
        count += a.accepting[q];
      }
      ok_acc = flags.allow_trivial_acceptance || n == 1 || (count > 0 && count < n);
    }
    if (!ok_acc) continue;

    if (flags.permutation) {
      if (!is_trim(a)) continue;
      return a;
    }
    Dfa t = trim(a);
    if (!flags.allow_trivial_acceptance && t.size() > 1) {
      int count = 0;
      for (int q = 0; q < t.size(); ++q) count += t.accepting[q];
      if (count == 0 || count == t.size()) continue;  // trimming lost the mix
    }
    return t;
  }
  throw std::runtime_error("gen_random: failed to generate a DFA with the requested flags");
}

}  // namespace dfadec
