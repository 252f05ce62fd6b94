#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

namespace dfadec {

// Fixed-width bitset over the state indices of one host DFA.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(int host_size)
      : host_size_(host_size), words_((host_size + 63) / 64, 0) {
    assert(host_size >= 0);
  }

  static StateSet singleton(int host_size, int q) {
    StateSet s(host_size);
    s.set(q);
    return s;
  }

  static StateSet full(int host_size) {
    StateSet s(host_size);
    for (int q = 0; q < host_size; ++q) s.set(q);
    return s;
  }

  static StateSet of(int host_size, std::initializer_list<int> qs) {
    StateSet s(host_size);
    for (int q : qs) s.set(q);
    return s;
  }

  static StateSet of(int host_size, const std::vector<int>& qs) {
    StateSet s(host_size);
    for (int q : qs) s.set(q);
    return s;
  }

  int host_size() const { return host_size_; }

  bool test(int q) const {
    assert(q >= 0 && q < host_size_);
    return (words_[q >> 6] >> (q & 63)) & 1;
  }

  void set(int q) {
    assert(q >= 0 && q < host_size_);
    words_[q >> 6] |= std::uint64_t{1} << (q & 63);
  }

  void reset(int q) {
    assert(q >= 0 && q < host_size_);
    words_[q >> 6] &= ~(std::uint64_t{1} << (q & 63));
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (auto w : words_) {
      if (w) return false;
    }
    return true;
  }

  bool intersects(const StateSet& o) const {
    assert(host_size_ == o.host_size_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & o.words_[i]) return true;
    }
    return false;
  }

  bool is_subset_of(const StateSet& o) const {
    assert(host_size_ == o.host_size_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

  // Applies f to every member, in ascending state order.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = __builtin_ctzll(w);
        f(static_cast<int>(i * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_vector() const {
    std::vector<int> v;
    v.reserve(count());
    for_each([&](int q) { v.push_back(q); });
    return v;
  }

  bool operator==(const StateSet&) const = default;

  // Orders sets by their sorted element sequences: the set holding the
  // smallest element of the symmetric difference comes first.
  bool operator<(const StateSet& o) const {
    assert(host_size_ == o.host_size_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t diff = words_[i] ^ o.words_[i];
      if (diff) {
        std::uint64_t low = diff & ~(diff - 1);
        return words_[i] & low;
      }
    }
    return false;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  int host_size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace dfadec

template <>
struct std::hash<dfadec::StateSet> {
  std::size_t operator()(const dfadec::StateSet& s) const { return s.hash(); }
};
