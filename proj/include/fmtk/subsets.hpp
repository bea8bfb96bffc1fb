#ifndef FMTK_SUBSETS_HPP
#define FMTK_SUBSETS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmtk {

/// Subset of criteria {1..n} encoded as a bitmask: bit (i-1) set <=> criterion i in A.
using Mask = std::uint32_t;

inline constexpr int max_criteria = 12;
inline constexpr double default_tolerance = 1e-9;

/// The finite criteria set {1,...,n}. Dense 2^n tables are indexed by Mask,
/// so n is capped at max_criteria.
class Universe {
public:
  explicit Universe(int n) : n_(n) {
    if (n < 2 || n > max_criteria)
      throw std::invalid_argument("Universe: n must be in [2, " +
                                  std::to_string(max_criteria) + "], got " + std::to_string(n));
  }

  int n() const { return n_; }
  Mask full_mask() const { return (Mask{1} << n_) - 1; }
  std::size_t subset_count() const { return std::size_t{1} << n_; }

  bool contains(Mask a) const { return a <= full_mask(); }

  friend bool operator==(Universe a, Universe b) { return a.n_ == b.n_; }

private:
  int n_;
};

inline int cardinality(Mask a) { return std::popcount(a); }

/// Mask for the singleton {i}, criteria numbered from 1.
inline Mask singleton(int i) { return Mask{1} << (i - 1); }

/// Criteria (1-based) contained in a.
inline std::vector<int> members(Mask a) {
  std::vector<int> out;
  for (int i = 1; a != 0; ++i, a >>= 1)
    if (a & 1u) out.push_back(i);
  return out;
}

/// Calls fn(s) for every subset s of a, including the empty set and a itself.
template <typename Fn>
void for_each_subset(Mask a, Fn&& fn) {
  Mask s = a;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & a;
  }
}

/// Calls fn(s) for every proper subset s of a (a itself excluded, empty set included).
template <typename Fn>
void for_each_proper_subset(Mask a, Fn&& fn) {
  if (a == 0) return;
  Mask s = (a - 1) & a;
  while (true) {
    fn(s);
    if (s == 0) break;
    s = (s - 1) & a;
  }
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return c;
}

/// Lazy range over the n! maximal chains of the subset lattice. Each chain is
/// the sequence of n+1 prefix unions of a permutation of the criteria:
/// {} < {s(1)} < {s(1),s(2)} < ... < N. Enumeration order follows
/// std::next_permutation on the criterion order.
class MaximalChains {
public:
  explicit MaximalChains(int n) : n_(n) {
    if (n < 1 || n > 8)
      throw std::length_error("maximal_chains: n! enumeration supported only for n <= 8");
  }

  class iterator {
  public:
    using value_type = std::vector<Mask>;

    iterator() : done_(true) {}
    explicit iterator(int n) : done_(false), order_(n) {
      std::iota(order_.begin(), order_.end(), 1);
      rebuild();
    }

    const std::vector<Mask>& operator*() const { return chain_; }

    iterator& operator++() {
      if (!std::next_permutation(order_.begin(), order_.end())) done_ = true;
      else rebuild();
      return *this;
    }

    bool operator==(const iterator& o) const { return done_ == o.done_; }
    bool operator!=(const iterator& o) const { return !(*this == o); }

  private:
    void rebuild() {
      chain_.assign(order_.size() + 1, 0);
      for (std::size_t k = 0; k < order_.size(); ++k)
        chain_[k + 1] = chain_[k] | singleton(order_[k]);
    }

    bool done_;
    std::vector<int> order_;
    std::vector<Mask> chain_;
  };

  iterator begin() const { return iterator(n_); }
  iterator end() const { return iterator(); }
  std::uint64_t count() const { return factorial(n_); }

private:
  int n_;
};

inline MaximalChains maximal_chains(int n) { return MaximalChains(n); }

/// canonical "{1,3}" vs the coalition notation "c(1, 3)".
enum class LabelMode { canonical, paper };

inline std::string subset_label(Mask a, LabelMode mode = LabelMode::canonical) {
  const bool paper = mode == LabelMode::paper;
  std::string s = paper ? "c(" : "{";
  bool first = true;
  for (int i : members(a)) {
    if (!first) s += paper ? ", " : ",";
    s += std::to_string(i);
    first = false;
  }
  return s + (paper ? ")" : "}");
}

} // namespace fmtk

#endif // FMTK_SUBSETS_HPP
