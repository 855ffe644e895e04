#pragma once

#include <dfree/errors.hpp>
#include <dfree/subset.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace dfree {

/// Largest n for which the n! maximal chains are enumerated exhaustively.
inline constexpr int kChainCap = 10;

inline void require_chain_cap(int n) {
  if (n < 0 || n > kChainCap)
    throw CapacityError("chain enumeration supports n <= " + std::to_string(kChainCap) +
                        ", got " + std::to_string(n));
}

inline constexpr std::uint64_t factorial(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
  return r;
}

/// A maximal chain of 2^[n], stored as the order in which elements are added
/// together with its n+1 prefix sets.
class Chain {
 public:
  Chain() = default;

  explicit Chain(std::vector<int> order) : n_(static_cast<int>(order.size())) {
    if (n_ > kMaxGround) throw CapacityError("chain longer than ground cap");
    Mask seen = 0;
    for (int i = 0; i < n_; ++i) {
      const int e = order[static_cast<std::size_t>(i)];
      if (e < 1 || e > n_ || (seen >> (e - 1)) & 1U)
        throw DomainError("chain order is not a permutation of 1..n");
      seen |= Mask{1} << (e - 1);
      order_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
    }
    rebuild_prefixes(0);
  }

  int n() const { return n_; }
  /// The i-th element added, i in [0, n).
  int element(int i) const { return order_[static_cast<std::size_t>(i)]; }
  /// The i-th set on the chain, i in [0, n]; prefix(0) is the empty set.
  Subset prefix(int i) const { return Subset(prefix_[static_cast<std::size_t>(i)]); }
  Mask prefix_bits(int i) const { return prefix_[static_cast<std::size_t>(i)]; }

  std::vector<int> order() const {
    return std::vector<int>(order_.begin(), order_.begin() + n_);
  }

  /// Advance to the lexicographically next permutation; false after the last.
  bool advance() {
    auto first = order_.begin();
    auto last = order_.begin() + n_;
    if (n_ < 2) return false;
    // Locate the pivot so only the changed suffix is rebuilt.
    int i = n_ - 2;
    while (i >= 0 && order_[static_cast<std::size_t>(i)] > order_[static_cast<std::size_t>(i + 1)]) --i;
    if (i < 0) return false;
    std::next_permutation(first, last);
    rebuild_prefixes(i);
    return true;
  }

  /// The chain of lexicographic rank `rank` among the n! permutations.
  static Chain unrank(int n, std::uint64_t rank) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> order;
    order.reserve(pool.size());
    for (int i = n; i >= 1; --i) {
      const std::uint64_t block = factorial(i - 1);
      const auto idx = static_cast<std::size_t>(rank / block);
      rank %= block;
      order.push_back(pool[idx]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Chain(std::move(order));
  }

 private:
  void rebuild_prefixes(int from) {
    for (int i = from; i < n_; ++i)
      prefix_[static_cast<std::size_t>(i + 1)] =
          prefix_[static_cast<std::size_t>(i)] | (Mask{1} << (order_[static_cast<std::size_t>(i)] - 1));
  }

  int n_ = 0;
  std::array<std::uint8_t, kMaxGround> order_{};
  std::array<Mask, kMaxGround + 1> prefix_{};
};

/// Visit chains with lexicographic ranks in [begin, end).
template <class Visit>
void for_each_chain_in_range(int n, std::uint64_t begin, std::uint64_t end, Visit&& visit) {
  if (begin >= end) return;
  Chain chain = Chain::unrank(n, begin);
  for (std::uint64_t r = begin; r < end; ++r) {
    visit(static_cast<const Chain&>(chain));
    if (r + 1 < end) chain.advance();
  }
}

/// Visit all n! maximal chains of 2^[n] in lexicographic order of their
/// element sequence.
template <class Visit>
void for_each_chain(int n, Visit&& visit) {
  require_chain_cap(n);
  for_each_chain_in_range(n, 0, factorial(n), visit);
}

/// All chains materialized; only sensible for small n.
inline std::vector<Chain> enumerate_chains(int n) {
  std::vector<Chain> out;
  for_each_chain(n, [&](const Chain& c) { out.push_back(c); });
  return out;
}

/// Partition the n! chains into `threads` contiguous rank ranges, fold each
/// into a copy of `zero` with `visit(chain, acc)` and merge the partial
/// accumulators in range order with `+=`. The result does not depend on the
/// partition when `+=` is exact (integer counters).
template <class Acc, class Visit>
Acc reduce_chains(int n, Acc zero, Visit visit, unsigned threads = 1) {
  require_chain_cap(n);
  const std::uint64_t total = factorial(n);
  if (threads <= 1 || total < 5040) {
    for_each_chain_in_range(n, 0, total, [&](const Chain& c) { visit(c, zero); });
    return zero;
  }
  const std::uint64_t parts = std::min<std::uint64_t>(threads, total);
  std::vector<Acc> partial(static_cast<std::size_t>(parts), zero);
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(parts));
  for (std::uint64_t p = 0; p < parts; ++p) {
    const std::uint64_t b = total * p / parts;
    const std::uint64_t e = total * (p + 1) / parts;
    workers.emplace_back([&, p, b, e] {
      Acc& acc = partial[static_cast<std::size_t>(p)];
      for_each_chain_in_range(n, b, e, [&](const Chain& c) { visit(c, acc); });
    });
  }
  for (auto& w : workers) w.join();
  Acc out = partial.front();
  for (std::size_t p = 1; p < partial.size(); ++p) out += partial[p];
  return out;
}

}  // namespace dfree
