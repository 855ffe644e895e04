#pragma once

#include <dfree/chains.hpp>
#include <dfree/errors.hpp>
#include <dfree/family.hpp>
#include <dfree/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

namespace dfree {

/// Exact binomial coefficient; 0 when k is outside [0, n].
inline BigInt binomial(int n, int k) {
  if (n < 0) throw DomainError("binomial: negative n");
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Binomial coefficient that fits in 64 bits (n <= 62).
inline std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Level sizes in central-outward order: floor(n/2), ceil(n/2) (once when
/// n is even), then the next pair outward, and so on.
inline std::vector<int> levels_by_centrality(int n) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  const int lo = n / 2;
  const int hi = n - n / 2;
  for (int d = 0; static_cast<int>(out.size()) < n + 1; ++d) {
    if (lo - d >= 0) out.push_back(lo - d);
    if (hi + d != lo - d && hi + d <= n) out.push_back(hi + d);
  }
  return out;
}

/// Sum of the k largest binomial coefficients of order n.
inline BigInt sigma(int n, int k) {
  if (n < 0 || k < 0 || k > n + 1)
    throw DomainError("sigma: need 0 <= k <= n+1, got n=" + std::to_string(n) +
                      " k=" + std::to_string(k));
  const auto order = levels_by_centrality(n);
  BigInt sum = 0;
  for (int i = 0; i < k; ++i) sum += binomial(n, order[static_cast<std::size_t>(i)]);
  return sum;
}

/// l(n, F) = sum over members of 1 / C(n, |F|).
inline Rational lubell(const Family& family) {
  std::vector<std::uint64_t> per_level(static_cast<std::size_t>(family.n() + 1), 0);
  for (Subset s : family) ++per_level[static_cast<std::size_t>(s.size())];
  Rational sum = 0;
  for (int k = 0; k <= family.n(); ++k)
    if (per_level[static_cast<std::size_t>(k)] != 0)
      sum += Rational(BigInt(per_level[static_cast<std::size_t>(k)]), binomial(family.n(), k));
  return sum;
}

/// The Lubell value as the average number of members met by a maximal chain.
inline Rational lubell_via_chains(const Family& family, unsigned threads = 1) {
  const int n = family.n();
  require_chain_cap(n);
  const auto member = family.indicator();
  const std::uint64_t hits = reduce_chains(
      n, std::uint64_t{0},
      [&](const Chain& c, std::uint64_t& acc) {
        for (int i = 0; i <= n; ++i) acc += member[c.prefix_bits(i)];
      },
      threads);
  return Rational(BigInt(hits), BigInt(factorial(n)));
}

/// {[n] \ A : A in F}
inline Family complement_family(const Family& family) {
  std::vector<Subset> out;
  out.reserve(family.size());
  for (Subset s : family) out.push_back(s.complement(family.n()));
  return Family(family.n(), std::move(out));
}

/// |F| <= l(F) * C(n, floor(n/2)).
inline bool cardinality_within_lubell_bound(const Family& family) {
  return Rational(BigInt(family.size())) <= lubell(family) * binomial(family.n(), family.n() / 2);
}

}  // namespace dfree
