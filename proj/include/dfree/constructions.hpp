#pragma once

#include <dfree/errors.hpp>
#include <dfree/family.hpp>
#include <dfree/lattice.hpp>
#include <dfree/rational.hpp>

#include <string>
#include <vector>

namespace dfree {

/// Levels ceil(n/2) and ceil(n/2) - 1.
inline Family two_middle_levels(int n) {
  if (n < 2) throw DomainError("two_middle_levels needs n >= 2");
  const int top = n - n / 2;
  return Family::level(n, top).united(Family::level(n, top - 1));
}

struct CanonicalParams {
  int n = 0;
  Subset A;  ///< elements allowed as singletons
};

/// Membership test for {emptyset, {e}, {e,o}, {o1,o2}} with e in A and
/// o, o1, o2 outside A, without materializing the family.
constexpr bool canonical_contains(Mask a_bits, Mask s) {
  switch (std::popcount(s)) {
    case 0: return true;
    case 1: return (s & a_bits) != 0;
    case 2: return std::popcount(s & a_bits) <= 1;
    default: return false;
  }
}

inline Family canonical_family(const CanonicalParams& params) {
  const int n = params.n;
  if (n < 0 || n > kMaxGround) throw CapacityError("canonical_family: n outside 0.." + std::to_string(kMaxGround));
  if ((params.A.bits() & ~full_mask(n)) != 0) throw DomainError("canonical_family: A is not a subset of [n]");
  std::vector<Subset> out;
  out.emplace_back(0);
  for (int i = 0; i < n; ++i) {
    const Mask si = Mask{1} << i;
    if (canonical_contains(params.A.bits(), si)) out.emplace_back(si);
    for (int j = i + 1; j < n; ++j) {
      const Mask sij = si | (Mask{1} << j);
      if (canonical_contains(params.A.bits(), sij)) out.emplace_back(sij);
    }
  }
  return Family(n, std::move(out));
}

/// Even numbers of [n] as the singleton set, odd numbers as the rest.
inline Subset even_elements(int n) {
  Subset s;
  for (int e = 2; e <= n; e += 2) s = s.with(e);
  return s;
}

inline Family even_odd_family(int n) {
  if (n < 2) throw DomainError("even_odd_family needs n >= 2");
  return canonical_family({n, even_elements(n)});
}

/// Exact Lubell value of the canonical family with |A| = k, valid for any n
/// (no materialization): 1 + k/n + [k(n-k) + C(n-k, 2)] / C(n, 2).
inline Rational canonical_lubell(int n, int k) {
  if (n < 2 || k < 0 || k > n) throw DomainError("canonical_lubell: need n >= 2, 0 <= k <= n");
  const BigInt pairs = BigInt(k) * (n - k) + binomial(n - k, 2);
  return Rational(1) + Rational(BigInt(k), BigInt(n)) + Rational(pairs, binomial(n, 2));
}

/// Number of maximal chains that are MNM for the canonical family with
/// |A| = k < n: exactly those whose first two elements both lie in A.
inline BigInt canonical_mnm_count(int n, int k) {
  if (n < 2 || k < 0 || k > n) throw DomainError("canonical_mnm_count: need n >= 2, 0 <= k <= n");
  if (k == n) return 0;  // every singleton is then maximal
  BigInt f = 1;
  for (int i = 2; i <= n - 2; ++i) f *= i;
  return BigInt(k) * BigInt(k > 0 ? k - 1 : 0) * f;
}

/// {{d, o} : d in X, o in C}
inline Family product_antichain(int n, Subset X, Subset C) {
  if ((X.bits() | C.bits()) & ~full_mask(n)) throw DomainError("product_antichain: sets must lie in [n]");
  if (!X.disjoint(C)) throw DomainError("product_antichain: X and C must be disjoint");
  std::vector<Subset> out;
  for (int d : X.elements())
    for (int o : C.elements()) out.push_back(Subset::of({d, o}));
  return Family(n, std::move(out));
}

}  // namespace dfree
