#pragma once

#include <dfree/chains.hpp>
#include <dfree/family.hpp>
#include <dfree/lattice.hpp>
#include <dfree/posets.hpp>
#include <dfree/rational.hpp>
#include <dfree/report.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace dfree {

namespace detail {

enum : std::uint8_t { kMember = 1, kNonMaximal = 2, kNonMinimal = 4 };

/// Per-mask flags: membership plus maximality/minimality within the family.
inline std::vector<std::uint8_t> extremality_table(const Family& f) {
  std::vector<std::uint8_t> t(std::size_t{1} << f.n(), 0);
  for (Subset s : f) {
    std::uint8_t flags = kMember;
    if (!f.is_maximal(s)) flags |= kNonMaximal;
    t[s.bits()] = flags;
  }
  const auto mins = f.minimal_members();
  for (Subset s : f) t[s.bits()] |= kNonMinimal;
  for (Subset s : mins) t[s.bits()] &= static_cast<std::uint8_t>(~kNonMinimal);
  return t;
}

/// Index of the largest member on the chain, or -1.
inline int top_member(const Chain& c, const std::vector<std::uint8_t>& table) {
  for (int i = c.n(); i >= 0; --i)
    if (table[c.prefix_bits(i)] & kMember) return i;
  return -1;
}

inline int bottom_member(const Chain& c, const std::vector<std::uint8_t>& table) {
  for (int i = 0; i <= c.n(); ++i)
    if (table[c.prefix_bits(i)] & kMember) return i;
  return -1;
}

}  // namespace detail

/// Number of maximal chains that meet the family and whose largest member
/// on the chain is not maximal in the family.
inline std::uint64_t count_mnm_chains(const Family& family, unsigned threads = 1) {
  require_chain_cap(family.n());
  const auto table = detail::extremality_table(family);
  return reduce_chains(
      family.n(), std::uint64_t{0},
      [&](const Chain& c, std::uint64_t& acc) {
        const int top = detail::top_member(c, table);
        if (top >= 0 && (table[c.prefix_bits(top)] & detail::kNonMaximal)) ++acc;
      },
      threads);
}

/// MNM chains as a fraction of all n! chains.
inline Rational count_mnm(const Family& family, unsigned threads = 1) {
  return Rational(BigInt(count_mnm_chains(family, threads)), BigInt(factorial(family.n())));
}

struct MinimalEntry {
  Subset set;
  Rational c;              ///< MNM fraction inside [set, [n]]
  BigInt chains_through;   ///< |set|! (n - |set|)!
  BigInt mnm_chains;       ///< chains_through * c
};

struct MinsetProfile {
  std::vector<MinimalEntry> minimal;
  Rational C;                  ///< chains missing F or whose lowest member is non-minimal
  Rational empty_or_mnm;       ///< chains missing F or MNM
  Rational mnm;                ///< MNM fraction of F
  Rational weighted_mnm;       ///< sum over minimal A of chains_through(A) c(A), over n!
  bool normalized = false;     ///< C >= empty_or_mnm
  Report checks;
};

/// Per-minimal-member MNM fractions on the upper intervals [A, [n]] and the
/// chain accounting that groups every chain by its lowest member.
inline MinsetProfile minset_profile(const Family& family) {
  const int n = family.n();
  require_chain_cap(n);
  const auto table = detail::extremality_table(family);
  const BigInt nfact = factorial(n);
  MinsetProfile out;

  BigInt weighted = 0;
  for (Subset a : family.minimal_members()) {
    const Mask keep = ~a.bits() & full_mask(n);
    std::vector<Subset> sub;
    for (Subset s : family)
      if (a.subset_of(s)) sub.emplace_back(compress_bits(s.bits(), keep));
    const int m = n - a.size();
    const Family upper(m, std::move(sub));
    MinimalEntry e;
    e.set = a;
    const std::uint64_t sub_mnm = count_mnm_chains(upper);
    e.c = Rational(BigInt(sub_mnm), BigInt(factorial(m)));
    e.chains_through = BigInt(factorial(a.size())) * factorial(m);
    e.mnm_chains = BigInt(factorial(a.size())) * sub_mnm;
    weighted += e.mnm_chains;
    out.minimal.push_back(std::move(e));
  }

  struct Acc {
    std::uint64_t big_c = 0, empty_or_mnm = 0, mnm = 0, hits = 0;
    std::uint64_t nonmin_overfull = 0;  // chains with non-minimal lowest member and > 2 members
    Acc& operator+=(const Acc& o) {
      big_c += o.big_c;
      empty_or_mnm += o.empty_or_mnm;
      mnm += o.mnm;
      hits += o.hits;
      nonmin_overfull += o.nonmin_overfull;
      return *this;
    }
  };
  std::map<Mask, std::uint64_t> by_min;  // sum of |chain ∩ F| grouped by lowest member
  const Acc acc = reduce_chains(n, Acc{}, [&](const Chain& c, Acc& a) {
    const int lo = detail::bottom_member(c, table);
    if (lo < 0) {
      ++a.big_c;
      ++a.empty_or_mnm;
      return;
    }
    int count = 0;
    for (int i = lo; i <= n; ++i) count += table[c.prefix_bits(i)] & detail::kMember;
    a.hits += static_cast<std::uint64_t>(count);
    by_min[c.prefix_bits(lo)] += static_cast<std::uint64_t>(count);
    const bool nonmin = table[c.prefix_bits(lo)] & detail::kNonMinimal;
    if (nonmin) {
      ++a.big_c;
      if (count > 2) ++a.nonmin_overfull;
    }
    const int hi = detail::top_member(c, table);
    if (table[c.prefix_bits(hi)] & detail::kNonMaximal) {
      ++a.mnm;
      ++a.empty_or_mnm;
    }
  });

  out.C = Rational(BigInt(acc.big_c), nfact);
  out.empty_or_mnm = Rational(BigInt(acc.empty_or_mnm), nfact);
  out.mnm = Rational(BigInt(acc.mnm), nfact);
  out.weighted_mnm = Rational(weighted, nfact);
  out.normalized = out.C >= out.empty_or_mnm;

  BigInt grouped = 0;
  for (const auto& [mask, sum] : by_min) grouped += sum;
  out.checks.clauses.push_back(
      check("decomposition_by_lowest_member", Rational(grouped, nfact), Relation::eq, lubell(family)));
  out.checks.clauses.push_back(check("chain_hits_match_lubell", Rational(BigInt(acc.hits), nfact),
                                     Relation::eq, lubell(family)));
  out.checks.clauses.push_back(
      check("minimal_mnm_within_global_mnm", out.weighted_mnm, Relation::le, out.mnm));
  if (out.normalized)
    out.checks.clauses.push_back(
        check("minimal_mnm_within_C", out.weighted_mnm, Relation::le, out.C, "orientation satisfies C >= empty-or-MNM"));
  if (is_diamond_free(family))
    out.checks.clauses.push_back(check("nonminimal_lowest_at_most_two",
                                       Rational(BigInt(acc.nonmin_overfull)), Relation::eq, Rational(0),
                                       "chains whose lowest member is non-minimal meet at most two members"));
  return out;
}

/// The family or its complement family, whichever satisfies C >= the
/// fraction of chains that miss it or are MNM. Cardinality and
/// diamond-freeness are preserved either way.
inline Family normalize_orientation(const Family& family) {
  const auto p = minset_profile(family);
  return p.normalized ? family : complement_family(family);
}

}  // namespace dfree
