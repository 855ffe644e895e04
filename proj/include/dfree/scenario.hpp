#pragma once

#include <dfree/chains.hpp>
#include <dfree/errors.hpp>
#include <dfree/family.hpp>
#include <dfree/io.hpp>
#include <dfree/lattice.hpp>
#include <dfree/mnm.hpp>
#include <dfree/posets.hpp>
#include <dfree/rational.hpp>
#include <dfree/report.hpp>

#include <json.hpp>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace dfree {

/// A Lambda-free family F on [n] together with a forbidden element set X and
/// a forbidden antichain XFam, in the setting of the induction lemma for
/// Lambda-free families.
struct Scenario {
  int n = 0;
  Family F;
  Subset X;
  Family XFam;
  int nprime = 1;
};

enum class CaseTag { singletons, no_singleton, mixed };

inline const char* to_string(CaseTag t) {
  switch (t) {
    case CaseTag::singletons: return "singletons";
    case CaseTag::no_singleton: return "no_singleton";
    case CaseTag::mixed: return "mixed";
  }
  return "?";
}

/// The decomposition F = {{e} : e in A} ⊔ B ⊔ C.
struct ScenarioParts {
  Subset A;        ///< elements appearing as singletons of F
  Subset Atilde;   ///< elements of A lying in some member of B
  Subset O;        ///< [n] \ X \ A
  Family B;        ///< non-singletons of F meeting A
  Family C;        ///< members of F inside O
};

struct ScenarioStats {
  Rational x, a, atilde, alpha, beta, mu, nu, c, c0;
  Rational onebar, oneunder;
};

inline ScenarioParts decompose(const Scenario& s) {
  ScenarioParts p;
  for (Subset m : s.F)
    if (m.size() == 1) p.A = p.A | m;
  p.O = Subset::full(s.n) - s.X - p.A;
  std::vector<Subset> b, c;
  for (Subset m : s.F) {
    if (m.size() == 1) continue;
    if (!m.disjoint(p.A)) {
      b.push_back(m);
      p.Atilde = p.Atilde | (m & p.A);
    } else if (m.subset_of(p.O)) {
      c.push_back(m);
    }
  }
  p.B = Family(s.n, std::move(b));
  p.C = Family(s.n, std::move(c));
  return p;
}

/// Throws ValidationError naming the first violated precondition.
inline void validate(const Scenario& s) {
  auto fail = [](const std::string& what) { throw ValidationError("scenario: " + what); };
  if (s.n < 1 || s.n > kMaxGround) fail("n outside 1.." + std::to_string(kMaxGround));
  if (s.F.n() != s.n || s.XFam.n() != s.n) fail("families must live on [n]");
  if ((s.X.bits() & ~full_mask(s.n)) != 0) fail("X is not a subset of [n]");
  if (s.nprime < 1) fail("nprime must be at least 1");
  if (!is_lambda_free(s.F)) fail("F is not Lambda-free");
  for (Subset m : s.F) {
    if (m.empty()) fail("F contains the empty set");
    if (m.size() > s.n - s.nprime) fail("F member " + to_string(m) + " larger than n - nprime");
    if (!m.disjoint(s.X)) fail("F member " + to_string(m) + " meets X");
  }
  if (!s.XFam.is_antichain()) fail("XFam is not an antichain");
  for (Subset d : s.XFam)
    if ((d & s.X).size() != 1) fail("XFam member " + to_string(d) + " does not contain exactly one element of X");
  for (Subset m : s.F)
    for (Subset d : s.XFam)
      if (m.comparable(d)) fail("F member " + to_string(m) + " is related to XFam member " + to_string(d));

  // Consequences of the above that the counting arguments lean on.
  const auto p = decompose(s);
  for (Subset d : s.XFam)
    if (!d.disjoint(p.A)) fail("XFam member " + to_string(d) + " contains an element of A");
  for (Subset b : p.B) {
    if ((b & p.A).size() != 1) fail("B member " + to_string(b) + " contains more than one element of A");
    for (Subset t : p.B)
      if (t != b && t.comparable(b)) fail("B is not an antichain");
    for (Subset t : p.C)
      if (t.comparable(b)) fail("B member " + to_string(b) + " related to C member " + to_string(t));
  }
  if (p.B.size() + p.C.size() + static_cast<std::size_t>(p.A.size()) != s.F.size())
    fail("F does not split into singletons, B and C");
}

inline bool has_singleton(const Family& f) {
  for (Subset s : f)
    if (s.size() == 1) return true;
  return false;
}

inline CaseTag classify_case(const Scenario& s) {
  std::vector<Subset> singles;
  for (int d : s.X.elements()) singles.push_back(Subset::of({d}));
  if (s.XFam == Family(s.n, singles)) return CaseTag::singletons;
  if (!has_singleton(s.XFam)) return CaseTag::no_singleton;
  return CaseTag::mixed;
}

namespace detail {

enum : std::uint8_t { kInXFam = 8, kInB = 16, kInXPrime = 32 };

inline Rational frac(std::size_t count, int n) { return Rational(BigInt(count), BigInt(n)); }

inline Rational onebar(int n) { return Rational(BigInt(n), BigInt(n - 1)); }

/// ((x+a)n - 1) / ((x+a)(n - 1)), or 1 when x + a = 0.
inline Rational oneunder(int n, int xa_count) {
  if (xa_count == 0) return Rational(1);
  return Rational(BigInt(xa_count - 1) * n, BigInt(xa_count) * (n - 1));
}

struct ChainTallies {
  std::uint64_t mu = 0;               // first in X, avoids XFam
  std::uint64_t nu = 0;               // first in Atilde, second in O, avoids B
  std::uint64_t c0 = 0;               // first in Atilde, avoids B
  std::uint64_t mnm = 0;
  std::uint64_t forced_mnm = 0;       // first in Atilde, second in X ∪ A, avoids B, MNM
  std::uint64_t forced_all = 0;       // first in Atilde, second in X ∪ A
  std::uint64_t meet_xfam = 0;
  std::uint64_t meet_b = 0;
  std::uint64_t o_meet_xfam = 0;      // first in O, meets XFam
  std::uint64_t o_meet_b = 0;         // first in O, meets B
  std::uint64_t mu_second_o = 0;      // first in X, second in O, avoids XFam
  std::uint64_t mu_second_xa = 0;     // first in X, second in X ∪ A, avoids XFam
  std::uint64_t o_meet_xprime = 0;    // first in O, meets X'
  std::uint64_t o_second_xprime = 0;  // first in O, second in X ∪ A, avoids X'
  std::uint64_t hits = 0;             // sum of |chain ∩ F|

  ChainTallies& operator+=(const ChainTallies& o) {
    mu += o.mu; nu += o.nu; c0 += o.c0; mnm += o.mnm;
    forced_mnm += o.forced_mnm; forced_all += o.forced_all;
    meet_xfam += o.meet_xfam; meet_b += o.meet_b;
    o_meet_xfam += o.o_meet_xfam; o_meet_b += o.o_meet_b;
    mu_second_o += o.mu_second_o; mu_second_xa += o.mu_second_xa;
    o_meet_xprime += o.o_meet_xprime; o_second_xprime += o.o_second_xprime;
    hits += o.hits;
    return *this;
  }
};

inline ChainTallies tally_chains(const Scenario& s, const ScenarioParts& p, const Family* xprime,
                                 unsigned threads) {
  auto table = extremality_table(s.F);
  for (Subset d : s.XFam) table[d.bits()] |= kInXFam;
  for (Subset b : p.B) table[b.bits()] |= kInB;
  if (xprime)
    for (Subset d : *xprime) table[d.bits()] |= kInXPrime;
  const Mask X = s.X.bits(), A = p.A.bits(), At = p.Atilde.bits(), O = p.O.bits();
  const int n = s.n;
  return reduce_chains(
      n, ChainTallies{},
      [&](const Chain& c, ChainTallies& t) {
        std::uint8_t seen = 0;
        for (int i = 0; i <= n; ++i) {
          const std::uint8_t f = table[c.prefix_bits(i)];
          seen |= f;
          t.hits += f & kMember;
        }
        const int top = top_member(c, table);
        const bool is_mnm = top >= 0 && (table[c.prefix_bits(top)] & kNonMaximal);
        t.mnm += is_mnm;
        const bool xfam = seen & kInXFam, b = seen & kInB, xp = seen & kInXPrime;
        t.meet_xfam += xfam;
        t.meet_b += b;
        if (n < 1) return;
        const Mask first = c.prefix_bits(1);
        const Mask second = n >= 2 ? c.prefix_bits(2) & ~first : 0;
        if (first & X) {
          t.mu += !xfam;
          if (second & O) t.mu_second_o += !xfam;
          if (second & (X | A)) t.mu_second_xa += !xfam;
        }
        if (first & At) {
          t.c0 += !b;
          if (second & O) t.nu += !b;
          if (second & (X | A)) {
            ++t.forced_all;
            t.forced_mnm += (!b && is_mnm);
          }
        }
        if (first & O) {
          t.o_meet_xfam += xfam;
          t.o_meet_b += b;
          t.o_meet_xprime += xp;
          if (second & (X | A)) t.o_second_xprime += !xp;
        }
      },
      threads);
}

}  // namespace detail

/// Fraction of chains whose first element lies in X and that meet no member
/// of `forbidden`.
inline Rational mu_fraction(int n, Subset X, const Family& forbidden) {
  require_chain_cap(n);
  const auto table = forbidden.indicator();
  const std::uint64_t count = reduce_chains(n, std::uint64_t{0}, [&](const Chain& c, std::uint64_t& acc) {
    if (n < 1 || !(c.prefix_bits(1) & X.bits())) return;
    for (int i = 0; i <= n; ++i)
      if (table[c.prefix_bits(i)]) return;
    ++acc;
  });
  return Rational(BigInt(count), BigInt(factorial(n)));
}

/// All statistics computed exactly; mu, nu, c and c0 by chain classification.
inline ScenarioStats scenario_stats(const Scenario& s, unsigned threads = 1) {
  validate(s);
  if (s.n < 2) throw DomainError("scenario statistics need n >= 2");
  require_chain_cap(s.n);
  const auto p = decompose(s);
  const auto t = detail::tally_chains(s, p, nullptr, threads);
  const BigInt nf = factorial(s.n);
  ScenarioStats st;
  st.x = detail::frac(static_cast<std::size_t>(s.X.size()), s.n);
  st.a = detail::frac(static_cast<std::size_t>(p.A.size()), s.n);
  st.atilde = detail::frac(static_cast<std::size_t>(p.Atilde.size()), s.n);
  st.alpha = lubell(s.XFam);
  st.beta = lubell(p.B);
  st.mu = Rational(BigInt(t.mu), nf);
  st.nu = Rational(BigInt(t.nu), nf);
  st.c = Rational(BigInt(t.mnm), nf);
  st.c0 = Rational(BigInt(t.c0), nf);
  st.onebar = detail::onebar(s.n);
  st.oneunder = detail::oneunder(s.n, s.X.size() + p.A.size());
  return st;
}

inline nlohmann::json to_json(const ScenarioStats& st) {
  return {{"x", to_string(st.x)},         {"a", to_string(st.a)},       {"atilde", to_string(st.atilde)},
          {"alpha", to_string(st.alpha)}, {"beta", to_string(st.beta)}, {"mu", to_string(st.mu)},
          {"nu", to_string(st.nu)},       {"c", to_string(st.c)},       {"c0", to_string(st.c0)},
          {"onebar", to_string(st.onebar)}, {"oneunder", to_string(st.oneunder)}};
}

/// Exact checks of the chain-counting identities and inequalities that
/// relate the scenario statistics, each against independently enumerated
/// chain classes. The X-related counts apply only when XFam has no
/// singleton.
inline Report verify_counting_props(const Scenario& s, unsigned threads = 1) {
  const auto st = scenario_stats(s, threads);
  const auto p = decompose(s);
  const auto t = detail::tally_chains(s, p, nullptr, threads);
  const BigInt nf = factorial(s.n);
  auto chains = [&](std::uint64_t k) { return Rational(BigInt(k), nf); };
  const Rational xa = st.x + st.a;
  const Rational forced = st.atilde * xa * st.oneunder;
  const Rational one_minus = 1 - st.x - st.a;

  Report r;
  r.clauses.push_back(check("cbound.forced_chains", chains(t.forced_all), Relation::eq, forced,
                            "chains {e},{e,d} with e in Atilde, d in X ∪ A"));
  r.clauses.push_back(check("cbound.forced_chains_are_mnm", chains(t.forced_mnm), Relation::eq, forced));
  r.clauses.push_back(check("cbound.c0_split", forced + st.nu, Relation::eq, st.c0));
  r.clauses.push_back(check("cbound.forced_le_c0", forced, Relation::le, st.c0));
  r.clauses.push_back(check("cbound.c0_le_c", st.c0, Relation::le, st.c));
  r.clauses.push_back(check("alpha.chain_fraction", chains(t.meet_xfam), Relation::eq, st.alpha));
  r.clauses.push_back(check("beta.chain_fraction", chains(t.meet_b), Relation::eq, st.beta));
  r.clauses.push_back(check("bchain.count", chains(t.o_meet_b), Relation::eq,
                            st.beta - st.atilde * one_minus * st.onebar + st.nu,
                            "chains starting in O that meet B"));
  if (!has_singleton(s.XFam)) {
    const Rational mu_floor = st.x * xa * st.oneunder;
    r.clauses.push_back(check("xchain.count", chains(t.o_meet_xfam), Relation::eq, st.alpha - st.x + st.mu,
                              "chains starting in O that meet XFam"));
    r.clauses.push_back(check("mu.lower_bound", st.mu, Relation::ge, mu_floor));
    r.clauses.push_back(check("mu.second_in_x_or_a", chains(t.mu_second_xa), Relation::eq, mu_floor));
    r.clauses.push_back(check("mu.second_in_o", chains(t.mu_second_o), Relation::eq, st.mu - mu_floor));
  }
  r.clauses.push_back(check("lubell.split", lubell(s.F), Relation::eq, st.a + st.beta + lubell(p.C)));
  return r;
}

struct ChildSummary {
  int o = 0;  ///< removed element (parent labels)
  Scenario child;
  Rational alpha, mu, c, lubell_c;
};

struct ChildrenReport {
  CaseTag tag = CaseTag::singletons;
  Subset Xprime;
  Family XPrimeFam;  ///< the combined forbidden antichain on [n]
  std::vector<ChildSummary> children;
  Report checks;
};

/// The pieces Y and Z of the next forbidden antichain.
inline Family pairs_between(int n, Subset left, Subset right) {
  std::vector<Subset> out;
  for (int d : left.elements())
    for (int o : right.elements()) out.push_back(Subset::of({d, o}));
  return Family(n, std::move(out));
}

/// Builds X' = X ∪ A, the combined forbidden antichain, and for each o in
/// [n] \ X \ A the child scenario on [n] \ {o} (relabeled onto [n-1]), then
/// checks the sum identities that tie the children back to the parent.
inline ChildrenReport derive_children(const Scenario& s, unsigned threads = 1) {
  const auto st = scenario_stats(s, threads);
  ChildrenReport out;
  out.tag = classify_case(s);
  if (out.tag == CaseTag::mixed)
    throw DomainError("derive_children: mixed forbidden antichains (singletons and larger sets) are not supported");
  const auto p = decompose(s);
  const int n = s.n;
  out.Xprime = s.X | p.A;

  const Family Y = pairs_between(n, s.X, p.O);
  const Family Z = pairs_between(n, p.A - p.Atilde, p.O);
  const Family& first = out.tag == CaseTag::singletons ? Y : s.XFam;
  out.XPrimeFam = first.united(p.B).united(Z);
  auto& r = out.checks;
  const bool disjoint = first.disjoint_from(p.B) && first.disjoint_from(Z) && p.B.disjoint_from(Z);
  r.clauses.push_back(check_true("xprime.disjoint_union", disjoint));
  r.clauses.push_back(check_true("xprime.antichain", out.XPrimeFam.is_antichain()));

  bool children_valid = true;
  std::string first_problem;
  Rational sum_alpha = 0, sum_mu = 0, sum_c = 0, sum_lubell = 0;
  for (int o : p.O.elements()) {
    ChildSummary cs;
    cs.o = o;
    std::vector<Subset> cf, xf;
    for (Subset m : p.C)
      if (m.contains(o)) cf.emplace_back(remove_element_bit(m.without(o).bits(), o));
    for (Subset d : out.XPrimeFam)
      if (d.contains(o)) xf.emplace_back(remove_element_bit(d.without(o).bits(), o));
    cs.child.n = n - 1;
    cs.child.F = Family(n - 1, std::move(cf));
    cs.child.X = Subset(remove_element_bit(out.Xprime.bits(), o));
    cs.child.XFam = Family(n - 1, std::move(xf));
    cs.child.nprime = s.nprime;
    try {
      validate(cs.child);
    } catch (const ValidationError& e) {
      if (children_valid) first_problem = "child o=" + std::to_string(o) + ": " + e.what();
      children_valid = false;
    }
    cs.alpha = lubell(cs.child.XFam);
    cs.mu = mu_fraction(n - 1, cs.child.X, cs.child.XFam);
    cs.c = count_mnm(cs.child.F);
    cs.lubell_c = lubell(cs.child.F);
    sum_alpha += cs.alpha;
    sum_mu += cs.mu;
    sum_c += cs.c;
    sum_lubell += cs.lubell_c;
    out.children.push_back(std::move(cs));
  }
  r.clauses.push_back(check_true("children.preconditions", children_valid, first_problem));

  const auto t = detail::tally_chains(s, p, &out.XPrimeFam, threads);
  const BigInt nf = factorial(n);
  const Rational N(n);
  const Rational xa = st.x + st.a;
  const Rational one_minus = 1 - st.x - st.a;
  const Rational b_part = st.beta - st.atilde * one_minus * st.onebar + st.nu;
  const Rational z_part = one_minus * (st.a - st.atilde) * st.onebar;
  const Rational first_part =
      out.tag == CaseTag::singletons ? st.x * one_minus * st.onebar : st.alpha - st.x + st.mu;
  r.clauses.push_back(check("children.alpha_sum_bound", sum_alpha, Relation::ge, (first_part + b_part + z_part) * N));
  r.clauses.push_back(check("children.alpha_sum_chain_count", sum_alpha, Relation::eq,
                            Rational(BigInt(t.o_meet_xprime), nf) * N, "chains starting in O that meet X'"));
  const Rational mu_target =
      out.tag == CaseTag::singletons ? st.nu * N : (st.mu - st.x * xa * st.oneunder + st.nu) * N;
  r.clauses.push_back(check("children.mu_sum", sum_mu, Relation::eq, mu_target));
  r.clauses.push_back(check("children.mu_sum_chain_count", sum_mu, Relation::eq,
                            Rational(BigInt(t.o_second_xprime), nf) * N,
                            "chains {o},{o,d} with d in X' avoiding X'"));
  r.clauses.push_back(check("children.c_sum", sum_c, Relation::eq, (st.c - st.c0) * N));
  r.clauses.push_back(check("children.c_sum_formula", sum_c, Relation::eq,
                            (st.c - st.atilde * xa * st.oneunder - st.nu) * N));
  r.clauses.push_back(check("lubell.split", lubell(s.F), Relation::eq, st.a + st.beta + lubell(p.C)));
  r.clauses.push_back(check("lubell.child_recursion", lubell(p.C), Relation::eq, sum_lubell / N));
  return out;
}

// ---------------------------------------------------------------------------
// Random scenarios

enum class CaseRequest { any, singletons, no_singleton, mixed };

namespace detail {

inline Subset random_subset(std::mt19937_64& rng, Subset pool, double p) {
  std::bernoulli_distribution coin(p);
  Subset s;
  for (int e : pool.elements())
    if (coin(rng)) s = s.with(e);
  return s;
}

inline bool antichain_with(const std::vector<Subset>& fam, Subset s) {
  for (Subset t : fam)
    if (t.comparable(s)) return false;
  return true;
}

}  // namespace detail

/// Draws a valid scenario: X first, then the forbidden antichain of the
/// requested case, then the singleton set A outside every forbidden member,
/// then greedily adds random B-type ({e} plus elements of O) and C-type
/// sets while Lambda-freeness and incomparability with XFam hold.
/// Deterministic for a given generator state.
inline Scenario random_scenario(std::mt19937_64& rng, int n, CaseRequest request = CaseRequest::any) {
  if (n < 2 || n > kChainCap) throw DomainError("random_scenario: n must lie in 2.." + std::to_string(kChainCap));
  CaseRequest kind = request;
  if (kind == CaseRequest::any) kind = std::bernoulli_distribution(0.5)(rng) ? CaseRequest::singletons : CaseRequest::no_singleton;

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Scenario s;
    s.n = n;
    s.nprime = std::uniform_int_distribution<int>(1, n - 1)(rng);
    const Subset all = Subset::full(n);
    s.X = detail::random_subset(rng, all, 0.3);
    if (s.X.size() == n) continue;
    if (kind == CaseRequest::mixed && s.X.size() < 2) continue;
    std::vector<Subset> xfam;
    const auto xs = s.X.elements();
    const Subset rest = all - s.X;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const int d = xs[i];
      const bool single = kind == CaseRequest::singletons || (kind == CaseRequest::mixed && i == 0);
      if (single) {
        xfam.push_back(Subset::of({d}));
        continue;
      }
      const int tries = std::uniform_int_distribution<int>(0, 3)(rng);
      for (int k = 0; k < tries; ++k) {
        const Subset extra = detail::random_subset(rng, rest, 0.35);
        if (extra.empty()) continue;
        const Subset cand = extra.with(d);
        if (detail::antichain_with(xfam, cand)) xfam.push_back(cand);
      }
      if (kind == CaseRequest::mixed && i > 0) {
        bool has = false;
        for (Subset t : xfam) has = has || (t.contains(d) && t.size() > 1);
        if (!has) xfam.push_back(Subset::of({d, rest.elements().front()}));
      }
    }
    s.XFam = Family(n, xfam);
    if (!s.XFam.is_antichain()) continue;

    Subset covered;
    for (Subset t : s.XFam) covered = covered | t;
    const Subset A = detail::random_subset(rng, all - s.X - covered, 0.4);
    std::vector<Subset> f;
    for (int e : A.elements()) f.push_back(Subset::of({e}));
    const Subset O = all - s.X - A;
    const int cap = n - s.nprime;
    const int rounds = 3 * n;
    std::bernoulli_distribution b_type(0.5);
    for (int k = 0; k < rounds && cap >= 2; ++k) {
      Subset cand;
      if (!A.empty() && b_type(rng)) {
        const auto ae = A.elements();
        const int e = ae[std::uniform_int_distribution<std::size_t>(0, ae.size() - 1)(rng)];
        cand = detail::random_subset(rng, O, 0.4).with(e);
      } else {
        cand = detail::random_subset(rng, O, 0.45);
      }
      if (cand.size() < 2 || cand.size() > cap) continue;
      bool ok = true;
      for (Subset t : f) ok = ok && t != cand;
      for (Subset d : s.XFam) ok = ok && !d.comparable(cand);
      if (!ok) continue;
      auto trial = f;
      trial.push_back(cand);
      if (is_lambda_free(Family(n, trial))) f = std::move(trial);
    }
    s.F = Family(n, std::move(f));
    try {
      validate(s);
    } catch (const ValidationError&) {
      continue;
    }
    const CaseTag tag = classify_case(s);
    if (request == CaseRequest::mixed && tag != CaseTag::mixed) continue;
    if (request == CaseRequest::singletons && tag != CaseTag::singletons) continue;
    if (request == CaseRequest::no_singleton && tag != CaseTag::no_singleton) continue;
    return s;
  }
  throw DomainError("random_scenario: could not draw a valid scenario");
}

// ---------------------------------------------------------------------------
// Scenario files: the family text format plus `nprime=`, `X=`, `F=` and
// `XFAM=` sections.

inline std::string to_text(const Scenario& s) {
  std::ostringstream out;
  out << "n=" << s.n << "\n";
  out << "nprime=" << s.nprime << "\n";
  out << "X=" << to_string(s.X) << "\n";
  out << "F=\n";
  for (Subset m : s.F) out << to_string(m) << "\n";
  out << "XFAM=\n";
  for (Subset m : s.XFam) out << to_string(m) << "\n";
  return out.str();
}

inline Scenario parse_scenario(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Scenario s;
  bool have_n = false;
  enum { kF, kXFam } section = kF;
  std::vector<Subset> f, xf;
  while (std::getline(in, line)) {
    const auto t = io::trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (auto kv = io::split_key(t)) {
      const auto& [key, value] = *kv;
      if (key == "n") {
        s.n = io::parse_int(value, "n");
        if (s.n < 1 || s.n > kMaxGround) throw ParseError("n outside supported range");
        have_n = true;
        continue;
      }
      if (!have_n) throw ParseError("scenario text must start with 'n=<int>'");
      if (key == "nprime") {
        s.nprime = io::parse_int(value, "nprime");
      } else if (key == "X") {
        s.X = io::parse_subset(value, s.n);
      } else if (key == "F") {
        section = kF;
        if (!value.empty()) f.push_back(io::parse_subset(value, s.n));
      } else if (key == "XFAM") {
        section = kXFam;
        if (!value.empty()) xf.push_back(io::parse_subset(value, s.n));
      } else {
        throw ParseError("unknown scenario key '" + key + "'");
      }
      continue;
    }
    if (!have_n) throw ParseError("scenario text must start with 'n=<int>'");
    (section == kF ? f : xf).push_back(io::parse_subset(t, s.n));
  }
  if (!have_n) throw ParseError("empty scenario text");
  s.F = Family(s.n, std::move(f));
  s.XFam = Family(s.n, std::move(xf));
  return s;
}

}  // namespace dfree
