#pragma once

#include <dfree/errors.hpp>
#include <dfree/rational.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace dfree {

/// 50 significant decimal digits, without expression templates.
using HighReal = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

enum class BranchTag { tangent, sqrt, plateau, linear };

inline const char* to_string(BranchTag b) {
  switch (b) {
    case BranchTag::tangent: return "tangent";
    case BranchTag::sqrt: return "sqrt";
    case BranchTag::plateau: return "plateau";
    case BranchTag::linear: return "linear";
  }
  return "?";
}

/// Arguments that fall below zero by at most this much through rounding are
/// treated as zero.
inline constexpr double kClampTolerance = 1e-12;

namespace detail {

template <class Real>
void require_unit(const Real& x, const char* what) {
  if (!(x >= 0 && x <= 1)) throw DomainError(std::string(what) + ": x must lie in [0, 1]");
}

template <class Real>
void require_nonnegative(const Real& c, const char* what) {
  if (!(c >= 0)) throw DomainError(std::string(what) + ": c must be nonnegative");
}

template <class Real>
Real clamp_small_negative(const Real& v, const char* what) {
  if (v >= 0) return v;
  if (v > Real(-kClampTolerance)) return Real(0);
  throw DomainError(std::string(what) + ": inner argument is negative (atilde above its cap)");
}

}  // namespace detail

template <class Real>
BranchTag branch(const Real& x, const Real& c) {
  detail::require_unit(x, "f");
  detail::require_nonnegative(c, "f");
  if (x >= Real(1) / 2) return BranchTag::linear;
  const Real q = x - x * x;
  if (c < 4 * q * q) return BranchTag::tangent;
  if (c <= Real(1) / 4) return BranchTag::sqrt;
  return BranchTag::plateau;
}

/// The piecewise bound f(x, c) for x in [0, 1], c >= 0.
template <class Real>
Real f(const Real& x, const Real& c) {
  using std::sqrt;
  switch (branch(x, c)) {
    case BranchTag::linear: return 1 - x;
    case BranchTag::tangent: {
      const Real q = x - x * x;
      return 1 - x + (1 / (4 * q) - 1) * c;
    }
    case BranchTag::sqrt: return x * x - 2 * x + 1 - c + sqrt(c);
    case BranchTag::plateau: return x * x - 2 * x + Real(5) / 4;
  }
  return Real(0);
}

inline double f(double x, double c) { return f<double>(x, c); }

/// The minorant x^2 - 2x + 1 - c + sqrt(c) on [0, 1/2] x [0, 1/4].
template <class Real>
Real f_tilde(const Real& x, const Real& c) {
  using std::sqrt;
  if (!(x >= 0 && x <= Real(1) / 2) || !(c >= 0 && c <= Real(1) / 4))
    throw DomainError("f_tilde: needs x in [0, 1/2] and c in [0, 1/4]");
  return x * x - 2 * x + 1 - c + sqrt(c);
}

inline double f_tilde(double x, double c) { return f_tilde<double>(x, c); }

namespace detail {

template <class Real>
void require_ga_domain(const Real& x, const Real& c, const Real& a, const Real& at, const char* what) {
  if (!(x >= 0 && x < 1)) throw DomainError(std::string(what) + ": x must lie in [0, 1)");
  require_nonnegative(c, what);
  if (!(a >= 0 && a < 1 - x)) throw DomainError(std::string(what) + ": a must lie in [0, 1 - x)");
  if (!(at >= 0 && at <= a)) throw DomainError(std::string(what) + ": atilde must lie in [0, a]");
}

}  // namespace detail

/// Largest admissible atilde for g.
template <class Real>
Real g_atilde_cap(const Real& x, const Real& c, const Real& a) {
  const Real xa = x + a;
  if (xa == 0) return Real(0);
  return std::min<Real>(a, c / xa);
}

/// Largest admissible atilde for h; negative when no atilde is admissible.
template <class Real>
Real h_atilde_cap(const Real& x, const Real& c, const Real& a) {
  const Real xa = x + a;
  if (xa == 0) return Real(0);
  return std::min<Real>(a, c / xa - x);
}

template <class Real>
Real g(const Real& x, const Real& c, const Real& a, const Real& at) {
  detail::require_ga_domain(x, c, a, at, "g");
  const Real xa = x + a;
  if (xa == 0) return f(x, c);
  if (at > g_atilde_cap(x, c, a) + Real(kClampTolerance)) throw DomainError("g: atilde above min(a, c/(x+a))");
  const Real rest = 1 - x - a;
  const Real inner = detail::clamp_small_negative<Real>((c - at * xa) / rest, "g");
  return a + rest * f(xa, inner) + 2 * at * rest;
}

inline double g(double x, double c, double a, double at) { return g<double>(x, c, a, at); }

template <class Real>
Real h(const Real& x, const Real& c, const Real& a, const Real& at) {
  detail::require_ga_domain(x, c, a, at, "h");
  const Real xa = x + a;
  if (xa == 0) return f(x, c);
  if (at > h_atilde_cap(x, c, a) + Real(kClampTolerance)) throw DomainError("h: atilde above min(a, c/(x+a) - x)");
  const Real rest = 1 - x - a;
  const Real inner = detail::clamp_small_negative<Real>((c - (x + at) * xa) / rest, "h");
  return a + rest * f(xa, inner) + 2 * at * rest + x - 3 * x * xa;
}

inline double h(double x, double c, double a, double at) { return h<double>(x, c, a, at); }

template <class Real>
Real f0(const Real& c) {
  return f(Real(0), c);
}

inline double f0(double c) { return f0<double>(c); }

/// 1 - m + sqrt(m) + 3/n' with m = min(c + 1/n', 1/4).
template <class Real>
Real lemma_lubell_rhs(const Real& c, int nprime) {
  using std::sqrt;
  detail::require_nonnegative(c, "lemma_lubell_rhs");
  if (nprime < 1) throw DomainError("lemma_lubell_rhs: nprime must be at least 1");
  const Real inv = Real(1) / nprime;
  const Real m = std::min<Real>(c + inv, Real(1) / 4);
  return 1 - m + sqrt(m) + 3 * inv;
}

inline double lemma_lubell_rhs(double c, int nprime) { return lemma_lubell_rhs<double>(c, nprime); }

/// f(x, c + mu + 1/n') - (alpha - mu - x) + 3/n'.
template <class Real>
Real lemma_ind_rhs(const Real& x, const Real& c, const Real& mu, const Real& alpha, int nprime) {
  detail::require_nonnegative(c, "lemma_ind_rhs");
  if (!(mu >= 0)) throw DomainError("lemma_ind_rhs: mu must be nonnegative");
  if (nprime < 1) throw DomainError("lemma_ind_rhs: nprime must be at least 1");
  const Real inv = Real(1) / nprime;
  return f(x, c + mu + inv) - (alpha - mu - x) + 3 * inv;
}

inline double lemma_ind_rhs(double x, double c, double mu, double alpha, int nprime) {
  return lemma_ind_rhs<double>(x, c, mu, alpha, nprime);
}

// ---------------------------------------------------------------------------
// Exact anchors

/// Exact square root of a nonnegative rational, if it has one.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt rn = boost::multiprecision::sqrt(num);
  const BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

/// f evaluated in exact arithmetic; empty when the sqrt branch is active and
/// c is not the square of a rational.
inline std::optional<Rational> f_exact(const Rational& x, const Rational& c) {
  if (x < 0 || x > 1 || c < 0) throw DomainError("f_exact: needs x in [0, 1] and c >= 0");
  if (x >= Rational(1, 2)) return Rational(1) - x;
  const Rational q = x - x * x;
  if (c < 4 * q * q) return Rational(1) - x + (Rational(1) / (4 * q) - 1) * c;
  if (c <= Rational(1, 4)) {
    const auto r = rational_sqrt(c);
    if (!r) return std::nullopt;
    return x * x - 2 * x + 1 - c + *r;
  }
  return x * x - 2 * x + Rational(5, 4);
}

// ---------------------------------------------------------------------------
// Final curve

/// 1 + C + (1 - C) f0(C / (1 - C)) for C in [0, 1).
template <class Real>
Real final_curve(const Real& C) {
  if (!(C >= 0 && C < 1)) throw DomainError("final_curve: C must lie in [0, 1)");
  return 1 + C + (1 - C) * f0<Real>(C / (1 - C));
}

inline double final_curve(double C) { return final_curve<double>(C); }

/// 2 - C + sqrt(C - C^2), equal to the final curve on [0, 1/5].
template <class Real>
Real final_curve_closed_form(const Real& C) {
  using std::sqrt;
  return 2 - C + sqrt(C - C * C);
}

struct CurveMaximum {
  HighReal cstar;             ///< golden-section maximizer
  HighReal value;             ///< curve value at cstar
  HighReal cstar_analytic;    ///< root of 8C^2 - 8C + 1 in [0, 1/5]
  HighReal value_analytic;    ///< (3 + sqrt 2) / 2
  int iterations = 0;
};

/// Golden-section search on [0, 1/5] in 50-digit arithmetic, stopped once
/// the bracket is shorter than `tolerance`. The double-precision curve is
/// too flat near its maximum to locate the maximizer beyond about 1e-8.
inline CurveMaximum maximize_final_curve(double tolerance = 1e-12) {
  using boost::multiprecision::sqrt;
  const HighReal inv_phi = (sqrt(HighReal(5)) - 1) / 2;
  HighReal lo = 0, hi = HighReal(1) / 5;
  HighReal m1 = hi - inv_phi * (hi - lo), m2 = lo + inv_phi * (hi - lo);
  HighReal v1 = final_curve(m1), v2 = final_curve(m2);
  CurveMaximum out;
  while (hi - lo > tolerance) {
    if (v1 < v2) {
      lo = m1;
      m1 = m2;
      v1 = v2;
      m2 = lo + inv_phi * (hi - lo);
      v2 = final_curve(m2);
    } else {
      hi = m2;
      m2 = m1;
      v2 = v1;
      m1 = hi - inv_phi * (hi - lo);
      v1 = final_curve(m1);
    }
    ++out.iterations;
  }
  out.cstar = (lo + hi) / 2;
  out.value = final_curve(out.cstar);
  out.cstar_analytic = (8 - sqrt(HighReal(32))) / 16;
  out.value_analytic = (3 + sqrt(HighReal(2))) / 2;
  return out;
}

/// Decimal rendering with `digits` significant digits.
inline std::string to_decimal(const HighReal& v, int digits = 20) {
  return v.str(digits, std::ios_base::fmtflags(0));
}

/// Shortest round-trip rendering of a double, independent of locale.
inline std::string to_decimal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Tail mass

/// Sum of binomial(n, k) over |k - n/2| >= n^(2/3), divided by the middle
/// binomial coefficient. The condition is tested exactly as
/// |2k - n|^3 >= 8 n^2.
inline Rational tail_mass(int n) {
  if (n < 1) throw DomainError("tail_mass: n must be at least 1");
  BigInt sum = 0, row = 1, mid = 0;
  const BigInt n2x8 = BigInt(8) * n * n;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) row = row * (n - k + 1) / k;
    if (k == n / 2) mid = row;
    const BigInt d = BigInt(std::abs(2 * k - n));
    if (d * d * d >= n2x8) sum += row;
  }
  return Rational(sum, mid);
}

// ---------------------------------------------------------------------------
// Grid verification of the bound functions

struct Axis {
  double lo = 0, hi = 1;
  int steps = 2;

  double at(int i) const { return lo + (hi - lo) * i / (steps - 1); }
};

struct GridSpec {
  Axis x{0.0, 1.0, 201};
  Axis c{0.0, 0.5, 201};
  Axis a{0.0, 1.0, 51};
  Axis atilde{0.0, 1.0, 51};
  unsigned threads = 1;
};

struct PropertyResult {
  std::string name;
  double tolerance = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::string, double>> location;
  std::uint64_t points = 0;

  bool pass() const { return worst_slack >= -tolerance; }

  void observe(double slack, std::vector<std::pair<std::string, double>> where) {
    ++points;
    if (slack < worst_slack) {
      worst_slack = slack;
      location = std::move(where);
    }
  }

  void merge(const PropertyResult& o) {
    points += o.points;
    if (o.worst_slack < worst_slack) {
      worst_slack = o.worst_slack;
      location = o.location;
    }
  }
};

struct LemmaFunctionsReport {
  std::vector<PropertyResult> properties;

  bool all_pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass(); });
  }

  const PropertyResult* find(const std::string& name) const {
    for (const auto& p : properties)
      if (p.name == name) return &p;
    return nullptr;
  }
};

namespace detail {

inline constexpr double kEqualityTolerance = 1e-12;
inline constexpr double kInequalityTolerance = 1e-9;
inline constexpr double kTangencyTolerance = 1e-6;

enum Prop {
  kPoint1, kPoint1Exact, kMonotoneC, kMonotoneX, kConcaveC, kPoint3, kPoint4, kPoint5, kContinuityX,
  kContinuityTangent, kContinuityPlateau, kTangency, kGMonotone, kHMonotone, kFBound, kPoint3Tight,
  kPoint5Tight, kPropCount
};

inline std::vector<PropertyResult> empty_properties() {
  const std::pair<const char*, double> spec[kPropCount] = {
      {"point1.f_at_zero", kEqualityTolerance},
      {"point1.exact_anchor", 0.0},
      {"point2.monotone_in_c", kEqualityTolerance},
      {"point2.monotone_in_x", kEqualityTolerance},
      {"point2.midpoint_concave_in_c", kEqualityTolerance},
      {"point3.g_below_f", kInequalityTolerance},
      {"point4.h_below_f", kInequalityTolerance},
      {"point5.one_minus_x_below_f", kInequalityTolerance},
      {"continuity.x_half", kEqualityTolerance},
      {"continuity.tangent_sqrt", kEqualityTolerance},
      {"continuity.sqrt_plateau", kEqualityTolerance},
      {"tangency.slopes", kTangencyTolerance},
      {"g.monotone_in_atilde", kEqualityTolerance},
      {"h.monotone_in_atilde", kEqualityTolerance},
      {"fbound.minorant", kEqualityTolerance},
      {"point3.tight_point", kEqualityTolerance},
      {"point5.tight_points", kEqualityTolerance},
  };
  std::vector<PropertyResult> out(kPropCount);
  for (int i = 0; i < kPropCount; ++i) {
    out[static_cast<std::size_t>(i)].name = spec[i].first;
    out[static_cast<std::size_t>(i)].tolerance = spec[i].second;
  }
  return out;
}

using Where = std::vector<std::pair<std::string, double>>;

/// Checks for the x indices in [first, last).
inline void check_slice(const GridSpec& grid, int first, int last, std::vector<PropertyResult>& r) {
  const int nc = grid.c.steps;
  std::vector<double> fc(static_cast<std::size_t>(nc)), fnext(static_cast<std::size_t>(nc));
  std::vector<double> gvals, hvals;
  for (int i = first; i < last; ++i) {
    const double x = grid.x.at(i);
    for (int j = 0; j < nc; ++j) fc[static_cast<std::size_t>(j)] = f(x, grid.c.at(j));
    const bool has_next = i + 1 < grid.x.steps;
    if (has_next)
      for (int j = 0; j < nc; ++j) fnext[static_cast<std::size_t>(j)] = f(grid.x.at(i + 1), grid.c.at(j));

    for (int j = 0; j < nc; ++j) {
      const double c = grid.c.at(j);
      const double fv = fc[static_cast<std::size_t>(j)];
      r[kPoint5].observe(fv - (1 - x), {{"x", x}, {"c", c}});
      if (j + 1 < nc) r[kMonotoneC].observe(fc[static_cast<std::size_t>(j + 1)] - fv, {{"x", x}, {"c", c}});
      if (has_next) r[kMonotoneX].observe(fv - fnext[static_cast<std::size_t>(j)], {{"x", x}, {"c", c}});
      if (x <= 0.5 && c <= 0.25) r[kFBound].observe(fv - f_tilde(x, c), {{"x", x}, {"c", c}});
      for (int k = j + 2; k < nc; k += 2) {
        const double mid = f(x, (c + grid.c.at(k)) / 2);
        r[kConcaveC].observe(mid - (fv + fc[static_cast<std::size_t>(k)]) / 2,
                             {{"x", x}, {"c1", c}, {"c2", grid.c.at(k)}});
      }
    }
    if (x == 0.0) {
      for (int j = 0; j < nc; ++j) {
        const double c = grid.c.at(j);
        const double ct = std::min(c, 0.25);
        r[kPoint1].observe(-std::abs(fc[static_cast<std::size_t>(j)] - (1 - ct + std::sqrt(ct))), {{"c", c}});
      }
    }
    r[kPoint5Tight].observe(-std::abs(fc[0] - (1 - x)), {{"x", x}});

    if (x > 0 && x <= 0.5) {
      // Continuity and tangency at c0 = 4(x - x^2)^2, both branch formulas
      // evaluated directly at the breakpoint.
      const double q = x - x * x;
      const double c0 = 4 * q * q;
      const double tangent = 1 - x + (1 / (4 * q) - 1) * c0;
      const double root = x * x - 2 * x + 1 - c0 + std::sqrt(c0);
      r[kContinuityTangent].observe(-std::abs(tangent - root), {{"x", x}});
      const HighReal X = x, Q = X - X * X, C0 = 4 * Q * Q, step = HighReal("1e-20");
      auto T = [&](const HighReal& c) { return 1 - X + (1 / (4 * Q) - 1) * c; };
      auto S = [&](const HighReal& c) { return X * X - 2 * X + 1 - c + boost::multiprecision::sqrt(c); };
      const HighReal left = (T(C0) - T(C0 - step)) / step;
      const HighReal right = (S(C0 + step) - S(C0)) / step;
      r[kTangency].observe(-std::abs(static_cast<double>(left - right)), {{"x", x}});
    }
    if (x <= 0.5) {
      const double root = x * x - 2 * x + 1 - 0.25 + std::sqrt(0.25);
      const double plateau = x * x - 2 * x + 1.25;
      r[kContinuityPlateau].observe(-std::abs(root - plateau), {{"x", x}});
    }

    // g and h over (a, atilde), including the cap point of atilde.
    if (x >= 1) continue;
    for (int j = 0; j < nc; ++j) {
      const double c = grid.c.at(j);
      const double fv = fc[static_cast<std::size_t>(j)];
      for (int ia = 0; ia < grid.a.steps; ++ia) {
        const double a = grid.a.at(ia);
        if (!(a < 1 - x)) break;
        const double gcap = g_atilde_cap(x, c, a);
        const double hcap = h_atilde_cap(x, c, a);
        auto sweep = [&](double cap, auto fn, Prop below, Prop mono, std::vector<double>& vals) {
          if (cap < 0) return;
          vals.clear();
          std::vector<double> ats;
          for (int it = 0; it < grid.atilde.steps; ++it) {
            const double at = grid.atilde.at(it);
            if (at > cap) break;
            ats.push_back(at);
          }
          if (ats.empty() || ats.back() < cap) ats.push_back(cap);
          for (double at : ats) {
            const double v = fn(x, c, a, at);
            r[below].observe(fv - v, {{"x", x}, {"c", c}, {"a", a}, {"atilde", at}});
            if (!vals.empty())
              r[mono].observe(v - vals.back(), {{"x", x}, {"c", c}, {"a", a}, {"atilde", at}});
            vals.push_back(v);
          }
        };
        sweep(gcap, [](double x_, double c_, double a_, double t_) { return dfree::g(x_, c_, a_, t_); }, kPoint3,
              kGMonotone, gvals);
        sweep(hcap, [](double x_, double c_, double a_, double t_) { return dfree::h(x_, c_, a_, t_); }, kPoint4,
              kHMonotone, hvals);
      }
    }
  }
}

}  // namespace detail

/// Numerical verification of the properties of f, g and h on a grid:
/// f(0, c) closed form, monotonicity and midpoint concavity, g <= f and
/// h <= f over admissible (a, atilde) including the atilde cap,
/// 1 - x <= f, continuity and tangency at the branch boundaries, atilde
/// monotonicity of g and h, the fbound minorant, and the known tight points.
/// Each property keeps its worst slack (negative means violated) and where
/// it occurred.
inline LemmaFunctionsReport verify_lemma_functions(const GridSpec& spec = {}) {
  for (const Axis* ax : {&spec.x, &spec.c, &spec.a, &spec.atilde})
    if (ax->steps < 2) throw DomainError("verify_lemma_functions: every axis needs at least 2 steps");
  if (spec.x.lo < 0 || spec.x.hi > 1 || spec.c.lo < 0 || spec.a.lo < 0 || spec.atilde.lo < 0)
    throw DomainError("verify_lemma_functions: grid leaves the domain");

  const unsigned threads = std::max(1U, std::min<unsigned>(spec.threads, static_cast<unsigned>(spec.x.steps)));
  std::vector<std::vector<PropertyResult>> parts(threads, detail::empty_properties());
  auto run = [&](unsigned t) {
    const int first = static_cast<int>(static_cast<long>(spec.x.steps) * t / threads);
    const int last = static_cast<int>(static_cast<long>(spec.x.steps) * (t + 1) / threads);
    detail::check_slice(spec, first, last, parts[t]);
  };
  if (threads == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  auto props = std::move(parts[0]);
  for (unsigned t = 1; t < threads; ++t)
    for (std::size_t p = 0; p < props.size(); ++p) props[p].merge(parts[t][p]);

  // x = 1/2 boundary: every branch formula agrees with 1 - x there.
  auto& cont_x = props[detail::kContinuityX];
  for (int j = 0; j < spec.c.steps; ++j) {
    const double c = spec.c.at(j), x = 0.5, q = x - x * x;
    const double tangent = 1 - x + (1 / (4 * q) - 1) * std::min(c, 4 * q * q);
    const double root = x * x - 2 * x + 1 - 0.25 + std::sqrt(0.25);
    const double plateau = x * x - 2 * x + 1.25;
    const double worst = std::max({std::abs(tangent - 0.5), std::abs(root - 0.5), std::abs(plateau - 0.5)});
    cont_x.observe(-worst, {{"c", c}});
  }

  // Exact anchors: f(0, c) = 1 - c + sqrt(c) at rational squares c = (p/q)^2.
  auto& exact = props[detail::kPoint1Exact];
  for (int q = 1; q <= 40; ++q)
    for (int p = 0; 2 * p <= q; ++p) {
      const Rational root(p, q), c = root * root;
      const auto v = f_exact(Rational(0), c);
      const Rational expect = Rational(1) - c + root;
      exact.observe(v && *v == expect ? 0.0 : -1.0, {{"c", to_double(c)}});
      const double dv = f(0.0, to_double(c));
      exact.observe(std::abs(dv - to_double(expect)) <= 1e-15 ? 0.0 : -1.0, {{"c", to_double(c)}});
    }

  auto& tight3 = props[detail::kPoint3Tight];
  tight3.observe(-std::abs(f(0.0, 0.25) - g(0.0, 0.25, 0.5, 0.5)), {{"x", 0}, {"c", 0.25}, {"a", 0.5}, {"atilde", 0.5}});
  return LemmaFunctionsReport{std::move(props)};
}

// ---------------------------------------------------------------------------
// Figure data

struct FigureRow {
  std::string series;
  double abscissa = 0;
  double value = 0;
};

enum class Figure { f_vs_x, f_vs_c, final_curve };

inline Figure parse_figure(const std::string& s) {
  if (s == "f-vs-x") return Figure::f_vs_x;
  if (s == "f-vs-c") return Figure::f_vs_c;
  if (s == "final-curve") return Figure::final_curve;
  throw ParseError("unknown figure '" + s + "' (expected f-vs-x, f-vs-c or final-curve)");
}

/// f-vs-x: c in {0, 0.0125, ..., 0.25}, x swept over [0, 1].
/// f-vs-c: x in {0, 0.05, ..., 1}, c swept over [0, 1].
/// final-curve: C swept over [0, 1/5].
inline std::vector<FigureRow> figure_data(Figure which, int samples = 101) {
  if (samples < 2) throw DomainError("figure_data: samples must be at least 2");
  std::vector<FigureRow> rows;
  const Axis sweep{0.0, 1.0, samples};
  switch (which) {
    case Figure::f_vs_x:
      for (int s = 0; s <= 20; ++s) {
        const double c = 0.25 * s / 20;
        const std::string id = "c=" + to_decimal(c);
        for (int i = 0; i < samples; ++i) rows.push_back({id, sweep.at(i), f(sweep.at(i), c)});
      }
      break;
    case Figure::f_vs_c:
      for (int s = 0; s <= 20; ++s) {
        const double x = 1.0 * s / 20;
        const std::string id = "x=" + to_decimal(x);
        for (int i = 0; i < samples; ++i) rows.push_back({id, sweep.at(i), f(x, sweep.at(i))});
      }
      break;
    case Figure::final_curve: {
      const Axis cs{0.0, 0.2, samples};
      for (int i = 0; i < samples; ++i) rows.push_back({"final", cs.at(i), final_curve(cs.at(i))});
      break;
    }
  }
  return rows;
}

inline std::string to_csv(const std::vector<FigureRow>& rows) {
  std::string out = "series,abscissa,value\n";
  for (const auto& r : rows) out += r.series + "," + to_decimal(r.abscissa) + "," + to_decimal(r.value) + "\n";
  return out;
}

}  // namespace dfree
