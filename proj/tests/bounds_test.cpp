#include <dfree/bounds.hpp>
#include <dfree/lattice.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace dfree;

namespace {

// The four cases of f written out directly.
double f_reference(double x, double c) {
  if (x >= 0.5) return 1 - x;
  const double q = x - x * x;
  if (c < 4 * q * q) return 1 - x + (1 / (4 * q) - 1) * c;
  if (c <= 0.25) return x * x - 2 * x + 1 - c + std::sqrt(c);
  return x * x - 2 * x + 1.25;
}

double tangent_branch(double x, double c) {
  const double q = x - x * x;
  return 1 - x + (1 / (4 * q) - 1) * c;
}

double sqrt_branch(double x, double c) { return x * x - 2 * x + 1 - c + std::sqrt(c); }

}  // namespace

TEST(F, Examples) {
  EXPECT_DOUBLE_EQ(f(0.0, 0.25), 1.25);
  EXPECT_EQ(branch(0.0, 0.25), BranchTag::sqrt);
  EXPECT_DOUBLE_EQ(f(0.6, 0.9), 0.4);
  EXPECT_EQ(branch(0.6, 0.9), BranchTag::linear);
  // breakpoint c = 4(x - x^2)^2 at x = 1/4
  EXPECT_DOUBLE_EQ(tangent_branch(0.25, 0.140625), 0.796875);
  EXPECT_DOUBLE_EQ(sqrt_branch(0.25, 0.140625), 0.796875);
  EXPECT_DOUBLE_EQ(f(0.25, 0.140625), 0.796875);
  EXPECT_EQ(branch(0.25, 0.1), BranchTag::tangent);
  EXPECT_EQ(branch(0.25, 0.3), BranchTag::plateau);
}

TEST(F, MatchesReferenceOnRandomPoints) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> ux(0, 1), uc(0, 1);
  for (int i = 0; i < 20000; ++i) {
    const double x = ux(rng), c = uc(rng);
    ASSERT_EQ(f(x, c), f_reference(x, c)) << x << " " << c;
  }
}

TEST(F, ExactAgreesWithDouble) {
  EXPECT_EQ(*f_exact(Rational(0), Rational(1, 4)), Rational(5, 4));
  EXPECT_EQ(*f_exact(Rational(1, 4), Rational(9, 64)), Rational(51, 64));
  EXPECT_EQ(*f_exact(Rational(3, 5), Rational(9, 10)), Rational(2, 5));
  EXPECT_FALSE(f_exact(Rational(0), Rational(1, 8)).has_value());
  for (int q = 1; q <= 12; ++q)
    for (int p = 0; p <= q; ++p) {
      const Rational c(p * p, q * q);
      for (const Rational& x : {Rational(0), Rational(1, 8), Rational(1, 3), Rational(1, 2), Rational(3, 4)}) {
        const auto e = f_exact(x, c);
        ASSERT_TRUE(e.has_value());
        ASSERT_NEAR(to_double(*e), f(to_double(x), to_double(c)), 1e-14);
      }
    }
}

TEST(F, DomainErrors) {
  EXPECT_THROW(f(-0.1, 0.1), DomainError);
  EXPECT_THROW(f(1.1, 0.1), DomainError);
  EXPECT_THROW(f(0.2, -0.1), DomainError);
  EXPECT_THROW(f(std::nan(""), 0.1), DomainError);
}

TEST(F, BranchContinuityOnRandomX) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ux(0, 0.5);
  for (int i = 0; i < 1000; ++i) {
    const double x = ux(rng);
    const double q = x - x * x, cb = 4 * q * q;
    ASSERT_NEAR(tangent_branch(x, cb), sqrt_branch(x, cb), 1e-12) << x;
    ASSERT_NEAR(sqrt_branch(x, 0.25), x * x - 2 * x + 1.25, 1e-12) << x;
  }
}

TEST(F, TangencyAtBreakpoint) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> ux(0.1, 0.45);
  const double step = 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng);
    const double q = x - x * x, cb = 4 * q * q;
    const double left = (tangent_branch(x, cb) - tangent_branch(x, cb - step)) / step;
    const double right = (sqrt_branch(x, cb + step) - sqrt_branch(x, cb)) / step;
    ASSERT_NEAR(left, right, 1e-6) << x;
  }
}

TEST(FTilde, Examples) {
  EXPECT_DOUBLE_EQ(f_tilde(0.0, 0.25), 1.25);
  EXPECT_DOUBLE_EQ(f_tilde(0.0, 0.25), f(0.0, 0.25));
  EXPECT_DOUBLE_EQ(f_tilde(0.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(f(0.0, 0.0), 1.0);
  // 0.0625 - 0.5 + 1 - 0.01 + 0.1
  EXPECT_NEAR(f_tilde(0.25, 0.01), 0.6525, 1e-15);
  EXPECT_LE(f_tilde(0.25, 0.01), f(0.25, 0.01));
  EXPECT_THROW(f_tilde(0.6, 0.1), DomainError);
  EXPECT_THROW(f_tilde(0.2, 0.3), DomainError);
}

TEST(FTilde, MinorantOnRectangle) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> ux(0, 0.5), uc(0, 0.25);
  for (int i = 0; i < 20000; ++i) {
    const double x = ux(rng), c = uc(rng);
    ASSERT_LE(f_tilde(x, c), f(x, c) + 1e-12);
  }
}

TEST(GH, Examples) {
  for (double c : {0.0, 0.05, 0.1, 0.2, 0.25, 0.4}) {
    EXPECT_EQ(g(0.0, c, 0.0, 0.0), f(0.0, c));
    EXPECT_EQ(h(0.0, c, 0.0, 0.0), f(0.0, c));
  }
  EXPECT_DOUBLE_EQ(g(0.0, 0.25, 0.5, 0.5), 1.25);
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const double c = 0.5 * u(rng), a = 0.99 * u(rng);
    const double at = u(rng) * std::min(a, a > 0 ? c / a : 0.0);
    ASSERT_EQ(h(0.0, c, a, at), g(0.0, c, a, at));
  }
}

TEST(GH, BelowF) {
  std::mt19937_64 rng(46);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 50000; ++i) {
    const double x = 0.99 * u(rng), c = 0.5 * u(rng), a = (1 - x) * 0.999 * u(rng);
    const double gat = u(rng) * g_atilde_cap(x, c, a);
    ASSERT_LE(g(x, c, a, gat), f(x, c) + 1e-9) << x << " " << c << " " << a << " " << gat;
    const double hcap = h_atilde_cap(x, c, a);
    if (hcap >= 0) {
      const double hat = u(rng) * hcap;
      ASSERT_LE(h(x, c, a, hat), f(x, c) + 1e-9) << x << " " << c << " " << a << " " << hat;
    }
    ASSERT_LE(1 - x, f(x, c) + 1e-15);
  }
}

TEST(GH, DomainErrors) {
  EXPECT_THROW(g(0.1, 0.1, 0.2, 0.3), DomainError);   // atilde above a
  EXPECT_THROW(g(0.1, 0.01, 0.5, 0.4), DomainError);  // atilde above c/(x+a)
  EXPECT_THROW(g(0.5, 0.1, 0.5, 0.0), DomainError);   // a = 1 - x
  EXPECT_THROW(h(0.2, 0.1, 0.3, 0.3), DomainError);   // atilde above c/(x+a) - x
  EXPECT_THROW(g(-0.1, 0.1, 0.0, 0.0), DomainError);
}

TEST(RightHandSides, Examples) {
  EXPECT_EQ(f0(0.0), 1.0);
  EXPECT_DOUBLE_EQ(lemma_lubell_rhs(0.0, 2), 2.75);
  for (double c : {0.0, 0.1, 0.3})
    for (int np : {1, 2, 5, 17}) {
      EXPECT_EQ(lemma_ind_rhs(0.0, c, 0.0, 0.0, np), lemma_lubell_rhs(c, np));
      EXPECT_EQ(f0(c), f(0.0, c));
    }
  EXPECT_THROW(lemma_lubell_rhs(0.1, 0), DomainError);
  EXPECT_THROW(lemma_lubell_rhs(-0.1, 2), DomainError);
  EXPECT_THROW(lemma_ind_rhs(0.1, 0.1, -0.1, 0.0, 2), DomainError);
}

TEST(FinalCurve, Examples) {
  EXPECT_DOUBLE_EQ(final_curve(0.0), 2.0);
  EXPECT_DOUBLE_EQ(final_curve(0.2), 2.2);
  EXPECT_THROW(final_curve(1.0), DomainError);
  EXPECT_THROW(final_curve(-0.1), DomainError);
}

TEST(FinalCurve, ClosedFormIdentity) {
  for (int i = 0; i <= 2000; ++i) {
    const double C = 0.2 * i / 2000;
    ASSERT_NEAR(final_curve(C), final_curve_closed_form(C), 1e-12) << C;
  }
}

TEST(FinalCurve, Maximum) {
  const auto m = maximize_final_curve();
  const double cstar = (2 - std::sqrt(2.0)) / 4, value = (3 + std::sqrt(2.0)) / 2;
  EXPECT_NEAR(m.cstar.convert_to<double>(), cstar, 1e-10);
  EXPECT_NEAR(m.value.convert_to<double>(), value, 1e-12);
  EXPECT_NEAR(m.cstar_analytic.convert_to<double>(), cstar, 1e-15);
  EXPECT_LT(abs(m.cstar - m.cstar_analytic), HighReal(1e-10));
  EXPECT_LT(abs(m.value - m.value_analytic), HighReal(1e-20));
  // 8C^2 - 8C + 1 = 0
  EXPECT_LT(abs(8 * m.cstar_analytic * m.cstar_analytic - 8 * m.cstar_analytic + 1), HighReal(1e-40));
  EXPECT_EQ(to_decimal(m.value_analytic, 8), "2.2071068");
  EXPECT_EQ(to_decimal(m.cstar_analytic, 7), "0.1464466");
  // the plateau above 1/5 keeps the curve below the maximum
  for (double C : {0.25, 0.4, 0.6}) EXPECT_LT(final_curve(C), value);
}

TEST(TailMass, Examples) {
  EXPECT_EQ(tail_mass(4), 0);
  const Rational t100 = tail_mass(100);
  EXPECT_GT(t100, 0);
  EXPECT_LT(t100, Rational(1, 100));
  EXPECT_GE(tail_mass(50), t100);
  EXPECT_GE(t100, tail_mass(200));
  EXPECT_THROW(tail_mass(0), DomainError);
}

TEST(TailMass, MatchesDirectSum) {
  for (int n = 1; n <= 150; ++n) {
    const double bound = std::pow(static_cast<double>(n), 2.0 / 3.0);
    BigInt sum = 0;
    for (int k = 0; k <= n; ++k) {
      const double dist = std::abs(k - n / 2.0);
      // equality happens for perfect cubes, where n^(2/3) is an integer
      if (dist >= bound || std::abs(dist - bound) < 1e-9) sum += binomial(n, k);
    }
    ASSERT_EQ(tail_mass(n), Rational(sum, binomial(n, n / 2))) << n;
  }
}

TEST(Grid, SmallGridPasses) {
  GridSpec spec;
  spec.x.steps = 41;
  spec.c.steps = 41;
  spec.a.steps = 11;
  spec.atilde.steps = 11;
  const auto report = verify_lemma_functions(spec);
  for (const auto& p : report.properties) EXPECT_TRUE(p.pass()) << p.name << " " << p.worst_slack;
  EXPECT_EQ(report.properties.size(), 17U);
  const auto* tight = report.find("point3.tight_point");
  ASSERT_NE(tight, nullptr);
  EXPECT_LE(std::abs(tight->worst_slack), 1e-12);
  const auto* p5 = report.find("point5.tight_points");
  ASSERT_NE(p5, nullptr);
  EXPECT_LE(std::abs(p5->worst_slack), 1e-12);
  for (const auto& p : report.properties) EXPECT_GT(p.points, 0U) << p.name;
}

TEST(Grid, ThreadsDoNotChangeReport) {
  GridSpec spec;
  spec.x.steps = 21;
  spec.c.steps = 21;
  spec.a.steps = 6;
  spec.atilde.steps = 6;
  const auto one = verify_lemma_functions(spec);
  spec.threads = 3;
  const auto three = verify_lemma_functions(spec);
  ASSERT_EQ(one.properties.size(), three.properties.size());
  for (std::size_t i = 0; i < one.properties.size(); ++i) {
    EXPECT_EQ(one.properties[i].worst_slack, three.properties[i].worst_slack) << one.properties[i].name;
    EXPECT_EQ(one.properties[i].points, three.properties[i].points);
  }
}

TEST(Grid, RejectsDegenerateAxes) {
  GridSpec spec;
  spec.c.steps = 1;
  EXPECT_THROW(verify_lemma_functions(spec), DomainError);
}

TEST(Figures, DominanceAndCoincidence) {
  for (const auto& r : figure_data(Figure::f_vs_x)) {
    ASSERT_GE(r.value, 1 - r.abscissa - 1e-15);
    if (r.abscissa >= 0.5) {
      ASSERT_EQ(r.value, 1 - r.abscissa);
    }
  }
  for (const auto& r : figure_data(Figure::f_vs_c)) {
    const double x = std::stod(r.series.substr(2));
    ASSERT_GE(r.value, 1 - x - 1e-15);
    if (x >= 0.5) {
      ASSERT_EQ(r.value, 1 - x);
    }
  }
  const auto fc = figure_data(Figure::final_curve, 11);
  ASSERT_EQ(fc.size(), 11U);
  EXPECT_DOUBLE_EQ(fc.front().value, 2.0);
  EXPECT_DOUBLE_EQ(fc.back().value, 2.2);
}

TEST(Figures, CsvShape) {
  const std::string csv = to_csv(figure_data(Figure::f_vs_x, 3));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "series,abscissa,value");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 21 * 3);
  EXPECT_THROW(parse_figure("f-vs-y"), ParseError);
  EXPECT_THROW(figure_data(Figure::f_vs_c, 1), DomainError);
}
