#include <dfree/constructions.hpp>
#include <dfree/lattice.hpp>
#include <dfree/mnm.hpp>
#include <dfree/scenario.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

using namespace dfree;

namespace {

using PlainSet = std::set<int>;
using PlainFamily = std::set<PlainSet>;

PlainFamily plain(const Family& f) {
  PlainFamily out;
  for (Subset s : f) {
    const auto e = s.elements();
    out.emplace(e.begin(), e.end());
  }
  return out;
}

PlainSet plain(Subset s) {
  const auto e = s.elements();
  return PlainSet(e.begin(), e.end());
}

bool strictly_below(const PlainSet& a, const PlainSet& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct OracleStats {
  Rational x, a, atilde, alpha, beta, mu, nu, c, c0;
};

// Recomputes every statistic from its definition, with chains taken from
// std::next_permutation and sets stored as std::set.
OracleStats oracle_stats(const Scenario& s) {
  const int n = s.n;
  const PlainFamily F = plain(s.F), XF = plain(s.XFam);
  const PlainSet X = plain(s.X);
  PlainSet A, O;
  for (const auto& m : F)
    if (m.size() == 1) A.insert(*m.begin());
  PlainFamily B;
  for (const auto& m : F)
    if (m.size() > 1 && std::any_of(m.begin(), m.end(), [&](int e) { return A.count(e) > 0; })) B.insert(m);
  PlainSet At;
  for (int e : A)
    if (std::any_of(B.begin(), B.end(), [&](const PlainSet& b) { return b.count(e) > 0; })) At.insert(e);
  for (int e = 1; e <= n; ++e)
    if (!X.count(e) && !A.count(e)) O.insert(e);

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  BigInt chains = 0, mu = 0, nu = 0, c = 0, c0 = 0, hit_x = 0, hit_b = 0;
  do {
    ++chains;
    std::vector<PlainSet> prefixes(1);
    for (int e : perm) {
      PlainSet next = prefixes.back();
      next.insert(e);
      prefixes.push_back(next);
    }
    auto meets = [&](const PlainFamily& fam) {
      return std::any_of(prefixes.begin(), prefixes.end(), [&](const PlainSet& p) { return fam.count(p) > 0; });
    };
    const int first = perm[0], second = perm[1];
    const bool avoid_x = !meets(XF), avoid_b = !meets(B);
    if (meets(XF)) ++hit_x;
    if (meets(B)) ++hit_b;
    if (X.count(first) && avoid_x) ++mu;
    if (At.count(first) && avoid_b) {
      ++c0;
      if (O.count(second)) ++nu;
    }
    const PlainSet* top = nullptr;
    for (const auto& p : prefixes)
      if (F.count(p)) top = &p;
    if (top && std::any_of(F.begin(), F.end(), [&](const PlainSet& m) { return strictly_below(*top, m); })) ++c;
  } while (std::next_permutation(perm.begin(), perm.end()));

  OracleStats o;
  o.x = Rational(static_cast<int>(X.size()), n);
  o.a = Rational(static_cast<int>(A.size()), n);
  o.atilde = Rational(static_cast<int>(At.size()), n);
  o.alpha = Rational(hit_x, chains);  // XFam is an antichain
  o.beta = Rational(hit_b, chains);   // so is B
  o.mu = Rational(mu, chains);
  o.nu = Rational(nu, chains);
  o.c = Rational(c, chains);
  o.c0 = Rational(c0, chains);
  return o;
}

void expect_matches_oracle(const Scenario& s) {
  const auto st = scenario_stats(s);
  const auto o = oracle_stats(s);
  EXPECT_EQ(st.x, o.x);
  EXPECT_EQ(st.a, o.a);
  EXPECT_EQ(st.atilde, o.atilde);
  EXPECT_EQ(st.alpha, o.alpha);
  EXPECT_EQ(st.beta, o.beta);
  EXPECT_EQ(st.mu, o.mu);
  EXPECT_EQ(st.nu, o.nu);
  EXPECT_EQ(st.c, o.c);
  EXPECT_EQ(st.c0, o.c0);
}

Scenario canonical_fixture() {
  Scenario s;
  s.n = 4;
  s.F = canonical_family({4, Subset::of({1, 2})}).without(Subset());
  s.XFam = Family(4);
  s.nprime = 2;
  return s;
}

Scenario product_fixture() {
  Scenario s;
  s.n = 6;
  s.X = Subset::of({1});
  s.XFam = product_antichain(6, Subset::of({1}), Subset::of({2, 3, 4, 5, 6}));
  s.F = Family(6);
  s.nprime = 1;
  return s;
}

Scenario empty_fixture(int n) {
  Scenario s;
  s.n = n;
  s.F = Family(n);
  s.XFam = Family(n);
  return s;
}

std::string failed_clauses(const Report& r) {
  std::string out;
  for (const auto& c : r.clauses)
    if (!c.pass) out += c.name + ": " + to_string(c.lhs) + " " + to_string(c.relation) + " " + to_string(c.rhs) + "\n";
  return out;
}

}  // namespace

TEST(CountMnm, Examples) {
  EXPECT_EQ(count_mnm(canonical_family({4, Subset::of({1, 2})})), Rational(1, 6));
  EXPECT_EQ(count_mnm(Family::level(5, 2)), 0);
  EXPECT_EQ(count_mnm(Family::from_lists(3, {{1}, {1, 2}})), Rational(1, 6));
  EXPECT_THROW(count_mnm(Family(11)), CapacityError);
}

TEST(CountMnm, ThreadCountDoesNotChangeResult) {
  const Family f = even_odd_family(8);
  const auto one = count_mnm_chains(f, 1);
  for (unsigned t : {2U, 5U}) EXPECT_EQ(count_mnm_chains(f, t), one);
}

TEST(ScenarioStats, CanonicalFixture) {
  const auto st = scenario_stats(canonical_fixture());
  EXPECT_EQ(st.a, Rational(1, 2));
  EXPECT_EQ(st.atilde, Rational(1, 2));
  EXPECT_EQ(st.beta, Rational(2, 3));
  EXPECT_EQ(st.nu, 0);
  EXPECT_EQ(st.c0, Rational(1, 6));
  EXPECT_EQ(st.oneunder, Rational(2, 3));
  EXPECT_EQ(st.onebar, Rational(4, 3));
  EXPECT_EQ(st.atilde * (st.x + st.a) * st.oneunder + st.nu, st.c0);
  expect_matches_oracle(canonical_fixture());
}

TEST(ScenarioStats, ProductAntichainFixture) {
  const auto st = scenario_stats(product_fixture());
  EXPECT_EQ(st.alpha, Rational(1, 3));
  EXPECT_EQ(st.mu, 0);
  EXPECT_EQ(st.x, Rational(1, 6));
  EXPECT_EQ(st.a, 0);
  EXPECT_EQ(st.oneunder, 0);  // x n = 1
  expect_matches_oracle(product_fixture());
}

TEST(ScenarioStats, EmptyScenarioIsAllZero) {
  const auto st = scenario_stats(empty_fixture(4));
  for (const Rational* q : {&st.x, &st.a, &st.atilde, &st.alpha, &st.beta, &st.mu, &st.nu, &st.c, &st.c0})
    EXPECT_EQ(*q, 0);
  EXPECT_EQ(st.oneunder, 1);
}

TEST(ScenarioStats, MatchesOracleOnRandomScenarios) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 2 + trial % 5;
    const Scenario s = random_scenario(rng, n);
    SCOPED_TRACE(to_text(s));
    expect_matches_oracle(s);
  }
}

TEST(ClassifyCase, Examples) {
  Scenario s = empty_fixture(6);
  s.X = Subset::of({1});
  s.XFam = Family::from_lists(6, {{1}});
  EXPECT_EQ(classify_case(s), CaseTag::singletons);
  s.XFam = product_antichain(6, Subset::of({1}), Subset::of({2, 3}));
  EXPECT_EQ(classify_case(s), CaseTag::no_singleton);
  s.X = Subset::of({1, 2});
  s.XFam = Family::from_lists(6, {{1}, {2, 4}});
  EXPECT_EQ(classify_case(s), CaseTag::mixed);
  EXPECT_EQ(classify_case(empty_fixture(3)), CaseTag::singletons);
}

TEST(CountingProps, Fixtures) {
  for (const Scenario& s : {canonical_fixture(), product_fixture(), empty_fixture(3)}) {
    const Report r = verify_counting_props(s);
    EXPECT_TRUE(r.all_pass()) << failed_clauses(r);
  }
  const Report r = verify_counting_props(canonical_fixture());
  const Clause* split = r.find("cbound.c0_split");
  ASSERT_NE(split, nullptr);
  EXPECT_EQ(split->lhs, Rational(1, 6));
  EXPECT_EQ(split->rhs, Rational(1, 6));
  const Clause* mu = verify_counting_props(product_fixture()).find("mu.lower_bound");
  ASSERT_NE(mu, nullptr);
  EXPECT_EQ(mu->lhs, 0);
  EXPECT_EQ(mu->rhs, 0);
}

TEST(CountingProps, FiveHundredRandomScenarios) {
  std::mt19937_64 rng(32);
  int singletons = 0, no_singleton = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 6;
    const Scenario s = random_scenario(rng, n);
    const Report r = verify_counting_props(s);
    ASSERT_TRUE(r.all_pass()) << to_text(s) << failed_clauses(r);
    const CaseTag tag = classify_case(s);
    singletons += tag == CaseTag::singletons;
    no_singleton += tag == CaseTag::no_singleton;
    if (tag == CaseTag::no_singleton) {
      ASSERT_NE(r.find("mu.lower_bound"), nullptr);
    }
    if (tag == CaseTag::mixed) continue;
    const auto children = derive_children(s);
    ASSERT_TRUE(children.checks.all_pass()) << to_text(s) << failed_clauses(children.checks);
  }
  EXPECT_GT(singletons, 50);
  EXPECT_GT(no_singleton, 50);
}

TEST(CountingProps, RequestedCasesAreHonoured) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    EXPECT_EQ(classify_case(random_scenario(rng, 5, CaseRequest::singletons)), CaseTag::singletons);
    EXPECT_EQ(classify_case(random_scenario(rng, 5, CaseRequest::no_singleton)), CaseTag::no_singleton);
    EXPECT_EQ(classify_case(random_scenario(rng, 5, CaseRequest::mixed)), CaseTag::mixed);
  }
}

TEST(Children, CanonicalFixture) {
  const auto r = derive_children(canonical_fixture());
  EXPECT_TRUE(r.checks.all_pass()) << failed_clauses(r.checks);
  EXPECT_EQ(r.tag, CaseTag::singletons);
  EXPECT_EQ(r.Xprime, Subset::of({1, 2}));
  ASSERT_EQ(r.children.size(), 2U);
  EXPECT_EQ(r.children[0].o, 3);
  EXPECT_EQ(r.children[1].o, 4);
  for (const auto& c : r.children) {
    EXPECT_EQ(c.child.n, 3);
    EXPECT_EQ(c.child.XFam, Family::from_lists(3, {{1}, {2}}));
    EXPECT_EQ(c.alpha, Rational(2, 3));  // |X'| / (n - 1)
  }
  const Clause* bound = r.checks.find("children.alpha_sum_bound");
  ASSERT_NE(bound, nullptr);
  EXPECT_EQ(bound->lhs, bound->rhs);
}

TEST(Children, EmptyScenario) {
  const auto r = derive_children(empty_fixture(3));
  EXPECT_TRUE(r.checks.all_pass());
  ASSERT_EQ(r.children.size(), 3U);
  for (const auto& c : r.children) {
    EXPECT_TRUE(c.child.F.empty());
    EXPECT_TRUE(c.child.XFam.empty());
    EXPECT_EQ(c.alpha, 0);
    EXPECT_EQ(c.mu, 0);
    EXPECT_EQ(c.c, 0);
  }
}

TEST(Children, ProductAntichainFixture) {
  const auto r = derive_children(product_fixture());
  EXPECT_EQ(r.tag, CaseTag::no_singleton);
  EXPECT_TRUE(r.checks.all_pass()) << failed_clauses(r.checks);
  EXPECT_EQ(r.children.size(), 5U);
  const Clause* mu = r.checks.find("children.mu_sum");
  ASSERT_NE(mu, nullptr);
  EXPECT_TRUE(mu->pass);
}

TEST(Children, ChildMuMatchesOracle) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const Scenario s = random_scenario(rng, 3 + trial % 4, trial % 2 ? CaseRequest::singletons : CaseRequest::no_singleton);
    for (const auto& c : derive_children(s).children) {
      if (c.child.n < 2) continue;
      ASSERT_EQ(c.mu, oracle_stats(c.child).mu);
    }
  }
}

TEST(Children, MixedCaseRejected) {
  Scenario s = empty_fixture(6);
  s.X = Subset::of({1, 2});
  s.XFam = Family::from_lists(6, {{1}, {2, 4}});
  EXPECT_THROW(derive_children(s), DomainError);
  EXPECT_NO_THROW(verify_counting_props(s));
}

TEST(ScenarioValidation, RejectsBrokenInvariants) {
  Scenario s = empty_fixture(4);
  s.F = Family::from_lists(4, {{1}, {2}, {1, 2}});  // Lambda
  EXPECT_THROW(validate(s), ValidationError);
  s.F = Family::from_lists(4, {{}, {1}});
  EXPECT_THROW(validate(s), ValidationError);
  s.F = Family::from_lists(4, {{1, 2, 3}});
  s.nprime = 2;
  EXPECT_THROW(validate(s), ValidationError);
  s = empty_fixture(4);
  s.X = Subset::of({1});
  s.F = Family::from_lists(4, {{1, 2}});
  EXPECT_THROW(validate(s), ValidationError);
  s = empty_fixture(4);
  s.X = Subset::of({1, 2});
  s.XFam = Family::from_lists(4, {{1, 2}});
  EXPECT_THROW(validate(s), ValidationError);
  s.XFam = Family::from_lists(4, {{1}, {1, 3}});
  EXPECT_THROW(validate(s), ValidationError);
  s = empty_fixture(4);
  s.X = Subset::of({1});
  s.XFam = Family::from_lists(4, {{1, 2}});
  s.F = Family::from_lists(4, {{2}});
  EXPECT_THROW(validate(s), ValidationError);
  EXPECT_THROW(scenario_stats(empty_fixture(1)), DomainError);
}

TEST(ScenarioText, RoundTrip) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 50; ++trial) {
    const Scenario s = random_scenario(rng, 2 + trial % 8);
    const Scenario back = parse_scenario(to_text(s));
    EXPECT_EQ(back.n, s.n);
    EXPECT_EQ(back.nprime, s.nprime);
    EXPECT_EQ(back.X, s.X);
    EXPECT_EQ(back.F, s.F);
    EXPECT_EQ(back.XFam, s.XFam);
    EXPECT_EQ(to_text(back), to_text(s));
  }
  EXPECT_THROW(parse_scenario("X=1\n"), ParseError);
  EXPECT_THROW(parse_scenario("n=3\nQ=1\n"), ParseError);
}

TEST(MinsetProfile, Examples) {
  const auto mid = minset_profile(two_middle_levels(4));
  EXPECT_EQ(mid.C, 0);
  EXPECT_EQ(mid.minimal.size(), 4U);
  EXPECT_TRUE(mid.checks.all_pass());
  const auto empty_only = minset_profile(Family(3, {Subset()}));
  EXPECT_EQ(empty_only.C, 0);
  ASSERT_EQ(empty_only.minimal.size(), 1U);
  EXPECT_EQ(empty_only.minimal[0].c, 0);
  const auto eo = minset_profile(even_odd_family(4));
  const Clause* d = eo.checks.find("decomposition_by_lowest_member");
  ASSERT_NE(d, nullptr);
  EXPECT_TRUE(d->pass);
  EXPECT_EQ(d->lhs, Rational(7, 3));
}

TEST(MinsetProfile, NormalizedOrientationDominatesMnm) {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<Subset> order;
    for (Mask b = 0; b < (Mask{1} << n); ++b) order.emplace_back(b);
    std::shuffle(order.begin(), order.end(), rng);
    Family f(n);
    for (Subset s : order)
      if (std::bernoulli_distribution(0.5)(rng) && is_diamond_free(f.with(s))) f = f.with(s);
    const Family g = normalize_orientation(f);
    EXPECT_EQ(g.size(), f.size());
    EXPECT_TRUE(is_diamond_free(g));
    const auto p = minset_profile(g);
    EXPECT_TRUE(p.normalized);
    EXPECT_GE(p.C, count_mnm(g));
    EXPECT_TRUE(p.checks.all_pass()) << failed_clauses(p.checks);
  }
}
