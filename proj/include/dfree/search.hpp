#pragma once

#include <dfree/bounds.hpp>
#include <dfree/chains.hpp>
#include <dfree/constructions.hpp>
#include <dfree/errors.hpp>
#include <dfree/family.hpp>
#include <dfree/lattice.hpp>
#include <dfree/mnm.hpp>
#include <dfree/posets.hpp>
#include <dfree/rational.hpp>
#include <dfree/scenario.hpp>

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace dfree {

enum class Objective { cardinality, lubell };

inline const char* to_string(Objective o) { return o == Objective::cardinality ? "card" : "lubell"; }

struct LevelWindow {
  int lo = 0, hi = 0;
};

struct SearchProblem {
  int n = 0;
  PosetSpec pattern;
  std::optional<LevelWindow> window;
  std::vector<Subset> must_contain;
  Objective objective = Objective::cardinality;
};

struct SearchOptions {
  unsigned threads = 1;
  bool deterministic = true;
  /// Explore candidates in a seeded random order instead of by distance
  /// from the middle level.
  std::optional<std::uint64_t> shuffle_seed;
};

struct SearchResult {
  Rational optimum;
  Family witness;
  std::uint64_t nodes_explored = 0;
};

/// Largest candidate pool the bitmask search handles.
inline constexpr int kMaxCandidates = 64;
inline constexpr int kMaxSearchGround = 10;

namespace detail {

/// Is there a copy of p among `members` that uses every index in `forced`?
/// `members` is assumed to contain no copy avoiding all of them.
class ForcedEmbedder {
 public:
  ForcedEmbedder(const std::vector<Subset>& members, const PosetSpec& p)
      : members_(members), p_(p), image_(static_cast<std::size_t>(p.size()), -1) {}

  bool through(int a) { return through_pair(a, -1); }

  /// Copies that use both a and b (b may be -1).
  bool through_pair(int a, int b) {
    const int k = p_.size();
    for (int ea = 0; ea < k; ++ea) {
      image_[static_cast<std::size_t>(ea)] = a;
      if (b < 0) {
        if (consistent(ea) && extend()) return reset_true();
      } else if (consistent(ea)) {
        for (int eb = 0; eb < k; ++eb) {
          if (eb == ea) continue;
          image_[static_cast<std::size_t>(eb)] = b;
          if (consistent(eb) && extend()) return reset_true();
          image_[static_cast<std::size_t>(eb)] = -1;
        }
      }
      image_[static_cast<std::size_t>(ea)] = -1;
    }
    return false;
  }

 private:
  bool reset_true() {
    std::fill(image_.begin(), image_.end(), -1);
    return true;
  }

  bool consistent(int e) const {
    const Subset s = members_[static_cast<std::size_t>(image_[static_cast<std::size_t>(e)])];
    for (int j = 0; j < p_.size(); ++j) {
      const int im = image_[static_cast<std::size_t>(j)];
      if (im < 0 || j == e) continue;
      if (im == image_[static_cast<std::size_t>(e)]) return false;
      const Subset t = members_[static_cast<std::size_t>(im)];
      if (p_.less(j, e) && !t.proper_subset_of(s)) return false;
      if (p_.less(e, j) && !s.proper_subset_of(t)) return false;
    }
    return true;
  }

  bool extend() {
    int e = -1;
    for (int j = 0; j < p_.size(); ++j)
      if (image_[static_cast<std::size_t>(j)] < 0) {
        e = j;
        break;
      }
    if (e < 0) return true;
    for (int m = 0; m < static_cast<int>(members_.size()); ++m) {
      image_[static_cast<std::size_t>(e)] = m;
      if (consistent(e) && extend()) return true;
    }
    image_[static_cast<std::size_t>(e)] = -1;
    return false;
  }

  const std::vector<Subset>& members_;
  const PosetSpec& p_;
  std::vector<int> image_;
};

class BranchAndBound {
 public:
  BranchAndBound(const SearchProblem& prob, const SearchOptions& opt) : prob_(prob), opt_(opt) {
    const int n = prob.n;
    const int lo = prob.window ? prob.window->lo : 0;
    const int hi = prob.window ? prob.window->hi : n;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
      const int s = std::popcount(m);
      if (s >= lo && s <= hi) cand_.emplace_back(m);
    }
    if (static_cast<int>(cand_.size()) > kMaxCandidates)
      throw CapacityError("search: " + std::to_string(cand_.size()) + " candidate sets exceed the limit of " +
                          std::to_string(kMaxCandidates) + "; narrow the level window");
    std::sort(cand_.begin(), cand_.end(), [n](Subset a, Subset b) {
      const int da = std::abs(2 * a.size() - n), db = std::abs(2 * b.size() - n);
      return da != db ? da < db : a < b;
    });
    if (opt.shuffle_seed) {
      std::mt19937_64 rng(*opt.shuffle_seed);
      std::shuffle(cand_.begin(), cand_.end(), rng);
    }
    const std::int64_t nf = static_cast<std::int64_t>(factorial(n));
    for (Subset s : cand_) {
      const std::int64_t cost = static_cast<std::int64_t>(factorial(s.size()) * factorial(n - s.size()));
      cost_.push_back(cost);
      gain_.push_back(prob.objective == Objective::cardinality ? 1 : cost);
    }
    budget_ = (prob.pattern.size() - 1) * nf;
    level_masks_.assign(static_cast<std::size_t>(n + 1), 0);
    for (std::size_t i = 0; i < cand_.size(); ++i)
      level_masks_[static_cast<std::size_t>(cand_[i].size())] |= std::uint64_t{1} << i;
    level_order_.resize(static_cast<std::size_t>(n + 1));
    std::iota(level_order_.begin(), level_order_.end(), 0);
    std::sort(level_order_.begin(), level_order_.end(),
              [n](int a, int b) { return std::abs(2 * a - n) < std::abs(2 * b - n); });
    chain_pattern_ = is_chain(prob.pattern);
  }

  SearchResult run() {
    std::uint64_t chosen = 0;
    std::int64_t value = 0, used = 0;
    for (Subset m : prob_.must_contain) {
      const auto it = std::find(cand_.begin(), cand_.end(), m);
      if (it == cand_.end()) throw ValidationError("search: required set " + to_string(m) + " lies outside the window");
      const std::size_t i = static_cast<std::size_t>(it - cand_.begin());
      if ((chosen >> i) & 1U) continue;
      if (!compatible(chosen, i)) throw ValidationError("search: required sets already contain the pattern");
      chosen |= std::uint64_t{1} << i;
      value += gain_[i];
      used += cost_[i];
    }
    std::uint64_t avail = 0;
    for (std::size_t i = 0; i < cand_.size(); ++i)
      if (!((chosen >> i) & 1U) && compatible(chosen, i)) avail |= std::uint64_t{1} << i;
    best_value_ = value;
    best_set_ = chosen;

    const unsigned threads = opt_.deterministic ? 1U : std::max(1U, opt_.threads);
    if (threads == 1) {
      dfs(chosen, avail, value, used, nodes_);
    } else {
      run_parallel(chosen, avail, value, used, threads);
    }

    SearchResult out;
    std::vector<Subset> members;
    for (std::size_t i = 0; i < cand_.size(); ++i)
      if ((best_set_ >> i) & 1U) members.push_back(cand_[i]);
    out.witness = Family(prob_.n, std::move(members));
    out.nodes_explored = nodes_;
    const BigInt nf = factorial(prob_.n);
    out.optimum = prob_.objective == Objective::cardinality ? Rational(best_value_)
                                                            : Rational(BigInt(best_value_), nf);
    return out;
  }

 private:
  static bool is_chain(const PosetSpec& p) {
    for (int i = 0; i < p.size(); ++i)
      for (int j = i + 1; j < p.size(); ++j)
        if (!p.less(i, j) && !p.less(j, i)) return false;
    return true;
  }

  std::vector<Subset> members_of(std::uint64_t set) const {
    std::vector<Subset> out;
    for (; set; set &= set - 1) out.push_back(cand_[static_cast<std::size_t>(std::countr_zero(set))]);
    return out;
  }

  /// Longest chain of members through `s`, counting s.
  int chain_through(const std::vector<Subset>& members, Subset s) const {
    std::vector<Subset> below, above;
    for (Subset t : members) {
      if (t.proper_subset_of(s)) below.push_back(t);
      if (s.proper_subset_of(t)) above.push_back(t);
    }
    auto longest = [](std::vector<Subset> v) {
      std::sort(v.begin(), v.end());
      std::vector<int> len(v.size(), 1);
      int best = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j)
          if (v[j].proper_subset_of(v[i])) len[i] = std::max(len[i], len[j] + 1);
        best = std::max(best, len[i]);
      }
      return best;
    };
    return longest(below) + 1 + longest(above);
  }

  /// chosen ∪ {cand i} is pattern-free, given chosen is.
  bool compatible(std::uint64_t chosen, std::size_t i) const {
    auto members = members_of(chosen);
    if (chain_pattern_) return chain_through(members, cand_[i]) < prob_.pattern.size();
    members.push_back(cand_[i]);
    ForcedEmbedder emb(members, prob_.pattern);
    return !emb.through(static_cast<int>(members.size()) - 1);
  }

  /// Removes from avail every candidate that now completes a copy together
  /// with the newly added candidate `added`.
  std::uint64_t refilter(std::uint64_t chosen, std::uint64_t avail, std::size_t added) const {
    auto members = members_of(chosen);
    if (chain_pattern_) {
      for (std::uint64_t rest = avail; rest; rest &= rest - 1) {
        const std::size_t t = static_cast<std::size_t>(std::countr_zero(rest));
        if (!cand_[t].comparable(cand_[added])) continue;
        if (chain_through(members, cand_[t]) >= prob_.pattern.size()) avail &= ~(std::uint64_t{1} << t);
      }
      return avail;
    }
    int added_index = -1;
    for (std::size_t m = 0; m < members.size(); ++m)
      if (members[m] == cand_[added]) added_index = static_cast<int>(m);
    members.push_back(Subset());
    const int slot = static_cast<int>(members.size()) - 1;
    for (std::uint64_t rest = avail; rest; rest &= rest - 1) {
      const std::size_t t = static_cast<std::size_t>(std::countr_zero(rest));
      members.back() = cand_[t];
      ForcedEmbedder emb(members, prob_.pattern);
      if (emb.through_pair(slot, added_index)) avail &= ~(std::uint64_t{1} << t);
    }
    return avail;
  }

  std::int64_t upper_bound(std::uint64_t avail, std::int64_t used) const {
    std::int64_t room = budget_ - used;
    if (room <= 0) return 0;
    std::int64_t gain = 0;
    for (int level : level_order_) {
      const std::int64_t count = std::popcount(avail & level_masks_[static_cast<std::size_t>(level)]);
      if (count == 0) continue;
      const std::int64_t cost = static_cast<std::int64_t>(factorial(level) * factorial(prob_.n - level));
      const std::int64_t unit = prob_.objective == Objective::cardinality ? 1 : cost;
      const std::int64_t take = std::min(count, room / cost);
      gain += take * unit;
      room -= take * cost;
      if (take < count) {
        // fractional part, rounded up
        gain += (room * unit + cost - 1) / cost;
        break;
      }
    }
    return gain;
  }

  void dfs(std::uint64_t chosen, std::uint64_t avail, std::int64_t value, std::int64_t used, std::uint64_t& nodes) {
    ++nodes;
    offer(chosen, value);
    if (!avail) return;
    if (value + upper_bound(avail, used) <= current_best()) return;
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(avail));
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (used + cost_[i] <= budget_) {
      const std::uint64_t next = chosen | bit;
      dfs(next, refilter(next, avail & ~bit, i), value + gain_[i], used + cost_[i], nodes);
    }
    dfs(chosen, avail & ~bit, value, used, nodes);
  }

  struct Task {
    std::uint64_t chosen, avail;
    std::int64_t value, used;
  };

  void split(const Task& t, int depth, std::vector<Task>& out, std::uint64_t& nodes) {
    if (depth == 0 || !t.avail) {
      out.push_back(t);
      return;
    }
    ++nodes;
    offer(t.chosen, t.value);
    const std::size_t i = static_cast<std::size_t>(std::countr_zero(t.avail));
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (t.used + cost_[i] <= budget_) {
      const std::uint64_t next = t.chosen | bit;
      split({next, refilter(next, t.avail & ~bit, i), t.value + gain_[i], t.used + cost_[i]}, depth - 1, out, nodes);
    }
    split({t.chosen, t.avail & ~bit, t.value, t.used}, depth - 1, out, nodes);
  }

  void run_parallel(std::uint64_t chosen, std::uint64_t avail, std::int64_t value, std::int64_t used,
                    unsigned threads) {
    std::vector<Task> tasks;
    split({chosen, avail, value, used}, 6, tasks, nodes_);
    std::atomic<std::size_t> next{0};
    std::vector<std::uint64_t> counts(threads, 0);
    auto worker = [&](unsigned w) {
      for (std::size_t k; (k = next.fetch_add(1)) < tasks.size();)
        dfs(tasks[k].chosen, tasks[k].avail, tasks[k].value, tasks[k].used, counts[w]);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
    for (auto c : counts) nodes_ += c;
  }

  std::int64_t current_best() const {
    std::lock_guard<std::mutex> lock(mu_);
    return best_value_;
  }

  void offer(std::uint64_t chosen, std::int64_t value) {
    std::lock_guard<std::mutex> lock(mu_);
    if (value > best_value_) {
      best_value_ = value;
      best_set_ = chosen;
    }
  }

  const SearchProblem& prob_;
  const SearchOptions& opt_;
  std::vector<Subset> cand_;
  std::vector<std::int64_t> cost_, gain_;
  std::vector<std::uint64_t> level_masks_;
  std::vector<int> level_order_;
  std::int64_t budget_ = 0;
  bool chain_pattern_ = false;
  mutable std::mutex mu_;
  std::int64_t best_value_ = 0;
  std::uint64_t best_set_ = 0;
  std::uint64_t nodes_ = 0;
};

inline void validate_problem(const SearchProblem& p) {
  if (p.n < 0) throw DomainError("search: n must be nonnegative");
  if (p.n > kMaxSearchGround) throw CapacityError("search: n above " + std::to_string(kMaxSearchGround));
  if (p.pattern.size() < 1) throw DomainError("search: empty pattern");
  if (p.window) {
    if (p.window->lo < 0 || p.window->lo > p.window->hi || p.window->hi > p.n)
      throw DomainError("search: level window must satisfy 0 <= lo <= hi <= n");
  }
  for (Subset m : p.must_contain) {
    if ((m.bits() & ~full_mask(p.n)) != 0) throw DomainError("search: required set outside [n]");
    if (p.window && (m.size() < p.window->lo || m.size() > p.window->hi))
      throw ValidationError("search: required set " + to_string(m) + " lies outside the window");
  }
}

inline void check_witness(const SearchProblem& p, const SearchResult& r) {
  if (!is_p_free(r.witness, p.pattern)) throw std::logic_error("search produced a witness containing the pattern");
  for (Subset m : p.must_contain)
    if (!r.witness.contains(m)) throw std::logic_error("search produced a witness missing a required set");
}

}  // namespace detail

/// Exact La(n, P) restricted to the optional level window, with
/// cardinality as objective unless the problem says otherwise.
/// Unrestricted searches are limited to n <= 6 for chains and n <= 5 for
/// other patterns; a window may go further while at most 64 sets qualify.
inline SearchResult la_exact(const SearchProblem& problem, const SearchOptions& options = {}) {
  detail::validate_problem(problem);
  if (!problem.window) {
    const bool chain = problem.pattern == posets::chain(problem.pattern.size());
    const int cap = chain ? 6 : 5;
    if (problem.n > cap)
      throw CapacityError("la_exact: unrestricted search is limited to n <= " + std::to_string(cap) +
                          " for this pattern; give a level window");
  }
  detail::BranchAndBound bb(problem, options);
  auto r = bb.run();
  detail::check_witness(problem, r);
  return r;
}

/// Maximum Lubell value of a P-free family, optionally forced to contain
/// the empty set. Exhaustive for n <= 4; n = 5 needs a level window.
inline SearchResult max_lubell(SearchProblem problem, bool require_empty_set, const SearchOptions& options = {}) {
  detail::validate_problem(problem);
  if (problem.n > 5 || (problem.n == 5 && !problem.window))
    throw CapacityError("max_lubell: exhaustive for n <= 4; n = 5 requires a level window");
  problem.objective = Objective::lubell;
  if (require_empty_set) problem.must_contain.push_back(Subset());
  detail::validate_problem(problem);
  detail::BranchAndBound bb(problem, options);
  auto r = bb.run();
  detail::check_witness(problem, r);
  return r;
}

// ---------------------------------------------------------------------------
// Inequality sweeps

struct InequalitySweep {
  std::string name;
  std::uint64_t examined = 0;   ///< families or scenarios generated
  std::uint64_t admissible = 0; ///< those satisfying the hypotheses
  std::uint64_t failures = 0;
  double worst_slack = std::numeric_limits<double>::infinity();  ///< rhs - lhs
  std::string worst_witness;
  Rational worst_lhs;
  double worst_rhs = 0;

  bool pass() const { return failures == 0; }
};

/// Guard used when comparing an exact left side with a floating right side.
inline constexpr double kBoundGuard = 1e-12;

namespace detail {

inline void record(InequalitySweep& sweep, const Rational& lhs, double rhs, const std::string& witness) {
  ++sweep.admissible;
  const double slack = rhs - to_double(lhs);
  if (slack < -kBoundGuard) ++sweep.failures;
  if (slack < sweep.worst_slack) {
    sweep.worst_slack = slack;
    sweep.worst_lhs = lhs;
    sweep.worst_rhs = rhs;
    sweep.worst_witness = witness;
  }
}

inline void check_lemma9_family(InequalitySweep& sweep, const Family& fam, int nprime) {
  if (!is_lambda_free(fam)) return;
  const Rational c = count_mnm(fam);
  record(sweep, lubell(fam), lemma_lubell_rhs(to_double(c), nprime), io::to_text(fam));
}

}  // namespace detail

/// For every Lambda-free family of nonempty sets of size at most n - n'
/// (all of them for n <= 4, `samples` random greedy families for n = 5),
/// checks l(F) <= 1 - m + sqrt(m) + 3/n' with m = min(c + 1/n', 1/4).
inline InequalitySweep verify_lemma9_exhaustive(int n, int nprime, std::uint64_t samples = 100000,
                                                std::uint64_t seed = 0) {
  if (n < 1) throw DomainError("verify_lemma9: n must be at least 1");
  if (nprime < 1) throw DomainError("verify_lemma9: nprime must be at least 1");
  if (n > 5) throw CapacityError("verify_lemma9: limited to n <= 5");
  std::vector<Subset> pool;
  for (Mask m = 1; m < (Mask{1} << n); ++m)
    if (std::popcount(m) <= n - nprime) pool.emplace_back(m);
  InequalitySweep sweep;
  sweep.name = "lemma9";
  if (n <= 4) {
    const std::uint64_t total = std::uint64_t{1} << pool.size();
    for (std::uint64_t pick = 0; pick < total; ++pick) {
      std::vector<Subset> members;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if ((pick >> i) & 1U) members.push_back(pool[i]);
      ++sweep.examined;
      detail::check_lemma9_family(sweep, Family(n, std::move(members)), nprime);
    }
    return sweep;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    auto order = pool;
    std::shuffle(order.begin(), order.end(), rng);
    const double p = density(rng);
    std::bernoulli_distribution coin(p);
    std::vector<Subset> members;
    for (Subset t : order) {
      if (!coin(rng)) continue;
      members.push_back(t);
      if (!is_lambda_free(Family(n, members))) members.pop_back();
    }
    ++sweep.examined;
    detail::check_lemma9_family(sweep, Family(n, std::move(members)), nprime);
  }
  return sweep;
}

/// Checks l(F) <= f(x, c + mu + 1/n') - (alpha - mu - x) + 3/n' on a single
/// scenario, adding the outcome to the sweep.
inline void check_lemma12(InequalitySweep& sweep, const Scenario& s) {
  ++sweep.examined;
  const auto st = scenario_stats(s);
  const double rhs = lemma_ind_rhs(to_double(st.x), to_double(st.c), to_double(st.mu), to_double(st.alpha), s.nprime);
  detail::record(sweep, lubell(s.F), rhs, to_text(s));
}

/// Seeded random scenarios with n drawn uniformly from [n_lo, n_hi].
inline InequalitySweep verify_lemma12_random(int n_lo, int n_hi, std::uint64_t samples, std::uint64_t seed,
                                             CaseRequest request = CaseRequest::any) {
  if (n_lo < 2 || n_hi < n_lo) throw DomainError("verify_lemma12: need 2 <= n_lo <= n_hi");
  if (n_hi > kChainCap) throw CapacityError("verify_lemma12: n above the chain enumeration cap");
  InequalitySweep sweep;
  sweep.name = "lemma12";
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(n_lo, n_hi);
  for (std::uint64_t i = 0; i < samples; ++i) check_lemma12(sweep, random_scenario(rng, pick(rng), request));
  return sweep;
}

/// X = XFam = {} and F the canonical family without the empty set, with
/// |A| = k and n' = n - 2.
inline Scenario canonical_scenario(int n, int k) {
  if (n < 3 || k < 0 || k > n) throw DomainError("canonical_scenario: need n >= 3 and 0 <= k <= n");
  Subset A;
  for (int e = 1; e <= k; ++e) A = A.with(e);
  Scenario s;
  s.n = n;
  s.nprime = n - 2;
  s.F = canonical_family({n, A}).filter([](Subset m) { return !m.empty(); });
  s.XFam = Family(n);
  return s;
}

}  // namespace dfree
