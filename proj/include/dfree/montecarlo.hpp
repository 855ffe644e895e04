#pragma once

#include <dfree/constructions.hpp>
#include <dfree/errors.hpp>
#include <dfree/rational.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace dfree {

enum class GeneratorKind { even_odd, canonical, two_middle_levels };

/// A construction given by parameters only. For the canonical family the
/// singleton set is A = {1, ..., k}; for even/odd it is the even numbers.
struct Generator {
  GeneratorKind kind = GeneratorKind::even_odd;
  int n = 0;
  int k = 0;
};

inline const char* to_string(GeneratorKind g) {
  switch (g) {
    case GeneratorKind::even_odd: return "even-odd";
    case GeneratorKind::canonical: return "canonical";
    case GeneratorKind::two_middle_levels: return "two-middle-levels";
  }
  return "?";
}

inline GeneratorKind parse_generator(const std::string& id) {
  if (id == "even-odd") return GeneratorKind::even_odd;
  if (id == "canonical") return GeneratorKind::canonical;
  if (id == "two-middle-levels") return GeneratorKind::two_middle_levels;
  throw ParseError("unknown generator '" + id + "' (expected even-odd, canonical or two-middle-levels)");
}

inline Generator make_even_odd(int n) { return {GeneratorKind::even_odd, n, n / 2}; }

inline Generator make_canonical(int n, int k) { return {GeneratorKind::canonical, n, k}; }

/// |A| = round(a n).
inline Generator make_canonical_fraction(int n, double a) {
  if (!(a >= 0 && a <= 1)) throw DomainError("canonical generator: a must lie in [0, 1]");
  return {GeneratorKind::canonical, n, static_cast<int>(std::lround(a * n))};
}

inline Generator make_two_middle_levels(int n) { return {GeneratorKind::two_middle_levels, n, 0}; }

inline void validate(const Generator& g) {
  if (g.n < 2) throw DomainError(std::string(to_string(g.kind)) + " generator needs n >= 2");
  if (g.kind == GeneratorKind::canonical && (g.k < 0 || g.k > g.n))
    throw DomainError("canonical generator: need 0 <= |A| <= n");
}

struct ExactValues {
  Rational lubell;
  Rational mnm;
};

/// Closed forms for the supported constructions.
inline ExactValues exact_values(const Generator& g) {
  validate(g);
  switch (g.kind) {
    case GeneratorKind::even_odd:
    case GeneratorKind::canonical: {
      const int k = g.kind == GeneratorKind::even_odd ? g.n / 2 : g.k;
      const Rational mnm = k == g.n ? Rational(0) : Rational(BigInt(k) * (k - 1), BigInt(g.n) * (g.n - 1));
      return {canonical_lubell(g.n, k), mnm};
    }
    case GeneratorKind::two_middle_levels: return {Rational(2), Rational(0)};
  }
  return {};
}

namespace detail {

struct ChainOutcome {
  int hits = 0;
  bool mnm = false;
};

/// Draws only as many chain elements as the construction needs. Elements
/// are 0-based; the singleton set of the canonical family is {0..k-1}, of
/// even/odd the odd indices (the even numbers 2, 4, ... of [n]).
class ChainSampler {
 public:
  ChainSampler(const Generator& g, std::uint64_t seed) : g_(g), rng_(seed), perm_(static_cast<std::size_t>(g.n)) {
    for (int i = 0; i < g.n; ++i) perm_[static_cast<std::size_t>(i)] = i;
  }

  ChainOutcome draw() {
    switch (g_.kind) {
      case GeneratorKind::two_middle_levels: return {2, false};
      case GeneratorKind::even_odd:
      case GeneratorKind::canonical: {
        const int x1 = pick(0), x2 = pick(1);
        const bool a1 = in_a(x1), a2 = in_a(x2);
        const int a_size = g_.kind == GeneratorKind::even_odd ? g_.n / 2 : g_.k;
        ChainOutcome out;
        out.hits = 1 + (a1 ? 1 : 0) + (a1 && a2 ? 0 : 1);
        // Only {x1} can be a non-maximal top member: it lies below {x1, o}
        // for any o outside A.
        out.mnm = a1 && a2 && a_size < g_.n;
        return out;
      }
    }
    return {};
  }

 private:
  /// Partial Fisher-Yates: fixes position i of a uniform permutation.
  int pick(int i) {
    std::uniform_int_distribution<int> d(i, g_.n - 1);
    const int j = d(rng_);
    std::swap(perm_[static_cast<std::size_t>(i)], perm_[static_cast<std::size_t>(j)]);
    return perm_[static_cast<std::size_t>(i)];
  }

  bool in_a(int e) const {
    return g_.kind == GeneratorKind::even_odd ? (e % 2 == 1) : e < g_.k;
  }

  Generator g_;
  std::mt19937_64 rng_;
  std::vector<int> perm_;
};

}  // namespace detail

struct McEstimate {
  std::uint64_t samples = 0;
  double lubell = 0, lubell_stderr = 0;
  double mnm = 0, mnm_stderr = 0;
  bool stderr_defined = false;  ///< false for a single sample
};

/// Averages over uniformly random maximal chains: the number of family
/// members on the chain estimates the Lubell value, the MNM indicator the
/// MNM fraction. Deterministic for a given seed.
inline McEstimate mc_estimate(const Generator& g, std::uint64_t samples, std::uint64_t seed) {
  validate(g);
  if (samples < 1) throw DomainError("mc_estimate: samples must be at least 1");
  detail::ChainSampler sampler(g, seed);
  double sum = 0, sum_sq = 0, mnm = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto o = sampler.draw();
    sum += o.hits;
    sum_sq += static_cast<double>(o.hits) * o.hits;
    mnm += o.mnm ? 1 : 0;
  }
  McEstimate e;
  e.samples = samples;
  const double m = static_cast<double>(samples);
  e.lubell = sum / m;
  e.mnm = mnm / m;
  if (samples > 1) {
    const double var = std::max(0.0, (sum_sq - m * e.lubell * e.lubell) / (m - 1));
    const double var_mnm = e.mnm * (1 - e.mnm) * m / (m - 1);
    e.lubell_stderr = std::sqrt(var / m);
    e.mnm_stderr = std::sqrt(var_mnm / m);
    e.stderr_defined = true;
  }
  return e;
}

}  // namespace dfree
