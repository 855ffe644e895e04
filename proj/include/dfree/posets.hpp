#pragma once

#include <dfree/errors.hpp>
#include <dfree/family.hpp>
#include <dfree/io.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dfree {

/// Largest forbidden pattern handled by the embedding search.
inline constexpr int kMaxPattern = 8;

/// A finite strict partial order on {0, ..., k-1}. Row i of the relation
/// has bit j set iff i < j.
class PosetSpec {
 public:
  PosetSpec() = default;

  PosetSpec(int k, const std::vector<std::pair<int, int>>& relations, std::string name = {})
      : k_(k), name_(std::move(name)) {
    if (k < 0 || k > kMaxPattern)
      throw CapacityError("patterns are limited to " + std::to_string(kMaxPattern) + " elements");
    for (auto [a, b] : relations) {
      if (a < 0 || a >= k || b < 0 || b >= k) throw ValidationError("relation index out of range");
      lt_[static_cast<std::size_t>(a)] |= static_cast<std::uint8_t>(1U << b);
    }
    close_transitively();
    validate();
  }

  /// From a k x k boolean matrix (lt[i][j] means i < j); must already be a
  /// strict partial order.
  static PosetSpec from_matrix(const std::vector<std::vector<bool>>& lt, std::string name = {}) {
    const int k = static_cast<int>(lt.size());
    if (k > kMaxPattern)
      throw CapacityError("patterns are limited to " + std::to_string(kMaxPattern) + " elements");
    std::vector<std::pair<int, int>> rel;
    for (int i = 0; i < k; ++i) {
      if (static_cast<int>(lt[static_cast<std::size_t>(i)].size()) != k)
        throw ValidationError("relation matrix is not square");
      for (int j = 0; j < k; ++j)
        if (lt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) rel.emplace_back(i, j);
    }
    PosetSpec p;
    p.k_ = k;
    p.name_ = std::move(name);
    for (auto [a, b] : rel) p.lt_[static_cast<std::size_t>(a)] |= static_cast<std::uint8_t>(1U << b);
    auto closed = p;
    closed.close_transitively();
    if (closed.lt_ != p.lt_) throw ValidationError("relation matrix is not transitively closed");
    p.validate();
    return p;
  }

  int size() const { return k_; }
  const std::string& name() const { return name_; }
  bool less(int i, int j) const { return (lt_[static_cast<std::size_t>(i)] >> j) & 1U; }
  std::uint8_t successors(int i) const { return lt_[static_cast<std::size_t>(i)]; }

  std::uint8_t predecessors(int j) const {
    std::uint8_t out = 0;
    for (int i = 0; i < k_; ++i)
      if (less(i, j)) out |= static_cast<std::uint8_t>(1U << i);
    return out;
  }

  /// Elements ordered so that every predecessor precedes its successors.
  std::vector<int> linear_extension() const {
    std::vector<int> order(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::popcount(predecessors(a)) < std::popcount(predecessors(b));
    });
    return order;
  }

  /// Length of the longest strict chain ending at i, not counting i.
  int height_below(int i) const {
    int best = 0;
    for (int j = 0; j < k_; ++j)
      if (less(j, i)) best = std::max(best, height_below(j) + 1);
    return best;
  }

  int height_above(int i) const {
    int best = 0;
    for (int j = 0; j < k_; ++j)
      if (less(i, j)) best = std::max(best, height_above(j) + 1);
    return best;
  }

  friend bool operator==(const PosetSpec& a, const PosetSpec& b) {
    return a.k_ == b.k_ && a.lt_ == b.lt_;
  }

 private:
  void close_transitively() {
    for (int m = 0; m < k_; ++m)
      for (int i = 0; i < k_; ++i)
        if (less(i, m)) lt_[static_cast<std::size_t>(i)] |= lt_[static_cast<std::size_t>(m)];
  }

  void validate() const {
    for (int i = 0; i < k_; ++i) {
      if (less(i, i)) throw ValidationError("poset relation is not irreflexive (cycle through element " + std::to_string(i) + ")");
      for (int j = 0; j < k_; ++j)
        if (less(i, j) && less(j, i)) throw ValidationError("poset relation is not antisymmetric");
    }
  }

  int k_ = 0;
  std::array<std::uint8_t, kMaxPattern> lt_{};
  std::string name_;
};

namespace posets {

/// Total order on k elements.
inline PosetSpec chain(int k) {
  if (k < 1) throw DomainError("chain pattern needs k >= 1");
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < k; ++i) rel.emplace_back(i, i + 1);
  return PosetSpec(k, rel, "chain:" + std::to_string(k));
}

/// x < y, x < z
inline PosetSpec v() { return PosetSpec(3, {{0, 1}, {0, 2}}, "v"); }

/// x < z, y < z
inline PosetSpec lambda() { return PosetSpec(3, {{0, 2}, {1, 2}}, "lambda"); }

/// x < y, z and y, z < w
inline PosetSpec diamond() { return PosetSpec(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, "diamond"); }

/// x < y_1, ..., y_r
inline PosetSpec fork(int r) {
  if (r < 1) throw DomainError("fork pattern needs r >= 1");
  std::vector<std::pair<int, int>> rel;
  for (int i = 1; i <= r; ++i) rel.emplace_back(0, i);
  return PosetSpec(r + 1, rel, "fork:" + std::to_string(r));
}

/// `chain:k`, `v`, `lambda`, `diamond`, `fork:r`.
inline PosetSpec parse(std::string_view text) {
  text = io::trim(text);
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  if (colon == std::string_view::npos) {
    if (head == "v") return v();
    if (head == "lambda") return lambda();
    if (head == "diamond") return diamond();
  } else {
    const int arg = io::parse_int(text.substr(colon + 1), "pattern parameter");
    if (head == "chain") return chain(arg);
    if (head == "fork") return fork(arg);
  }
  throw ParseError("unknown pattern '" + std::string(text) + "' (expected chain:k, v, lambda, diamond, fork:r)");
}

}  // namespace posets

namespace detail {

struct Embedder {
  const Family& family;
  const PosetSpec& p;
  std::vector<int> order;
  std::vector<int> below, above;
  std::vector<int> image;  // member index per pattern element, -1 if unset
  std::vector<char> used;

  Embedder(const Family& f, const PosetSpec& pat)
      : family(f), p(pat), order(pat.linear_extension()),
        below(static_cast<std::size_t>(pat.size())), above(static_cast<std::size_t>(pat.size())),
        image(static_cast<std::size_t>(pat.size()), -1), used(f.size(), 0) {
    for (int i = 0; i < p.size(); ++i) {
      below[static_cast<std::size_t>(i)] = p.height_below(i);
      above[static_cast<std::size_t>(i)] = p.height_above(i);
    }
  }

  bool search(std::size_t pos) {
    if (pos == order.size()) return true;
    const int e = order[pos];
    const int min_size = below[static_cast<std::size_t>(e)];
    const int max_size = family.n() - above[static_cast<std::size_t>(e)];
    for (std::size_t m = 0; m < family.size(); ++m) {
      if (used[m]) continue;
      const Subset s = family[m];
      if (s.size() < min_size) continue;
      if (s.size() > max_size) break;
      bool ok = true;
      for (int j = 0; j < p.size() && ok; ++j) {
        const int im = image[static_cast<std::size_t>(j)];
        if (im < 0) continue;
        const Subset t = family[static_cast<std::size_t>(im)];
        if (p.less(j, e) && !t.proper_subset_of(s)) ok = false;
        if (p.less(e, j) && !s.proper_subset_of(t)) ok = false;
      }
      if (!ok) continue;
      used[m] = 1;
      image[static_cast<std::size_t>(e)] = static_cast<int>(m);
      if (search(pos + 1)) return true;
      image[static_cast<std::size_t>(e)] = -1;
      used[m] = 0;
    }
    return false;
  }
};

}  // namespace detail

/// Finds an injection of the pattern into distinct members that maps every
/// strict relation to a strict inclusion. The witness lists the image of
/// each pattern element in element order.
inline std::optional<std::vector<Subset>> find_weak_subposet(const Family& family, const PosetSpec& p) {
  if (p.size() > kMaxPattern)
    throw CapacityError("patterns are limited to " + std::to_string(kMaxPattern) + " elements");
  if (static_cast<std::size_t>(p.size()) > family.size()) return std::nullopt;
  detail::Embedder emb(family, p);
  if (!emb.search(0)) return std::nullopt;
  std::vector<Subset> witness;
  for (int im : emb.image) witness.push_back(family[static_cast<std::size_t>(im)]);
  return witness;
}

inline bool contains_weak_subposet(const Family& family, const PosetSpec& p) {
  return find_weak_subposet(family, p).has_value();
}

inline bool is_p_free(const Family& family, const PosetSpec& p) {
  return !contains_weak_subposet(family, p);
}

/// No A, B, C, D with A < B, C < D (B and C may be related).
inline bool is_diamond_free(const Family& family) {
  const auto& m = family.members();
  std::vector<Subset> below;
  for (std::size_t d = 0; d < m.size(); ++d) {
    below.clear();
    for (std::size_t i = 0; i < d && m[i].size() < m[d].size(); ++i)
      if (m[i].proper_subset_of(m[d])) below.push_back(m[i]);
    if (below.size() < 3) continue;
    for (std::size_t a = 0; a < below.size(); ++a) {
      int between = 0;
      for (std::size_t b = a + 1; b < below.size(); ++b)
        if (below[a].proper_subset_of(below[b]) && ++between == 2) return false;
    }
  }
  return true;
}

/// No B, C, D with B, C < D.
inline bool is_lambda_free(const Family& family) {
  const auto& m = family.members();
  for (std::size_t d = 0; d < m.size(); ++d) {
    int below = 0;
    for (std::size_t i = 0; i < d && m[i].size() < m[d].size(); ++i)
      if (m[i].proper_subset_of(m[d]) && ++below == 2) return false;
  }
  return true;
}

}  // namespace dfree
