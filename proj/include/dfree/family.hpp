#pragma once

#include <dfree/errors.hpp>
#include <dfree/subset.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace dfree {

/// A deduplicated collection of subsets of [n], kept in canonical order
/// (by size, then lexicographically).
class Family {
 public:
  Family() = default;

  explicit Family(int n) : n_(n) { check_ground(n); }

  Family(int n, std::vector<Subset> members) : n_(n), members_(std::move(members)) {
    check_ground(n);
    const Mask full = full_mask(n);
    for (Subset s : members_) {
      if ((s.bits() & ~full) != 0)
        throw DomainError("subset " + to_string(s) + " is not contained in [" +
                          std::to_string(n) + "]");
    }
    normalize();
  }

  Family(int n, std::initializer_list<std::initializer_list<int>> lists) : n_(n) {
    check_ground(n);
    std::vector<Subset> members;
    for (const auto& l : lists) members.push_back(Subset::of(l));
    *this = Family(n, std::move(members));
  }

  static Family from_lists(int n, const std::vector<std::vector<int>>& lists) {
    std::vector<Subset> members;
    members.reserve(lists.size());
    for (const auto& l : lists) {
      for (int e : l)
        if (e < 1 || e > n)
          throw DomainError("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
      members.push_back(Subset::of(l));
    }
    return Family(n, std::move(members));
  }

  /// All sets of 2^[n] of size k.
  static Family level(int n, int k) {
    check_ground(n);
    std::vector<Subset> members;
    if (k >= 0 && k <= n) {
      for (Mask m = 0; m <= full_mask(n); ++m)
        if (std::popcount(m) == k) members.emplace_back(m);
    }
    return Family(n, std::move(members));
  }

  /// The whole lattice 2^[n].
  static Family power_set(int n) {
    check_ground(n);
    std::vector<Subset> members;
    for (Mask m = 0; m <= full_mask(n); ++m) members.emplace_back(m);
    return Family(n, std::move(members));
  }

  int n() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const std::vector<Subset>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  Subset operator[](std::size_t i) const { return members_[i]; }

  bool contains(Subset s) const { return std::binary_search(members_.begin(), members_.end(), s); }

  Family with(Subset s) const {
    auto copy = members_;
    copy.push_back(s);
    return Family(n_, std::move(copy));
  }

  Family without(Subset s) const {
    auto copy = members_;
    std::erase(copy, s);
    return Family(n_, std::move(copy));
  }

  Family filter(const std::function<bool(Subset)>& keep) const {
    std::vector<Subset> out;
    for (Subset s : members_)
      if (keep(s)) out.push_back(s);
    return Family(n_, std::move(out));
  }

  Family united(const Family& other) const {
    require_same_ground(other);
    auto copy = members_;
    copy.insert(copy.end(), other.members_.begin(), other.members_.end());
    return Family(n_, std::move(copy));
  }

  bool disjoint_from(const Family& other) const {
    require_same_ground(other);
    for (Subset s : other)
      if (contains(s)) return false;
    return true;
  }

  /// Indicator table over all 2^n masks.
  std::vector<std::uint8_t> indicator() const {
    std::vector<std::uint8_t> table(std::size_t{1} << n_, 0);
    for (Subset s : members_) table[s.bits()] = 1;
    return table;
  }

  /// Members that contain no other member.
  std::vector<Subset> minimal_members() const {
    std::vector<Subset> out;
    for (Subset s : members_) {
      bool minimal = true;
      for (Subset t : members_) {
        if (t.size() >= s.size()) break;
        if (t.proper_subset_of(s)) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(s);
    }
    return out;
  }

  bool is_maximal(Subset s) const {
    for (auto it = members_.rbegin(); it != members_.rend() && it->size() > s.size(); ++it)
      if (s.proper_subset_of(*it)) return false;
    return true;
  }

  bool is_antichain() const {
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = i + 1; j < members_.size(); ++j)
        if (members_[i].proper_subset_of(members_[j])) return false;
    return true;
  }

  friend bool operator==(const Family&, const Family&) = default;

 private:
  static void check_ground(int n) {
    if (n < 0 || n > kMaxGround)
      throw CapacityError("ground set size " + std::to_string(n) + " outside 0.." +
                          std::to_string(kMaxGround));
  }

  void require_same_ground(const Family& other) const {
    if (other.n_ != n_) throw DomainError("families live on different ground sets");
  }

  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  int n_ = 0;
  std::vector<Subset> members_;
};

}  // namespace dfree
