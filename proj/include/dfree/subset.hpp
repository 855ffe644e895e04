#pragma once

#include <dfree/errors.hpp>

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace dfree {

using Mask = std::uint32_t;

/// Largest ground set supported by the bit-set representation.
inline constexpr int kMaxGround = 24;

inline constexpr Mask full_mask(int n) {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

/// A member of 2^[n]. Element i (1-based) lives in bit i-1.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(Mask bits) : bits_(bits) {}

  static Subset of(std::initializer_list<int> elements) {
    Subset s;
    for (int e : elements) s = s.with(e);
    return s;
  }

  static Subset of(const std::vector<int>& elements) {
    Subset s;
    for (int e : elements) s = s.with(e);
    return s;
  }

  /// {1, ..., n}
  static constexpr Subset full(int n) { return Subset(full_mask(n)); }

  constexpr Mask bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }

  constexpr bool contains(int element) const {
    return element >= 1 && element <= 32 && ((bits_ >> (element - 1)) & 1U);
  }

  Subset with(int element) const {
    if (element < 1 || element > kMaxGround)
      throw DomainError("element " + std::to_string(element) + " outside 1.." +
                        std::to_string(kMaxGround));
    return Subset(bits_ | (Mask{1} << (element - 1)));
  }

  constexpr Subset without(int element) const {
    return Subset(bits_ & ~(Mask{1} << (element - 1)));
  }

  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool proper_subset_of(Subset other) const {
    return bits_ != other.bits_ && subset_of(other);
  }
  constexpr bool comparable(Subset other) const {
    return subset_of(other) || other.subset_of(*this);
  }
  constexpr bool disjoint(Subset other) const { return (bits_ & other.bits_) == 0; }

  /// Largest element present; 0 for the empty set.
  constexpr int max_element() const { return bits_ == 0 ? 0 : std::bit_width(bits_); }

  /// Complement inside [n].
  constexpr Subset complement(int n) const { return Subset(~bits_ & full_mask(n)); }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr Subset operator-(Subset a, Subset b) { return Subset(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(Subset a, Subset b) = default;

  /// Canonical order: by size, then lexicographically by sorted element list.
  friend constexpr std::strong_ordering operator<=>(Subset a, Subset b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    if (a.bits_ == b.bits_) return std::strong_ordering::equal;
    // The set owning the smallest differing element sorts first.
    const Mask low = (a.bits_ ^ b.bits_) & (~(a.bits_ ^ b.bits_) + 1);
    return (a.bits_ & low) ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  Mask bits_ = 0;
};

/// Drop `element` from the ground set, shifting higher elements down by one.
/// Used to identify [{o}, [n]] - o with 2^([n] \ {o}) relabeled onto [n-1].
constexpr Mask remove_element_bit(Mask bits, int element) {
  const int pos = element - 1;
  const Mask low = bits & ((Mask{1} << pos) - 1);
  const Mask high = (bits >> (pos + 1)) << pos;
  return low | high;
}

/// Relabel [n] \ S onto [n - |S|] preserving order (pext-style compaction).
constexpr Mask compress_bits(Mask bits, Mask keep) {
  Mask out = 0;
  int pos = 0;
  for (Mask k = keep; k != 0; k &= k - 1) {
    const Mask bit = k & (~k + 1);
    if (bits & bit) out |= Mask{1} << pos;
    ++pos;
  }
  return out;
}

/// "{}" for the empty set, otherwise "1,2,5".
inline std::string to_string(Subset s) {
  if (s.empty()) return "{}";
  std::string out;
  for (int e : s.elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

}  // namespace dfree
