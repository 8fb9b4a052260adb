#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace uclosed {

/// Largest ground set a SetMask can address.
inline constexpr int kMaxGround = 30;

/// A subset of the ground set [n]. Element i (1-based in all I/O) lives in
/// bit i-1; every accessor below takes 0-based element indices.
class SetMask {
public:
  constexpr SetMask() = default;
  constexpr explicit SetMask(std::uint32_t bits) : bits_(bits) {}

  static constexpr SetMask full(int n) { return SetMask(n <= 0 ? 0u : (n >= 32 ? ~0u : (1u << n) - 1u)); }
  static constexpr SetMask singleton(int e) { return SetMask(1u << e); }

  /// Builds a mask from 1-based element labels, e.g. of({2, 4, 6}).
  static constexpr SetMask of(std::initializer_list<int> one_based) {
    std::uint32_t b = 0;
    for (int e : one_based) b |= 1u << (e - 1);
    return SetMask(b);
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int e) const { return (bits_ >> e) & 1u; }
  constexpr bool subset_of(SetMask other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool fits(int n) const { return (bits_ & ~full(n).bits_) == 0; }
  constexpr bool intersects(SetMask other) const { return (bits_ & other.bits_) != 0; }

  constexpr SetMask with(int e) const { return SetMask(bits_ | (1u << e)); }
  constexpr SetMask without(int e) const { return SetMask(bits_ & ~(1u << e)); }

  friend constexpr SetMask operator|(SetMask a, SetMask b) { return SetMask(a.bits_ | b.bits_); }
  friend constexpr SetMask operator&(SetMask a, SetMask b) { return SetMask(a.bits_ & b.bits_); }
  /// Set difference.
  friend constexpr SetMask operator-(SetMask a, SetMask b) { return SetMask(a.bits_ & ~b.bits_); }

  friend constexpr bool operator==(SetMask, SetMask) = default;
  friend constexpr auto operator<=>(SetMask a, SetMask b) { return a.bits_ <=> b.bits_; }

  /// 1-based labels in increasing order.
  std::vector<int> elements() const;

private:
  std::uint32_t bits_ = 0;
};

static_assert(sizeof(SetMask) == sizeof(std::uint32_t));

/// Orders by cardinality first, then by numeric value.
constexpr bool size_then_value_less(SetMask a, SetMask b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

/// Calls f(s) for every s with base ⊆ s ⊆ [n], in increasing numeric order.
template <typename F>
void for_each_superset(SetMask base, int n, F&& f) {
  const std::uint32_t free = SetMask::full(n).bits() & ~base.bits();
  std::uint32_t s = 0;
  do {
    f(SetMask(base.bits() | s));
    s = (s - free) & free;
  } while (s != 0);
}

/// Calls f(s) for every s ⊆ top, in increasing numeric order.
template <typename F>
void for_each_subset(SetMask top, F&& f) {
  std::uint32_t s = 0;
  do {
    f(SetMask(s));
    s = (s - top.bits()) & top.bits();
  } while (s != 0);
}

/// "{1,4,7}", or "{}" for the empty set.
std::string to_string(SetMask s);

/// Complement-style rendering against [n]: "[8]", "[8]\{1,2}", or the plain set
/// when that is shorter.
std::string describe_within(SetMask s, int n);

} // namespace uclosed
