#pragma once

#include "uclosed/set_mask.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace uclosed {

/// A duplicate-free collection of subsets of [n], kept in ascending numeric
/// order so that equal families compare member-for-member.
class Family {
public:
  Family() = default;

  /// Sorts `members`. Throws InvalidFamily on duplicates, on members that do
  /// not fit in [n], or on n outside 0..kMaxGround.
  Family(int ground_size, std::vector<SetMask> members);

  static Family power_set(int n);

  int ground_size() const { return ground_size_; }
  std::span<const SetMask> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(SetMask s) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }
  SetMask operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const Family&, const Family&) = default;

private:
  int ground_size_ = 0;
  std::vector<SetMask> members_;
};

/// counts[x] = number of members containing element x (0-based index).
struct FrequencyVector {
  std::vector<std::uint32_t> counts;

  std::uint64_t total() const;
  std::uint32_t max() const;
  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;
};

struct UnionClosure {
  bool closed = true;
  /// First pair (in canonical order) whose union is not a member.
  std::optional<std::pair<SetMask, SetMask>> witness;

  explicit operator bool() const { return closed; }
};

struct FilterCheck {
  bool filter = true;
  /// A member F and a superset F ∪ {x} that is missing.
  std::optional<std::pair<SetMask, SetMask>> witness;

  explicit operator bool() const { return filter; }
};

struct FranklVerdict {
  bool holds = false;
  int element = 0;  ///< 0-based; smallest element attaining the maximum count
  std::uint32_t count = 0;
  std::size_t family_size = 0;

  explicit operator bool() const { return holds; }
};

struct ReimerVerdict {
  bool holds = false;
  std::uint64_t total_size = 0;   ///< Σ|A|
  std::size_t family_size = 0;    ///< |𝒜|
  std::uint64_t average_num = 0;  ///< average as a reduced fraction
  std::uint64_t average_den = 1;
  double average = 0.0;    ///< for display only
  double threshold = 0.0;  ///< log2|𝒜| / 2, for display only

  explicit operator bool() const { return holds; }
};

UnionClosure is_union_closed(const Family& fam);
FilterCheck is_filter(const Family& fam);

/// Smallest filter containing every member.
Family up_closure(const Family& fam);

FrequencyVector frequency_vector(const Family& fam);

/// True when the family is inside the hypothesis of the half-element
/// question: nonempty and not {∅}.
bool in_frankl_scope(const Family& fam);

/// Is some element in at least half the members? Throws OutOfScope for the
/// empty family and for {∅}.
FranklVerdict frankl_check(const Family& fam);

/// Average member size against log2|𝒜|/2. The verdict compares
/// |𝒜|^|𝒜| with 4^Σ|A| in exact integer arithmetic. Throws OutOfScope on an
/// empty family.
ReimerVerdict reimer_bound_holds(const Family& fam);

} // namespace uclosed
