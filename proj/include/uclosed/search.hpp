#pragma once

#include "uclosed/condition1.hpp"
#include "uclosed/family.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace uclosed {

/// Containment digraph on [k]: edge (i, j) iff i ∈ A_j. Vertices are 0-based.
class Digraph {
public:
  explicit Digraph(int order = 0);

  int order() const { return order_; }
  bool has_edge(int from, int to) const { return out_[static_cast<std::size_t>(from)].contains(to); }
  void add_edge(int from, int to);
  int out_degree(int v) const { return out_[static_cast<std::size_t>(v)].size(); }
  SetMask out_neighbours(int v) const { return out_[static_cast<std::size_t>(v)]; }
  int edge_count() const;

  static Digraph complete(int order);

private:
  int order_;
  std::vector<SetMask> out_;
};

bool contains_tournament(const Digraph& d);
int max_outdegree(const Digraph& d);

/// The filter shape used by the structured search: every set of size ≥ n-1
/// plus [n] \ {i, j} for each listed pair.
class SearchShape {
public:
  /// `pairs` are 0-based. Throws InvalidFamily for repeated pairs, pairs
  /// that are not two distinct elements of [n], or n outside 2..kMaxGround.
  SearchShape(int ground_size, std::vector<std::pair<int, int>> pairs);

  int ground_size() const { return ground_size_; }
  std::span<const std::pair<int, int>> pairs() const { return pairs_; }
  /// n + 1 + number of pairs.
  std::size_t family_size() const { return static_cast<std::size_t>(ground_size_) + 1 + pairs_.size(); }
  /// Largest element frequency a counterexample of this shape may have.
  std::uint32_t frequency_cap() const;
  SetMask pair_mask(std::size_t p) const;
  Family filter() const;

  friend bool operator==(const SearchShape&, const SearchShape&) = default;

private:
  int ground_size_;
  std::vector<std::pair<int, int>> pairs_;
};

/// a_sets[i] is the set mapped to [n] \ {i}. Throws InvalidFamily if some
/// a_sets[i] contains i or the count differs from n.
Digraph digraph_from_family(const SearchShape& shape, std::span<const SetMask> a_sets);

struct CounterexampleReport {
  Family family;
  Certificate certificate;
  FrequencyVector frequency;
  std::uint32_t max_frequency = 0;
};

/// Budget inequality for even n with two pair-complements:
/// 2(n/2 - 1) + (n - 2)(n/2) ≥ (n² - n)/2 + 2.
/// Throws UnsupportedCase for odd n or num_pairs ≠ 2.
bool degree_budget_feasible(int n, int num_pairs);

struct BudgetRow {
  int n;
  long long capacity;  ///< left-hand side
  long long required;  ///< right-hand side
  bool feasible;
};

/// Rows for n = 2, 4, ..., max_n.
std::vector<BudgetRow> degree_budget_scan(int max_n);

/// Smallest even n with degree_budget_feasible(n, 2).
int min_even_ground_size();

inline constexpr int kMaxStructuredGround = 10;

struct SearchOptions {
  std::optional<std::size_t> limit;
  unsigned workers = 1;
  /// Keep one report per isomorphism class of families.
  bool canonical = false;
  /// Invoked as reports are found (serialized, in discovery order).
  std::function<void(const CounterexampleReport&)> on_found;
};

struct SearchOutcome {
  /// Sorted by (family members, certificate images); truncated to the limit.
  std::vector<CounterexampleReport> reports;
  /// Reports found before deduplication and truncation.
  std::size_t raw_count = 0;
  /// Work items the orientation space was split into.
  std::size_t partitions = 0;
};

/// Every family {[n]} ∪ {A_i} ∪ {B_p} whose canonical certificate
/// (A_0 ↦ [n], A_i ↦ [n]\{i}, B_p ↦ [n]\p) verifies while no element lies in
/// half of the members. Throws ResourceGuard for n > kMaxStructuredGround.
SearchOutcome search_counterexamples(const SearchShape& shape, const SearchOptions& options = {});

/// The 11-set family on [8] with its canonical certificate. Throws
/// std::logic_error if the stored sets fail their own checks.
CounterexampleReport build_paper_counterexample();

/// Canonical certificate for a family of the search shape, given A_1..A_n and
/// the B sets in shape-pair order.
Certificate shape_certificate(const SearchShape& shape, std::span<const SetMask> a_sets,
                              std::span<const SetMask> b_sets);

struct ConjectureSweep {
  int ground_size = 0;
  std::uint64_t scanned = 0;
  std::uint64_t certified = 0;
  std::vector<Family> violations;
};

inline constexpr int kMaxSweepGround = 4;

/// For every family over [n] other than ∅ and {∅}: if it satisfies
/// Condition 1, check the half-element property. Throws OutOfScope unless
/// 1 ≤ n ≤ kMaxSweepGround.
ConjectureSweep enumerate_conjecture(int n, unsigned workers = 1);

/// Lexicographically least relabeling of the family under a column-major
/// incidence order; two families are isomorphic iff their canonical forms
/// are equal.
Family canonical_form(const Family& fam);

} // namespace uclosed
