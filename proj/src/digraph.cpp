#include "uclosed/error.hpp"
#include "uclosed/search.hpp"

#include <algorithm>
#include <string>

namespace uclosed {

Digraph::Digraph(int order) : order_(order), out_(static_cast<std::size_t>(order)) {
  if (order < 0 || order > kMaxGround) throw InvalidFamily("digraph order " + std::to_string(order) + " out of range");
}

void Digraph::add_edge(int from, int to) {
  auto& row = out_[static_cast<std::size_t>(from)];
  row = row.with(to);
}

int Digraph::edge_count() const {
  int total = 0;
  for (SetMask row : out_) total += row.size();
  return total;
}

Digraph Digraph::complete(int order) {
  Digraph d(order);
  for (int i = 0; i < order; ++i)
    for (int j = 0; j < order; ++j)
      if (i != j) d.add_edge(i, j);
  return d;
}

bool contains_tournament(const Digraph& d) {
  for (int i = 0; i < d.order(); ++i)
    for (int j = i + 1; j < d.order(); ++j)
      if (!d.has_edge(i, j) && !d.has_edge(j, i)) return false;
  return true;
}

int max_outdegree(const Digraph& d) {
  int best = 0;
  for (int v = 0; v < d.order(); ++v) best = std::max(best, d.out_degree(v));
  return best;
}

Digraph digraph_from_family(const SearchShape& shape, std::span<const SetMask> a_sets) {
  const int n = shape.ground_size();
  if (a_sets.size() != static_cast<std::size_t>(n))
    throw InvalidFamily("expected " + std::to_string(n) + " sets, got " + std::to_string(a_sets.size()));
  Digraph d(n);
  for (int j = 0; j < n; ++j) {
    const SetMask aj = a_sets[static_cast<std::size_t>(j)];
    if (!aj.fits(n)) throw InvalidFamily("set " + to_string(aj) + " does not fit in [" + std::to_string(n) + "]");
    if (aj.contains(j))
      throw InvalidFamily("set " + to_string(aj) + " assigned to [n]\\{" + std::to_string(j + 1) + "} contains " +
                          std::to_string(j + 1));
    for (int i : aj.elements()) d.add_edge(i - 1, j);
  }
  return d;
}

SearchShape::SearchShape(int ground_size, std::vector<std::pair<int, int>> pairs)
    : ground_size_(ground_size), pairs_(std::move(pairs)) {
  if (ground_size < 2 || ground_size > kMaxGround)
    throw InvalidFamily("search shape needs 2 <= n <= " + std::to_string(kMaxGround));
  for (auto& [i, j] : pairs_) {
    if (i < 0 || j < 0 || i >= ground_size || j >= ground_size)
      throw InvalidFamily("pair element outside [" + std::to_string(ground_size) + "]");
    if (i == j) throw InvalidFamily("pair {" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "} is degenerate");
    if (i > j) std::swap(i, j);
  }
  auto sorted = pairs_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InvalidFamily("repeated pair in shape");
}

std::uint32_t SearchShape::frequency_cap() const {
  // largest c with 2c < |𝒜|
  return static_cast<std::uint32_t>((family_size() - 1) / 2);
}

SetMask SearchShape::pair_mask(std::size_t p) const {
  return SetMask::singleton(pairs_[p].first) | SetMask::singleton(pairs_[p].second);
}

Family SearchShape::filter() const {
  const SetMask full = SetMask::full(ground_size_);
  std::vector<SetMask> gens{full};
  for (int i = 0; i < ground_size_; ++i) gens.push_back(full.without(i));
  for (std::size_t p = 0; p < pairs_.size(); ++p) gens.push_back(full - pair_mask(p));
  return up_closure(Family(ground_size_, std::move(gens)));
}

bool degree_budget_feasible(int n, int num_pairs) {
  if (n < 2 || n % 2 != 0) throw UnsupportedCase("degree budget is only derived for even n >= 2");
  if (num_pairs != 2) throw UnsupportedCase("degree budget is only derived for exactly two pair-complements");
  const long long h = n / 2;
  const long long capacity = 2 * (h - 1) + (n - 2) * h;
  const long long required = (static_cast<long long>(n) * n - n) / 2 + 2;
  return capacity >= required;
}

std::vector<BudgetRow> degree_budget_scan(int max_n) {
  std::vector<BudgetRow> rows;
  for (int n = 2; n <= max_n; n += 2) {
    const long long h = n / 2;
    rows.push_back({n, 2 * (h - 1) + (n - 2) * h, (static_cast<long long>(n) * n - n) / 2 + 2,
                    degree_budget_feasible(n, 2)});
  }
  return rows;
}

int min_even_ground_size() {
  for (int n = 2;; n += 2)
    if (degree_budget_feasible(n, 2)) return n;
}

} // namespace uclosed
