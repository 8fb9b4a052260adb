#include "uclosed/family.hpp"

#include "uclosed/error.hpp"
#include "uclosed/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace uclosed {

Family::Family(int ground_size, std::vector<SetMask> members) : ground_size_(ground_size), members_(std::move(members)) {
  if (ground_size < 0 || ground_size > kMaxGround)
    throw InvalidFamily("ground size " + std::to_string(ground_size) + " outside 0.." + std::to_string(kMaxGround));
  for (SetMask m : members_)
    if (!m.fits(ground_size))
      throw InvalidFamily("member " + to_string(m) + " does not fit in [" + std::to_string(ground_size) + "]");
  std::sort(members_.begin(), members_.end());
  const auto dup = std::adjacent_find(members_.begin(), members_.end());
  if (dup != members_.end()) throw InvalidFamily("duplicate member " + to_string(*dup));
}

Family Family::power_set(int n) {
  if (n < 0 || n > 24) throw InvalidFamily("power set of [" + std::to_string(n) + "] is too large");
  std::vector<SetMask> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = SetMask(static_cast<std::uint32_t>(i));
  return Family(n, std::move(all));
}

bool Family::contains(SetMask s) const { return std::binary_search(members_.begin(), members_.end(), s); }

std::uint64_t FrequencyVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint32_t FrequencyVector::max() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

namespace {

// Membership oracle: a flat bitmap for small ground sets, binary search above.
class Membership {
public:
  explicit Membership(const Family& fam) : fam_(fam) {
    if (fam.ground_size() <= 20) {
      bitmap_.assign(std::size_t{1} << fam.ground_size(), false);
      for (SetMask m : fam) bitmap_[m.bits()] = true;
    }
  }
  bool operator()(SetMask s) const { return bitmap_.empty() ? fam_.contains(s) : bitmap_[s.bits()]; }

private:
  const Family& fam_;
  std::vector<bool> bitmap_;
};

} // namespace

UnionClosure is_union_closed(const Family& fam) {
  const Membership member(fam);
  const auto sets = fam.members();
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      if (!member(sets[i] | sets[j])) return {false, std::pair{sets[i], sets[j]}};
  return {};
}

FilterCheck is_filter(const Family& fam) {
  const Membership member(fam);
  const int n = fam.ground_size();
  for (SetMask f : fam)
    for (int x = 0; x < n; ++x)
      if (!f.contains(x) && !member(f.with(x))) return {false, std::pair{f, f.with(x)}};
  return {};
}

Family up_closure(const Family& fam) {
  std::vector<SetMask> out;
  for (SetMask f : fam) for_each_superset(f, fam.ground_size(), [&](SetMask s) { out.push_back(s); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Family(fam.ground_size(), std::move(out));
}

FrequencyVector frequency_vector(const Family& fam) {
  FrequencyVector fv;
  fv.counts.assign(static_cast<std::size_t>(fam.ground_size()), 0);
  const auto sets = fam.members();
  kernels::active().element_counts(sets.data(), sets.size(), fv.counts.data(), fam.ground_size());
  return fv;
}

bool in_frankl_scope(const Family& fam) { return !fam.empty() && !(fam.size() == 1 && fam[0].empty()); }

FranklVerdict frankl_check(const Family& fam) {
  if (fam.empty()) throw OutOfScope("the half-element question is not posed for the empty family");
  if (!in_frankl_scope(fam)) throw OutOfScope("the half-element question is not posed for {{}}");
  const FrequencyVector fv = frequency_vector(fam);
  FranklVerdict v;
  v.family_size = fam.size();
  for (std::size_t x = 0; x < fv.counts.size(); ++x)
    if (fv.counts[x] > v.count) {
      v.count = fv.counts[x];
      v.element = static_cast<int>(x);
    }
  v.holds = 2 * static_cast<std::uint64_t>(v.count) >= fam.size();
  return v;
}

ReimerVerdict reimer_bound_holds(const Family& fam) {
  if (fam.empty()) throw OutOfScope("average set size is undefined for the empty family");
  using boost::multiprecision::cpp_int;
  const auto sets = fam.members();
  ReimerVerdict v;
  v.family_size = fam.size();
  v.total_size = kernels::active().total_cardinality(sets.data(), sets.size());

  // avg ≥ log2(m)/2  ⟺  2·S ≥ m·log2(m)  ⟺  m^m ≤ 2^(2S)
  const auto m = static_cast<std::uint64_t>(fam.size());
  if (std::has_single_bit(m)) {
    v.holds = 2 * v.total_size >= m * static_cast<std::uint64_t>(std::countr_zero(m));
  } else {
    const cpp_int lhs = boost::multiprecision::pow(cpp_int(m), static_cast<unsigned>(m));
    const cpp_int rhs = cpp_int(1) << static_cast<unsigned>(2 * v.total_size);
    v.holds = lhs <= rhs;
  }

  const std::uint64_t g = std::gcd(v.total_size, m);
  v.average_num = v.total_size / (g == 0 ? 1 : g);
  v.average_den = m / (g == 0 ? 1 : g);
  v.average = static_cast<double>(v.total_size) / static_cast<double>(m);
  v.threshold = std::log2(static_cast<double>(m)) / 2.0;
  return v;
}

} // namespace uclosed
