#include <doctest.h>

#include "helpers.hpp"
#include "uclosed/search.hpp"

#include <numeric>
#include <algorithm>
#include <random>
#include <set>

using namespace uclosed;

namespace {

oracle::Masks random_family(std::mt19937& rng, int n) {
  oracle::Masks m;
  for (std::uint32_t s = 0; s < (1u << n); ++s)
    if (rng() % 4 == 0) m.push_back(s);
  return m;
}

} // namespace

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const auto masks = random_family(rng, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Family a = testing::to_family(masks, n), b = testing::to_family(oracle::permute(masks, perm), n);
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(a).size() == a.size());
  }
}

TEST_CASE("canonical forms separate exactly the isomorphism classes over [3]") {
  // compare with the brute-force least image over all 3! relabelings
  for (std::uint64_t f = 0; f < 256; ++f)
    for (std::uint64_t g = f; g < 256; g += 17) {
      const auto x = oracle::family_from_index(f), y = oracle::family_from_index(g);
      const bool iso = oracle::brute_canonical(x, 3) == oracle::brute_canonical(y, 3);
      CHECK((canonical_form(testing::to_family(x, 3)) == canonical_form(testing::to_family(y, 3))) == iso);
    }
}

TEST_CASE("number of isomorphism classes matches brute force on random families over [5]") {
  std::mt19937 rng(23);
  std::set<oracle::Masks> brute;
  std::set<std::vector<SetMask>> ours;
  for (int trial = 0; trial < 150; ++trial) {
    auto masks = oracle::Masks{};
    // small families so that collisions between classes actually happen
    for (int k = 0; k < 3; ++k) masks.push_back(rng() % 32);
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    brute.insert(oracle::brute_canonical(masks, 5));
    const Family c = canonical_form(testing::to_family(masks, 5));
    ours.emplace(c.begin(), c.end());
  }
  CHECK(ours.size() == brute.size());
}
