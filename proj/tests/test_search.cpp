#include <doctest.h>

#include "helpers.hpp"
#include "uclosed/error.hpp"
#include "uclosed/search.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

using namespace uclosed;
using testing::listed_family;

namespace {

SearchShape shape_1234(int n) { return SearchShape(n, {{0, 1}, {2, 3}}); }

std::vector<SetMask> listed_a_sets() {
  const auto s = testing::listed_sets();
  return {s.begin() + 1, s.begin() + 9};
}

// Orientation of every pair of a k-vertex tournament from the bits of `code`.
Digraph tournament(int k, std::uint32_t code) {
  Digraph d(k);
  int bit = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j, ++bit) {
      if ((code >> bit) & 1u) d.add_edge(i, j);
      else d.add_edge(j, i);
    }
  return d;
}

// Structured counterexamples by plain enumeration of A_1..A_n and the B sets,
// checking every pair of the canonical certificate with the set-difference
// form and the half-element property directly.
std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> brute_structured(
    int n, const std::vector<std::pair<int, int>>& pairs) {
  const std::uint32_t full = (1u << n) - 1;
  const std::size_t size = static_cast<std::size_t>(n) + 1 + pairs.size();
  std::vector<std::uint32_t> sets(size), images(size);
  sets[0] = images[0] = full;
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i + 1)] = full & ~(1u << i);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    images[static_cast<std::size_t>(n) + 1 + p] = full & ~((1u << pairs[p].first) | (1u << pairs[p].second));
  auto compatible = [&](std::size_t x, std::size_t y) {
    return (sets[x] & ~images[y]) != 0 || (sets[y] & ~images[x]) != 0;
  };

  std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
  auto finish = [&] {
    std::vector<std::uint32_t> sorted(sets);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
    for (int x = 0; x < n; ++x) {
      std::size_t c = 0;
      for (auto s : sets) c += (s >> x) & 1u;
      if (2 * c >= size) return;
    }
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cert;
    for (std::size_t i = 0; i < size; ++i) cert.emplace_back(sets[i], images[i]);
    std::sort(cert.begin(), cert.end());
    out.insert(cert);
  };
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    if (idx == size) {
      finish();
      return;
    }
    for (std::uint32_t s = 0; s <= full; ++s) {
      if ((s & ~images[idx]) != 0) continue;
      sets[idx] = s;
      bool ok = true;
      for (std::size_t j = 0; j < idx && ok; ++j) ok = compatible(j, idx);
      if (ok) self(self, idx + 1);
    }
  };
  rec(rec, 1);
  return out;
}

std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> as_set(const SearchOutcome& o) {
  std::set<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
  for (const auto& r : o.reports) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cert;
    for (const auto& p : r.certificate.pairs) cert.emplace_back(p.set.bits(), p.image.bits());
    std::sort(cert.begin(), cert.end());
    out.insert(cert);
  }
  return out;
}

} // namespace

TEST_CASE("digraph_from_family") {
  const SearchShape s = shape_1234(4);
  CHECK(digraph_from_family(s, std::vector<SetMask>(4)).edge_count() == 0);

  std::vector<SetMask> co_atoms;
  for (int j = 0; j < 4; ++j) co_atoms.push_back(SetMask::full(4).without(j));
  const Digraph complete = digraph_from_family(s, co_atoms);
  CHECK(complete.edge_count() == 12);
  CHECK(max_outdegree(complete) == 3);

  const Digraph listed = digraph_from_family(shape_1234(8), listed_a_sets());
  const auto a = listed_a_sets();
  for (int i = 0; i < 8; ++i) {
    int appears = 0;
    for (SetMask aj : a) appears += aj.contains(i) ? 1 : 0;
    CHECK(listed.out_degree(i) == appears);
  }
  CHECK(listed.out_degree(0) == 3);
  CHECK(listed.out_degree(7) == 3);
  CHECK(listed.edge_count() == 30);
  CHECK(contains_tournament(listed));

  std::vector<SetMask> bad(4);
  bad[2] = SetMask::of({3});
  CHECK_THROWS_AS(digraph_from_family(s, bad), InvalidFamily);
  CHECK_THROWS_AS(digraph_from_family(s, std::vector<SetMask>(3)), InvalidFamily);
}

TEST_CASE("contains_tournament and max_outdegree") {
  CHECK(contains_tournament(Digraph::complete(3)));
  CHECK_FALSE(contains_tournament(Digraph(2)));
  CHECK(max_outdegree(Digraph(6)) == 0);
  for (int k = 1; k <= 7; ++k) CHECK(max_outdegree(Digraph::complete(k)) == k - 1);
}

TEST_CASE("every tournament on k <= 5 vertices has a vertex of out-degree >= ceil((k-1)/2)") {
  for (int k = 1; k <= 5; ++k) {
    const int slots = k * (k - 1) / 2;
    int least = k;
    for (std::uint32_t code = 0; code < (1u << slots); ++code) {
      const Digraph d = tournament(k, code);
      REQUIRE(contains_tournament(d));
      least = std::min(least, max_outdegree(d));
    }
    CHECK(least == k / 2);  // = ceil((k-1)/2), attained by a regular or near-regular tournament
  }
}

TEST_CASE("co-atom filters force a half element (k <= 4)") {
  // filter {[n]} ∪ {[n]\{i} : i < k}; every Condition-1 family on it has an
  // element in at least (k+1)/2 of its k+1 sets
  for (int k = 1; k <= 4; ++k)
    for (int n = k; n <= std::min(k + 1, 5); ++n) {
      const std::uint32_t full = (1u << n) - 1;
      std::size_t valid = 0;
      std::vector<std::uint32_t> choice(static_cast<std::size_t>(k) + 1, 0);
      auto rec = [&](auto&& self, int idx) -> void {
        if (idx == k + 1) {
          std::vector<SetMask> sets;
          Certificate cert{n, {}};
          for (int i = 0; i <= k; ++i) {
            const SetMask img = i == 0 ? SetMask(full) : SetMask(full).without(i - 1);
            sets.push_back(SetMask(choice[static_cast<std::size_t>(i)]));
            cert.pairs.push_back({sets.back(), img});
          }
          std::vector<SetMask> sorted = sets;
          std::sort(sorted.begin(), sorted.end());
          if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
          cert.canonicalize();
          const Family fam(n, sets);
          if (!verify_certificate(fam, cert)) return;
          ++valid;
          const FranklVerdict v = frankl_check(fam);
          CHECK(v.holds);
          CHECK(2 * v.count >= static_cast<std::uint32_t>(k + 1));
          return;
        }
        const std::uint32_t image = idx == 0 ? full : full & ~(1u << (idx - 1));
        for (std::uint32_t s = 0; s <= full; ++s)
          if ((s & ~image) == 0) {
            choice[static_cast<std::size_t>(idx)] = s;
            self(self, idx + 1);
          }
      };
      rec(rec, 0);
      CAPTURE(k);
      CAPTURE(n);
      CHECK(valid > 0);
    }
}

TEST_CASE("degree budget") {
  CHECK(degree_budget_feasible(8, 2));
  CHECK_FALSE(degree_budget_feasible(6, 2));
  CHECK(degree_budget_feasible(10, 2));
  CHECK_FALSE(degree_budget_feasible(2, 2));
  CHECK_FALSE(degree_budget_feasible(4, 2));
  CHECK(min_even_ground_size() == 8);

  const auto rows = degree_budget_scan(10);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2].n == 6);
  CHECK(rows[2].capacity == 16);
  CHECK(rows[2].required == 17);
  CHECK(rows[3].capacity == 30);
  CHECK(rows[3].required == 30);
  CHECK(rows[4].capacity == 48);
  CHECK(rows[4].required == 47);
  for (const auto& r : rows) CHECK(r.feasible == (r.n >= 8));

  CHECK_THROWS_AS(degree_budget_feasible(7, 2), UnsupportedCase);
  CHECK_THROWS_AS(degree_budget_feasible(8, 3), UnsupportedCase);
}

TEST_CASE("SearchShape") {
  const SearchShape s = shape_1234(8);
  CHECK(s.family_size() == 11);
  CHECK(s.frequency_cap() == 5);
  CHECK(SearchShape(8, {{0, 1}}).frequency_cap() == 4);
  const Family f = s.filter();
  CHECK(f.size() == 11);
  CHECK(is_filter(f).filter);
  CHECK(SearchShape(5, {{1, 0}}).pairs()[0] == std::pair{0, 1});
  CHECK_THROWS_AS(SearchShape(8, {{0, 1}, {1, 0}}), InvalidFamily);
  CHECK_THROWS_AS(SearchShape(8, {{2, 2}}), InvalidFamily);
  CHECK_THROWS_AS(SearchShape(8, {{0, 8}}), InvalidFamily);
  CHECK_THROWS_AS(SearchShape(1, {}), InvalidFamily);
}

TEST_CASE("build_paper_counterexample") {
  const CounterexampleReport r = build_paper_counterexample();
  CHECK(r.family == listed_family());
  CHECK(r.family.size() == 11);
  CHECK(r.frequency.counts == std::vector<std::uint32_t>(8, 5));
  CHECK(r.max_frequency == 5);
  CHECK(verify_certificate(r.family, r.certificate).valid);
}

TEST_CASE("structured search agrees with plain enumeration on small shapes") {
  const std::vector<std::pair<int, std::vector<std::pair<int, int>>>> shapes{
      {3, {}}, {3, {{0, 1}}}, {4, {}}, {4, {{0, 1}}}, {4, {{0, 1}, {2, 3}}}, {4, {{0, 1}, {1, 2}}},
      {5, {{0, 1}}}, {5, {{0, 1}, {2, 3}}}, {5, {{0, 1}, {2, 3}, {0, 2}}}, {5, {{0, 1}, {1, 2}, {2, 3}}},
  };
  for (const auto& [n, pairs] : shapes) {
    CAPTURE(n);
    CAPTURE(pairs.size());
    const SearchOutcome got = search_counterexamples(SearchShape(n, pairs));
    CHECK(as_set(got) == brute_structured(n, pairs));
    CHECK(got.raw_count == got.reports.size());
  }
}

TEST_CASE("minimality: nothing at n = 6 and nothing with a single pair at n = 8") {
  CHECK(search_counterexamples(shape_1234(6)).reports.empty());
  CHECK(search_counterexamples(SearchShape(8, {{0, 1}})).reports.empty());
}

TEST_CASE("search at n = 8 rediscovers the 11-set family and its relabelings") {
  const SearchShape shape = shape_1234(8);
  const SearchOutcome out = search_counterexamples(shape);
  REQUIRE_FALSE(out.reports.empty());
  CHECK(std::is_sorted(out.reports.begin(), out.reports.end(), [](const auto& x, const auto& y) {
    return std::lexicographical_compare(x.family.begin(), x.family.end(), y.family.begin(), y.family.end());
  }));

  std::set<std::vector<SetMask>> families;
  for (const auto& r : out.reports) families.emplace(r.family.begin(), r.family.end());
  const Family listed = listed_family();
  CHECK(families.count(std::vector<SetMask>(listed.begin(), listed.end())) == 1);

  // relabelings that keep {{1,2},{3,4}} as the pair set map solutions to solutions
  std::vector<int> perm(8);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t images = 0;
  do {
    const std::set<std::set<int>> mapped{{perm[0], perm[1]}, {perm[2], perm[3]}};
    if (mapped != std::set<std::set<int>>{{0, 1}, {2, 3}}) continue;
    const auto relabeled = oracle::permute(testing::to_masks(listed_family()), perm);
    std::vector<SetMask> key;
    for (auto m : relabeled) key.push_back(SetMask(m));
    CHECK(families.count(key) == 1);
    ++images;
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(images == 2 * 2 * 2 * 24);

  for (const auto& r : out.reports) {
    // independent re-check with materialized intervals and the direct frequency count
    const auto& pairs = r.certificate.pairs;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j)
        REQUIRE_FALSE(oracle::intervals_meet(pairs[i].set.bits(), pairs[i].image.bits(), pairs[j].set.bits(),
                                             pairs[j].image.bits(), 8));
    REQUIRE_FALSE(oracle::half_element(testing::to_masks(r.family), 8));
    REQUIRE(oracle::is_filter(testing::to_masks(r.certificate.images()), 8));

    // digraph view: out-degree sum and the frequency decomposition
    std::vector<SetMask> a(8);
    std::vector<SetMask> b;
    for (const auto& p : pairs) {
      const SetMask missing = SetMask::full(8) - p.image;
      if (missing.size() == 1) a[static_cast<std::size_t>(missing.elements()[0] - 1)] = p.set;
      if (missing.size() == 2) b.push_back(p.set);
    }
    const Digraph d = digraph_from_family(shape, a);
    CHECK(d.edge_count() >= (64 - 8) / 2 + 2);
    for (int x = 0; x < 8; ++x) {
      int in_b = 0;
      for (SetMask s : b) in_b += s.contains(x) ? 1 : 0;
      CHECK(r.frequency.counts[static_cast<std::size_t>(x)] == static_cast<std::uint32_t>(1 + d.out_degree(x) + in_b));
    }
  }
}

TEST_CASE("search output is independent of the worker count") {
  const SearchShape shape = shape_1234(8);
  const SearchOutcome one = search_counterexamples(shape);
  SearchOptions opts;
  opts.workers = 5;
  const SearchOutcome five = search_counterexamples(shape, opts);
  REQUIRE(one.reports.size() == five.reports.size());
  for (std::size_t i = 0; i < one.reports.size(); ++i) {
    CHECK(one.reports[i].family == five.reports[i].family);
    CHECK(one.reports[i].certificate == five.reports[i].certificate);
  }
}

TEST_CASE("search limit keeps the least reports; canonical mode keeps one per class") {
  const SearchShape shape = shape_1234(8);
  const SearchOutcome all = search_counterexamples(shape);
  SearchOptions opts;
  opts.limit = 5;
  opts.workers = 3;
  const SearchOutcome some = search_counterexamples(shape, opts);
  REQUIRE(some.reports.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(some.reports[i].certificate == all.reports[i].certificate);
  CHECK(some.raw_count == all.raw_count);

  SearchOptions canon;
  canon.canonical = true;
  const SearchOutcome classes = search_counterexamples(shape, canon);
  std::set<std::vector<SetMask>> forms;
  for (const auto& r : all.reports) {
    const Family c = canonical_form(r.family);
    forms.emplace(c.begin(), c.end());
  }
  CHECK(classes.reports.size() == forms.size());
  // the representative of each class is its least raw report
  for (const auto& r : classes.reports)
    CHECK(std::find_if(all.reports.begin(), all.reports.end(), [&](const auto& x) {
            return x.certificate == r.certificate;
          }) != all.reports.end());

  std::size_t calls = 0;
  SearchOptions streaming;
  streaming.workers = 2;
  streaming.on_found = [&](const CounterexampleReport&) { ++calls; };
  CHECK(search_counterexamples(shape, streaming).reports.size() == calls);
}

TEST_CASE("search guards") {
  CHECK_THROWS_AS(search_counterexamples(SearchShape(11, {{0, 1}, {2, 3}})), ResourceGuard);
}

TEST_CASE("enumerate_conjecture at small n") {
  const ConjectureSweep two = enumerate_conjecture(2);
  CHECK(two.scanned == 14);
  CHECK(two.certified == 13);  // all but {∅,{1},{2}}
  CHECK(two.violations.empty());

  const ConjectureSweep three = enumerate_conjecture(3, 3);
  CHECK(three.scanned == 254);
  CHECK(three.violations.empty());
  const auto filters = oracle::all_filters(3);
  std::uint64_t expected = 0;
  for (std::uint64_t f = 2; f < 256; ++f) expected += oracle::condition1(oracle::family_from_index(f), 3, filters) ? 1 : 0;
  CHECK(three.certified == expected);

  CHECK(enumerate_conjecture(1).scanned == 2);
  CHECK_THROWS_AS(enumerate_conjecture(0), OutOfScope);
  CHECK_THROWS_AS(enumerate_conjecture(5), OutOfScope);
}

TEST_CASE("odd ground set: three pair-complements already give counterexamples on [7]") {
  // frozen from the least report; re-checked below without the search
  const Family expected(7, {SetMask::of({1}), SetMask::of({3}), SetMask::of({5}), SetMask::of({1, 3, 5}),
                            SetMask::of({2, 3, 5}), SetMask::of({2, 4, 5}), SetMask::of({2, 4, 6}),
                            SetMask::of({1, 3, 6, 7}), SetMask::of({1, 4, 6, 7}), SetMask::of({2, 4, 6, 7}),
                            SetMask::full(7)});
  SearchOptions opts;
  opts.limit = 1;
  const SearchOutcome out = search_counterexamples(SearchShape(7, {{0, 1}, {2, 3}, {4, 5}}), opts);
  REQUIRE(out.reports.size() == 1);
  CHECK(out.reports[0].family == expected);
  CHECK(out.reports[0].frequency.counts == std::vector<std::uint32_t>{5, 5, 5, 5, 5, 5, 4});

  CHECK(find_certificate(expected).has_value());
  CHECK_FALSE(oracle::half_element(testing::to_masks(expected), 7));
  CHECK(search_counterexamples(SearchShape(6, {{0, 1}, {2, 3}, {4, 5}})).reports.empty());
}
