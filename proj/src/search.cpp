#include "uclosed/error.hpp"
#include "uclosed/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>

namespace uclosed {

Certificate shape_certificate(const SearchShape& shape, std::span<const SetMask> a_sets,
                              std::span<const SetMask> b_sets) {
  const int n = shape.ground_size();
  const SetMask full = SetMask::full(n);
  Certificate cert;
  cert.ground_size = n;
  cert.pairs.push_back({full, full});
  for (int i = 0; i < n; ++i) cert.pairs.push_back({a_sets[static_cast<std::size_t>(i)], full.without(i)});
  for (std::size_t p = 0; p < b_sets.size(); ++p) cert.pairs.push_back({b_sets[p], full - shape.pair_mask(p)});
  cert.canonicalize();
  return cert;
}

namespace {

CounterexampleReport make_report(const Certificate& cert) {
  std::vector<SetMask> sets;
  for (const auto& p : cert.pairs) sets.push_back(p.set);
  CounterexampleReport r{Family(cert.ground_size, std::move(sets)), cert, {}, 0};
  r.frequency = frequency_vector(r.family);
  r.max_frequency = r.frequency.max();
  return r;
}

// Re-checks a candidate through the general verifier and the half-element
// test; the search's own bookkeeping is not trusted for emission.
void confirm(const CounterexampleReport& r) {
  const CertificateCheck check = verify_certificate(r.family, r.certificate);
  if (!check) throw std::logic_error("structured search produced an invalid certificate: " + check.detail);
  if (frankl_check(r.family)) throw std::logic_error("structured search produced a family with a half element");
}

bool report_less(const CounterexampleReport& x, const CounterexampleReport& y) {
  const auto xm = x.family.members(), ym = y.family.members();
  if (!std::equal(xm.begin(), xm.end(), ym.begin(), ym.end()))
    return std::lexicographical_compare(xm.begin(), xm.end(), ym.begin(), ym.end());
  return std::lexicographical_compare(x.certificate.pairs.begin(), x.certificate.pairs.end(),
                                      y.certificate.pairs.begin(), y.certificate.pairs.end());
}

struct EdgeSlot {
  int u;
  int v;
  bool forced;  // both directions required
};

// For shape pair p = {i, j} and k outside p with k ∉ B_p, one of i, j must
// lie in A_k. Checked once both slots {i,k} and {j,k} are decided.
struct CoverRule {
  std::size_t pair;
  int k;
};

// Choices per slot: 0 = u ∈ A_v, 1 = v ∈ A_u, 2 = both.
constexpr int kChoices = 3;

class ShapeSolver {
public:
  explicit ShapeSolver(const SearchShape& shape) : shape_(shape), n_(shape.ground_size()) {
    const auto pairs = shape.pairs();
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) {
        const bool forced = std::find(pairs.begin(), pairs.end(), std::pair{u, v}) != pairs.end();
        slots_.push_back({u, v, forced});
      }
    rules_at_.resize(slots_.size());
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (int k = 0; k < n_; ++k) {
        if (k == pairs[p].first || k == pairs[p].second) continue;
        const std::size_t when = std::max(slot_index(pairs[p].first, k), slot_index(pairs[p].second, k));
        rules_at_[when].push_back({p, k});
      }
  }

  const std::vector<EdgeSlot>& slots() const { return slots_; }

  std::size_t slot_index(int a, int b) const {
    const int u = std::min(a, b), v = std::max(a, b);
    // slots are laid out row by row: (0,1..n-1), (1,2..n-1), ...
    return static_cast<std::size_t>(u * (2 * n_ - u - 1) / 2 + (v - u - 1));
  }

  /// Installs a B tuple. Returns false if some element is already over budget.
  bool reset(std::span<const SetMask> b_sets) {
    b_.assign(b_sets.begin(), b_sets.end());
    a_.assign(static_cast<std::size_t>(n_), SetMask{});
    outdeg_.assign(static_cast<std::size_t>(n_), 0);
    cap_.assign(static_cast<std::size_t>(n_), 0);
    long long capacity = 0;
    for (int x = 0; x < n_; ++x) {
      int in_b = 0;
      for (SetMask b : b_) in_b += b.contains(x) ? 1 : 0;
      cap_[static_cast<std::size_t>(x)] = static_cast<int>(shape_.frequency_cap()) - 1 - in_b;
      if (cap_[static_cast<std::size_t>(x)] < 0) return false;
      capacity += cap_[static_cast<std::size_t>(x)];
    }
    slack_ = capacity - static_cast<long long>(slots_.size() + shape_.pairs().size());
    return slack_ >= 0;
  }

  /// Applies choice c at slot e; returns false if a constraint is violated
  /// (the caller still calls retract).
  bool apply(std::size_t e, int c) {
    const EdgeSlot& s = slots_[e];
    if (s.forced && c != 2) return false;
    bool ok = true;
    if (c == 0 || c == 2) ok &= add(s.u, s.v);
    if (c == 1 || c == 2) ok &= add(s.v, s.u);
    // a non-forced double edge spends one unit of slack
    if (c == 2 && !s.forced) --slack_;
    if (!ok || slack_ < 0) return false;
    for (const CoverRule& r : rules_at_[e]) {
      const auto [i, j] = shape_.pairs()[r.pair];
      if (b_[r.pair].contains(r.k)) continue;
      const SetMask ak = a_[static_cast<std::size_t>(r.k)];
      if (!ak.contains(i) && !ak.contains(j)) return false;
    }
    return true;
  }

  void retract(std::size_t e, int c) {
    const EdgeSlot& s = slots_[e];
    if (s.forced && c != 2) return;
    if (c == 0 || c == 2) drop(s.u, s.v);
    if (c == 1 || c == 2) drop(s.v, s.u);
    if (c == 2 && !s.forced) ++slack_;
  }

  /// Depth-first completion from slot `e`; calls emit for every leaf.
  template <typename Emit>
  void complete(std::size_t e, Emit&& emit) {
    if (e == slots_.size()) {
      leaf(emit);
      return;
    }
    for (int c = 0; c < kChoices; ++c) {
      if (apply(e, c)) complete(e + 1, emit);
      retract(e, c);
    }
  }

private:
  // from ∈ A_to
  bool add(int from, int to) {
    a_[static_cast<std::size_t>(to)] = a_[static_cast<std::size_t>(to)].with(from);
    return ++outdeg_[static_cast<std::size_t>(from)] <= cap_[static_cast<std::size_t>(from)];
  }
  void drop(int from, int to) {
    a_[static_cast<std::size_t>(to)] = a_[static_cast<std::size_t>(to)].without(from);
    --outdeg_[static_cast<std::size_t>(from)];
  }

  template <typename Emit>
  void leaf(Emit&& emit) {
    std::vector<SetMask> all{SetMask::full(n_)};
    all.insert(all.end(), a_.begin(), a_.end());
    all.insert(all.end(), b_.begin(), b_.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) return;
    emit(make_report(shape_certificate(shape_, a_, b_)));
  }

  const SearchShape& shape_;
  int n_;
  std::vector<EdgeSlot> slots_;
  std::vector<std::vector<CoverRule>> rules_at_;
  std::vector<SetMask> b_;
  std::vector<SetMask> a_;
  std::vector<int> outdeg_;
  std::vector<int> cap_;
  long long slack_ = 0;
};

// Every B tuple (B_p ⊆ [n] \ p) consistent with the pairwise B conditions,
// in the order: per pair, increasing cardinality then value.
std::vector<std::vector<SetMask>> b_tuples(const SearchShape& shape) {
  const int n = shape.ground_size();
  const std::size_t np = shape.pairs().size();
  const auto budget = static_cast<long long>(n) * (static_cast<long long>(shape.frequency_cap()) - 1) -
                      static_cast<long long>(n) * (n - 1) / 2 - static_cast<long long>(np);
  std::vector<std::vector<SetMask>> choices(np);
  for (std::size_t p = 0; p < np; ++p) {
    for_each_subset(SetMask::full(n) - shape.pair_mask(p), [&](SetMask s) { choices[p].push_back(s); });
    std::stable_sort(choices[p].begin(), choices[p].end(), size_then_value_less);
  }
  std::vector<std::vector<SetMask>> out;
  std::vector<SetMask> cur;
  auto rec = [&](auto&& self, std::size_t p, long long used) -> void {
    if (p == np) {
      out.push_back(cur);
      return;
    }
    for (SetMask b : choices[p]) {
      if (used + b.size() > budget) break;  // choices are size-ordered
      bool ok = true;
      for (std::size_t q = 0; q < p && ok; ++q)
        ok = b != cur[q] && (b.intersects(shape.pair_mask(q)) || cur[q].intersects(shape.pair_mask(p)));
      if (!ok) continue;
      cur.push_back(b);
      self(self, p + 1, used + b.size());
      cur.pop_back();
    }
  };
  if (budget >= 0) rec(rec, 0, 0);
  return out;
}

struct WorkItem {
  std::size_t tuple;
  std::vector<int> prefix;
};

// Accumulates reports for one worker. Without a limit or deduplication it
// keeps everything; with a limit it keeps only the least `limit` reports;
// with deduplication it keeps the least report of each isomorphism class.
// All three modes merge associatively, so the result does not depend on
// how the work was split.
class Collector {
public:
  explicit Collector(const SearchOptions& options) : limit_(options.limit), canonical_(options.canonical) {}

  std::size_t seen() const { return seen_; }

  void add(CounterexampleReport&& r) {
    ++seen_;
    if (canonical_) {
      const Family key = canonical_form(r.family);
      keep_least(std::vector<SetMask>(key.begin(), key.end()), std::move(r));
      return;
    }
    kept_.push_back(std::move(r));
    if (limit_) {
      std::push_heap(kept_.begin(), kept_.end(), report_less);
      if (kept_.size() > *limit_) {
        std::pop_heap(kept_.begin(), kept_.end(), report_less);
        kept_.pop_back();
      }
    }
  }

  void merge(Collector&& other) {
    seen_ += other.seen_;
    const std::size_t own = seen_;
    for (auto& [key, r] : other.classes_) keep_least(key, std::move(r));
    for (auto& r : other.kept_) add(std::move(r));
    seen_ = own;
  }

  std::vector<CounterexampleReport> finish() && {
    std::vector<CounterexampleReport> out;
    if (canonical_) {
      for (auto& [key, r] : classes_) out.push_back(std::move(r));
    } else {
      out = std::move(kept_);
    }
    std::sort(out.begin(), out.end(), report_less);
    if (limit_ && out.size() > *limit_) out.resize(*limit_);
    return out;
  }

private:
  void keep_least(const std::vector<SetMask>& key, CounterexampleReport&& r) {
    auto [it, inserted] = classes_.try_emplace(key, r);
    if (!inserted && report_less(r, it->second)) it->second = std::move(r);
  }

  std::optional<std::size_t> limit_;
  bool canonical_;
  std::size_t seen_ = 0;
  std::vector<CounterexampleReport> kept_;
  std::map<std::vector<SetMask>, CounterexampleReport> classes_;
};

} // namespace

SearchOutcome search_counterexamples(const SearchShape& shape, const SearchOptions& options) {
  if (shape.ground_size() > kMaxStructuredGround)
    throw ResourceGuard("structured search is limited to n <= " + std::to_string(kMaxStructuredGround) + ", got n = " +
                        std::to_string(shape.ground_size()));
  const auto tuples = b_tuples(shape);

  // Split the orientation space into disjoint prefixes of the first few slots.
  std::vector<WorkItem> items;
  {
    ShapeSolver solver(shape);
    const std::size_t depth = std::min<std::size_t>(4, solver.slots().size());
    std::vector<int> prefix;
    auto rec = [&](auto&& self, std::size_t t, std::size_t e) -> void {
      if (e == depth) {
        items.push_back({t, prefix});
        return;
      }
      for (int c = 0; c < kChoices; ++c) {
        if (solver.apply(e, c)) {
          prefix.push_back(c);
          self(self, t, e + 1);
          prefix.pop_back();
        }
        solver.retract(e, c);
      }
    };
    for (std::size_t t = 0; t < tuples.size(); ++t)
      if (solver.reset(tuples[t])) rec(rec, t, 0);
  }

  std::mutex emit_mutex;
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::max(1u, options.workers);
  std::vector<Collector> found(workers, Collector(options));
  std::vector<std::exception_ptr> failures(workers);

  auto work = [&](unsigned w) {
    try {
      ShapeSolver solver(shape);
      for (std::size_t i = next++; i < items.size(); i = next++) {
        const WorkItem& item = items[i];
        solver.reset(tuples[item.tuple]);
        for (std::size_t e = 0; e < item.prefix.size(); ++e) solver.apply(e, item.prefix[e]);
        solver.complete(item.prefix.size(), [&](CounterexampleReport&& r) {
          confirm(r);
          if (options.on_found) {
            const std::lock_guard lock(emit_mutex);
            options.on_found(r);
          }
          found[w].add(std::move(r));
        });
      }
    } catch (...) {
      failures[w] = std::current_exception();
      next = items.size();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  for (unsigned w = 1; w < workers; ++w) found[0].merge(std::move(found[w]));
  SearchOutcome outcome;
  outcome.partitions = items.size();
  outcome.raw_count = found[0].seen();
  outcome.reports = std::move(found[0]).finish();
  return outcome;
}

CounterexampleReport build_paper_counterexample() {
  const SearchShape shape(8, {{0, 1}, {2, 3}});
  const std::vector<SetMask> a_sets{
      SetMask::of({2, 4, 6, 7, 8}), SetMask::of({1, 3, 5, 8}), SetMask::of({1, 4, 7, 8}), SetMask::of({2, 3, 5, 6}),
      SetMask::of({1, 3, 7}),       SetMask::of({2, 3, 5}),    SetMask::of({2, 4, 6}),    SetMask::of({4, 5, 6, 7}),
  };
  const std::vector<SetMask> b_sets{SetMask::of({8}), SetMask::of({1})};
  CounterexampleReport r = make_report(shape_certificate(shape, a_sets, b_sets));
  if (r.family.size() != 11) throw std::logic_error("counterexample transcription: expected 11 distinct sets");
  if (r.frequency.counts != std::vector<std::uint32_t>(8, 5))
    throw std::logic_error("counterexample transcription: every element should appear in exactly 5 sets");
  confirm(r);
  return r;
}

} // namespace uclosed
