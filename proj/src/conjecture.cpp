#include "uclosed/error.hpp"
#include "uclosed/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <string>
#include <thread>

namespace uclosed {

namespace {

struct SweepPart {
  std::uint64_t scanned = 0;
  std::uint64_t certified = 0;
  std::vector<std::pair<std::uint64_t, Family>> violations;
};

} // namespace

ConjectureSweep enumerate_conjecture(int n, unsigned workers) {
  if (n < 1 || n > kMaxSweepGround)
    throw OutOfScope("exhaustive sweep supports 1 <= n <= " + std::to_string(kMaxSweepGround) + ", got " +
                     std::to_string(n));
  const std::size_t universe = std::size_t{1} << n;
  // Family index f encodes membership: bit s set iff the set with mask s is in.
  const std::uint64_t families = std::uint64_t{1} << universe;
  constexpr std::uint64_t kChunk = 1024;

  workers = std::max(1u, workers);
  std::vector<SweepPart> parts(workers);
  std::vector<std::exception_ptr> failures(workers);
  std::atomic<std::uint64_t> next{0};

  auto work = [&](unsigned w) {
    try {
      SweepPart& part = parts[w];
      std::vector<SetMask> members;
      for (std::uint64_t start = next.fetch_add(kChunk); start < families; start = next.fetch_add(kChunk)) {
        const std::uint64_t stop = std::min(families, start + kChunk);
        for (std::uint64_t f = start; f < stop; ++f) {
          if (f == 0 || f == 1) continue;  // ∅ and {∅}
          members.clear();
          for (std::uint64_t bits = f; bits != 0; bits &= bits - 1)
            members.push_back(SetMask(static_cast<std::uint32_t>(std::countr_zero(bits))));
          const Family fam(n, members);
          ++part.scanned;
          if (!find_certificate(fam)) continue;
          ++part.certified;
          if (!frankl_check(fam)) part.violations.emplace_back(f, fam);
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
      next = families;
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

  ConjectureSweep sweep;
  sweep.ground_size = n;
  std::vector<std::pair<std::uint64_t, Family>> violations;
  for (auto& part : parts) {
    sweep.scanned += part.scanned;
    sweep.certified += part.certified;
    for (auto& v : part.violations) violations.push_back(std::move(v));
  }
  std::sort(violations.begin(), violations.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& v : violations) sweep.violations.push_back(std::move(v.second));
  return sweep;
}

} // namespace uclosed
