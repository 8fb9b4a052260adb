#include "uclosed/search.hpp"

#include <algorithm>

namespace uclosed {

namespace {

// Column-major incidence code. Rows (members) are kept sorted with the
// earliest chosen column most significant; once columns c_0..c_{t-1} are
// fixed the rows fall into blocks of equal prefix, and column c_t read down
// the sorted rows is, inside every block, zeros followed by ones. So the code
// of column t is the sequence of per-block one-counts, and smaller is better.
// Choosing columns greedily with branching on ties and pruning against the
// best complete code yields the least code over all n! orders.
class CanonicalSearch {
public:
  explicit CanonicalSearch(const Family& fam) : fam_(fam), n_(fam.ground_size()) {}

  std::vector<int> run() {
    std::vector<std::vector<std::size_t>> blocks;
    if (!fam_.empty()) {
      blocks.emplace_back();
      for (std::size_t i = 0; i < fam_.size(); ++i) blocks.back().push_back(i);
    }
    std::vector<int> order;
    std::vector<std::uint32_t> code;
    descend(blocks, order, code, SetMask::full(n_));
    return best_order_;
  }

private:
  std::vector<std::uint32_t> column_code(const std::vector<std::vector<std::size_t>>& blocks, int c) const {
    std::vector<std::uint32_t> counts;
    counts.reserve(blocks.size());
    for (const auto& b : blocks) {
      std::uint32_t ones = 0;
      for (std::size_t r : b) ones += fam_[r].contains(c) ? 1 : 0;
      counts.push_back(ones);
    }
    return counts;
  }

  void descend(const std::vector<std::vector<std::size_t>>& blocks, std::vector<int>& order,
               std::vector<std::uint32_t>& code, SetMask remaining) {
    if (have_best_) {
      // compare the current prefix with the same-length prefix of the best
      const std::size_t len = std::min(code.size(), best_code_.size());
      const auto cmp = std::lexicographical_compare_three_way(code.begin(), code.begin() + static_cast<long>(len),
                                                              best_code_.begin(),
                                                              best_code_.begin() + static_cast<long>(len));
      if (cmp > 0) return;
      if (cmp < 0) have_best_ = false;
    }
    if (remaining.empty()) {
      if (!have_best_ || code < best_code_) {
        best_code_ = code;
        best_order_ = order;
        have_best_ = true;
      }
      return;
    }
    std::vector<std::uint32_t> least;
    std::vector<int> ties;
    for (int c : remaining.elements()) {
      auto cc = column_code(blocks, c - 1);
      if (ties.empty() || cc < least) {
        least = std::move(cc);
        ties.assign(1, c - 1);
      } else if (cc == least) {
        ties.push_back(c - 1);
      }
    }
    for (int c : ties) {
      std::vector<std::vector<std::size_t>> refined;
      for (const auto& b : blocks) {
        std::vector<std::size_t> zeros, ones;
        for (std::size_t r : b) (fam_[r].contains(c) ? ones : zeros).push_back(r);
        if (!zeros.empty()) refined.push_back(std::move(zeros));
        if (!ones.empty()) refined.push_back(std::move(ones));
      }
      const std::size_t mark = code.size();
      code.insert(code.end(), least.begin(), least.end());
      order.push_back(c);
      descend(refined, order, code, remaining.without(c));
      order.pop_back();
      code.resize(mark);
    }
  }

  const Family& fam_;
  int n_;
  bool have_best_ = false;
  std::vector<std::uint32_t> best_code_;
  std::vector<int> best_order_;
};

} // namespace

Family canonical_form(const Family& fam) {
  const int n = fam.ground_size();
  const std::vector<int> order = CanonicalSearch(fam).run();
  // the t-th chosen element becomes the (t+1)-th most significant bit
  std::vector<int> target(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < order.size(); ++t) target[static_cast<std::size_t>(order[t])] = n - 1 - static_cast<int>(t);
  std::vector<SetMask> out;
  for (SetMask m : fam) {
    std::uint32_t bits = 0;
    for (int e = 0; e < n; ++e)
      if (m.contains(e)) bits |= 1u << target[static_cast<std::size_t>(e)];
    out.push_back(SetMask(bits));
  }
  return Family(n, std::move(out));
}

} // namespace uclosed
