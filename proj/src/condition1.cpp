#include "uclosed/condition1.hpp"

#include "uclosed/error.hpp"
#include "uclosed/kernels.hpp"

#include <algorithm>
#include <bit>

namespace uclosed {

void Certificate::canonicalize() {
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const CertificatePair& x, const CertificatePair& y) { return x.set < y.set; });
}

Family Certificate::images() const {
  std::vector<SetMask> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.image);
  return Family(ground_size, std::move(out));
}

namespace {

void require_pair(SetMask a, SetMask fa) {
  if (!a.subset_of(fa)) throw MalformedPair("set " + to_string(a) + " is not contained in its image " + to_string(fa));
}

} // namespace

bool note2_compatible(SetMask a, SetMask fa, SetMask b, SetMask fb) {
  require_pair(a, fa);
  require_pair(b, fb);
  return !(a - fb).empty() || !(b - fa).empty();
}

bool intervals_disjoint(SetMask a, SetMask fa, SetMask b, SetMask fb) {
  require_pair(a, fa);
  require_pair(b, fb);
  return !(a.subset_of(fb) && b.subset_of(fa));
}

std::string_view clause_name(Clause c) {
  switch (c) {
  case Clause::coverage: return "coverage";
  case Clause::bijectivity: return "bijectivity";
  case Clause::containment: return "containment";
  case Clause::filter: return "filter";
  case Clause::disjointness: return "disjointness";
  }
  return "unknown";
}

namespace {

CertificateCheck violation(Clause c, std::string detail, std::optional<std::size_t> first = {},
                           std::optional<std::size_t> second = {}) {
  CertificateCheck r;
  r.valid = false;
  r.violated = c;
  r.detail = std::move(detail);
  r.first = first;
  r.second = second;
  return r;
}

// First pair of indices (i < j) with equal keys, by sorting an index permutation.
template <typename Key>
std::optional<std::pair<std::size_t, std::size_t>> first_repeat(const std::vector<CertificatePair>& pairs, Key key) {
  std::vector<std::size_t> idx(pairs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return key(pairs[x]) < key(pairs[y]); });
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t k = 1; k < idx.size(); ++k)
    if (key(pairs[idx[k - 1]]) == key(pairs[idx[k]])) {
      const std::pair cand{idx[k - 1], idx[k]};
      if (!best || cand < *best) best = cand;
    }
  return best;
}

} // namespace

CertificateCheck verify_certificate(const Family& fam, const Certificate& cert) {
  if (cert.ground_size != fam.ground_size())
    throw InvalidFamily("certificate ground size " + std::to_string(cert.ground_size) + " differs from family ground size " +
                        std::to_string(fam.ground_size()));
  const int n = fam.ground_size();
  const auto& pairs = cert.pairs;

  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!pairs[i].set.fits(n) || !pairs[i].image.fits(n))
      return violation(Clause::coverage, "pair " + std::to_string(i) + " leaves the ground set", i);

  if (auto rep = first_repeat(pairs, [](const CertificatePair& p) { return p.set; }))
    return violation(Clause::bijectivity, "set " + to_string(pairs[rep->first].set) + " appears twice", rep->first,
                     rep->second);
  if (auto rep = first_repeat(pairs, [](const CertificatePair& p) { return p.image; }))
    return violation(Clause::bijectivity, "image " + to_string(pairs[rep->first].image) + " is used twice", rep->first,
                     rep->second);

  {
    std::vector<SetMask> sets;
    sets.reserve(pairs.size());
    for (const auto& p : pairs) sets.push_back(p.set);
    std::sort(sets.begin(), sets.end());
    if (!std::equal(sets.begin(), sets.end(), fam.begin(), fam.end())) {
      for (SetMask m : fam)
        if (!std::binary_search(sets.begin(), sets.end(), m))
          return violation(Clause::coverage, "member " + to_string(m) + " has no image");
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (!fam.contains(pairs[i].set))
          return violation(Clause::coverage, "set " + to_string(pairs[i].set) + " is not a member", i);
    }
  }

  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (!pairs[i].set.subset_of(pairs[i].image))
      return violation(Clause::containment,
                       to_string(pairs[i].set) + " is not contained in " + to_string(pairs[i].image), i);

  const Family images = cert.images();
  if (const FilterCheck fc = is_filter(images); !fc) {
    std::optional<std::size_t> at;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].image == fc.witness->first) at = i;
    return violation(Clause::filter,
                     "image " + to_string(fc.witness->first) + " has superset " + to_string(fc.witness->second) +
                         " outside the image family",
                     at);
  }

  // Pairwise disjointness: one vectorized scan per pair index.
  std::vector<SetMask> sets(pairs.size()), imgs(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    sets[i] = pairs[i].set;
    imgs[i] = pairs[i].image;
  }
  std::size_t checks = 0;
  const auto& k = kernels::active();
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i) {
    const std::size_t rest = pairs.size() - i - 1;
    const std::size_t hit = k.first_clash(sets[i], imgs[i], sets.data() + i + 1, imgs.data() + i + 1, rest);
    if (hit != rest) {
      const std::size_t j = i + 1 + hit;
      auto r = violation(Clause::disjointness,
                         "intervals [" + to_string(sets[i]) + ", " + to_string(imgs[i]) + "] and [" + to_string(sets[j]) +
                             ", " + to_string(imgs[j]) + "] share " + to_string(sets[i] | sets[j]),
                         i, j);
      r.interval_checks = checks + hit + 1;
      return r;
    }
    checks += rest;
  }
  CertificateCheck ok;
  ok.interval_checks = checks;
  return ok;
}

std::uint64_t interval_volume(const Certificate& cert) {
  std::uint64_t v = 0;
  for (const auto& p : cert.pairs) v += std::uint64_t{1} << (p.image - p.set).size();
  return v;
}

namespace {

// Backtracking over A ↦ F_A with forward checking.
//
// Members are assigned in decreasing cardinality (ties by value); the
// candidate images of a member are its supersets in increasing cardinality
// (ties by value). Each member keeps a domain of still-possible images,
// narrowed after every assignment by
//   - image already used,
//   - interval clash with the new pair,
//   - once the up-closure U of the assigned images reaches |𝒜| sets, every
//     remaining image must be an unused element of U.
// A node fails when |U| > |𝒜|, when some domain empties, or when an unused
// element of U is in no remaining domain. All three are necessary
// conditions, so the first solution found is the first solution of plain
// backtracking in the same order.
class CertificateSearch {
public:
  explicit CertificateSearch(const Family& fam)
      : n_(fam.ground_size()), universe_(std::size_t{1} << n_), m_(fam.size()),
        words_((universe_ + 63) / 64) {
    order_.assign(fam.begin(), fam.end());
    std::stable_sort(order_.begin(), order_.end(), [](SetMask x, SetMask y) {
      return x.size() != y.size() ? x.size() > y.size() : x < y;
    });
    candidates_.resize(m_);
    domain_.assign(m_ * words_, 0);
    domain_size_.assign(m_, 0);
    for (std::size_t k = 0; k < m_; ++k) {
      for_each_superset(order_[k], n_, [&](SetMask s) { candidates_[k].push_back(s); });
      std::stable_sort(candidates_[k].begin(), candidates_[k].end(), size_then_value_less);
      for (SetMask s : candidates_[k]) set_bit(k, s);
      domain_size_[k] = candidates_[k].size();
    }
    used_.assign(universe_, 0);
    in_up_.assign(universe_, 0);
    image_.assign(m_, SetMask{});
  }

  std::optional<Certificate> run(CertificateSearchStats* stats) {
    const bool found = m_ == 0 || descend(0);
    if (stats != nullptr) stats->nodes = nodes_;
    if (!found) return std::nullopt;
    Certificate cert;
    cert.ground_size = n_;
    for (std::size_t k = 0; k < m_; ++k) cert.pairs.push_back({order_[k], image_[k]});
    cert.canonicalize();
    return cert;
  }

private:
  bool in_domain(std::size_t k, SetMask s) const {
    return (domain_[k * words_ + s.bits() / 64] >> (s.bits() % 64)) & 1u;
  }
  void set_bit(std::size_t k, SetMask s) { domain_[k * words_ + s.bits() / 64] |= std::uint64_t{1} << (s.bits() % 64); }

  void remove(std::size_t k, SetMask s) {
    if (!in_domain(k, s)) return;
    domain_[k * words_ + s.bits() / 64] &= ~(std::uint64_t{1} << (s.bits() % 64));
    --domain_size_[k];
    removed_.push_back({k, s});
  }

  bool descend(std::size_t depth) {
    const std::size_t k = depth;
    for (SetMask f : candidates_[k]) {
      if (!in_domain(k, f)) continue;
      ++nodes_;
      const std::size_t removed_mark = removed_.size(), up_mark = up_trail_.size();
      image_[k] = f;
      used_[f.bits()] = 1;
      if (propagate(depth, f) && (depth + 1 == m_ || descend(depth + 1))) return true;
      undo(removed_mark, up_mark);
      used_[f.bits()] = 0;
    }
    return false;
  }

  void undo(std::size_t removed_mark, std::size_t up_mark) {
    while (removed_.size() > removed_mark) {
      const auto [k, s] = removed_.back();
      removed_.pop_back();
      set_bit(k, s);
      ++domain_size_[k];
    }
    while (up_trail_.size() > up_mark) {
      in_up_[up_trail_.back().bits()] = 0;
      up_trail_.pop_back();
    }
  }

  bool propagate(std::size_t depth, SetMask f) {
    const bool was_full = up_trail_.size() == m_;
    bool overflow = false;
    for_each_superset(f, n_, [&](SetMask s) {
      if (in_up_[s.bits()] == 0) {
        in_up_[s.bits()] = 1;
        up_trail_.push_back(s);
        if (up_trail_.size() > m_) overflow = true;
      }
    });
    if (overflow) return false;
    const bool now_full = !was_full && up_trail_.size() == m_;

    const SetMask a = order_[depth];
    for (std::size_t j = depth + 1; j < m_; ++j) {
      remove(j, f);
      const SetMask b = order_[j];
      if (b.subset_of(f)) for_each_superset(a | b, n_, [&](SetMask s) { remove(j, s); });
      if (now_full)
        for (SetMask s : candidates_[j])
          if (in_up_[s.bits()] == 0) remove(j, s);
      if (domain_size_[j] == 0) return false;
    }

    for (SetMask u : up_trail_) {
      if (used_[u.bits()] != 0) continue;
      bool coverable = false;
      for (std::size_t j = depth + 1; j < m_ && !coverable; ++j) coverable = in_domain(j, u);
      if (!coverable) return false;
    }
    return true;
  }

  int n_;
  std::size_t universe_;
  std::size_t m_;
  std::size_t words_;
  std::vector<SetMask> order_;
  std::vector<std::vector<SetMask>> candidates_;
  std::vector<std::uint64_t> domain_;
  std::vector<std::size_t> domain_size_;
  std::vector<std::pair<std::size_t, SetMask>> removed_;
  std::vector<char> used_;
  std::vector<char> in_up_;
  std::vector<SetMask> up_trail_;
  std::vector<SetMask> image_;
  std::uint64_t nodes_ = 0;
};

} // namespace

std::optional<Certificate> find_certificate(const Family& fam, CertificateSearchStats* stats) {
  if (fam.ground_size() > kMaxDecisionGround)
    throw ResourceGuard("certificate search is only exhaustive up to n = " + std::to_string(kMaxDecisionGround) +
                        ", got n = " + std::to_string(fam.ground_size()));
  return CertificateSearch(fam).run(stats);
}

namespace {

// Packs the bits of `s` selected by `keep` into the low positions, in order.
SetMask compress(SetMask s, SetMask keep) {
  std::uint32_t out = 0;
  int pos = 0;
  for (std::uint32_t k = keep.bits(); k != 0; k &= k - 1, ++pos)
    if (s.contains(std::countr_zero(k))) out |= 1u << pos;
  return SetMask(out);
}

} // namespace

Reduction reduce_ground_set(const Family& fam, const Certificate& cert) {
  if (const auto check = verify_certificate(fam, cert); !check)
    throw Error("reduce_ground_set needs a valid certificate: " + check.detail);
  const int n = fam.ground_size();
  SetMask common = SetMask::full(n);
  for (const auto& p : cert.pairs) common = common & p.image;
  const SetMask keep = SetMask::full(n) - common;
  const int reduced_n = keep.size();

  Reduction r;
  r.removed = common;
  r.certificate.ground_size = reduced_n;
  std::vector<SetMask> members;
  for (const auto& p : cert.pairs) {
    const CertificatePair q{compress(p.set, keep), compress(p.image, keep)};
    r.certificate.pairs.push_back(q);
    members.push_back(q.set);
  }
  r.certificate.canonicalize();
  r.family = Family(reduced_n, std::move(members));
  return r;
}

} // namespace uclosed
