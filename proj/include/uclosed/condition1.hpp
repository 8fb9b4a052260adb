#pragma once

#include "uclosed/family.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uclosed {

/// One arrow A ↦ F_A of a certificate.
struct CertificatePair {
  SetMask set;
  SetMask image;

  friend bool operator==(const CertificatePair&, const CertificatePair&) = default;
  friend auto operator<=>(const CertificatePair&, const CertificatePair&) = default;
};

/// A proposed bijection from a family onto a filter with pairwise disjoint
/// intervals [A, F_A]. The type does not enforce validity; that is what
/// verify_certificate is for.
struct Certificate {
  int ground_size = 0;
  std::vector<CertificatePair> pairs;

  /// Orders pairs by set (stable for repeated sets).
  void canonicalize();
  Family images() const;
  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// A \ F_B ≠ ∅ or B \ F_A ≠ ∅. Throws MalformedPair unless a ⊆ fa and b ⊆ fb.
bool note2_compatible(SetMask a, SetMask fa, SetMask b, SetMask fb);

/// [a, fa] ∩ [b, fb] = ∅, decided as !(a ⊆ fb && b ⊆ fa). Throws MalformedPair
/// unless a ⊆ fa and b ⊆ fb.
bool intervals_disjoint(SetMask a, SetMask fa, SetMask b, SetMask fb);

enum class Clause { coverage, bijectivity, containment, filter, disjointness };

std::string_view clause_name(Clause c);

struct CertificateCheck {
  bool valid = true;
  std::optional<Clause> violated;
  /// Indices into the certificate's pairs for the offending entries.
  std::optional<std::size_t> first;
  std::optional<std::size_t> second;
  std::string detail;
  /// Pairwise interval tests performed.
  std::size_t interval_checks = 0;

  explicit operator bool() const { return valid; }
};

/// Checks, in order: distinct sets and images, sets equal to the family's
/// members, A ⊆ F_A, images form a filter, pairwise disjoint intervals.
/// Throws InvalidFamily if the ground sizes differ.
CertificateCheck verify_certificate(const Family& fam, const Certificate& cert);

/// Σ 2^(|F_A| - |A|). At most 2^n for any valid certificate.
std::uint64_t interval_volume(const Certificate& cert);

inline constexpr int kMaxDecisionGround = 12;

struct CertificateSearchStats {
  std::uint64_t nodes = 0;
};

/// Decides Condition 1. Returns a certificate if one exists; nullopt means
/// the whole space was exhausted. Deterministic. Throws ResourceGuard for
/// n > kMaxDecisionGround.
std::optional<Certificate> find_certificate(const Family& fam, CertificateSearchStats* stats = nullptr);

struct Reduction {
  Family family;
  Certificate certificate;
  /// Elements (of the original ground set) common to every image.
  SetMask removed;
};

/// Deletes the elements shared by every image from every set and image and
/// relabels the survivors onto an initial segment, preserving their order.
/// Requires a certificate that verifies.
Reduction reduce_ground_set(const Family& fam, const Certificate& cert);

} // namespace uclosed
