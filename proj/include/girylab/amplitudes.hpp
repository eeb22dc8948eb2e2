#pragma once

#include <cstdint>
#include <vector>

#include "girylab/measure.hpp"

namespace girylab {

/// A complex number with exact rational real and imaginary parts. Squared
/// moduli are therefore exact rationals and normalization is decidable.
struct CRat {
  Rat re;
  Rat im;

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}  // NOLINT: implicit by design
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CRat conj() const { return {re, -im}; }
  Rat norm_sq() const { return re * re + im * im; }

  friend CRat operator+(const CRat& a, const CRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const CRat& a, const CRat& b) { return a.re == b.re && a.im == b.im; }

  std::string str() const;
};

/// A countable family of complex-rational amplitudes with exact l2
/// normalization: the squared moduli sum to one. Zero amplitudes are never
/// stored and indices are strictly increasing.
class AmpDist {
public:
  using Entry = std::pair<std::uint64_t, CRat>;

  /// Drops zero amplitudes, sorts by index and validates the normalization.
  /// Raises DuplicateIndex / NormNotOne.
  static AmpDist from_amplitudes(std::vector<Entry> pairs);

  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const AmpDist& a, const AmpDist& b) { return a.entries_ == b.entries_; }

private:
  std::vector<Entry> entries_;
};

/// Evaluation of an amplitude-weighted combination of measures on a set:
/// the sum of |p_i|^2 * P_i(U), exact. This is the l2 evaluation rule; it is
/// computed directly rather than through the l1 reduction so the two routes
/// stay independent.
Rat amp_combine(const AmpDist& p, const DistFamily& family, const NatSet& u);

/// Least index carrying a nonzero amplitude.
std::uint64_t amp_min_support(const AmpDist& p);

/// The ordinary distribution with weights |p_i|^2.
Dist l2_to_l1(const AmpDist& p);

}  // namespace girylab
