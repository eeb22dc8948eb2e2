#include "girylab/amplitudes.hpp"

#include <algorithm>

namespace girylab {

std::string CRat::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "i";
  return re.str() + (im.is_negative() ? "" : "+") + im.str() + "i";
}

AmpDist AmpDist::from_amplitudes(std::vector<Entry> pairs) {
  std::erase_if(pairs, [](const Entry& e) { return e.second.is_zero(); });
  std::sort(pairs.begin(), pairs.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    if (pairs[k].first == pairs[k - 1].first)
      raise(Errc::duplicate_index, "index " + std::to_string(pairs[k].first));
  }
  Rat norm(0);
  for (const auto& [i, z] : pairs) norm += z.norm_sq();
  if (norm != Rat(1)) raise(Errc::norm_not_one, "squared moduli sum to " + norm.str());
  AmpDist d;
  d.entries_ = std::move(pairs);
  return d;
}

Rat amp_combine(const AmpDist& p, const DistFamily& family, const NatSet& u) {
  Rat acc(0);
  for (const auto& [i, z] : p.entries()) {
    auto pi = family(i);
    if (!pi) raise(Errc::partial_family, "family undefined at index " + std::to_string(i));
    acc += z.norm_sq() * ev(u, *pi);
  }
  return acc;
}

std::uint64_t amp_min_support(const AmpDist& p) {
  if (p.entries().empty()) raise(Errc::norm_not_one, "empty amplitude family");
  return p.entries().front().first;
}

Dist l2_to_l1(const AmpDist& p) {
  std::vector<Dist::Entry> weights;
  weights.reserve(p.entries().size());
  for (const auto& [i, z] : p.entries()) weights.emplace_back(i, z.norm_sq());
  return Dist::from_weights(std::move(weights));
}

}  // namespace girylab
