#pragma once

// Brute-force reference computations, kept independent of the library code
// paths they check. Each one recomputes its answer from first principles so
// the tests can freeze expected values.

#include <algorithm>
#include <set>
#include <vector>

#include "girylab/algebras.hpp"

namespace oracles {

using girylab::Dist;
using girylab::DistOverDist;
using girylab::Rat;

/// join by direct double summation over every (outer, index) pair, reading
/// single weights through weight_at rather than merging entry lists.
inline Dist oracle_join(const DistOverDist& q) {
  std::set<std::uint64_t> indices;
  for (const auto& [inner, w] : q.outer()) {
    for (const auto& [k, v] : inner.prefix()) indices.insert(k);
  }
  std::vector<Dist::Entry> entries;
  for (const std::uint64_t k : indices) {
    Rat total(0);
    for (const auto& [inner, w] : q.outer()) total += w * inner.weight_at(k);
    entries.emplace_back(k, total);
  }
  return Dist::from_weights(std::move(entries));
}

/// pushforward by relabeling the entry list and merging adjacent duplicates
/// after a sort, never touching a map.
inline Dist oracle_pushforward(const std::vector<std::uint64_t>& table, const Dist& p) {
  std::vector<Dist::Entry> relabeled;
  for (const auto& [i, w] : p.prefix()) relabeled.emplace_back(table.at(i), w);
  std::sort(relabeled.begin(), relabeled.end(),
            [](const Dist::Entry& a, const Dist::Entry& b) { return a.first < b.first; });
  std::vector<Dist::Entry> merged;
  for (const auto& [j, w] : relabeled) {
    if (!merged.empty() && merged.back().first == j) merged.back().second += w;
    else merged.emplace_back(j, w);
  }
  return Dist::from_weights(std::move(merged));
}

/// Least image of the support under a table.
inline std::uint64_t oracle_min_image(const std::vector<std::uint64_t>& table, const Dist& p) {
  std::uint64_t best = table.at(p.prefix().front().first);
  for (const auto& [i, w] : p.prefix()) best = std::min(best, table.at(i));
  return best;
}

/// Subset-min preservation checked by materializing every nonempty subset.
inline bool oracle_subset_min(const std::vector<std::uint64_t>& f) {
  const std::size_t n = f.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
    std::vector<std::uint64_t> subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint64_t(1) << i)) subset.push_back(i);
    }
    const std::uint64_t min_elem = *std::min_element(subset.begin(), subset.end());
    std::uint64_t image_min = f[subset.front()];
    for (const std::uint64_t s : subset) image_min = std::min(image_min, f[s]);
    if (f[min_elem] != image_min) return false;
  }
  return true;
}

/// Set intersection of point-label lists.
inline std::vector<std::string> oracle_intersection(std::vector<std::vector<std::string>> sets) {
  if (sets.empty()) return {};
  std::vector<std::string> acc = sets.front();
  std::sort(acc.begin(), acc.end());
  for (std::size_t k = 1; k < sets.size(); ++k) {
    std::sort(sets[k].begin(), sets[k].end());
    std::vector<std::string> next;
    std::set_intersection(acc.begin(), acc.end(), sets[k].begin(), sets[k].end(),
                          std::back_inserter(next));
    acc = std::move(next);
  }
  return acc;
}

}  // namespace oracles
