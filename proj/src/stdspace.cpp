#include "girylab/stdspace.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace girylab {

namespace {

constexpr std::size_t kMaxPoints = 32;

}  // namespace

RefinementTree RefinementTree::trivial(std::vector<std::string> points) {
  if (points.size() > kMaxPoints)
    raise(Errc::bound_exceeded, "point sets are limited to " + std::to_string(kMaxPoints));
  RefinementTree t;
  {
    std::vector<std::string> sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      raise(Errc::not_a_partition, "duplicate point label");
  }
  t.points_ = std::move(points);
  AtomMask all = 0;
  for (std::size_t i = 0; i < t.points_.size(); ++i) all |= AtomMask(1) << i;
  t.levels_.push_back({all});
  return t;
}

std::size_t RefinementTree::atom_count(std::size_t level) const {
  return atoms(level).size();
}

const std::vector<RefinementTree::AtomMask>& RefinementTree::atoms(std::size_t level) const {
  if (level < 1 || level > levels_.size())
    raise(Errc::index_out_of_range, "level " + std::to_string(level));
  return levels_[level - 1];
}

const std::vector<std::uint64_t>& RefinementTree::collapse(std::size_t level) const {
  if (level < 1 || level >= levels_.size())
    raise(Errc::index_out_of_range, "no collapse below level " + std::to_string(level));
  return collapses_[level - 1];
}

std::uint64_t RefinementTree::atom_index_of(std::size_t level, const std::string& point) const {
  const auto it = std::find(points_.begin(), points_.end(), point);
  if (it == points_.end()) raise(Errc::unknown_point, point);
  const AtomMask bit = AtomMask(1) << (it - points_.begin());
  const auto& lvl = atoms(level);
  for (std::size_t a = 0; a < lvl.size(); ++a) {
    if (lvl[a] & bit) return a;
  }
  raise(Errc::unknown_point, point + " is in no atom");
}

std::vector<std::string> RefinementTree::members(AtomMask mask) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (mask & (AtomMask(1) << i)) out.push_back(points_[i]);
  }
  return out;
}

RefinementTree RefinementTree::refine(std::uint64_t atom, const std::vector<std::string>& left,
                                      const std::vector<std::string>& right) const {
  const auto& top = levels_.back();
  if (atom >= top.size()) raise(Errc::index_out_of_range, "atom " + std::to_string(atom));
  if (left.empty() || right.empty()) raise(Errc::empty_part, "both parts must be nonempty");

  const auto mask_of = [&](const std::vector<std::string>& part) {
    AtomMask mask = 0;
    for (const std::string& label : part) {
      const auto it = std::find(points_.begin(), points_.end(), label);
      if (it == points_.end()) raise(Errc::unknown_point, label);
      mask |= AtomMask(1) << (it - points_.begin());
    }
    return mask;
  };
  const AtomMask lmask = mask_of(left);
  const AtomMask rmask = mask_of(right);
  if (lmask & rmask) raise(Errc::not_a_partition, "parts overlap");
  if ((lmask | rmask) != top[atom])
    raise(Errc::not_a_partition, "parts do not cover the atom exactly");
  if (std::size_t(std::popcount(lmask)) != left.size() ||
      std::size_t(std::popcount(rmask)) != right.size())
    raise(Errc::not_a_partition, "repeated labels in a part");

  RefinementTree t = *this;
  std::vector<AtomMask> next;
  next.reserve(top.size() + 1);
  for (std::size_t a = 0; a < top.size(); ++a) {
    if (a == atom) {
      next.push_back(lmask);
      next.push_back(rmask);
    } else {
      next.push_back(top[a]);
    }
  }
  t.levels_.push_back(std::move(next));
  t.collapses_.push_back(phi_formula(atom, top.size()));
  t.splits_.push_back({atom, left, right});
  return t;
}

std::vector<std::uint64_t> phi_formula(std::uint64_t i, std::uint64_t n) {
  if (i >= n) raise(Errc::index_out_of_range,
                    "split index " + std::to_string(i) + " among " + std::to_string(n));
  std::vector<std::uint64_t> table(n + 1);
  for (std::uint64_t k = 0; k <= n; ++k) {
    if (k <= i) table[k] = k;
    else if (k == i + 1) table[k] = i;
    else table[k] = k - 1;
  }
  return table;
}

CheckResult check_refinement_diagram(const RefinementTree& tree, std::size_t level,
                                     const std::string& point) {
  if (level + 1 > tree.depth())
    raise(Errc::index_out_of_range, "no level above " + std::to_string(level));
  return check_refinement_diagram(tree, level, point, tree.collapse(level));
}

CheckResult check_refinement_diagram(const RefinementTree& tree, std::size_t level,
                                     const std::string& point,
                                     std::span<const std::uint64_t> phi) {
  if (level + 1 > tree.depth())
    raise(Errc::index_out_of_range, "no level above " + std::to_string(level));
  const std::uint64_t fine = tree.atom_index_of(level + 1, point);
  const std::uint64_t coarse = tree.atom_index_of(level, point);
  if (fine >= phi.size()) raise(Errc::index_out_of_range, "collapse table too short");
  const std::uint64_t collapsed = phi[fine];
  if (collapsed == coarse) return {};
  return {false, "point " + point + " at level " + std::to_string(level) + ": collapse gives " +
                     std::to_string(collapsed) + " but the coarser atom is " +
                     std::to_string(coarse)};
}

std::vector<std::string> chain_intersection(const RefinementTree& tree,
                                            std::span<const std::uint64_t> chain) {
  if (chain.empty()) return tree.points();
  if (chain.size() > tree.depth())
    raise(Errc::index_out_of_range, "chain deeper than the tree");
  RefinementTree::AtomMask current = tree.atoms(1).at(0);
  RefinementTree::AtomMask acc = current;
  for (std::size_t level = 1; level <= chain.size(); ++level) {
    const auto& lvl = tree.atoms(level);
    if (chain[level - 1] >= lvl.size())
      raise(Errc::index_out_of_range, "atom " + std::to_string(chain[level - 1]));
    const RefinementTree::AtomMask next = lvl[chain[level - 1]];
    if ((next & current) != next)
      raise(Errc::broken_chain, "atom at level " + std::to_string(level) +
                                    " is not contained in its predecessor");
    current = next;
    acc &= next;
  }
  return tree.members(acc);
}

std::vector<RefinementTree::AtomMask> field_of_level(const RefinementTree& tree,
                                                     std::size_t level) {
  const auto& lvl = tree.atoms(level);
  std::vector<RefinementTree::AtomMask> out;
  out.reserve(std::size_t(1) << lvl.size());
  for (std::uint64_t pick = 0; pick < (std::uint64_t(1) << lvl.size()); ++pick) {
    RefinementTree::AtomMask u = 0;
    for (std::size_t a = 0; a < lvl.size(); ++a) {
      if (pick & (std::uint64_t(1) << a)) u |= lvl[a];
    }
    out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace girylab
