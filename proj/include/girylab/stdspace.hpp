#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "girylab/scvx.hpp"

namespace girylab {

/// A finite-depth chain of partitions of an explicit point set.
///
/// Level 1 is the trivial one-atom partition; each further level splits
/// exactly one atom of the previous level into two nonempty parts, so level n
/// has n atoms. The split atom's parts take the indices i and i+1 and later
/// atoms shift up by one, which makes the collapse map between consecutive
/// levels exactly the formula table below. Trees are immutable: refine
/// returns a new tree.
class RefinementTree {
public:
  struct Split {
    std::uint64_t atom = 0;
    std::vector<std::string> left;
    std::vector<std::string> right;
  };

  using AtomMask = std::uint32_t;  // bit i = point i; point sets stay desk-sized

  static RefinementTree trivial(std::vector<std::string> points);

  /// Splits the given atom of the deepest level into left | right.
  /// Raises EmptyPart / NotAPartition / UnknownPoint / IndexOutOfRange.
  RefinementTree refine(std::uint64_t atom, const std::vector<std::string>& left,
                        const std::vector<std::string>& right) const;

  std::size_t depth() const { return levels_.size(); }          // number of levels
  std::size_t atom_count(std::size_t level) const;              // level is 1-based

  const std::vector<std::string>& points() const { return points_; }
  const std::vector<Split>& splits() const { return splits_; }

  /// The atoms map at a level: point -> atom index. Raises UnknownPoint.
  std::uint64_t atom_index_of(std::size_t level, const std::string& point) const;

  /// Atom masks of a level, in atom order.
  const std::vector<AtomMask>& atoms(std::size_t level) const;

  /// The collapse table from level+1 down to level (levels 1..depth-1).
  const std::vector<std::uint64_t>& collapse(std::size_t level) const;

  std::vector<std::string> members(AtomMask mask) const;

private:
  std::vector<std::string> points_;
  std::vector<Split> splits_;
  std::vector<std::vector<AtomMask>> levels_;
  std::vector<std::vector<std::uint64_t>> collapses_;
};

/// The collapse table recording a split of atom i among n: k for k <= i,
/// i for k = i+1, k-1 for k > i+1. Defined on {0..n}; always monotone.
/// Raises IndexOutOfRange unless i < n.
std::vector<std::uint64_t> phi_formula(std::uint64_t i, std::uint64_t n);

/// The refinement square at one point: collapsing the finer atom index must
/// give the coarser atom index. The second form checks an explicit collapse
/// table instead of the tree's own, so a corrupted table is detectable.
CheckResult check_refinement_diagram(const RefinementTree& tree, std::size_t level,
                                     const std::string& point);
CheckResult check_refinement_diagram(const RefinementTree& tree, std::size_t level,
                                     const std::string& point,
                                     std::span<const std::uint64_t> phi);

/// Intersects a decreasing chain of atoms, one per level from the root.
/// Raises BrokenChain when consecutive atoms fail to nest. On a finite point
/// set the intersection is the deepest atom; its members are returned.
std::vector<std::string> chain_intersection(const RefinementTree& tree,
                                            std::span<const std::uint64_t> chain);

/// The finite field generated by a level's atoms: all unions, as masks.
std::vector<RefinementTree::AtomMask> field_of_level(const RefinementTree& tree,
                                                     std::size_t level);

}  // namespace girylab
