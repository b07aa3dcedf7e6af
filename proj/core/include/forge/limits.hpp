#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "forge/groupoid.hpp"

namespace forge {

// The chosen pullback of a cospan f : A -> C <- B : g.  Objects and arrows of
// the total are literal pairs of A- and B-indices, enumerated in lexicographic
// order, so equal inputs always produce identical tables.  Keeps the pair
// lookups needed to mediate cones into it.
class Pullback {
 public:
  // Throws PreconditionError when the codomains disagree.
  static Pullback make(GroupoidMap f, GroupoidMap g);

  const Gpd& total() const { return total_; }
  const GroupoidMap& proj1() const { return proj1_; }  // total -> dom f
  const GroupoidMap& proj2() const { return proj2_; }  // total -> dom g
  const GroupoidMap& leg_f() const { return f_; }
  const GroupoidMap& leg_g() const { return g_; }

  // Index of the pair object / arrow; throws PreconditionError if the pair
  // does not satisfy the matching condition.
  int object_of_pair(int a_obj, int b_obj) const;
  int arrow_of_pair(int a_arr, int b_arr) const;
  std::pair<int, int> object_pair(int p_obj) const { return obj_pairs_[p_obj]; }
  std::pair<int, int> arrow_pair(int p_arr) const { return arr_pairs_[p_arr]; }

  // The unique map u : Z -> total with proj1∘u = to_a and proj2∘u = to_b.
  // Throws PreconditionError when the cone does not commute with the cospan.
  GroupoidMap mediate(const GroupoidMap& to_a, const GroupoidMap& to_b) const;

 private:
  GroupoidMap f_, g_;
  Gpd total_;
  GroupoidMap proj1_, proj2_;
  std::vector<std::pair<int, int>> obj_pairs_, arr_pairs_;
  std::vector<std::vector<std::pair<int, int>>> obj_by_a_, arr_by_a_;
};

// Binary product via the pullback over the terminal groupoid.
Pullback product(const Gpd& a, const Gpd& b);

// Pairing into a chosen pullback; synonym for pb.mediate(u, v).
GroupoidMap pairing(const Pullback& pb, const GroupoidMap& u,
                    const GroupoidMap& v);

// Decides whether a commuting square is a pullback square: the comparison
// into the chosen pullback of (right, bottom) must be an isomorphism.
// Throws PreconditionError when the square does not commute.
bool is_pullback_square(const Square& sq);

// Comparison map of a commuting square into the chosen pullback of its
// cospan; exposed so callers can reuse the iso when the square is cartesian.
GroupoidMap pullback_comparison(const Square& sq, const Pullback& pb);

// Result of reindexing a slice object along sigma : Delta -> Gamma.
struct Reindexed {
  SliceObject object;       // the chosen pullback, anchored over Delta
  GroupoidMap to_original;  // projection to the original total
  Square square;            // cartesian square over sigma
  Pullback pb;              // the chosen pullback itself, for mediating
};

// Chosen-pullback reindexing of (X, x) over Gamma along sigma : Delta -> Gamma.
Reindexed reindex_slice(const GroupoidMap& sigma, const SliceObject& a);

// Reindexing of a slice map: both ends reindexed, map mediated.
struct ReindexedMap {
  Reindexed src, dst;
  SliceMap map;  // sigma^* f over Delta
};
ReindexedMap reindex_slice_map(const GroupoidMap& sigma, const SliceMap& f);

}  // namespace forge
