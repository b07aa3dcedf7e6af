#pragma once

#include <functional>
#include <vector>

#include "forge/limits.hpp"

namespace forge {

// The arrow groupoid X^I of a finite groupoid X: objects are the arrows of X
// (same index order); a morphism α -> α' is a commuting square, recorded as
// the triple (α, α', p) with p between the sources — the target component is
// forced to q = α'·p·α⁻¹.  Construction is deterministic: triples are
// enumerated lexicographically by (α, α', p).
struct ArrowGroupoid {
  struct Tri {
    int from;  // base arrow, source object of the square
    int to;    // base arrow, target object
    int p;     // base arrow between the sources
  };

  Gpd base;
  Gpd total;
  GroupoidMap face0;  // total -> base: square ↦ source component p
  GroupoidMap face1;  // total -> base: square ↦ target component q
  GroupoidMap degen;  // base -> total: constant squares on identities

  // Objects of `total` are indexed exactly like the arrows of `base`.
  int obj_of_arrow(int base_arrow) const { return base_arrow; }
  int base_arrow_of_obj(int obj) const { return obj; }

  Tri decompose(int total_arrow) const { return tris_[total_arrow]; }
  // Index of the square (from, to, p); PreconditionError when p does not run
  // between the sources of `from` and `to`.
  int arrow_of(int from, int to, int p) const;
  // The forced target component of a square.
  int q_of(int total_arrow) const;

  std::vector<Tri> tris_;
  std::vector<std::pair<std::int64_t, int>> lookup_;  // sorted (key, index)
};

// Builds the arrow groupoid afresh.
ArrowGroupoid make_arrow_groupoid(const Gpd& x);
// Memoized variant keyed on table identity; the reference stays valid for the
// lifetime of the process.  Not thread-safe.
const ArrowGroupoid& arrow_groupoid(const Gpd& x);

// A functorial cocylinder: an endo-assignment on groupoids with two faces and
// a degeneracy.  Instances provide one; everything downstream is generic in
// this record.
struct Cocylinder {
  std::function<Gpd(const Gpd&)> act_obj;
  std::function<GroupoidMap(const GroupoidMap&)> act_map;
  std::function<GroupoidMap(const Gpd&)> face0;  // C(X) -> X
  std::function<GroupoidMap(const Gpd&)> face1;  // C(X) -> X
  std::function<GroupoidMap(const Gpd&)> degen;  // X -> C(X)
};

// The arrow-groupoid cocylinder.
Cocylinder groupoid_cocylinder();
// The identity cocylinder: C(X) = X, both faces and the degeneracy identities.
Cocylinder degenerate_cocylinder();

// The fibrewise cocylinder of a slice object (A, a) over Γ: the chosen
// pullback of C(a) along the degeneracy of Γ.  Its objects are pairs of an
// object γ and a "vertical" path in A, i.e. one whose image under C(a) is
// degenerate at γ; the anchor is the first projection.
struct RelCocyl {
  SliceObject of;      // the input slice object
  Pullback pb;         // Pb(degen Γ, C(anchor))
  SliceObject object;  // total of pb over Γ
  SliceMap face0, face1;  // object -> of
  SliceMap degen;         // of -> object
};
RelCocyl rel_cocyl(const Cocylinder& c, const SliceObject& a);

// Functorial action on a slice map: the mediated map between the fibrewise
// cocylinders of its ends.  `sc`/`dc` must be the cylinders of f's ends.
SliceMap rel_cocyl_map(const Cocylinder& c, const RelCocyl& sc,
                       const RelCocyl& dc, const SliceMap& f);

// A fibrewise homotopy from f to g (parallel slice maps A -> B over Γ): a
// slice map into the cylinder of B whose faces restrict to f and g.
struct Homotopy {
  SliceMap map;  // A -> cylinder of B
  // Validates the two face equations; LawViolation when either fails.
  static Homotopy make(const RelCocyl& cyl, const SliceMap& f,
                       const SliceMap& g, SliceMap h);
};

// The source-face map of f : (X,x) -> (Y,y) over Γ measured against the
// cylinder: Cyl(X) -> X ×_Y Cyl(Y), components (face0, Cyl(f)).  The chosen
// codomain pullback is part of the value.
struct LeibnizFace {
  RelCocyl src_cyl, dst_cyl;
  SliceMap cocyl_map;   // Cyl(X) -> Cyl(Y)
  Pullback codomain_pb; // Pb(f, face0 of Y)
  SliceObject codomain; // total of codomain_pb, anchored through X
  SliceMap map;         // Cyl(X) -> codomain
};
LeibnizFace leibniz_face0(const Cocylinder& c, const SliceMap& f);

// The boundary map of g : (A,a) -> (B,b) over Γ measured against the
// cylinder: Cyl(A) -> (A ×_Γ A) ×_{B ×_Γ B} Cyl(B), components (both faces
// of A, Cyl(g)).
struct LeibnizBoundary {
  RelCocyl src_cyl, dst_cyl;
  SliceMap cocyl_map;            // Cyl(A) -> Cyl(B)
  Pullback pair_src, pair_dst;   // A ×_Γ A and B ×_Γ B
  GroupoidMap bdy_src, bdy_dst;  // boundary pairings into them
  GroupoidMap prod_map;          // g ×_Γ g
  Pullback codomain_pb;
  SliceObject codomain;
  SliceMap map;
};
LeibnizBoundary leibniz_boundary(const Cocylinder& c, const SliceMap& g);

}  // namespace forge
