#pragma once

#include <utility>

#include "forge/awfs.hpp"
#include "forge/cocylinder.hpp"

namespace forge {

// A fibrewise deformation retraction onto the image of m : (A,a) -> (B,b):
// a retraction g with g.m = id together with a vertical homotopy from m.g
// to the identity of B.
struct DefRetStruct {
  SliceMap m;     // the embedding A -> B over the base
  GroupoidMap g;  // the retraction B -> A
  RelCocyl cyl;   // the cylinder of (B,b) the homotopy is valued in
  Homotopy psi;   // m.g ~ id_B, fibrewise

  // Validates g.m = id_A, that g is a map over the base (b = a.g), and both
  // endpoint equations of psi; LawViolation on failure.
  static DefRetStruct make(SliceMap m, GroupoidMap g, RelCocyl cyl,
                           Homotopy psi);
};

// The factorization of the relative diagonal of a fibration f : X -> gamma:
// X -> P -> X x_gamma X with left structure on the first leg and right
// structure on the second, both over the point.
struct DiagFact {
  RMapStruct f;   // the input structure, a map X -> gamma over the point
  Pullback xx;    // the chosen pullback X x_gamma X
  SliceMap diag;  // the relative diagonal X -> X x_gamma X, over gamma
  Gpd mid;        // the path object P interpolating the diagonal
  LMapStruct r;   // over the point, on X -> P
  RMapStruct p;   // over the point, on P -> X x_gamma X

  // Validates p.r = diag (as plain maps) and that the structures sit on the
  // two legs; LawViolation on failure.
  static DiagFact make(RMapStruct f, Pullback xx, SliceMap diag, LMapStruct r,
                       RMapStruct p);
};

// The verdict of a stability check: the comparison square between the path
// objects on the two sides of a cartesian square of fibrations, and whether
// that comparison is itself cartesian.
struct StabilityResult {
  bool stable;      // true when the comparison square is a pullback
  Square square;    // P' -> P over gamma' -> gamma
  DiagFact before;  // the diagonal factorization downstairs (of rf)
  DiagFact after;   // the diagonal factorization upstairs (of rf_prime)
};

// A left map whose ends are fibrant over the base is a deformation
// retraction: the retraction is a lift of the identity against the domain
// anchor, and the homotopy a lift of the degenerate cylinder against the
// boundary comparison of the codomain anchor.  `ra` and `rb` must be right
// structures on the anchors of the ends of lm, regarded as maps to the
// slice terminal.
DefRetStruct left_to_deformation(const AwfsInstance& inst, const LMapStruct& lm,
                                 const RMapStruct& ra, const RMapStruct& rb);

// A right structure over the point on the composite of a slice map with the
// anchors restricts to a right structure on the map in the slice: reindex
// along the unique map from the base and pull back along the graph of the
// anchors.  `f` lives over some base gamma; `r1` must be a structure, over
// the point, on the underlying map of f seen between the totals.
RMapStruct restrict_right(const FibredAwfs& fam, const SliceMap& f,
                          const RMapStruct& r1);

// A left structure over a base yields a left structure over the point on
// the underlying map: reindex the map along the unique map from the base,
// compare via the middle isomorphism, and compose with the canonical
// projection back to the original middle object.
LMapStruct globalize_left(const FibredAwfs& fam, const LMapStruct& lm);

// When m : (A,a) -> (B,b) is a left map over gamma, a is fibrant over the
// point, and b is fibrant in the slice, then b is fibrant over the point.
// The structure retracts the free factorization of b through the
// deformation retraction of m and the source-face comparison of b.
RMapStruct right_across_left(const FibredAwfs& fam, const LMapStruct& lm,
                             const RMapStruct& ra, const RMapStruct& rb);

// A fibrewise right structure on f : (X,x) -> (Y,y) upgrades to a global
// one on the underlying map when both ends are fibrant over the point.
// `fg` is the structure over the base; `rx`, `ry` structure the anchors
// over the point.
RMapStruct heterogenize_right(const FibredAwfs& fam, const RMapStruct& fg,
                              const RMapStruct& rx, const RMapStruct& ry);

// The slice factorization of f : (X,x) -> (Y,y) between fibrant objects,
// with its left leg globalized and its right leg upgraded to a global
// right structure.  Returns the pair (left part over the point, right part
// over the point); the middle object is the slice middle.
std::pair<LMapStruct, RMapStruct> stable_factorization(const FibredAwfs& fam,
                                                       const SliceMap& f,
                                                       const RMapStruct& rx,
                                                       const RMapStruct& ry);

// The factorization of the relative diagonal of a fibration f : X -> gamma
// through its fibrewise path object, with structures on both legs over the
// point.
DiagFact diagonal_factorization(const FibredAwfs& fam, const RMapStruct& rf);

// Given a cartesian square (top h, bottom k) from f' : X' -> gamma' to
// f : X -> gamma and right structures on both, build the comparison map
// between the path objects of the two diagonal factorizations and decide
// whether the resulting square over k is itself cartesian.
StabilityResult check_stability(const FibredAwfs& fam, const Square& pb,
                                const RMapStruct& rf,
                                const RMapStruct& rf_prime);

}  // namespace forge
