#pragma once

#include <functional>
#include <optional>
#include <string>

#include "forge/cocylinder.hpp"
#include "forge/limits.hpp"

namespace forge {

struct AwfsInstance;

// A factorization of a slice map through a middle object:
// f = right ∘ left with left : X -> mid and right : mid -> Y.
struct Factorization {
  SliceMap of;
  SliceMap left;
  SliceObject mid;
  SliceMap right;

  // Validates the composite; PreconditionError on mismatched ends,
  // LawViolation when right∘left differs from the factored map.
  static Factorization make(SliceMap of, SliceMap left, SliceMap right);
};

// Coalgebra structure exhibiting m : A -> B as a left map: a section
// s : B -> mid(m) of the right part with s∘m = left(m).
struct LMapStruct {
  SliceMap of;
  Factorization fac;  // the instance factorization of `of`
  GroupoidMap s;      // B -> mid

  // Validates both structure laws against the given factorization.
  static LMapStruct make(Factorization fac, GroupoidMap s);
  static LMapStruct make(const AwfsInstance& inst, const SliceMap& m,
                         GroupoidMap s);
  // Trusts the caller.  Used to assemble values whose laws are checked by
  // other means, and by tests that need deliberately broken structures.
  static LMapStruct unchecked(Factorization fac, GroupoidMap s);
};

// Algebra structure exhibiting f : X -> Y as a right map: a retraction
// p : mid(f) -> X of the left part with f∘p = right(f).
struct RMapStruct {
  SliceMap of;
  Factorization fac;
  GroupoidMap p;  // mid -> X

  // Validates both structure laws against the given factorization.
  static RMapStruct make(Factorization fac, GroupoidMap p);
  static RMapStruct make(const AwfsInstance& inst, const SliceMap& f,
                         GroupoidMap p);
  static RMapStruct unchecked(Factorization fac, GroupoidMap p);
};

// One algebraic factorization system on the slice over a fixed base: the
// functorial factorization together with the (co)monad structure maps on its
// two halves, plus a structure search for right maps.
struct AwfsInstance {
  std::string name;
  Gpd base;
  Cocylinder cocyl;

  std::function<Factorization(const SliceMap&)> factor;
  // Action on a commuting square (h,k) : f' -> f between the middles:
  // mid(f') -> mid(f), natural over the square.
  std::function<GroupoidMap(const SliceSquare&)> k_on_square;
  // Comultiplication on the left half: mid(f) -> mid(left(f)).
  std::function<GroupoidMap(const SliceMap&)> comult;
  // Multiplication on the right half: mid(right(f)) -> mid(f).
  std::function<GroupoidMap(const SliceMap&)> mult;
  // Canonical right-map structure on f when one exists.
  std::function<std::optional<RMapStruct>(const SliceMap&)> find_rstruct;
  // Structure assignments for the two Leibniz comparisons of a right map
  // f : (X,x) -> (Y,y) over this base.  `axiom_lface` equips the source-face
  // comparison Cyl(X) -> X ×_Y Cyl(Y), regarded over the point, with right
  // structure in the global instance of the same family; `axiom_lbdy` equips
  // the boundary comparison Cyl(A) -> (A ×_Γ A) ×_{B ×_Γ B} Cyl(B) with
  // right structure over this same base.  Both assignments depend only on
  // the underlying map, so they are functorial on structured maps; both
  // throw LawViolation when no structure exists (the input was not actually
  // a right map).
  std::function<RMapStruct(const RMapStruct&)> axiom_lface;
  std::function<RMapStruct(const RMapStruct&)> axiom_lbdy;
};

// The factorization plus the canonical structures it carries: the left half
// is a coalgebra via the comultiplication, the right half an algebra via the
// multiplication.
LMapStruct free_left(const AwfsInstance& inst, const SliceMap& f);
RMapStruct free_right(const AwfsInstance& inst, const SliceMap& f);

// The canonical diagonal filler for a lifting problem
//     top : A -> X,  bottom : B -> Y,  f ∘ top = bottom ∘ m
// where m carries left structure and f right structure.  The result j
// satisfies j∘m = top and f∘j = bottom; both are verified before returning.
GroupoidMap solve_lift(const AwfsInstance& inst, const LMapStruct& lm,
                       const RMapStruct& rf, const GroupoidMap& top,
                       const GroupoidMap& bottom);

// Right structures compose: given structures on g and on f they induce the
// canonical structure on g∘f.
RMapStruct rmap_compose(const AwfsInstance& inst, const RMapStruct& rg,
                        const RMapStruct& rf);

// Right structures pull back: given a structure on sq.to and a cartesian
// square sq, the induced structure on sq.from.  PreconditionError when the
// square is not cartesian.
RMapStruct rmap_pullback(const AwfsInstance& inst, const RMapStruct& rf,
                         const SliceSquare& sq);

// A family of instances, one per base, related by reindexing: for
// σ : Δ -> Γ and f over Γ, reindex_iso(σ, f) is the canonical comparison
// fwd : mid_Δ(σ*f) -> σ*(mid_Γ(f)) commuting with both projections.
struct FibredAwfs {
  std::string name;
  Cocylinder cocyl;
  std::function<AwfsInstance(const Gpd&)> at;
  std::function<CanonIso(const GroupoidMap&, const SliceMap&)> reindex_iso;
};

// Structures transported along a reindexing σ : Δ -> Γ.
struct ReindexedRMap {
  ReindexedMap map;      // σ*f and its projection squares
  RMapStruct structure;  // on σ*f, over Δ
};
ReindexedRMap reindex_rmap(const FibredAwfs& fam, const GroupoidMap& sigma,
                           const RMapStruct& rf);

struct ReindexedLMap {
  ReindexedMap map;
  LMapStruct structure;
};
ReindexedLMap reindex_lmap(const FibredAwfs& fam, const GroupoidMap& sigma,
                           const LMapStruct& lm);

}  // namespace forge
