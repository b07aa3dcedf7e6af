#include "forge/awfs.hpp"

#include "forge/errors.hpp"

namespace forge {

Factorization Factorization::make(SliceMap of, SliceMap left, SliceMap right) {
  if (!same_gpd(left.src.total(), of.src.total()) ||
      !same_gpd(right.dst.total(), of.dst.total()) ||
      !same_gpd(left.dst.total(), right.src.total()))
    throw PreconditionError("factorization: parts have mismatched ends");
  if (!(right.map.after(left.map) == of.map))
    throw LawViolation("factorization: parts do not compose to the map");
  SliceObject mid = left.dst;
  return Factorization{std::move(of), std::move(left), std::move(mid),
                       std::move(right)};
}

LMapStruct LMapStruct::make(Factorization fac, GroupoidMap s) {
  const SliceMap& m = fac.of;
  if (!same_gpd(s.dom(), m.dst.total()) ||
      !same_gpd(s.cod(), fac.mid.total()))
    throw PreconditionError("left structure: section has wrong ends");
  if (!(s.after(m.map) == fac.left.map))
    throw LawViolation("left structure: s∘m differs from the left part");
  if (!(fac.right.map.after(s) == GroupoidMap::identity(m.dst.total())))
    throw LawViolation("left structure: s is not a section of the right part");
  SliceMap of = fac.of;
  return LMapStruct{std::move(of), std::move(fac), std::move(s)};
}

LMapStruct LMapStruct::make(const AwfsInstance& inst, const SliceMap& m,
                            GroupoidMap s) {
  return make(inst.factor(m), std::move(s));
}

LMapStruct LMapStruct::unchecked(Factorization fac, GroupoidMap s) {
  SliceMap of = fac.of;
  return LMapStruct{std::move(of), std::move(fac), std::move(s)};
}

RMapStruct RMapStruct::make(Factorization fac, GroupoidMap p) {
  const SliceMap& f = fac.of;
  if (!same_gpd(p.dom(), fac.mid.total()) ||
      !same_gpd(p.cod(), f.src.total()))
    throw PreconditionError("right structure: retraction has wrong ends");
  if (!(p.after(fac.left.map) == GroupoidMap::identity(f.src.total())))
    throw LawViolation(
        "right structure: p is not a retraction of the left part");
  if (!(f.map.after(p) == fac.right.map))
    throw LawViolation("right structure: f∘p differs from the right part");
  SliceMap of = fac.of;
  return RMapStruct{std::move(of), std::move(fac), std::move(p)};
}

RMapStruct RMapStruct::make(const AwfsInstance& inst, const SliceMap& f,
                            GroupoidMap p) {
  return make(inst.factor(f), std::move(p));
}

RMapStruct RMapStruct::unchecked(Factorization fac, GroupoidMap p) {
  SliceMap of = fac.of;
  return RMapStruct{std::move(of), std::move(fac), std::move(p)};
}

LMapStruct free_left(const AwfsInstance& inst, const SliceMap& f) {
  auto fac = inst.factor(f);
  auto s = inst.comult(f);
  auto lfac = inst.factor(fac.left);
  // Structure on left(f): the comultiplication, validated directly against
  // the factorization of the left part.
  if (!(s.after(fac.left.map) == lfac.left.map) ||
      !(lfac.right.map.after(s) == GroupoidMap::identity(fac.mid.total())))
    throw LawViolation("comultiplication violates the coalgebra laws");
  return LMapStruct{fac.left, std::move(lfac), std::move(s)};
}

RMapStruct free_right(const AwfsInstance& inst, const SliceMap& f) {
  auto fac = inst.factor(f);
  auto p = inst.mult(f);
  auto rfac = inst.factor(fac.right);
  if (!(p.after(rfac.left.map) == GroupoidMap::identity(fac.mid.total())) ||
      !(fac.right.map.after(p) == rfac.right.map))
    throw LawViolation("multiplication violates the algebra laws");
  return RMapStruct{fac.right, std::move(rfac), std::move(p)};
}

GroupoidMap solve_lift(const AwfsInstance& inst, const LMapStruct& lm,
                       const RMapStruct& rf, const GroupoidMap& top,
                       const GroupoidMap& bottom) {
  auto sq = SliceSquare::make(lm.of, rf.of, top, bottom);
  auto k = inst.k_on_square(sq);
  auto j = rf.p.after(k).after(lm.s);
  if (!(j.after(lm.of.map) == top))
    throw LawViolation("lift does not restrict to the top of the square");
  if (!(rf.of.map.after(j) == bottom))
    throw LawViolation("lift does not project to the bottom of the square");
  return j;
}

RMapStruct rmap_compose(const AwfsInstance& inst, const RMapStruct& rg,
                        const RMapStruct& rf) {
  const SliceMap& f = rf.of;
  const SliceMap& g = rg.of;
  auto gf = g.after(f);
  auto fac = inst.factor(gf);
  auto lm = free_left(inst, gf);

  // First lift the middle down to the middle object of f: a filler for the
  // square (f, right(gf)) from left(gf) to g.
  auto d = solve_lift(inst, lm, rg, f.map, fac.right.map);
  // Then retract onto the domain: a filler for (id, d) from left(gf) to f.
  auto p = solve_lift(inst, lm, rf, GroupoidMap::identity(f.src.total()), d);
  return RMapStruct::make(inst, gf, p);
}

RMapStruct rmap_pullback(const AwfsInstance& inst, const RMapStruct& rf,
                         const SliceSquare& sq) {
  if (!(sq.to.map == rf.of.map) || !(sq.to.src.anchor == rf.of.src.anchor) ||
      !(sq.to.dst.anchor == rf.of.dst.anchor))
    throw PreconditionError("rmap_pullback: square does not target the map");
  Square underlying{sq.top, sq.bottom, sq.from.map, sq.to.map};
  if (!is_pullback_square(underlying))
    throw PreconditionError("rmap_pullback: square is not cartesian");

  auto pb = Pullback::make(sq.bottom, sq.to.map);
  auto c = pb.mediate(sq.from.map, sq.top);  // iso by cartesianness
  auto c_inv = CanonIso::from_iso(c).bwd;

  auto fac = inst.factor(sq.from);
  auto k = inst.k_on_square(sq);
  auto cone = pb.mediate(fac.right.map, rf.p.after(k));
  return RMapStruct::make(inst, sq.from, c_inv.after(cone));
}

ReindexedRMap reindex_rmap(const FibredAwfs& fam, const GroupoidMap& sigma,
                           const RMapStruct& rf) {
  auto rd = reindex_slice_map(sigma, rf.of);
  auto inst = fam.at(sigma.dom());
  auto iso = fam.reindex_iso(sigma, rf.of);

  // p is itself a slice map mid -> X over Γ; transport it and precompose
  // with the canonical middle comparison.
  auto p_slice = SliceMap::make(rf.fac.mid, rf.of.src, rf.p);
  auto rp = reindex_slice_map(sigma, p_slice);
  auto p_delta = rp.map.map.after(iso.fwd);
  auto structure = RMapStruct::make(inst, rd.map, p_delta);
  return ReindexedRMap{std::move(rd), std::move(structure)};
}

ReindexedLMap reindex_lmap(const FibredAwfs& fam, const GroupoidMap& sigma,
                           const LMapStruct& lm) {
  auto rd = reindex_slice_map(sigma, lm.of);
  auto inst = fam.at(sigma.dom());
  auto iso = fam.reindex_iso(sigma, lm.of);

  auto s_slice = SliceMap::make(lm.of.dst, lm.fac.mid, lm.s);
  auto rs = reindex_slice_map(sigma, s_slice);
  auto s_delta = iso.bwd.after(rs.map.map);
  auto structure = LMapStruct::make(inst, rd.map, s_delta);
  return ReindexedLMap{std::move(rd), std::move(structure)};
}

}  // namespace forge
