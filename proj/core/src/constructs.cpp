#include "forge/constructs.hpp"

#include <utility>

namespace forge {

namespace {

SliceObject slice_terminal(const Gpd& base) {
  return SliceObject{GroupoidMap::identity(base)};
}

// The anchor of a slice object regarded as a map to the slice terminal.
SliceMap anchor_to_terminal(const SliceObject& a) {
  auto base = a.anchor.cod();
  return SliceMap::make(a, slice_terminal(base), a.anchor);
}

void require_structure_on_anchor(const RMapStruct& r, const SliceObject& a,
                                 const char* who) {
  if (!(r.of.map == a.anchor) ||
      !(r.of.dst.anchor == GroupoidMap::identity(r.of.dst.total())))
    throw PreconditionError(std::string(who) +
                            ": structure is not on the anchor as a map to the "
                            "slice terminal");
}

void require_global_structure_on_anchor(const RMapStruct& r,
                                        const SliceObject& a,
                                        const char* who) {
  if (!(r.of.map == a.anchor) ||
      !same_gpd(r.of.src.anchor.cod(), one_gpd()))
    throw PreconditionError(
        std::string(who) +
        ": structure is not on the anchor as a map over the point");
}

}  // namespace

DefRetStruct DefRetStruct::make(SliceMap m, GroupoidMap g, RelCocyl cyl,
                                Homotopy psi) {
  if (!(g.after(m.map) == GroupoidMap::identity(m.src.total())))
    throw LawViolation("deformation retract: g does not retract m");
  if (!(m.src.anchor.after(g) == m.dst.anchor))
    throw LawViolation("deformation retract: retraction does not live over "
                       "the base");
  if (!(cyl.face0.map.after(psi.map.map) == m.map.after(g)))
    throw LawViolation("deformation retract: homotopy does not start at m.g");
  if (!(cyl.face1.map.after(psi.map.map) ==
        GroupoidMap::identity(m.dst.total())))
    throw LawViolation("deformation retract: homotopy does not end at the "
                       "identity");
  return DefRetStruct{std::move(m), std::move(g), std::move(cyl),
                      std::move(psi)};
}

DiagFact DiagFact::make(RMapStruct f, Pullback xx, SliceMap diag, LMapStruct r,
                        RMapStruct p) {
  if (!same_gpd(r.of.map.dom(), diag.map.dom()))
    throw LawViolation("diagonal factorization: left leg does not start at "
                       "the domain");
  if (!same_gpd(p.of.map.cod(), diag.map.cod()))
    throw LawViolation("diagonal factorization: right leg does not end at "
                       "the relative product");
  if (!same_gpd(r.of.map.cod(), p.of.map.dom()))
    throw LawViolation("diagonal factorization: legs do not share the path "
                       "object");
  if (!(p.of.map.after(r.of.map) == diag.map))
    throw LawViolation("diagonal factorization: legs do not compose to the "
                       "diagonal");
  auto mid = r.of.map.cod();
  return DiagFact{std::move(f),    std::move(xx), std::move(diag),
                  std::move(mid),  std::move(r),  std::move(p)};
}

DefRetStruct left_to_deformation(const AwfsInstance& inst, const LMapStruct& lm,
                                 const RMapStruct& ra, const RMapStruct& rb) {
  const SliceMap& m = lm.of;
  require_structure_on_anchor(ra, m.src, "left_to_deformation");
  require_structure_on_anchor(rb, m.dst, "left_to_deformation");

  // The retraction: fill the square whose top is the identity and whose
  // bottom is the codomain anchor, against the structured domain anchor.
  auto g = solve_lift(inst, lm, ra, GroupoidMap::identity(m.src.total()),
                      m.dst.anchor);

  // The homotopy: fill against the boundary comparison of the codomain
  // anchor.  Its top is the degenerate cylinder of m; its bottom pairs the
  // round trip m.g with the identity over the degenerate path of the base.
  auto lb = leibniz_boundary(inst.cocyl, rb.of);
  auto rlb = inst.axiom_lbdy(rb);
  auto top = lb.src_cyl.degen.map.after(m.map);
  auto pair_part = lb.pair_src.mediate(
      m.map.after(g), GroupoidMap::identity(m.dst.total()));
  auto cyl_part = lb.dst_cyl.degen.map.after(rb.of.map);
  auto bottom = lb.codomain_pb.mediate(pair_part, cyl_part);
  auto h = solve_lift(inst, lm, rlb, top, bottom);

  auto round_trip = SliceMap::make(m.dst, m.dst, m.map.after(g));
  auto ident = SliceMap::make(
      m.dst, m.dst, GroupoidMap::identity(m.dst.total()));
  auto psi = Homotopy::make(lb.src_cyl, round_trip, ident,
                            SliceMap::make(m.dst, lb.src_cyl.object, h));
  return DefRetStruct::make(m, g, lb.src_cyl, std::move(psi));
}

RMapStruct restrict_right(const FibredAwfs& fam, const SliceMap& f,
                          const RMapStruct& r1) {
  if (!(r1.of.map == f.map))
    throw PreconditionError(
        "restrict_right: structure is not on the underlying map of f");
  auto gamma = f.src.anchor.cod();
  auto sigma = bang(gamma);

  // Reindex the structured map along the unique map from the base, then
  // pull its structure back along the graphs of the anchors.
  auto rr = reindex_rmap(fam, sigma, r1);
  auto top = rr.map.src.pb.mediate(GroupoidMap::identity(f.src.total()),
                                   f.src.anchor);
  auto bottom = rr.map.dst.pb.mediate(GroupoidMap::identity(f.dst.total()),
                                      f.dst.anchor);
  auto sq = SliceSquare::make(f, rr.structure.of, top, bottom);
  return rmap_pullback(fam.at(gamma), rr.structure, sq);
}

LMapStruct globalize_left(const FibredAwfs& fam, const LMapStruct& lm) {
  auto gamma = lm.of.src.anchor.cod();
  auto inst_gamma = fam.at(gamma);
  auto inst_one = fam.at(one_gpd());
  auto sigma = bang(gamma);
  auto gm = lm.of.globalized();

  // Compare the slice map with the reindexed copy of its globalization: the
  // cartesian square (graph of the anchors) induces a map of middles, and
  // the reindexing isomorphism carries it into the reindexed global middle,
  // whose canonical projection lands in the global middle itself.
  auto rd = reindex_slice_map(sigma, gm);
  auto top = rd.src.pb.mediate(GroupoidMap::identity(lm.of.src.total()),
                               lm.of.src.anchor);
  auto bottom = rd.dst.pb.mediate(GroupoidMap::identity(lm.of.dst.total()),
                                  lm.of.dst.anchor);
  auto sq = SliceSquare::make(lm.of, rd.map, top, bottom);
  auto kappa = inst_gamma.k_on_square(sq);
  auto iso = fam.reindex_iso(sigma, gm);
  auto fac1 = inst_one.factor(gm);
  auto rd_mid = reindex_slice(sigma, fac1.mid);
  auto s1 = rd_mid.to_original.after(iso.fwd).after(kappa).after(lm.s);
  return LMapStruct::make(inst_one, gm, std::move(s1));
}

RMapStruct right_across_left(const FibredAwfs& fam, const LMapStruct& lm,
                             const RMapStruct& ra, const RMapStruct& rb) {
  const SliceMap& m = lm.of;
  auto gamma = m.src.anchor.cod();
  auto inst_gamma = fam.at(gamma);
  auto inst_one = fam.at(one_gpd());
  require_global_structure_on_anchor(ra, m.src, "right_across_left");
  require_structure_on_anchor(rb, m.dst, "right_across_left");

  // Restrict the global structure on the domain anchor to the slice and
  // exhibit m as a deformation retraction.
  auto a_gamma = restrict_right(fam, anchor_to_terminal(m.src), ra);
  auto dr = left_to_deformation(inst_gamma, lm, a_gamma, rb);

  // Retract the free factorization of the codomain anchor onto the domain
  // through the retraction, answering lifting problems over the point.
  auto gb = rb.of.globalized();
  auto fac_gb = inst_one.factor(gb);
  auto fl = free_left(inst_one, gb);
  auto j_a = solve_lift(inst_one, fl, ra, dr.g,
                        gb.dst.anchor.after(fac_gb.right.map));

  // Transport the homotopy across the source-face comparison of the
  // codomain anchor; its end at time one is the desired retraction.
  auto lf = leibniz_face0(inst_gamma.cocyl, rb.of);
  auto lfs = inst_gamma.axiom_lface(rb);
  auto bottom = lf.codomain_pb.mediate(
      m.map.after(j_a), lf.dst_cyl.degen.map.after(fac_gb.right.map));
  auto j_b = solve_lift(inst_one, fl, lfs, dr.psi.map.map, bottom);
  auto p = lf.src_cyl.face1.map.after(j_b);
  return RMapStruct::make(inst_one, gb, std::move(p));
}

RMapStruct heterogenize_right(const FibredAwfs& fam, const RMapStruct& fg,
                              const RMapStruct& rx, const RMapStruct& ry) {
  const SliceMap& f = fg.of;
  auto gamma = f.src.anchor.cod();
  auto inst_gamma = fam.at(gamma);
  auto inst_one = fam.at(one_gpd());
  require_global_structure_on_anchor(rx, f.src, "heterogenize_right");
  require_global_structure_on_anchor(ry, f.dst, "heterogenize_right");

  auto gf = f.globalized();
  auto fac1 = inst_one.factor(gf);
  auto fl = free_left(inst_one, gf);

  // Retract the global middle onto the domain, using the structured domain
  // anchor; the bottom is the codomain anchor of the free right part.
  auto j_x = solve_lift(inst_one, fl, rx, GroupoidMap::identity(f.src.total()),
                        f.dst.anchor.after(fac1.right.map));

  // Connect f.j_x to the free right part by a path in the codomain: fill
  // against the boundary comparison of the structured codomain anchor.
  auto lb = leibniz_boundary(inst_one.cocyl, ry.of);
  auto rlb = inst_one.axiom_lbdy(ry);
  auto top2 = lb.src_cyl.degen.map.after(f.map);
  auto pair2 = lb.pair_src.mediate(f.map.after(j_x), fac1.right.map);
  auto cyl2 = lb.dst_cyl.degen.map.after(
      f.dst.anchor.after(fac1.right.map));
  auto bottom2 = lb.codomain_pb.mediate(pair2, cyl2);
  auto j_y = solve_lift(inst_one, fl, rlb, top2, bottom2);

  // The connecting path is vertical, hence lands in the fibrewise cylinder;
  // lift it across the source-face comparison of f in the slice and read
  // off the end at time one.
  auto lf = leibniz_face0(inst_gamma.cocyl, f);
  auto lfs = inst_gamma.axiom_lface(fg);
  auto vertical_path = lf.dst_cyl.pb.mediate(
      f.dst.anchor.after(fac1.right.map),
      lb.src_cyl.pb.proj2().after(j_y));
  auto top3 = lf.src_cyl.degen.map;
  auto bottom3 = lf.codomain_pb.mediate(j_x, vertical_path);
  auto j_f = solve_lift(inst_one, fl, lfs, top3, bottom3);
  auto p = lf.src_cyl.face1.map.after(j_f);
  return RMapStruct::make(inst_one, gf, std::move(p));
}

std::pair<LMapStruct, RMapStruct> stable_factorization(const FibredAwfs& fam,
                                                       const SliceMap& f,
                                                       const RMapStruct& rx,
                                                       const RMapStruct& ry) {
  auto gamma = f.src.anchor.cod();
  auto inst_gamma = fam.at(gamma);
  require_global_structure_on_anchor(rx, f.src, "stable_factorization");
  require_global_structure_on_anchor(ry, f.dst, "stable_factorization");

  auto lm = free_left(inst_gamma, f);
  auto rm = free_right(inst_gamma, f);
  auto left_part = globalize_left(fam, lm);

  // The middle anchor is fibrant over the point: it is the composite of the
  // fibrewise right part with the structured codomain anchor, and the free
  // left part carries that structure across to the middle.
  auto y_gamma = restrict_right(fam, anchor_to_terminal(f.dst), ry);
  auto rk = rmap_compose(inst_gamma, y_gamma, rm);
  auto r_mid = right_across_left(fam, lm, rx, rk);
  auto right_part = heterogenize_right(fam, rm, r_mid, ry);
  return {std::move(left_part), std::move(right_part)};
}

DiagFact diagonal_factorization(const FibredAwfs& fam, const RMapStruct& rf) {
  if (!same_gpd(rf.of.src.anchor.cod(), one_gpd()))
    throw PreconditionError(
        "diagonal_factorization: the structured map must live over the point");
  const GroupoidMap& f = rf.of.map;
  auto gamma = f.cod();

  auto xx = Pullback::make(f, f);
  auto x_over = SliceObject{f};
  auto xx_over = SliceObject{f.after(xx.proj1())};
  auto diag = SliceMap::make(
      x_over, xx_over,
      xx.mediate(GroupoidMap::identity(f.dom()),
                 GroupoidMap::identity(f.dom())));

  // The relative product is fibrant over the point: its anchor is the
  // composite of the first projection — a pullback of f — with f itself.
  auto inst_one = fam.at(one_gpd());
  auto proj_global = SliceMap::make(SliceObject{bang(xx.total())},
                                    SliceObject{bang(f.dom())}, xx.proj1());
  auto proj_sq = SliceSquare::make(proj_global, rf.of, xx.proj2(), f);
  auto r_proj = rmap_pullback(inst_one, rf, proj_sq);
  auto r_xx = rmap_compose(inst_one, rf, r_proj);

  auto parts = stable_factorization(fam, diag, rf, r_xx);
  return DiagFact::make(rf, std::move(xx), std::move(diag),
                        std::move(parts.first), std::move(parts.second));
}

StabilityResult check_stability(const FibredAwfs& fam, const Square& pb,
                                const RMapStruct& rf,
                                const RMapStruct& rf_prime) {
  if (!(rf.of.map == pb.right) || !(rf_prime.of.map == pb.left))
    throw PreconditionError(
        "check_stability: structures do not sit on the sides of the square");
  if (!is_pullback_square(pb))
    throw PreconditionError("check_stability: square is not cartesian");

  auto before = diagonal_factorization(fam, rf);
  auto after = diagonal_factorization(fam, rf_prime);

  const GroupoidMap& k = pb.bottom;
  const GroupoidMap& h = pb.top;
  auto gamma = rf.of.map.cod();
  auto gamma_prime = rf_prime.of.map.cod();
  auto inst_gamma = fam.at(gamma);
  auto inst_prime = fam.at(gamma_prime);

  // Compare the upstairs diagonal with the reindexed downstairs one: the
  // graph of (h, k) induces a slice square, hence a map of middles, which
  // the reindexing isomorphism and the canonical projection carry into the
  // downstairs path object.
  auto rd = reindex_slice_map(k, before.diag);
  auto u = rd.src.pb.mediate(h, pb.left);
  auto w = before.xx.mediate(h.after(after.xx.proj1()),
                             h.after(after.xx.proj2()));
  auto v = rd.dst.pb.mediate(w, after.diag.dst.anchor);
  auto sq = SliceSquare::make(after.diag, rd.map, u, v);
  auto kappa = inst_prime.k_on_square(sq);
  auto iso = fam.reindex_iso(k, before.diag);
  auto mid_gamma = inst_gamma.factor(before.diag).mid;
  auto rd_mid = reindex_slice(k, mid_gamma);
  auto comparison = rd_mid.to_original.after(iso.fwd).after(kappa);

  auto mid_prime = inst_prime.factor(after.diag).mid;
  Square stability{comparison, k, mid_prime.anchor, mid_gamma.anchor};
  stability.require_commutes("stability comparison");
  return StabilityResult{is_pullback_square(stability), std::move(stability),
                         std::move(before), std::move(after)};
}

}  // namespace forge
