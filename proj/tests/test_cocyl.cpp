#include <doctest.h>

#include "forge/cocylinder.hpp"
#include "forge/errors.hpp"
#include "forge/groupoid.hpp"
#include "forge/limits.hpp"

using namespace forge;

namespace {

// Independent oracle: the number of commuting squares (α, α', p, q) with
// q·α = α'·p, counted straight off the composition table.
int count_squares(const Gpd& gp) {
  const auto& g = *gp;
  int n = 0;
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int a2 = 0; a2 < g.n_arrows(); ++a2)
      for (int p = 0; p < g.n_arrows(); ++p)
        for (int q = 0; q < g.n_arrows(); ++q) {
          auto left = g.try_compose(q, a);
          auto right = g.try_compose(a2, p);
          if (left && right && *left == *right) ++n;
        }
  return n;
}

GroupoidMap flip() {
  return GroupoidMap::make(ivl(), ivl(), {1, 0},
                           {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
}

}  // namespace

TEST_CASE("arrow groupoid sizes match the square-counting oracle") {
  struct Row {
    Gpd g;
    int objects, arrows;
  };
  const Row rows[] = {{one_gpd(), 1, 1}, {ivl(), 4, 16}, {bz2(), 2, 8},
                      {d2(), 2, 2}};
  for (const auto& r : rows) {
    const auto& ag = arrow_groupoid(r.g);
    CHECK(ag.total->n_objects() == r.objects);
    CHECK(ag.total->n_arrows() == r.arrows);
    CHECK(ag.total->n_arrows() == count_squares(r.g));
    CHECK(ag.total->validate().ok());
  }
}

TEST_CASE("face and degeneracy maps are lawful functors") {
  for (const Gpd& g : {ivl(), bz2(), d2()}) {
    const auto& ag = arrow_groupoid(g);
    // The trusted tables really are functors.
    CHECK_NOTHROW(GroupoidMap::make(ag.total, g, ag.face0.object_table(),
                                    ag.face0.arrow_table()));
    CHECK_NOTHROW(GroupoidMap::make(ag.total, g, ag.face1.object_table(),
                                    ag.face1.arrow_table()));
    CHECK_NOTHROW(GroupoidMap::make(g, ag.total, ag.degen.object_table(),
                                    ag.degen.arrow_table()));
    CHECK(ag.face0.after(ag.degen) == GroupoidMap::identity(g));
    CHECK(ag.face1.after(ag.degen) == GroupoidMap::identity(g));
    // Every stored square satisfies its defining equation.
    for (int m = 0; m < ag.total->n_arrows(); ++m) {
      auto t = ag.decompose(m);
      CHECK(g->compose(ag.q_of(m), t.from) == g->compose(t.to, t.p));
      CHECK(ag.arrow_of(t.from, t.to, t.p) == m);
    }
  }
  // The two faces differ on a square with a non-degenerate diagonal.
  const auto& ag = arrow_groupoid(bz2());
  int tw = ag.arrow_of(kBz2E, kBz2T, kBz2E);
  CHECK(ag.face0.on_arrow(tw) != ag.face1.on_arrow(tw));
}

TEST_CASE("the cocylinder action is functorial and natural") {
  auto c = groupoid_cocylinder();
  auto f = flip();
  auto cf = c.act_map(f);
  CHECK_NOTHROW(GroupoidMap::make(cf.dom(), cf.cod(), cf.object_table(),
                                  cf.arrow_table()));
  CHECK(c.face0(ivl()).after(cf) == f.after(c.face0(ivl())));
  CHECK(c.face1(ivl()).after(cf) == f.after(c.face1(ivl())));
  CHECK(cf.after(c.degen(ivl())) == c.degen(ivl()).after(f));
  CHECK(c.act_map(GroupoidMap::identity(ivl())).is_identity());
  CHECK(c.act_map(f.after(f)) == cf.after(cf));
}

TEST_CASE("fibrewise cocylinders pick out vertical paths") {
  auto c = groupoid_cocylinder();

  // Identity anchor on the interval: only the two constant paths survive.
  auto cyl = rel_cocyl(c, SliceObject{GroupoidMap::identity(ivl())});
  CHECK(cyl.object.total()->n_objects() == 2);
  CHECK(cyl.object.total()->n_arrows() == 4);

  // Identity anchor on Z/2: one constant path with two loops over it.
  auto loops = rel_cocyl(c, SliceObject{GroupoidMap::identity(bz2())});
  CHECK(loops.object.total()->n_objects() == 1);
  CHECK(loops.object.total()->n_arrows() == 2);

  // Over the point the fibrewise cylinder is the whole arrow groupoid.
  auto glob = rel_cocyl(c, over_point(ivl()));
  CHECK(glob.object.total()->n_objects() == 4);
  CHECK(glob.object.total()->n_arrows() == 16);

  for (const RelCocyl& r : {cyl, loops, glob}) {
    CHECK(r.face0.map.after(r.degen.map) ==
          GroupoidMap::identity(r.of.total()));
    CHECK(r.face1.map.after(r.degen.map) ==
          GroupoidMap::identity(r.of.total()));
  }
}

TEST_CASE("the identity cocylinder collapses everything") {
  auto c = degenerate_cocylinder();
  CHECK(same_gpd(c.act_obj(ivl()), ivl()));
  CHECK(c.face0(bz2()).is_identity());

  auto incl = GroupoidMap::make(d2(), ivl(), {0, 1}, {kIvlId0, kIvlId1});
  auto cyl = rel_cocyl(c, SliceObject{incl});
  CHECK(cyl.object.total()->n_objects() == 2);
  CHECK(cyl.face0.map == cyl.face1.map);
  CHECK(cyl.face0.map.after(cyl.degen.map) == GroupoidMap::identity(d2()));
}

TEST_CASE("cocylinders act on slice maps compatibly with the faces") {
  auto c = groupoid_cocylinder();
  auto incl = GroupoidMap::make(d2(), ivl(), {0, 1}, {kIvlId0, kIvlId1});
  SliceObject a{incl};
  SliceObject b{GroupoidMap::identity(ivl())};
  auto f = SliceMap::make(a, b, incl);
  auto sc = rel_cocyl(c, a);
  auto dc = rel_cocyl(c, b);
  auto cf = rel_cocyl_map(c, sc, dc, f);
  CHECK(sc.object.total()->n_objects() == 2);
  CHECK(dc.face0.map.after(cf.map) == f.map.after(sc.face0.map));
  CHECK(dc.face1.map.after(cf.map) == f.map.after(sc.face1.map));
  CHECK(cf.map.after(sc.degen.map) == dc.degen.map.after(f.map));
  // Mismatched cylinders are rejected.
  CHECK_THROWS_AS((void)rel_cocyl_map(c, dc, dc, f), PreconditionError);
}

TEST_CASE("homotopies validate their boundary conditions") {
  auto c = groupoid_cocylinder();
  auto whole = over_point(ivl());
  auto cyl = rel_cocyl(c, whole);
  auto id_slice = SliceMap::make(whole, whole, GroupoidMap::identity(ivl()));
  auto flip_slice = SliceMap::make(whole, whole, flip());

  // The path x ↦ (x -> flip x) as a functor into the arrow groupoid.
  const auto& ag = arrow_groupoid(ivl());
  auto raw = GroupoidMap::make(
      ivl(), ag.total, {kIvlU, kIvlUInv},
      {ag.arrow_of(kIvlU, kIvlU, kIvlId0),
       ag.arrow_of(kIvlUInv, kIvlUInv, kIvlId1),
       ag.arrow_of(kIvlU, kIvlUInv, kIvlU),
       ag.arrow_of(kIvlUInv, kIvlU, kIvlUInv)});
  auto h = SliceMap::make(whole, cyl.object,
                          cyl.pb.mediate(bang(ivl()), raw));
  CHECK_NOTHROW((void)Homotopy::make(cyl, id_slice, flip_slice, h));
  CHECK_THROWS_AS((void)Homotopy::make(cyl, id_slice, id_slice, h),
                  LawViolation);
  // The degeneracy is the constant homotopy.
  CHECK_NOTHROW((void)Homotopy::make(cyl, id_slice, id_slice, cyl.degen));
}

TEST_CASE("the source-face comparison map lands in the mapping object") {
  auto delta0 = GroupoidMap::make(one_gpd(), ivl(), {0}, {kIvlId0});
  auto f = SliceMap::make(over_point(one_gpd()), over_point(ivl()), delta0);

  auto lf = leibniz_face0(groupoid_cocylinder(), f);
  // Paths out of the marked point: the constant one and the crossing one.
  CHECK(lf.codomain.total()->n_objects() == 2);
  CHECK(lf.src_cyl.object.total()->n_objects() == 1);
  CHECK(lf.codomain_pb.proj1().after(lf.map.map) == lf.src_cyl.face0.map);

  auto lfd = leibniz_face0(degenerate_cocylinder(), f);
  CHECK(lfd.codomain.total()->n_objects() == 1);
}

TEST_CASE("the boundary comparison map pairs the two faces") {
  auto c = groupoid_cocylinder();
  auto whole = over_point(ivl());
  auto idm = SliceMap::make(whole, whole, GroupoidMap::identity(ivl()));
  auto lb = leibniz_boundary(c, idm);
  // Against the identity the comparison is a bijection onto parallel pairs.
  CHECK(lb.codomain.total()->n_objects() == 4);
  CHECK(lb.map.map.is_iso());
  // Parallel pairs of paths in the interval: one per endpoint pattern.
  auto self_pb = Pullback::make(lb.bdy_src, lb.bdy_src);
  CHECK(self_pb.total()->n_objects() == 4);

  auto delta0 = GroupoidMap::make(one_gpd(), ivl(), {0}, {kIvlId0});
  auto d0 = SliceMap::make(over_point(one_gpd()), whole, delta0);
  auto lbd = leibniz_boundary(c, d0);
  CHECK(lbd.codomain.total()->n_objects() == 1);
  CHECK(lbd.codomain.total()->n_arrows() == 1);
}
