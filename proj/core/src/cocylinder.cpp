#include "forge/cocylinder.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "forge/errors.hpp"

namespace forge {

namespace {

std::int64_t tri_key(const FinGroupoid& g, int from, int to, int p) {
  const std::int64_t n = g.n_arrows();
  return (static_cast<std::int64_t>(from) * n + to) * n + p;
}

}  // namespace

int ArrowGroupoid::arrow_of(int from, int to, int p) const {
  auto key = tri_key(*base, from, to, p);
  auto it = std::lower_bound(
      lookup_.begin(), lookup_.end(), key,
      [](const auto& e, std::int64_t k) { return e.first < k; });
  if (it == lookup_.end() || it->first != key)
    throw PreconditionError("no square with the given source component");
  return it->second;
}

int ArrowGroupoid::q_of(int total_arrow) const {
  const auto& t = tris_[total_arrow];
  const auto& g = *base;
  return g.compose(t.to, g.compose(t.p, g.inverse(t.from)));
}

ArrowGroupoid make_arrow_groupoid(const Gpd& x) {
  const auto& g = *x;
  ArrowGroupoid ag;
  ag.base = x;

  GroupoidBuilder b;
  for (int a = 0; a < g.n_arrows(); ++a) b.add_object();
  for (int from = 0; from < g.n_arrows(); ++from)
    for (int to = 0; to < g.n_arrows(); ++to)
      for (int p : g.hom(g.src(from), g.src(to))) {
        int idx = b.add_arrow(from, to);
        ag.tris_.push_back({from, to, p});
        ag.lookup_.push_back({tri_key(g, from, to, p), idx});
      }
  // Lexicographic enumeration emits keys in increasing order already.
  auto find = [&](int from, int to, int p) {
    auto key = tri_key(g, from, to, p);
    auto it = std::lower_bound(
        ag.lookup_.begin(), ag.lookup_.end(), key,
        [](const auto& e, std::int64_t k) { return e.first < k; });
    return it->second;
  };
  for (int obj = 0; obj < g.n_arrows(); ++obj)
    b.set_identity(obj, find(obj, obj, g.identity(g.src(obj))));
  for (int m = 0; m < static_cast<int>(ag.tris_.size()); ++m) {
    const auto& t = ag.tris_[m];
    b.set_inverse(m, find(t.to, t.from, g.inverse(t.p)));
  }
  // Compose via the middle object: m2 = (t, u, p2) after m1 = (s, t, p1).
  std::vector<std::vector<int>> by_from(g.n_arrows());
  for (int m = 0; m < static_cast<int>(ag.tris_.size()); ++m)
    by_from[ag.tris_[m].from].push_back(m);
  for (int m1 = 0; m1 < static_cast<int>(ag.tris_.size()); ++m1) {
    const auto& t1 = ag.tris_[m1];
    for (int m2 : by_from[t1.to]) {
      const auto& t2 = ag.tris_[m2];
      b.set_compose(m2, m1, find(t1.from, t2.to, g.compose(t2.p, t1.p)));
    }
  }
  ag.total = b.build();

  std::vector<int> f0_obj(g.n_arrows()), f1_obj(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) {
    f0_obj[a] = g.src(a);
    f1_obj[a] = g.tgt(a);
  }
  std::vector<int> f0_arr(ag.tris_.size()), f1_arr(ag.tris_.size());
  for (int m = 0; m < static_cast<int>(ag.tris_.size()); ++m) {
    f0_arr[m] = ag.tris_[m].p;
    f1_arr[m] = ag.q_of(m);
  }
  ag.face0 = GroupoidMap::trusted(ag.total, x, f0_obj, f0_arr);
  ag.face1 = GroupoidMap::trusted(ag.total, x, std::move(f1_obj),
                                  std::move(f1_arr));
  std::vector<int> d_obj(g.n_objects()), d_arr(g.n_arrows());
  for (int o = 0; o < g.n_objects(); ++o) d_obj[o] = g.identity(o);
  for (int a = 0; a < g.n_arrows(); ++a)
    d_arr[a] = ag.arrow_of(g.identity(g.src(a)), g.identity(g.tgt(a)), a);
  ag.degen = GroupoidMap::trusted(x, ag.total, std::move(d_obj),
                                  std::move(d_arr));
  return ag;
}

const ArrowGroupoid& arrow_groupoid(const Gpd& x) {
  static std::unordered_map<std::uint64_t,
                            std::vector<std::shared_ptr<ArrowGroupoid>>>
      cache;
  auto& bucket = cache[x->table_hash()];
  for (const auto& e : bucket)
    if (same_gpd(e->base, x)) return *e;
  bucket.push_back(std::make_shared<ArrowGroupoid>(make_arrow_groupoid(x)));
  return *bucket.back();
}

Cocylinder groupoid_cocylinder() {
  Cocylinder c;
  c.act_obj = [](const Gpd& x) { return arrow_groupoid(x).total; };
  c.act_map = [](const GroupoidMap& f) {
    const auto& src = arrow_groupoid(f.dom());
    const auto& dst = arrow_groupoid(f.cod());
    std::vector<int> obj(src.total->n_objects());
    for (int a = 0; a < src.total->n_objects(); ++a) obj[a] = f.on_arrow(a);
    std::vector<int> arr(src.total->n_arrows());
    for (int m = 0; m < src.total->n_arrows(); ++m) {
      auto t = src.decompose(m);
      arr[m] = dst.arrow_of(f.on_arrow(t.from), f.on_arrow(t.to),
                            f.on_arrow(t.p));
    }
    return GroupoidMap::trusted(src.total, dst.total, std::move(obj),
                                std::move(arr));
  };
  c.face0 = [](const Gpd& x) { return arrow_groupoid(x).face0; };
  c.face1 = [](const Gpd& x) { return arrow_groupoid(x).face1; };
  c.degen = [](const Gpd& x) { return arrow_groupoid(x).degen; };
  return c;
}

Cocylinder degenerate_cocylinder() {
  Cocylinder c;
  c.act_obj = [](const Gpd& x) { return x; };
  c.act_map = [](const GroupoidMap& f) { return f; };
  c.face0 = [](const Gpd& x) { return GroupoidMap::identity(x); };
  c.face1 = [](const Gpd& x) { return GroupoidMap::identity(x); };
  c.degen = [](const Gpd& x) { return GroupoidMap::identity(x); };
  return c;
}

RelCocyl rel_cocyl(const Cocylinder& c, const SliceObject& a) {
  RelCocyl r;
  r.of = a;
  const Gpd& base = a.base();
  auto ca = c.act_map(a.anchor);        // C(A) -> C(Γ)
  auto dg = c.degen(base);              // Γ -> C(Γ)
  r.pb = Pullback::make(dg, ca);
  r.object = SliceObject{r.pb.proj1()};
  r.face0 = SliceMap::make(r.object, a,
                           c.face0(a.total()).after(r.pb.proj2()));
  r.face1 = SliceMap::make(r.object, a,
                           c.face1(a.total()).after(r.pb.proj2()));
  r.degen = SliceMap::make(
      a, r.object, r.pb.mediate(a.anchor, c.degen(a.total())));
  return r;
}

SliceMap rel_cocyl_map(const Cocylinder& c, const RelCocyl& sc,
                       const RelCocyl& dc, const SliceMap& f) {
  if (!same_gpd(sc.of.total(), f.src.total()) ||
      !(sc.of.anchor == f.src.anchor) ||
      !same_gpd(dc.of.total(), f.dst.total()) ||
      !(dc.of.anchor == f.dst.anchor))
    throw PreconditionError(
        "rel_cocyl_map: cylinders do not match the ends of the map");
  auto cf = c.act_map(f.map);  // C(A) -> C(B)
  auto m = dc.pb.mediate(sc.object.anchor, cf.after(sc.pb.proj2()));
  return SliceMap::make(sc.object, dc.object, m);
}

Homotopy Homotopy::make(const RelCocyl& cyl, const SliceMap& f,
                        const SliceMap& g, SliceMap h) {
  if (!same_gpd(h.dst.total(), cyl.object.total()))
    throw PreconditionError("homotopy does not land in the given cylinder");
  if (!(cyl.face0.map.after(h.map) == f.map))
    throw LawViolation("homotopy source face does not restrict to f");
  if (!(cyl.face1.map.after(h.map) == g.map))
    throw LawViolation("homotopy target face does not restrict to g");
  return Homotopy{std::move(h)};
}

LeibnizFace leibniz_face0(const Cocylinder& c, const SliceMap& f) {
  LeibnizFace lf;
  lf.src_cyl = rel_cocyl(c, f.src);
  lf.dst_cyl = rel_cocyl(c, f.dst);
  lf.cocyl_map = rel_cocyl_map(c, lf.src_cyl, lf.dst_cyl, f);
  lf.codomain_pb = Pullback::make(f.map, lf.dst_cyl.face0.map);
  lf.codomain =
      SliceObject{f.src.anchor.after(lf.codomain_pb.proj1())};
  lf.map = SliceMap::make(
      lf.src_cyl.object, lf.codomain,
      lf.codomain_pb.mediate(lf.src_cyl.face0.map, lf.cocyl_map.map));
  return lf;
}

LeibnizBoundary leibniz_boundary(const Cocylinder& c, const SliceMap& g) {
  LeibnizBoundary lb;
  lb.src_cyl = rel_cocyl(c, g.src);
  lb.dst_cyl = rel_cocyl(c, g.dst);
  lb.cocyl_map = rel_cocyl_map(c, lb.src_cyl, lb.dst_cyl, g);
  lb.pair_src = Pullback::make(g.src.anchor, g.src.anchor);
  lb.pair_dst = Pullback::make(g.dst.anchor, g.dst.anchor);
  lb.bdy_src =
      lb.pair_src.mediate(lb.src_cyl.face0.map, lb.src_cyl.face1.map);
  lb.bdy_dst =
      lb.pair_dst.mediate(lb.dst_cyl.face0.map, lb.dst_cyl.face1.map);
  lb.prod_map = lb.pair_dst.mediate(g.map.after(lb.pair_src.proj1()),
                                    g.map.after(lb.pair_src.proj2()));
  lb.codomain_pb = Pullback::make(lb.prod_map, lb.bdy_dst);
  lb.codomain = SliceObject{g.src.anchor.after(
      lb.pair_src.proj1().after(lb.codomain_pb.proj1()))};
  lb.map = SliceMap::make(lb.src_cyl.object, lb.codomain,
                          lb.codomain_pb.mediate(lb.bdy_src, lb.cocyl_map.map));
  return lb;
}

}  // namespace forge
