#include "forge/limits.hpp"

#include <algorithm>

namespace forge {

Pullback Pullback::make(GroupoidMap f, GroupoidMap g) {
  if (!same_gpd(f.cod(), g.cod()))
    throw PreconditionError("pullback: cospan legs have different codomains");
  Pullback pb;
  pb.f_ = std::move(f);
  pb.g_ = std::move(g);
  const auto& A = *pb.f_.dom();
  const auto& B = *pb.g_.dom();

  GroupoidBuilder bld;
  pb.obj_by_a_.assign(A.n_objects(), {});
  for (int a = 0; a < A.n_objects(); ++a)
    for (int b = 0; b < B.n_objects(); ++b)
      if (pb.f_.on_object(a) == pb.g_.on_object(b)) {
        int idx = bld.add_object();
        pb.obj_pairs_.push_back({a, b});
        pb.obj_by_a_[a].push_back({b, idx});
      }
  auto obj_at = [&](int a, int b) {
    for (const auto& [bb, idx] : pb.obj_by_a_[a])
      if (bb == b) return idx;
    return -1;
  };
  pb.arr_by_a_.assign(A.n_arrows(), {});
  for (int a = 0; a < A.n_arrows(); ++a)
    for (int b = 0; b < B.n_arrows(); ++b)
      if (pb.f_.on_arrow(a) == pb.g_.on_arrow(b)) {
        int s = obj_at(A.src(a), B.src(b));
        int t = obj_at(A.tgt(a), B.tgt(b));
        int idx = bld.add_arrow(s, t);
        pb.arr_pairs_.push_back({a, b});
        pb.arr_by_a_[a].push_back({b, idx});
      }
  auto arr_at = [&](int a, int b) {
    for (const auto& [bb, idx] : pb.arr_by_a_[a])
      if (bb == b) return idx;
    return -1;
  };
  const int n = static_cast<int>(pb.arr_pairs_.size());
  for (int i = 0; i < static_cast<int>(pb.obj_pairs_.size()); ++i) {
    auto [a, b] = pb.obj_pairs_[i];
    bld.set_identity(i, arr_at(A.identity(a), B.identity(b)));
  }
  for (int i = 0; i < n; ++i) {
    auto [a, b] = pb.arr_pairs_[i];
    bld.set_inverse(i, arr_at(A.inverse(a), B.inverse(b)));
  }
  // Composites componentwise over composable pairs.
  for (int i = 0; i < n; ++i) {
    auto [fa, fb] = pb.arr_pairs_[i];
    for (int ga : A.arrows_from(A.tgt(fa))) {
      auto ca = A.try_compose(ga, fa);
      if (!ca) continue;
      for (const auto& [gb, j] : pb.arr_by_a_[ga]) {
        if (B.src(gb) != B.tgt(fb)) continue;
        auto cb = B.try_compose(gb, fb);
        if (!cb) continue;
        int c = arr_at(*ca, *cb);
        if (c >= 0) bld.set_compose(j, i, c);
      }
    }
  }
  pb.total_ = bld.build();
  std::vector<int> o1(pb.obj_pairs_.size()), o2(pb.obj_pairs_.size());
  std::vector<int> a1(pb.arr_pairs_.size()), a2(pb.arr_pairs_.size());
  for (size_t i = 0; i < pb.obj_pairs_.size(); ++i) {
    o1[i] = pb.obj_pairs_[i].first;
    o2[i] = pb.obj_pairs_[i].second;
  }
  for (size_t i = 0; i < pb.arr_pairs_.size(); ++i) {
    a1[i] = pb.arr_pairs_[i].first;
    a2[i] = pb.arr_pairs_[i].second;
  }
  pb.proj1_ = GroupoidMap::trusted(pb.total_, pb.f_.dom(), std::move(o1),
                                   std::move(a1));
  pb.proj2_ = GroupoidMap::trusted(pb.total_, pb.g_.dom(), std::move(o2),
                                   std::move(a2));
  return pb;
}

int Pullback::object_of_pair(int a_obj, int b_obj) const {
  for (const auto& [b, idx] : obj_by_a_[a_obj])
    if (b == b_obj) return idx;
  throw PreconditionError("pullback: pair is not an object of the total");
}

int Pullback::arrow_of_pair(int a_arr, int b_arr) const {
  for (const auto& [b, idx] : arr_by_a_[a_arr])
    if (b == b_arr) return idx;
  throw PreconditionError("pullback: pair is not an arrow of the total");
}

GroupoidMap Pullback::mediate(const GroupoidMap& to_a,
                              const GroupoidMap& to_b) const {
  if (!same_gpd(to_a.dom(), to_b.dom()))
    throw PreconditionError("mediate: cone legs have different apexes");
  if (!same_gpd(to_a.cod(), f_.dom()) || !same_gpd(to_b.cod(), g_.dom()))
    throw PreconditionError("mediate: cone legs do not hit the cospan feet");
  if (!(f_.after(to_a) == g_.after(to_b)))
    throw PreconditionError("mediate: cone does not commute with the cospan");
  const auto& Z = *to_a.dom();
  std::vector<int> obj(Z.n_objects()), arr(Z.n_arrows());
  for (int z = 0; z < Z.n_objects(); ++z)
    obj[z] = object_of_pair(to_a.on_object(z), to_b.on_object(z));
  for (int z = 0; z < Z.n_arrows(); ++z)
    arr[z] = arrow_of_pair(to_a.on_arrow(z), to_b.on_arrow(z));
  return GroupoidMap::trusted(to_a.dom(), total_, std::move(obj),
                              std::move(arr));
}

Pullback product(const Gpd& a, const Gpd& b) {
  return Pullback::make(bang(a), bang(b));
}

GroupoidMap pairing(const Pullback& pb, const GroupoidMap& u,
                    const GroupoidMap& v) {
  return pb.mediate(u, v);
}

GroupoidMap pullback_comparison(const Square& sq, const Pullback& pb) {
  return pb.mediate(sq.top, sq.left);
}

bool is_pullback_square(const Square& sq) {
  sq.require_commutes("is_pullback_square");
  Pullback pb = Pullback::make(sq.right, sq.bottom);
  return pullback_comparison(sq, pb).is_iso();
}

Reindexed reindex_slice(const GroupoidMap& sigma, const SliceObject& a) {
  if (!same_gpd(sigma.cod(), a.base()))
    throw PreconditionError("reindex_slice: sigma does not hit the base");
  Pullback pb = Pullback::make(a.anchor, sigma);
  SliceObject obj{pb.proj2()};  // anchored over Delta
  Square sq{pb.proj1(), sigma, pb.proj2(), a.anchor};
  sq.require_commutes("reindex_slice");
  return Reindexed{obj, pb.proj1(), sq, pb};
}

ReindexedMap reindex_slice_map(const GroupoidMap& sigma, const SliceMap& f) {
  Reindexed rs = reindex_slice(sigma, f.src);
  Reindexed rd = reindex_slice(sigma, f.dst);
  GroupoidMap u = rd.pb.mediate(f.map.after(rs.to_original), rs.object.anchor);
  SliceMap sm = SliceMap::make(rs.object, rd.object, u);
  return ReindexedMap{std::move(rs), std::move(rd), std::move(sm)};
}

}  // namespace forge
