#include "forge/instances.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "forge/errors.hpp"

namespace forge {

namespace {

// The trivial right structure every map carries in the degenerate system:
// middle object the domain, retraction the identity.  Shared by the
// structure search and both Leibniz assignments.
RMapStruct trivial_rstruct(const SliceMap& f) {
  auto left =
      SliceMap::make(f.src, f.src, GroupoidMap::identity(f.src.total()));
  return RMapStruct::make(Factorization::make(f, std::move(left), f),
                          GroupoidMap::identity(f.src.total()));
}

}  // namespace

// --- degenerate instance ----------------------------------------------------

AwfsInstance degenerate_instance(const Gpd& base) {
  AwfsInstance inst;
  inst.name = "degenerate";
  inst.base = base;
  inst.cocyl = degenerate_cocylinder();
  auto factor = [base](const SliceMap& f) {
    if (!same_gpd(f.base(), base))
      throw PreconditionError("degenerate instance: map over a different base");
    auto left =
        SliceMap::make(f.src, f.src, GroupoidMap::identity(f.src.total()));
    return Factorization::make(f, std::move(left), f);
  };
  inst.factor = factor;
  inst.k_on_square = [](const SliceSquare& sq) { return sq.top; };
  inst.comult = [](const SliceMap& f) {
    return GroupoidMap::identity(f.src.total());
  };
  inst.mult = [](const SliceMap& f) {
    return GroupoidMap::identity(f.src.total());
  };
  inst.find_rstruct = [](const SliceMap& f) -> std::optional<RMapStruct> {
    return trivial_rstruct(f);
  };
  inst.axiom_lface = [](const RMapStruct& rf) {
    auto lf = leibniz_face0(degenerate_cocylinder(), rf.of);
    return trivial_rstruct(lf.map.globalized());
  };
  inst.axiom_lbdy = [](const RMapStruct& rf) {
    auto lb = leibniz_boundary(degenerate_cocylinder(), rf.of);
    return trivial_rstruct(lb.map);
  };
  return inst;
}

// --- path-space instance ----------------------------------------------------

namespace {

// Decoded point of the middle object of f : X -> Y — a point of X and a
// fibrewise path out of its image, sitting over a base point.
struct MidObj {
  int x;      // X object
  int gamma;  // base object under it
  int beta;   // Y arrow with source f(x), vertical over gamma
};

// Decoded arrow of the middle object — an X arrow and the Y square
// transporting the attached paths, sitting over a base arrow.
struct MidArr {
  int xi;         // X arrow
  int g;          // base arrow under it
  int b1, b2, p;  // Y square from b1 to b2 with p joining their sources
};

// Everything the path-space factorization of one slice map needs: the
// fibrewise cocylinder of the codomain, the chosen pullback forming the
// middle object, and the codecs between pullback indices and decoded form.
struct GFactorData {
  SliceMap f;
  std::shared_ptr<const RelCocyl> ycyl;  // cylinder of f.dst
  const ArrowGroupoid* ag = nullptr;     // arrow groupoid of the codomain
  Pullback kpb;                          // Pb(f, near face of the cylinder)
  Factorization fac;

  MidObj dec_obj(int k) const {
    auto [x, c] = kpb.object_pair(k);
    auto [gamma, beta] = ycyl->pb.object_pair(c);
    return {x, gamma, ag->base_arrow_of_obj(beta)};
  }
  MidArr dec_arr(int m) const {
    auto [xi, mc] = kpb.arrow_pair(m);
    auto [g, sq] = ycyl->pb.arrow_pair(mc);
    auto t = ag->decompose(sq);
    return {xi, g, t.from, t.to, t.p};
  }
  // Both encoders revalidate the pullback matching conditions, so malformed
  // components fail loudly instead of producing a wrong index.
  int enc_obj(int x, int gamma, int beta) const {
    return kpb.object_of_pair(
        x, ycyl->pb.object_of_pair(gamma, ag->obj_of_arrow(beta)));
  }
  int enc_arr(int xi, int g, int b1, int b2, int p) const {
    return kpb.arrow_of_pair(
        xi, ycyl->pb.arrow_of_pair(g, ag->arrow_of(b1, b2, p)));
  }
};

// Per-base caches: fibrewise cocylinders per slice object and factorization
// data per slice map.  Not thread-safe.
struct GState {
  Gpd base;
  Cocylinder cyl = groupoid_cocylinder();
  std::unordered_map<std::uint64_t, std::vector<std::shared_ptr<const RelCocyl>>>
      cyls;
  std::unordered_map<std::uint64_t, std::vector<std::shared_ptr<GFactorData>>>
      facs;

  const std::shared_ptr<const RelCocyl>& cyl_of(const SliceObject& a) {
    auto& bucket = cyls[a.anchor.table_hash()];
    for (const auto& e : bucket)
      if (e->of.anchor == a.anchor) return e;
    bucket.push_back(std::make_shared<RelCocyl>(rel_cocyl(cyl, a)));
    return bucket.back();
  }

  const GFactorData& data_of(const SliceMap& f);
};

const GFactorData& GState::data_of(const SliceMap& f) {
  if (!same_gpd(f.base(), base))
    throw PreconditionError("path-space instance: map over a different base");
  auto& bucket = facs[f.map.table_hash()];
  for (const auto& e : bucket)
    if (e->f.map == f.map && e->f.src.anchor == f.src.anchor &&
        e->f.dst.anchor == f.dst.anchor)
      return *e;

  // Pre-flight size check.  The middle object pairs each domain point with a
  // fibrewise path out of its image, so its size is multiplicative in the
  // fibre breadth of the codomain and compounds under repeated factorization:
  // two rounds on a map whose fibres carry even one non-identity loop already
  // produce millions of arrows.  Count the middle exactly (cheap) and refuse
  // to materialize anything beyond the cap rather than exhausting memory.
  {
    const auto& X = *f.src.total();
    const auto& Y = *f.dst.total();
    const auto& B = *f.base();
    std::vector<long> vout(Y.n_objects(), 0);
    for (int b = 0; b < Y.n_arrows(); ++b) {
      int g = f.dst.anchor.on_arrow(b);
      if (B.identity(B.src(g)) == g) vout[Y.src(b)]++;
    }
    long objs = 0, arrs = 0;
    for (int x = 0; x < X.n_objects(); ++x) objs += vout[f.map.on_object(x)];
    for (int xi = 0; xi < X.n_arrows(); ++xi) {
      int p = f.map.on_arrow(xi);
      arrs += vout[Y.src(p)] * vout[Y.tgt(p)];
    }
    long cap = 200000;
    if (const char* e = std::getenv("AWFS_FORGE_FACTOR_CAP")) {
      long v = std::atol(e);
      if (v > 0) cap = v;
    }
    long size = std::max(objs, arrs);
    if (size > cap)
      throw CapExceeded("path-space factorization middle would have " +
                            std::to_string(objs) + " objects and " +
                            std::to_string(arrs) +
                            " arrows, beyond the enumeration cap",
                        size, cap);
  }

  auto d = std::make_shared<GFactorData>();
  d->f = f;
  d->ycyl = cyl_of(f.dst);
  d->ag = &arrow_groupoid(f.dst.total());
  d->kpb = Pullback::make(f.map, d->ycyl->face0.map);
  SliceObject mid{d->ycyl->object.anchor.after(d->kpb.proj2())};

  const auto& X = *f.src.total();
  const auto& Y = *f.dst.total();
  const auto& KT = *d->kpb.total();

  // Left part: attach the constant path at the image.
  std::vector<int> lobj(X.n_objects()), larr(X.n_arrows());
  for (int x = 0; x < X.n_objects(); ++x) {
    int fx = f.map.on_object(x);
    lobj[x] = d->enc_obj(x, f.src.anchor.on_object(x), Y.identity(fx));
  }
  for (int xi = 0; xi < X.n_arrows(); ++xi) {
    int fxi = f.map.on_arrow(xi);
    larr[xi] = d->enc_arr(xi, f.src.anchor.on_arrow(xi),
                          Y.identity(Y.src(fxi)), Y.identity(Y.tgt(fxi)), fxi);
  }
  auto left = SliceMap::make(
      f.src, mid, GroupoidMap::make(f.src.total(), d->kpb.total(), lobj, larr));

  // Right part: evaluate the far end of the path.
  std::vector<int> robj(KT.n_objects()), rarr(KT.n_arrows());
  for (int k = 0; k < KT.n_objects(); ++k)
    robj[k] = Y.tgt(d->dec_obj(k).beta);
  for (int m = 0; m < KT.n_arrows(); ++m) {
    auto a = d->dec_arr(m);
    rarr[m] = Y.compose(a.b2, Y.compose(a.p, Y.inverse(a.b1)));
  }
  auto right = SliceMap::make(
      mid, f.dst, GroupoidMap::make(d->kpb.total(), f.dst.total(), robj, rarr));

  d->fac = Factorization::make(f, std::move(left), std::move(right));
  bucket.push_back(std::move(d));
  return *bucket.back();
}

// Builds the instance over st->base.  `sibling` supplies the (cache-shared)
// state for any other base; the face assignment needs it to produce global
// structure over the point.
AwfsInstance instance_from(std::shared_ptr<GState> st,
                           std::function<std::shared_ptr<GState>(const Gpd&)>
                               sibling);

AwfsInstance instance_from(std::shared_ptr<GState> st,
                           std::function<std::shared_ptr<GState>(const Gpd&)>
                               sibling) {
  AwfsInstance inst;
  inst.name = "groupoid";
  inst.base = st->base;
  inst.cocyl = st->cyl;

  inst.factor = [st](const SliceMap& f) { return st->data_of(f).fac; };

  inst.k_on_square = [st](const SliceSquare& sq) {
    const auto& df = st->data_of(sq.from);
    const auto& dt = st->data_of(sq.to);
    const auto& KF = *df.kpb.total();
    std::vector<int> obj(KF.n_objects()), arr(KF.n_arrows());
    for (int k = 0; k < KF.n_objects(); ++k) {
      auto o = df.dec_obj(k);
      obj[k] = dt.enc_obj(sq.top.on_object(o.x), o.gamma,
                          sq.bottom.on_arrow(o.beta));
    }
    for (int m = 0; m < KF.n_arrows(); ++m) {
      auto a = df.dec_arr(m);
      arr[m] = dt.enc_arr(sq.top.on_arrow(a.xi), a.g,
                          sq.bottom.on_arrow(a.b1), sq.bottom.on_arrow(a.b2),
                          sq.bottom.on_arrow(a.p));
    }
    return GroupoidMap::make(df.kpb.total(), dt.kpb.total(), std::move(obj),
                             std::move(arr));
  };

  inst.comult = [st](const SliceMap& f) {
    const auto& d = st->data_of(f);
    const auto& dl = st->data_of(d.fac.left);
    const auto& X = *f.src.total();
    const auto& Y = *f.dst.total();
    const auto& G = *f.base();
    const auto& KT = *d.kpb.total();
    // The connecting arrow of the middle from the constant path at x to
    // (x, beta): the square from the identity at f(x) to beta whose source
    // edge is an identity.
    auto connect = [&](int k) {
      auto o = d.dec_obj(k);
      int idfx = Y.identity(Y.src(o.beta));
      return d.enc_arr(X.identity(o.x), G.identity(o.gamma), idfx, o.beta,
                       idfx);
    };
    std::vector<int> obj(KT.n_objects()), arr(KT.n_arrows());
    for (int k = 0; k < KT.n_objects(); ++k) {
      auto o = d.dec_obj(k);
      obj[k] = dl.enc_obj(o.x, o.gamma, connect(k));
    }
    for (int m = 0; m < KT.n_arrows(); ++m) {
      auto a = d.dec_arr(m);
      arr[m] = dl.enc_arr(a.xi, a.g, connect(KT.src(m)), connect(KT.tgt(m)),
                          d.fac.left.map.on_arrow(a.xi));
    }
    return GroupoidMap::make(d.kpb.total(), dl.kpb.total(), std::move(obj),
                             std::move(arr));
  };

  inst.mult = [st](const SliceMap& f) {
    const auto& d = st->data_of(f);
    const auto& dr = st->data_of(d.fac.right);
    const auto& Y = *f.dst.total();
    const auto& KR = *dr.kpb.total();
    std::vector<int> obj(KR.n_objects()), arr(KR.n_arrows());
    for (int k = 0; k < KR.n_objects(); ++k) {
      auto o2 = dr.dec_obj(k);  // a middle point with a further path
      auto o = d.dec_obj(o2.x);
      obj[k] = d.enc_obj(o.x, o.gamma, Y.compose(o2.beta, o.beta));
    }
    for (int m = 0; m < KR.n_arrows(); ++m) {
      auto a2 = dr.dec_arr(m);
      auto a = d.dec_arr(a2.xi);
      arr[m] = d.enc_arr(a.xi, a.g, Y.compose(a2.b1, a.b1),
                         Y.compose(a2.b2, a.b2), a.p);
    }
    return GroupoidMap::make(dr.kpb.total(), d.kpb.total(), std::move(obj),
                             std::move(arr));
  };

  inst.find_rstruct =
      [st](const SliceMap& f) -> std::optional<RMapStruct> {
    const auto& d = st->data_of(f);
    const auto& X = *f.src.total();
    const auto& Y = *f.dst.total();
    const auto& KT = *d.kpb.total();
    // A retraction is determined by a normalized choice of path lifts:
    // for each middle point pick an X-arrow out of x lying over beta, the
    // identity when beta is one.  Identities get the identity lift; other
    // paths the least lift in arrow order; if some path has none, f carries
    // no right structure.
    std::vector<int> theta(KT.n_objects(), -1);
    for (int k = 0; k < KT.n_objects(); ++k) {
      auto o = d.dec_obj(k);
      if (o.beta == Y.identity(Y.src(o.beta))) {
        theta[k] = X.identity(o.x);
        continue;
      }
      int found = -1;
      for (int t : X.arrows_from(o.x))
        if (f.map.on_arrow(t) == o.beta) {
          found = t;
          break;
        }
      if (found < 0) return std::nullopt;
      theta[k] = found;
    }
    // The action on arrows is forced by conjugation with the chosen lifts.
    std::vector<int> obj(KT.n_objects()), arr(KT.n_arrows());
    for (int k = 0; k < KT.n_objects(); ++k) obj[k] = X.tgt(theta[k]);
    for (int m = 0; m < KT.n_arrows(); ++m) {
      auto a = d.dec_arr(m);
      arr[m] = X.compose(theta[KT.tgt(m)],
                         X.compose(a.xi, X.inverse(theta[KT.src(m)])));
    }
    auto p = GroupoidMap::make(d.kpb.total(), f.src.total(), std::move(obj),
                               std::move(arr));
    return RMapStruct::make(d.fac, std::move(p));
  };

  // Both Leibniz comparisons of a cloven isofibration are themselves cloven
  // isofibrations — the face comparison globally, the boundary comparison
  // fibrewise — so the normalized structure search equips them directly.
  auto search = inst.find_rstruct;
  inst.axiom_lface = [st, sibling](const RMapStruct& rf) {
    auto lf = leibniz_face0(st->cyl, rf.of);
    auto global = instance_from(sibling(one_gpd()), sibling);
    auto s = global.find_rstruct(lf.map.globalized());
    if (!s)
      throw LawViolation(
          "face comparison admits no global path-lift choice; the input map "
          "is not a cloven isofibration");
    return *s;
  };
  inst.axiom_lbdy = [st, search](const RMapStruct& rf) {
    auto lb = leibniz_boundary(st->cyl, rf.of);
    auto s = search(lb.map);
    if (!s)
      throw LawViolation("boundary comparison admits no path-lift choice");
    return *s;
  };

  return inst;
}

// Shared per-base states of one family, so reindexing sees the same caches
// as the per-base instances.
struct GFamily {
  std::unordered_map<std::uint64_t, std::vector<std::shared_ptr<GState>>>
      states;

  std::shared_ptr<GState> state_of(const Gpd& b) {
    auto& bucket = states[b->table_hash()];
    for (const auto& st : bucket)
      if (same_gpd(st->base, b)) return st;
    auto st = std::make_shared<GState>();
    st->base = b;
    bucket.push_back(st);
    return st;
  }
};

}  // namespace

AwfsInstance groupoid_instance(const Gpd& base) {
  auto own = std::make_shared<GFamily>();
  auto sibling = [own](const Gpd& b) { return own->state_of(b); };
  return instance_from(own->state_of(base), sibling);
}

FibredAwfs degenerate_family() {
  FibredAwfs fam;
  fam.name = "degenerate";
  fam.cocyl = degenerate_cocylinder();
  fam.at = [](const Gpd& b) { return degenerate_instance(b); };
  fam.reindex_iso = [](const GroupoidMap& sigma, const SliceMap& f) {
    // The middle of the reindexed map and the reindexed middle are the same
    // literal chosen pullback, so the comparison is the identity.
    auto rd = reindex_slice_map(sigma, f);
    return CanonIso::identity(rd.src.object.total());
  };
  return fam;
}

FibredAwfs groupoid_family() {
  auto gfam = std::make_shared<GFamily>();
  FibredAwfs fam;
  fam.name = "groupoid";
  fam.cocyl = groupoid_cocylinder();
  fam.at = [gfam](const Gpd& b) {
    auto sibling = [gfam](const Gpd& c) { return gfam->state_of(c); };
    return instance_from(gfam->state_of(b), sibling);
  };
  fam.reindex_iso = [gfam](const GroupoidMap& sigma, const SliceMap& f) {
    if (!same_gpd(f.base(), sigma.cod()))
      throw PreconditionError(
          "reindexing comparison: functor does not land in the map's base");
    auto stG = gfam->state_of(sigma.cod());
    auto stD = gfam->state_of(sigma.dom());
    const auto& dG = stG->data_of(f);
    auto rd = reindex_slice_map(sigma, f);
    const auto& dD = stD->data_of(rd.map);
    auto rdK = reindex_slice(sigma, dG.fac.mid);
    const auto& D = *sigma.dom();

    // Forward: strip the reindexing pairs off every component of a point of
    // the downstairs middle, re-encode upstairs, and mediate into the chosen
    // pullback of the original middle.
    const auto& KD = *dD.kpb.total();
    std::vector<int> uo(KD.n_objects()), ua(KD.n_arrows());
    for (int k = 0; k < KD.n_objects(); ++k) {
      auto o = dD.dec_obj(k);
      uo[k] = dG.enc_obj(rd.src.pb.object_pair(o.x).first,
                         sigma.on_object(o.gamma),
                         rd.dst.pb.arrow_pair(o.beta).first);
    }
    for (int m = 0; m < KD.n_arrows(); ++m) {
      auto a = dD.dec_arr(m);
      ua[m] = dG.enc_arr(rd.src.pb.arrow_pair(a.xi).first,
                         sigma.on_arrow(a.g),
                         rd.dst.pb.arrow_pair(a.b1).first,
                         rd.dst.pb.arrow_pair(a.b2).first,
                         rd.dst.pb.arrow_pair(a.p).first);
    }
    auto up = GroupoidMap::make(dD.kpb.total(), dG.kpb.total(), std::move(uo),
                                std::move(ua));
    auto fwd = rdK.pb.mediate(up, dD.fac.mid.anchor);

    // Backward: pair every upstairs component with the witnessing object or
    // arrow downstairs and re-encode.
    const auto& KR = *rdK.object.total();
    std::vector<int> bo(KR.n_objects()), ba(KR.n_arrows());
    for (int k = 0; k < KR.n_objects(); ++k) {
      auto [kg, delta] = rdK.pb.object_pair(k);
      auto og = dG.dec_obj(kg);
      bo[k] = dD.enc_obj(rd.src.pb.object_of_pair(og.x, delta), delta,
                         rd.dst.pb.arrow_of_pair(og.beta, D.identity(delta)));
    }
    for (int m = 0; m < KR.n_arrows(); ++m) {
      auto [mg, dd] = rdK.pb.arrow_pair(m);
      auto a = dG.dec_arr(mg);
      ba[m] = dD.enc_arr(
          rd.src.pb.arrow_of_pair(a.xi, dd), dd,
          rd.dst.pb.arrow_of_pair(a.b1, D.identity(D.src(dd))),
          rd.dst.pb.arrow_of_pair(a.b2, D.identity(D.tgt(dd))),
          rd.dst.pb.arrow_of_pair(a.p, dd));
    }
    auto bwd = GroupoidMap::make(rdK.object.total(), dD.kpb.total(),
                                 std::move(bo), std::move(ba));
    return CanonIso::make(std::move(fwd), std::move(bwd));
  };
  return fam;
}

FibredAwfs family_by_name(const std::string& name) {
  if (name == "degenerate") return degenerate_family();
  if (name == "groupoid") return groupoid_family();
  throw MalformedInput("unknown instance family: " + name);
}

}  // namespace forge
