#include "forge/awfs.hpp"

#include <doctest.h>

#include <vector>

#include "forge/errors.hpp"
#include "forge/instances.hpp"
#include "support.hpp"

using namespace forge;

namespace {

// The inclusion of the 0 endpoint into the interval, as a map over the point.
SliceMap endpoint_inclusion() {
  auto d0 = GroupoidMap::make(one_gpd(), ivl(), {0}, {kIvlId0});
  return SliceMap::make(over_point(one_gpd()), over_point(ivl()), d0);
}

SliceMap global_map(const Gpd& dom, const Gpd& cod, std::vector<int> obj,
                    std::vector<int> arr) {
  auto m = GroupoidMap::make(dom, cod, std::move(obj), std::move(arr));
  return SliceMap::make(over_point(dom), over_point(cod), m);
}

}  // namespace

TEST_CASE("trivial factorization: identities everywhere") {
  auto inst = degenerate_instance(one_gpd());
  auto d0 = endpoint_inclusion();

  auto fac = inst.factor(d0);
  CHECK(fac.left.map.is_identity());
  CHECK(fac.mid.anchor == d0.src.anchor);
  CHECK(fac.right.map == d0.map);
  CHECK(inst.comult(d0).is_identity());
  CHECK(inst.mult(d0).is_identity());

  SUBCASE("free structures validate") {
    CHECK_NOTHROW(free_left(inst, d0));
    CHECK_NOTHROW(free_right(inst, d0));
  }

  SUBCASE("every map carries right structure") {
    auto rs = inst.find_rstruct(d0);
    REQUIRE(rs.has_value());
    CHECK(rs->p.is_identity());
  }

  SUBCASE("left structure exists exactly for isomorphisms") {
    // The flip of the interval is invertible; its inverse is a section
    // satisfying both laws.
    auto flip = GroupoidMap::make(ivl(), ivl(), {1, 0},
                                  {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
    auto fslice = SliceMap::make(over_point(ivl()), over_point(ivl()), flip);
    CHECK_NOTHROW(LMapStruct::make(inst, fslice, flip.inverse()));

    // The endpoint inclusion has a retraction but no section of its right
    // part: collapsing the interval is not inverse to including the point.
    CHECK_THROWS_AS(LMapStruct::make(inst, d0, bang(ivl())), LawViolation);
  }

  SUBCASE("maps over the wrong base are rejected") {
    auto other = SliceMap::make(SliceObject{GroupoidMap::identity(bz2())},
                                SliceObject{GroupoidMap::identity(bz2())},
                                GroupoidMap::identity(bz2()));
    CHECK_THROWS_AS(inst.factor(other), PreconditionError);
  }
}

TEST_CASE("path-space factorization of the endpoint inclusion") {
  auto inst = groupoid_instance(one_gpd());
  auto d0 = endpoint_inclusion();
  auto fac = inst.factor(d0);

  // Points of the middle pair the point with an interval arrow out of 0:
  // the identity and the walking arrow.  All four squares between them have
  // an identity between the sources.
  CHECK((*fac.mid.total()).n_objects() == 2);
  CHECK((*fac.mid.total()).n_arrows() == 4);

  SUBCASE("left and right ends behave as insertion and evaluation") {
    CHECK(fac.right.map.after(fac.left.map) == d0.map);
    // The left part lands on the constant-path point, whose far end is 0.
    CHECK(fac.right.map.on_object(fac.left.map.on_object(0)) == 0);
    // Both endpoint values 0 and 1 are hit by the evaluation.
    std::vector<int> hit(2, 0);
    for (int k = 0; k < 2; ++k) hit[fac.right.map.on_object(k)] = 1;
    CHECK(hit[0] == 1);
    CHECK(hit[1] == 1);
  }

  SUBCASE("free structures validate") {
    CHECK_NOTHROW(free_left(inst, d0));
    CHECK_NOTHROW(free_right(inst, d0));
  }

  SUBCASE("factoring a projection-like map keeps the loop") {
    auto b = global_map(bz2(), one_gpd(), {0}, {0, 0});
    auto bfac = inst.factor(b);
    CHECK((*bfac.mid.total()).n_objects() == 1);
    CHECK((*bfac.mid.total()).n_arrows() == 2);
  }
}

TEST_CASE("left structure on the endpoint inclusion is unique") {
  auto inst = groupoid_instance(one_gpd());
  auto d0 = endpoint_inclusion();
  auto fac = inst.factor(d0);

  // Independent oracle: enumerate every functor from the interval into the
  // middle object and keep those satisfying both structure laws.
  std::vector<GroupoidMap> sections;
  for (const auto& s : testing::enumerate_functors(ivl(), fac.mid.total())) {
    if (s.after(d0.map) == fac.left.map &&
        fac.right.map.after(s) == GroupoidMap::identity(ivl()))
      sections.push_back(s);
  }
  REQUIRE(sections.size() == 1);

  const auto& s = sections.front();
  CHECK_NOTHROW(LMapStruct::make(inst, d0, s));
  // 0 goes to the constant path, 1 to the far end of the walking arrow.
  CHECK(s.on_object(0) == fac.left.map.on_object(0));
  CHECK(s.on_object(1) != s.on_object(0));
  CHECK(fac.right.map.on_object(s.on_object(1)) == 1);

  // Any other functor into the middle violates a law.
  for (const auto& t : testing::enumerate_functors(ivl(), fac.mid.total())) {
    if (t == s) continue;
    CHECK_THROWS_AS(LMapStruct::make(inst, d0, t), LawViolation);
  }
}

TEST_CASE("path lifting search") {
  auto inst = groupoid_instance(one_gpd());

  SUBCASE("succeeds on a map with full lifts") {
    auto b = global_map(bz2(), one_gpd(), {0}, {0, 0});
    auto rs = inst.find_rstruct(b);
    REQUIRE(rs.has_value());

    // Breaking the retraction while staying a functor is caught.
    auto collapse =
        GroupoidMap::make(rs->p.dom(), bz2(),
                          std::vector<int>((*rs->p.dom()).n_objects(), 0),
                          std::vector<int>((*rs->p.dom()).n_arrows(), kBz2E));
    CHECK_THROWS_AS(RMapStruct::make(rs->fac, collapse), LawViolation);
  }

  SUBCASE("fails on the endpoint inclusion") {
    // The walking arrow has no lift through the single point, so the search
    // reports that no right structure exists.
    CHECK_FALSE(inst.find_rstruct(endpoint_inclusion()).has_value());
  }

  SUBCASE("the trivial instance disagrees: it always succeeds") {
    auto deg = degenerate_instance(one_gpd());
    CHECK(deg.find_rstruct(endpoint_inclusion()).has_value());
  }

  SUBCASE("succeeds fibrewise over a nontrivial base") {
    auto ginst = groupoid_instance(bz2());
    SliceObject self{GroupoidMap::identity(bz2())};
    auto idm = SliceMap::make(self, self, GroupoidMap::identity(bz2()));
    auto fac = ginst.factor(idm);
    CHECK((*fac.mid.total()).n_objects() == 1);
    CHECK((*fac.mid.total()).n_arrows() == 2);
    CHECK(ginst.find_rstruct(idm).has_value());
  }
}

TEST_CASE("canonical filler against the exhaustive oracle") {
  auto inst = groupoid_instance(one_gpd());
  auto d0 = endpoint_inclusion();
  auto b = global_map(bz2(), one_gpd(), {0}, {0, 0});

  auto top = GroupoidMap::make(one_gpd(), bz2(), {0}, {kBz2E});
  auto bottom = bang(ivl());
  Square sq{.top = top, .bottom = bottom, .left = d0.map, .right = b.map};

  // Exhaustive count: a lift sends both objects to the loop's object and is
  // free exactly on the walking arrow, which can go to either group element.
  auto lifts0 = brute_force_lifts(sq, 0);
  auto lifts1 = brute_force_lifts(sq, 1);
  REQUIRE(lifts0.size() == 2);
  REQUIRE(lifts1.size() == 2);
  CHECK(lifts0[0] == lifts1[0]);
  CHECK(lifts0[1] == lifts1[1]);
  CHECK(lifts0[0].on_arrow(kIvlU) == kBz2E);
  CHECK(lifts0[1].on_arrow(kIvlU) == kBz2T);

  // The canonical filler is one of them, and the normalized lift choice
  // picks the identity image.
  auto fac = inst.factor(d0);
  std::optional<LMapStruct> lm;
  for (const auto& s : testing::enumerate_functors(ivl(), fac.mid.total())) {
    try {
      lm = LMapStruct::make(inst, d0, s);
      break;
    } catch (const Error&) {
    }
  }
  REQUIRE(lm.has_value());
  auto rf = inst.find_rstruct(b);
  REQUIRE(rf.has_value());
  auto j = solve_lift(inst, *lm, *rf, top, bottom);
  CHECK(j == lifts0[0]);
}

TEST_CASE("structure composition and pullback") {
  auto inst = groupoid_instance(one_gpd());

  // A small tower of projections over the point: X = IVL x BZ2 -> IVL -> ONE.
  auto xp = product(ivl(), bz2());
  SliceObject xobj = over_point(xp.total());
  auto f = SliceMap::make(xobj, over_point(ivl()), xp.proj1());
  auto g = SliceMap::make(over_point(ivl()), over_point(one_gpd()),
                          bang(ivl()));

  auto rf = inst.find_rstruct(f);
  auto rg = inst.find_rstruct(g);
  REQUIRE(rf.has_value());
  REQUIRE(rg.has_value());

  SUBCASE("composition yields a validated structure on the composite") {
    auto rgf = rmap_compose(inst, *rg, *rf);
    CHECK(rgf.of.map == g.map.after(f.map));
  }

  SUBCASE("pulling back along the canonical cartesian square") {
    auto fac = inst.factor(f);
    auto pb = Pullback::make(fac.right.map, f.map);
    SliceObject apex{f.src.anchor.after(pb.proj2())};
    auto from = SliceMap::make(apex, fac.mid, pb.proj1());
    auto sq = SliceSquare::make(from, f, pb.proj2(), fac.right.map);
    auto pulled = rmap_pullback(inst, *rf, sq);
    CHECK(pulled.of.map == pb.proj1());
  }
}
