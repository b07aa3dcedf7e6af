#include <doctest.h>

#include "forge/errors.hpp"
#include "forge/groupoid.hpp"
#include "forge/limits.hpp"
#include "support.hpp"

using namespace forge;

namespace {

GroupoidMap delta0() {
  return GroupoidMap::make(one_gpd(), ivl(), {0}, {kIvlId0});
}
GroupoidMap delta1() {
  return GroupoidMap::make(one_gpd(), ivl(), {1}, {kIvlId1});
}
GroupoidMap incl_d2_ivl() {
  return GroupoidMap::make(d2(), ivl(), {0, 1}, {kIvlId0, kIvlId1});
}

}  // namespace

TEST_CASE("product tables are componentwise") {
  auto pb = product(d2(), ivl());
  CHECK(pb.total()->n_objects() == 4);
  CHECK(pb.total()->n_arrows() == 8);
  CHECK(pb.total()->validate().ok());

  // The projections really are functors: revalidate their tables.
  CHECK_NOTHROW(GroupoidMap::make(pb.total(), d2(),
                                  pb.proj1().object_table(),
                                  pb.proj1().arrow_table()));
  CHECK_NOTHROW(GroupoidMap::make(pb.total(), ivl(),
                                  pb.proj2().object_table(),
                                  pb.proj2().arrow_table()));

  // Pair lookups round-trip.
  for (int p = 0; p < pb.total()->n_objects(); ++p) {
    auto [a, b] = pb.object_pair(p);
    CHECK(pb.object_of_pair(a, b) == p);
  }
  for (int p = 0; p < pb.total()->n_arrows(); ++p) {
    auto [a, b] = pb.arrow_pair(p);
    CHECK(pb.arrow_of_pair(a, b) == p);
  }
}

TEST_CASE("pullback of disjoint points is empty") {
  auto pb = Pullback::make(delta0(), delta1());
  CHECK(pb.total()->n_objects() == 0);
  CHECK(pb.total()->n_arrows() == 0);
  CHECK(pb.total()->validate().ok());
}

TEST_CASE("mismatched cospans and pairs are rejected") {
  CHECK_THROWS_AS(Pullback::make(delta0(), bang(ivl())), PreconditionError);
  auto pb = Pullback::make(GroupoidMap::identity(ivl()),
                           GroupoidMap::identity(ivl()));
  // Objects 0 and 1 do not match under the identity legs.
  CHECK_THROWS_AS((void)pb.object_of_pair(0, 1), PreconditionError);
}

TEST_CASE("mediate satisfies the universal property (oracle check)") {
  auto pb = product(d2(), ivl());
  for (const Gpd& apex : {one_gpd(), ivl()}) {
    auto cones = testing::enumerate_cones(apex, pb.leg_f(), pb.leg_g());
    CHECK(!cones.empty());
    for (const auto& [u, v] : cones) {
      auto w = pb.mediate(u, v);
      CHECK(pb.proj1().after(w) == u);
      CHECK(pb.proj2().after(w) == v);
      // Exhaustive count: w is the only such factorization.
      CHECK(testing::count_factorizations(apex, pb.total(), pb.proj1(),
                                          pb.proj2(), u, v) == 1);
    }
  }
}

TEST_CASE("mediate rejects non-commuting cones") {
  auto pb = Pullback::make(GroupoidMap::identity(ivl()),
                           GroupoidMap::identity(ivl()));
  CHECK_THROWS_AS((void)pb.mediate(delta0(), delta1()), PreconditionError);
}

TEST_CASE("the chosen pullback square is recognized as cartesian") {
  auto pb = product(d2(), ivl());
  Square sq{pb.proj1(), pb.leg_g(), pb.proj2(), pb.leg_f()};
  CHECK(sq.commutes());
  CHECK(is_pullback_square(sq));
  // Its comparison map into the chosen pullback is the identity.
  CHECK(pullback_comparison(sq, pb).is_identity());
}

TEST_CASE("a commuting non-cartesian square is rejected") {
  // The point over the cospan D2 -> 1 <- D2 commutes but is far too small.
  auto pick0 = GroupoidMap::make(one_gpd(), d2(), {0}, {0});
  Square sq{pick0, bang(d2()), pick0, bang(d2())};
  CHECK(sq.commutes());
  CHECK(!is_pullback_square(sq));
  CHECK_THROWS_AS((void)is_pullback_square(
                      Square{pick0, GroupoidMap::identity(d2()),
                             GroupoidMap::make(one_gpd(), d2(), {1}, {1}),
                             GroupoidMap::identity(d2())}),
                  PreconditionError);
}

TEST_CASE("reindex along the identity is a projection isomorphism") {
  SliceObject a{incl_d2_ivl()};
  auto rd = reindex_slice(GroupoidMap::identity(ivl()), a);
  CHECK(rd.object.total()->n_objects() == d2()->n_objects());
  CHECK(rd.to_original.is_iso());
  CHECK(is_pullback_square(rd.square));
  CHECK(same_gpd(rd.object.base(), ivl()));
}

TEST_CASE("reindex along a point picks out the fiber") {
  SliceObject whole{GroupoidMap::identity(ivl())};
  auto rd = reindex_slice(delta0(), whole);
  // The fiber of id over the object 0 is a point.
  CHECK(rd.object.total()->n_objects() == 1);
  CHECK(rd.object.total()->n_arrows() == 1);
  CHECK(same_gpd(rd.object.base(), one_gpd()));
  CHECK(is_pullback_square(rd.square));
}

TEST_CASE("pasted reindexing squares stay cartesian") {
  SliceObject a{incl_d2_ivl()};
  auto flip = GroupoidMap::make(ivl(), ivl(), {1, 0},
                                {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
  auto step1 = reindex_slice(flip, a);
  auto step2 = reindex_slice(delta0(), step1.object);
  Square pasted{step1.to_original.after(step2.to_original),
                flip.after(delta0()), step2.object.anchor, a.anchor};
  CHECK(pasted.commutes());
  CHECK(is_pullback_square(pasted));
}

TEST_CASE("reindexing a slice map commutes with the projections") {
  SliceObject a{incl_d2_ivl()};
  SliceObject b{GroupoidMap::identity(ivl())};
  auto f = SliceMap::make(a, b, incl_d2_ivl());
  auto rd = reindex_slice_map(delta0(), f);
  CHECK(same_gpd(rd.map.base(), one_gpd()));
  CHECK(rd.map.src.total()->n_objects() == 1);
  CHECK(rd.map.dst.total()->n_objects() == 1);
  // Naturality of the reindexed map with the projections to the originals.
  CHECK(rd.dst.to_original.after(rd.map.map) ==
        f.map.after(rd.src.to_original));
}
