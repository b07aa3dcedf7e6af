#include <doctest.h>

#include "forge/errors.hpp"
#include "forge/groupoid.hpp"
#include "support.hpp"

using namespace forge;

TEST_CASE("fixtures pass validation") {
  for (const Gpd& g : {one_gpd(), ivl(), bz2(), d2()}) {
    auto report = g->validate();
    CHECK_MESSAGE(report.ok(), report.summary());
  }
}

TEST_CASE("fixture tables have the expected shape") {
  CHECK(one_gpd()->n_objects() == 1);
  CHECK(one_gpd()->n_arrows() == 1);

  CHECK(ivl()->n_objects() == 2);
  CHECK(ivl()->n_arrows() == 4);
  CHECK(ivl()->src(kIvlU) == 0);
  CHECK(ivl()->tgt(kIvlU) == 1);
  CHECK(ivl()->inverse(kIvlU) == kIvlUInv);
  CHECK(ivl()->compose(kIvlUInv, kIvlU) == kIvlId0);
  CHECK(ivl()->compose(kIvlU, kIvlUInv) == kIvlId1);
  CHECK(ivl()->hom(0, 1).size() == 1);

  CHECK(bz2()->n_objects() == 1);
  CHECK(bz2()->n_arrows() == 2);
  CHECK(bz2()->compose(kBz2T, kBz2T) == kBz2E);
  CHECK(bz2()->inverse(kBz2T) == kBz2T);

  CHECK(d2()->n_objects() == 2);
  CHECK(d2()->n_arrows() == 2);
  CHECK(d2()->hom(0, 1).empty());
}

TEST_CASE("compose rejects non-composable pairs") {
  CHECK_THROWS_AS((void)ivl()->compose(kIvlU, kIvlU), PreconditionError);
  CHECK(!ivl()->try_compose(kIvlU, kIvlU).has_value());
  CHECK(ivl()->try_compose(kIvlUInv, kIvlU).has_value());
}

TEST_CASE("from_tables rejects dangling references") {
  // Arrow with a source that is not an object.
  CHECK_THROWS_AS(FinGroupoid::from_tables({0}, {{0, 3, 0}}, {{0, 0, 0}},
                                           {{0, 0}}, {{0, 0}}),
                  MalformedInput);
  // Compose entry naming an unknown arrow.
  CHECK_THROWS_AS(FinGroupoid::from_tables({0}, {{0, 0, 0}}, {{0, 7, 0}},
                                           {{0, 0}}, {{0, 0}}),
                  MalformedInput);
  // Identity row for an unknown object.
  CHECK_THROWS_AS(FinGroupoid::from_tables({0}, {{0, 0, 0}}, {{0, 0, 0}},
                                           {{5, 0}}, {{0, 0}}),
                  MalformedInput);
  // Duplicate arrow id.
  CHECK_THROWS_AS(FinGroupoid::from_tables({0}, {{0, 0, 0}, {0, 0, 0}},
                                           {{0, 0, 0}}, {{0, 0}}, {{0, 0}}),
                  MalformedInput);
}

TEST_CASE("validate flags a wrong inverse table") {
  // Z/2 with t declared self-inverse but t*t = t instead of e.
  auto broken = FinGroupoid::from_tables(
      {0}, {{0, 0, 0}, {1, 0, 0}},
      {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 1}}, {{0, 0}}, {{0, 0}, {1, 1}});
  auto report = broken->validate();
  CHECK(!report.ok());
  bool saw_inverse = false;
  for (const auto& v : report.violations)
    if (v.law == "inverse") saw_inverse = true;
  CHECK_MESSAGE(saw_inverse, report.summary());
}

TEST_CASE("validate flags a missing compose entry") {
  // Z/2 whose multiplication table omits (t, t).
  auto partial = FinGroupoid::from_tables(
      {0}, {{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}}, {{0, 0}},
      {{0, 0}, {1, 1}});
  auto report = partial->validate();
  CHECK(!report.ok());
  bool saw_domain = false;
  for (const auto& v : report.violations)
    if (v.law == "compose-domain") saw_domain = true;
  CHECK_MESSAGE(saw_domain, report.summary());
}

TEST_CASE("validate flags a non-associative table") {
  // A 3-element "group" with a deliberately scrambled product: x*x = x for the
  // non-identity elements breaks both associativity patterns and inverses.
  auto bad = FinGroupoid::from_tables(
      {0}, {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}},
      {{0, 0, 0},
       {0, 1, 1},
       {0, 2, 2},
       {1, 0, 1},
       {2, 0, 2},
       {1, 1, 1},
       {1, 2, 0},
       {2, 1, 0},
       {2, 2, 2}},
      {{0, 0}}, {{0, 0}, {1, 2}, {2, 1}});
  auto report = bad->validate();
  CHECK(!report.ok());
  bool saw = false;
  for (const auto& v : report.violations)
    if (v.law == "associativity" || v.law == "inverse") saw = true;
  CHECK_MESSAGE(saw, report.summary());
}

TEST_CASE("builder assigns dense ids in insertion order") {
  GroupoidBuilder b;
  int x = b.add_object();
  int y = b.add_object();
  int ix = b.add_arrow(x, x);
  int iy = b.add_arrow(y, y);
  int f = b.add_arrow(x, y);
  int g = b.add_arrow(y, x);
  b.set_identity(x, ix);
  b.set_identity(y, iy);
  b.set_inverse(ix, ix);
  b.set_inverse(iy, iy);
  b.set_inverse(f, g);
  b.set_inverse(g, f);
  b.set_compose(ix, ix, ix);
  b.set_compose(iy, iy, iy);
  b.set_compose(f, ix, f);
  b.set_compose(iy, f, f);
  b.set_compose(g, iy, g);
  b.set_compose(ix, g, g);
  b.set_compose(g, f, ix);
  b.set_compose(f, g, iy);
  auto built = b.build();
  CHECK(built->validate().ok());
  CHECK(built->same_tables(*ivl()));
  CHECK(built->table_hash() == ivl()->table_hash());
}

TEST_CASE("functor validation distinguishes shape from law errors") {
  // Wrong table lengths are malformed input.
  CHECK_THROWS_AS(GroupoidMap::make(ivl(), one_gpd(), {0}, {0, 0, 0, 0}),
                  MalformedInput);
  // Endpoint-breaking arrow assignment is a law violation: u goes 0 -> 1 but
  // its image would be the identity at 0.
  CHECK_THROWS_AS(
      GroupoidMap::make(ivl(), ivl(), {0, 1},
                        {kIvlId0, kIvlId1, kIvlId0, kIvlUInv}),
      LawViolation);
  // Composition-breaking assignment: objects collapse to the single object of
  // Z/2 and u, u^-1 map to t, but the identities would have to hit t*t = e,
  // which the table below gets wrong.
  CHECK_THROWS_AS(GroupoidMap::make(ivl(), bz2(), {0, 0},
                                    {kBz2E, kBz2T, kBz2T, kBz2T}),
                  LawViolation);
}

TEST_CASE("functor enumeration oracle counts agree with theory") {
  // The interval is indiscrete, so a functor out of it is exactly a pair of
  // object images; into Z/2 it is a choice of image for u.
  CHECK(testing::enumerate_functors(ivl(), ivl()).size() == 4);
  CHECK(testing::enumerate_functors(ivl(), bz2()).size() == 2);
  CHECK(testing::enumerate_functors(bz2(), bz2()).size() == 2);
  CHECK(testing::enumerate_functors(one_gpd(), ivl()).size() == 2);
  CHECK(testing::enumerate_functors(d2(), ivl()).size() == 4);
}

TEST_CASE("composition, identity, and isomorphism of functors") {
  auto flip = GroupoidMap::make(ivl(), ivl(), {1, 0},
                                {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
  CHECK(flip.is_iso());
  CHECK(!flip.is_identity());
  CHECK(flip.after(flip) == GroupoidMap::identity(ivl()));
  CHECK(flip.inverse() == flip);

  auto to_point = bang(ivl());
  CHECK(to_point.after(flip) == to_point);
  CHECK_THROWS_AS((void)flip.after(to_point), PreconditionError);

  // A non-injective functor is not an isomorphism.
  auto collapse =
      GroupoidMap::make(ivl(), one_gpd(), {0, 0}, {0, 0, 0, 0});
  CHECK(!collapse.is_iso());
  CHECK_THROWS_AS((void)collapse.inverse(), PreconditionError);
}

TEST_CASE("squares detect non-commuting data") {
  auto flip = GroupoidMap::make(ivl(), ivl(), {1, 0},
                                {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
  auto idm = GroupoidMap::identity(ivl());
  Square ok{flip, flip, idm, idm};
  CHECK(ok.commutes());
  Square bad{flip, idm, idm, idm};
  CHECK(!bad.commutes());
  CHECK_THROWS_AS(bad.require_commutes("test"), PreconditionError);
}

TEST_CASE("canonical isos check mutual inversion") {
  auto flip = GroupoidMap::make(ivl(), ivl(), {1, 0},
                                {kIvlId1, kIvlId0, kIvlUInv, kIvlU});
  auto iso = CanonIso::make(flip, flip);
  CHECK(iso.fwd == flip);
  CHECK_THROWS_AS(CanonIso::make(flip, GroupoidMap::identity(ivl())),
                  LawViolation);
  auto from = CanonIso::from_iso(flip);
  CHECK(from.bwd == flip);
}

TEST_CASE("slice objects and slice maps validate their anchors") {
  auto delta0 = GroupoidMap::make(one_gpd(), ivl(), {0}, {kIvlId0});
  SliceObject a{delta0};
  CHECK(same_gpd(a.base(), ivl()));
  CHECK(same_gpd(a.total(), one_gpd()));

  auto delta1 = GroupoidMap::make(one_gpd(), ivl(), {1}, {kIvlId1});
  SliceObject b{delta1};
  // The identity on the point does not commute with distinct anchors.
  CHECK_THROWS_AS(
      SliceMap::make(a, b, GroupoidMap::identity(one_gpd())),
      PreconditionError);

  // Over the point every map is a slice map.
  auto over = over_point(ivl());
  auto f = SliceMap::make(over, over, GroupoidMap::identity(ivl()));
  CHECK(same_gpd(f.base(), one_gpd()));
}
