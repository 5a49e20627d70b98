#include <gtest/gtest.h>

#include <algorithm>

#include "toricbott/fan.hpp"
#include "toricbott/suite.hpp"

using namespace toricbott;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Internal;
}

bool has_ray(const Fan& f, const IntVector& u) { return std::find(f.rays().begin(), f.rays().end(), u) != f.rays().end(); }

}  // namespace

TEST(Fan, ProjectivePlaneValidates) {
  const Fan f(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
  const auto d = validate(f);
  EXPECT_TRUE(d.smooth);
  EXPECT_TRUE(d.complete);
  EXPECT_TRUE(d.fan_axioms);
  EXPECT_TRUE(d.point_location_consistent);
}

TEST(Fan, MissingConeIsIncomplete) {
  const Fan f(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}});
  const auto d = validate(f);
  EXPECT_FALSE(d.complete);
  EXPECT_TRUE(d.point_location_consistent);
}

TEST(Fan, DeterminantTwoIsNotSmooth) {
  const Fan f(2, {{1, 0}, {1, 2}}, {{0, 1}});
  EXPECT_FALSE(validate(f).smooth);
  EXPECT_EQ(kind_of([&] { require_smooth(f); }), ErrorKind::NotSmooth);
}

TEST(Fan, OverlappingConesBreakTheAxioms) {
  const Fan f(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
  EXPECT_FALSE(validate(f).fan_axioms);
}

TEST(Fan, MalformedConstruction) {
  EXPECT_EQ(kind_of([] { Fan(2, {{2, 0}, {0, 1}}, {{0, 1}}); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([] { Fan(2, {{1, 0}, {1, 0}}, {{0, 1}}); }), ErrorKind::MalformedInput);
  EXPECT_EQ(kind_of([] { Fan(2, {{1, 0}, {0, 1}}, {{0, 5}}); }), ErrorKind::MalformedInput);
}

TEST(Fan, WallCounts) {
  EXPECT_EQ(walls(projective_space(2)).size(), 3u);
  EXPECT_EQ(walls(product(projective_space(1), projective_space(1))).size(), 4u);
  EXPECT_EQ(walls(projective_space(3)).size(), 6u);
}

TEST(Fan, StarSubdivision) {
  const Fan b = star_subdivision(projective_space(2), RaySet{0, 1});
  EXPECT_EQ(b.ray_count(), 4u);
  EXPECT_EQ(b.cone_count(), 4u);
  EXPECT_TRUE(has_ray(b, {1, 1}));
  EXPECT_TRUE(validate(b).ok());
  const Fan p3 = projective_space(3);
  const Fan c = star_subdivision(p3, p3.cone(0));
  EXPECT_EQ(c.ray_count(), 5u);
  EXPECT_EQ(c.cone_count(), 6u);
  EXPECT_TRUE(validate(c).ok());
  EXPECT_EQ(kind_of([] { star_subdivision(projective_space(2), RaySet{0}); }), ErrorKind::DuplicateRay);
  EXPECT_EQ(kind_of([] { star_subdivision(projective_space(1), RaySet{0, 1}); }), ErrorKind::NotACone);
}

TEST(Fan, SuiteFansAreSmoothCompleteProjective) {
  for (const auto& nf : suite::suite_fans()) {
    const auto d = validate(nf.fan);
    EXPECT_TRUE(d.ok()) << nf.name;
    EXPECT_TRUE(d.point_location_consistent) << nf.name;
  }
}

TEST(Fan, Builtins) {
  const Fan p1 = builtin("projective_space(1)");
  EXPECT_EQ(p1.rays(), (std::vector<IntVector>{{1}, {-1}}));
  const Fan h0 = builtin("hirzebruch(0)");
  const Fan pp = builtin("product(projective_space(1), projective_space(1))");
  EXPECT_EQ(h0.ray_count(), 4u);
  EXPECT_EQ(h0.cone_count(), 4u);
  EXPECT_EQ(walls(h0).size(), walls(pp).size());
  EXPECT_EQ(kind_of([] { builtin("grassmannian(2)"); }), ErrorKind::UnknownFamily);
  EXPECT_EQ(kind_of([] { builtin("projective_space(2"); }), ErrorKind::MalformedInput);
}

TEST(Stratum, RayOfPlaneIsLine) {
  const auto s = stratum_fan(projective_space(2), RaySet{0});
  EXPECT_EQ(s.fan.dim(), 1u);
  auto rays = s.fan.rays();
  std::sort(rays.begin(), rays.end());
  EXPECT_EQ(rays, (std::vector<IntVector>{{-1}, {1}}));
  EXPECT_EQ(s.ambient_ray, (std::vector<std::size_t>{1, 2}));
}

TEST(Stratum, RayOfQuadricIsLine) {
  const auto s = stratum_fan(product(projective_space(1), projective_space(1)), RaySet{0});
  EXPECT_EQ(s.fan.dim(), 1u);
  EXPECT_EQ(s.fan.ray_count(), 2u);
  EXPECT_TRUE(validate(s.fan).ok());
}

TEST(Stratum, EmptyConeIsIdentity) {
  const Fan f = hirzebruch(1);
  const auto s = stratum_fan(f, RaySet());
  EXPECT_EQ(fan_key(s.fan), fan_key(f));
  EXPECT_EQ(s.ambient_ray, f.all_rays().indices());
}

TEST(Stratum, EveryStratumOfEverySuiteFanIsSmoothComplete) {
  for (const auto& nf : suite::suite_fans())
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << nf.fan.ray_count()); ++m) {
      const RaySet tau(m);
      if (!nf.fan.is_cone(tau)) continue;
      const auto s = stratum_fan(nf.fan, tau);
      EXPECT_EQ(s.fan.dim(), nf.fan.dim() - tau.size());
      if (s.fan.dim() > 0) {
        EXPECT_TRUE(validate(s.fan).ok()) << nf.name;
      }
      // Stratum rays are exactly the rays adjacent to tau.
      EXPECT_EQ(RaySet::from_indices(s.ambient_ray), adjacent_rays(nf.fan, tau));
    }
}

TEST(Fan, HashIsStableAndSeparating) {
  EXPECT_EQ(fan_hash(projective_space(2)), fan_hash(projective_space(2)));
  EXPECT_NE(fan_hash(hirzebruch(1)), fan_hash(hirzebruch(2)));
}
