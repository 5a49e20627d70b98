#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "toricbott/certifier.hpp"
#include "toricbott/suite.hpp"

using namespace toricbott;

namespace {

std::size_t count_rule(const CertificateNode& n, Rule r) {
  std::size_t c = n.rule == r ? 1 : 0;
  for (const auto& ch : n.children) c += count_rule(ch, r);
  return c;
}

CertificateNode* first_leaf(CertificateNode& n) {
  if (n.rule == Rule::LeafTrivialLog) return &n;
  return first_leaf(n.children.front());
}

}  // namespace

TEST(Certificate, FullBoundaryIsASingleLeafPerDegree) {
  const Fan p2 = projective_space(2);
  const auto cert = build_certificate(p2, p2.all_rays(), InvariantDivisor::prime(3, 0));
  ASSERT_EQ(cert.roots.size(), 3u);
  for (const auto& r : cert.roots) {
    EXPECT_EQ(r.rule, Rule::LeafTrivialLog);
    EXPECT_TRUE(r.children.empty());
  }
  EXPECT_TRUE(check_certificate(p2, cert).ok);
}

TEST(Certificate, PlaneWithEmptyBoundary) {
  const Fan p2 = projective_space(2);
  const auto cert = build_certificate(p2, RaySet(), InvariantDivisor::prime(3, 0));
  const auto& root = cert.roots[1];
  EXPECT_EQ(root.rule, Rule::ResidueStep);
  EXPECT_EQ(root.added_ray, 0u);
  // Along the sub chain every ray is added in turn.
  const CertificateNode* n = &root;
  for (std::size_t h = 0; h < 3; ++h) {
    ASSERT_EQ(n->rule, Rule::ResidueStep);
    EXPECT_EQ(n->added_ray, h);
    EXPECT_EQ(n->children[1].claim.stratum, RaySet{h});
    n = &n->children[0];
  }
  EXPECT_EQ(n->rule, Rule::LeafTrivialLog);
  const auto chk = check_certificate(p2, cert);
  EXPECT_TRUE(chk.ok);
  EXPECT_EQ(chk.depth, 3u);
  // X, three lines and three points, once per root.
  EXPECT_EQ(chk.leaves, 21u);
}

TEST(Certificate, ProjectiveLine) {
  const Fan p1 = projective_space(1);
  const auto cert = build_certificate(p1, RaySet(), InvariantDivisor::prime(2, 1));
  for (const auto& r : cert.roots) {
    EXPECT_EQ(count_rule(r, Rule::ResidueStep), 2u);
    EXPECT_EQ(count_rule(r, Rule::LeafTrivialLog), 3u);
  }
  const auto chk = check_certificate(p1, cert);
  EXPECT_TRUE(chk.ok);
  for (const auto& leaves : chk.leaf_strata)
    EXPECT_EQ(leaves, (std::multiset<RaySet>{RaySet(), RaySet{0}, RaySet{1}}));
}

TEST(Certificate, InfeasibleHypothesisIsRejected) {
  try {
    build_certificate(projective_space(2), RaySet{0}, InvariantDivisor::zero(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::HypothesisInfeasible);
  }
}

TEST(Certificate, TamperedLeafTwistIsNonzero) {
  const Fan p2 = projective_space(2);
  auto cert = build_certificate(p2, RaySet(), InvariantDivisor::prime(3, 0));
  auto* leaf = first_leaf(cert.roots[0]);
  for (auto& t : leaf->claim.twist) t -= 5;
  const auto chk = check_certificate(p2, cert);
  EXPECT_FALSE(chk.ok);
  EXPECT_EQ(chk.fault, ErrorKind::LeafNonzero);
  EXPECT_THROW(require_valid(chk), Error);
}

TEST(Certificate, TamperedAddedRayIsMalformed) {
  const Fan p2 = projective_space(2);
  auto cert = build_certificate(p2, RaySet(), InvariantDivisor::prime(3, 0));
  cert.roots[0].added_ray = 2;
  const auto chk = check_certificate(p2, cert);
  EXPECT_FALSE(chk.ok);
  EXPECT_EQ(chk.fault, ErrorKind::MalformedNode);
}

TEST(Certificate, OtherStructuralTampering) {
  const Fan f = hirzebruch(1);
  const auto good = build_certificate(f, RaySet(), InvariantDivisor::from_ints(IntVector{1, 0, 0, 1}));
  ASSERT_TRUE(check_certificate(f, good).ok);

  auto dropped = good;
  dropped.roots[0].children.pop_back();
  EXPECT_EQ(check_certificate(f, dropped).fault, ErrorKind::MalformedNode);

  auto missing_root = good;
  missing_root.roots.pop_back();
  EXPECT_FALSE(check_certificate(f, missing_root).ok);

  auto rule = good;
  rule.roots[0].rule = Rule::LeafTrivialLog;
  EXPECT_FALSE(check_certificate(f, rule).ok);

  auto bad_witness = good;
  bad_witness.witness.push_back(Rational(1, 2));
  EXPECT_EQ(check_certificate(f, bad_witness).fault, ErrorKind::HypothesisNotVerified);

  EXPECT_FALSE(check_certificate(hirzebruch(2), good).ok);
}

TEST(Certificate, VisitedStrataAreTheConesOffTheLogSet) {
  std::mt19937_64 rng(53);
  const auto fans = suite::suite_fans();
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const Fan& f = fans[rng() % fans.size()].fan;
    const std::size_t n = f.ray_count();
    const RaySet dprime(rng() & RaySet::first_n(n).mask());
    IntVector l(n);
    for (auto& x : l) x = static_cast<std::int64_t>(rng() % 3);
    const auto ld = InvariantDivisor::from_ints(l);
    if (!hypothesis_feasible(f, ld, dprime)) continue;
    ++checked;
    const auto chk = check_certificate(f, build_certificate(f, dprime, ld));
    ASSERT_TRUE(chk.ok);
    const auto expected = strata_outside(f, dprime);
    for (const auto& leaves : chk.leaf_strata) {
      EXPECT_EQ(std::set<RaySet>(leaves.begin(), leaves.end()), expected);
      EXPECT_EQ(leaves.size(), expected.size());
    }
    EXPECT_LE(chk.depth, n + f.dim());
  }
  EXPECT_GT(checked, 30);
}

TEST(Certificate, AdditionOrderDoesNotMatter) {
  std::mt19937_64 rng(59);
  for (const auto& nf : suite::suite_fans()) {
    const Fan& f = nf.fan;
    const auto l = *is_projective(f);
    StrataContext ctx(f);
    const auto base = check_certificate(ctx, build_certificate(ctx, RaySet(), l));
    ASSERT_TRUE(base.ok);
    for (int trial = 0; trial < 4; ++trial) {
      BuildOptions opt;
      for (std::size_t i = 0; i < f.ray_count(); ++i) opt.order.push_back(i);
      std::shuffle(opt.order.begin(), opt.order.end(), rng);
      const auto cert = build_certificate(ctx, RaySet(), l, opt);
      const auto chk = check_certificate(ctx, cert);
      EXPECT_TRUE(chk.ok) << nf.name;
      EXPECT_EQ(chk.leaves, base.leaves) << nf.name;
      EXPECT_EQ(chk.leaf_strata, base.leaf_strata) << nf.name;
      EXPECT_EQ(cert.roots[0].added_ray, opt.order[0]);
    }
  }
  BuildOptions bad{{0, 0, 1}};
  EXPECT_THROW(build_certificate(projective_space(2), RaySet(), InvariantDivisor::prime(3, 0), bad), Error);
}

TEST(CrossValidation, SpecExamples) {
  const auto a = cross_validate(projective_space(2), RaySet{0}, InvariantDivisor::from_ints(IntVector{2, 0, 0}));
  EXPECT_TRUE(a.certificate_ok && a.direct_pass && a.agree);
  const auto b = cross_validate(product(projective_space(1), projective_space(1)), RaySet{0, 1},
                                InvariantDivisor::from_ints(IntVector{1, 0, 1, 0}));
  EXPECT_TRUE(b.certificate_ok && b.direct_pass && b.agree);
  const auto c = cross_validate(hirzebruch(1), RaySet(), InvariantDivisor::from_ints(IntVector{1, 0, 0, 1}));
  EXPECT_TRUE(c.certificate_ok && c.direct_pass && c.agree);
}
