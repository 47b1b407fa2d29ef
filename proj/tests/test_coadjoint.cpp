#include <gtest/gtest.h>

#include <kinstatic/coadjoint.hpp>

#include "test_support.hpp"

using namespace kinstatic;
using kinstatic::testing::Gen;
using kinstatic::testing::kTrials;

namespace {

AlgebraVector vec6(double a, double b, double c, double d, double e, double f)
{
  AlgebraVector v(6);
  v << a, b, c, d, e, f;
  return v;
}

/// Random dual vector with the given (m, f, I) zero pattern.
DualVector of_class(Gen& gen, OrbitClass cls)
{
  static const std::map<OrbitClass, std::array<bool, 3>> pattern{
    {OrbitClass::ABS, {true, true, true}},    {OrbitClass::ASS, {true, true, false}},
    {OrbitClass::BFS_M, {true, false, true}}, {OrbitClass::FSS_M, {true, false, false}},
    {OrbitClass::BSF, {false, true, true}},   {OrbitClass::SSF, {false, true, false}},
    {OrbitClass::BFS_0, {false, false, true}}, {OrbitClass::FSS_0, {false, false, false}}};
  const auto p = pattern.at(cls);
  return {p[0] ? gen.nonzero() : 0.0, p[1] ? gen.nonzero() : 0.0, p[2] ? gen.nonzero() : 0.0,
          gen.real(),                 gen.real(),                 gen.real()};
}

double record_diff(const NamedValues& a, const NamedValues& b)
{
  EXPECT_EQ(a.size(), b.size());
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].first, b[i].first);
    r = std::max(r, std::abs(a[i].second - b[i].second));
  }
  return r;
}

double value(const NamedValues& rec, const std::string& key)
{
  for (const auto& [k, v] : rec)
    if (k == key) return v;
  ADD_FAILURE() << "missing " << key;
  return NAN;
}

} // namespace

TEST(Pair, Examples)
{
  EXPECT_EQ(pair({1, 2, 3, 4, 5, 6}, vec6(1, 1, 1, 1, 1, 1)), 21.0);
  EXPECT_EQ(pair({1, 2, 3, 4, 5, 6}, AlgebraVector::Zero(6)), 0.0);
  EXPECT_EQ(pair({1, 0, 0, 0, 0, 0}, vec6(0, 0, 0, 1, 0, 0)), 0.0);
  EXPECT_THROW(pair({}, AlgebraVector::Zero(3)), Error);
}

TEST(CoadjointAct, Examples)
{
  EXPECT_EQ(coadjoint_act({2, 3, 1}, {1, 1, 1, 0, 0, 0}), (DualVector{1, 1, 1, 4, -1, -5}));
  const DualVector mu{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(coadjoint_act(GroupElement::identity(), mu), mu);
  const GroupElement g{1, 1, 1};
  const AlgebraVector d = vec6(0, 0, 0, 1, 1, 1);
  EXPECT_DOUBLE_EQ(pair(coadjoint_act(g, mu), d), pair(mu, adjoint(inverse(g), d)));
}

TEST(CoadjointAct, ContragredientOracle)
{
  // Oracle: the matrix of Ad*_g is the transpose of Ad_{g^-1}, built by
  // applying the adjoint to unit vectors.
  Gen gen;
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = gen.group();
    const DualVector mu = gen.dual();
    Eigen::Matrix<double, 6, 6> adinv;
    for (int j = 0; j < 6; ++j) {
      AlgebraVector e = AlgebraVector::Zero(6);
      e[j] = 1.0;
      adinv.col(j) = adjoint(inverse(g), e);
    }
    const auto a = mu.as_array();
    const Eigen::Matrix<double, 6, 1> oracle = adinv.transpose() * Eigen::Matrix<double, 6, 1>(a.data());
    const auto got = coadjoint_act(g, mu).as_array();
    for (int j = 0; j < 6; ++j) ASSERT_NEAR(got[j], oracle[j], 1e-12);
  }
}

TEST(CoadjointAct, ActionProperty)
{
  Gen gen;
  for (int i = 0; i < kTrials; ++i) {
    const GroupElement g = gen.group(), h = gen.group();
    const DualVector mu = gen.dual();
    ASSERT_LE(max_abs_diff(coadjoint_act(multiply(g, h), mu), coadjoint_act(g, coadjoint_act(h, mu))), 1e-9);
  }
}

TEST(Kirillov, Examples)
{
  Eigen::Matrix3d expect;
  expect << 0, 1, 3, -1, 0, 2, -3, -2, 0;
  EXPECT_EQ(kirillov({1, 2, 3, 0, 0, 0}), expect);
  EXPECT_TRUE(kirillov({0, 0, 0, 7, 8, 9}).isZero(0.0));
  EXPECT_EQ(kirillov_rank({0, 0, 5, 0, 0, 0}), 2);
  EXPECT_EQ(kirillov_rank({0, 0, 0, 1, 1, 1}), 0);
}

TEST(Kirillov, RankMatchesOrbitDimension)
{
  Gen gen;
  for (OrbitClass cls : kAllClasses) {
    for (int i = 0; i < 100; ++i) {
      const DualVector mu = of_class(gen, cls);
      const Orbit o = classify(mu);
      ASSERT_EQ(o.cls, cls);
      ASSERT_EQ(kirillov_rank(mu), o.dim());
      ASSERT_EQ(o.dim(), cls == OrbitClass::FSS_0 ? 0 : 2);
    }
  }
}

TEST(Classify, Examples)
{
  const Orbit abs = classify({1, 2, 3, 4, 5, 6});
  EXPECT_EQ(abs.cls, OrbitClass::ABS);
  EXPECT_EQ(abs.u(), 3.0);
  EXPECT_EQ(abs.a(), 2.0);
  EXPECT_EQ(abs.U, -1.0); // 6 - 5*3 + 2*4

  const Orbit pt = classify({0, 0, 0, 1, 2, 3});
  EXPECT_EQ(pt.cls, OrbitClass::FSS_0);
  EXPECT_EQ(pt.invariants(), (NamedValues{{"k", 1}, {"p", 2}, {"e", 3}}));

  const Orbit bsf = classify({0, 2, 1, 5, 4, 7});
  EXPECT_EQ(bsf.cls, OrbitClass::BSF);
  EXPECT_EQ(bsf.omega(), 2.0);
  EXPECT_EQ(bsf.k0, 3.0); // 5 - 4/2
}

TEST(Classify, AllEightZeroPatterns)
{
  EXPECT_EQ(classify({1, 1, 1, 0, 0, 0}).cls, OrbitClass::ABS);
  EXPECT_EQ(classify({1, 1, 0, 0, 0, 0}).cls, OrbitClass::ASS);
  EXPECT_EQ(classify({1, 0, 1, 0, 0, 0}).cls, OrbitClass::BFS_M);
  EXPECT_EQ(classify({1, 0, 0, 0, 0, 0}).cls, OrbitClass::FSS_M);
  EXPECT_EQ(classify({0, 1, 1, 0, 0, 0}).cls, OrbitClass::BSF);
  EXPECT_EQ(classify({0, 1, 0, 0, 0, 0}).cls, OrbitClass::SSF);
  EXPECT_EQ(classify({0, 0, 1, 0, 0, 0}).cls, OrbitClass::BFS_0);
  EXPECT_EQ(classify({0, 0, 0, 0, 0, 0}).cls, OrbitClass::FSS_0);
}

TEST(Classify, ToleranceControlsBoundary)
{
  const DualVector mu{1e-13, 0, 0, 1, 1, 1};
  EXPECT_EQ(classify(mu).cls, OrbitClass::FSS_0);
  EXPECT_EQ(classify(mu, 0.0).cls, OrbitClass::FSS_M);
  EXPECT_EQ(classify({1e-6, 0, 0, 0, 0, 0}, 1e-5).cls, OrbitClass::FSS_0);
  EXPECT_THROW(classify(mu, -1.0), Error);
}

TEST(Classify, ScaleStable)
{
  Gen gen;
  for (OrbitClass cls : kAllClasses) {
    for (int i = 0; i < 100; ++i) {
      const DualVector mu = of_class(gen, cls);
      ASSERT_EQ(classify(gen.real(1e-3, 1e3) * mu, 0.0).cls, cls);
    }
  }
}

TEST(Classify, InvariantRecordNames)
{
  const std::map<OrbitClass, std::vector<std::string>> names{
    {OrbitClass::ABS, {"m", "f", "I", "U"}}, {OrbitClass::ASS, {"m", "f", "U"}}, {OrbitClass::BFS_M, {"m", "I", "U"}},
    {OrbitClass::FSS_M, {"m", "e"}},         {OrbitClass::BSF, {"f", "I", "k0"}}, {OrbitClass::SSF, {"f", "k"}},
    {OrbitClass::BFS_0, {"I", "p"}},         {OrbitClass::FSS_0, {"k", "p", "e"}}};
  Gen gen;
  for (const auto& [cls, want] : names) {
    const auto rec = classify(of_class(gen, cls)).invariants();
    std::vector<std::string> got;
    for (const auto& [k, v] : rec) got.push_back(k);
    EXPECT_EQ(got, want) << to_string(cls);
  }
}

TEST(Casimir, InvariantUnderCoadjointAction)
{
  Gen gen;
  for (OrbitClass cls : kAllClasses) {
    for (int i = 0; i < kTrials; ++i) {
      const DualVector mu = of_class(gen, cls);
      const Orbit o = classify(mu);
      const Orbit moved = classify(coadjoint_act(gen.group(), mu));
      ASSERT_EQ(moved.cls, cls);
      double scale = 1.0;
      for (const auto& [k, v] : o.invariants()) scale = std::max(scale, 1.0 + std::abs(v));
      ASSERT_LE(record_diff(o.invariants(), moved.invariants()), 1e-9 * scale) << to_string(cls);
    }
  }
}

TEST(Casimir, AssInvariantOracle)
{
  // Substitute the action into e + f k/m: (e - f x) + f (k + m x)/m = e + f k/m.
  const DualVector mu{2, 3, 0, 1, 4, 5};
  for (double x : {-2.0, 0.5, 3.0}) {
    const DualVector moved = coadjoint_act({0, x, 0}, mu);
    EXPECT_NEAR(casimir_U_ass(moved), casimir_U_ass(mu), 1e-12);
    EXPECT_NEAR(printed_U_ass(moved) - printed_U_ass(mu), -2.0 * mu.f * x, 1e-12);
  }
  EXPECT_EQ(value(classify(mu).invariants(), "U"), 5.0 + 3.0 * 1.0 / 2.0);
}

TEST(Chart, ToChartExamples)
{
  const DualVector abs{1, 2, 3, 4, 5, 6};
  EXPECT_EQ(to_chart(classify(abs), abs), ChartPoint::pq(5, 4));
  const DualVector bsf{0, 2, 1, 5, 4, -6};
  EXPECT_EQ(to_chart(classify(bsf), bsf), ChartPoint::pq(4, 3));
  const DualVector bfs0{0, 0, 2, 6, 1.5, -0.5};
  EXPECT_EQ(to_chart(classify(bfs0), bfs0), ChartPoint::etau(-0.5, 3));
  const DualVector pt{0, 0, 0, 1, 2, 3};
  EXPECT_EQ(to_chart(classify(pt), pt).kind, ChartKind::POINT);
}

TEST(Chart, FromChartExamples)
{
  const Orbit abs = make_orbit(OrbitClass::ABS, {{"m", 1}, {"f", 2}, {"I", 3}, {"U", -1}});
  EXPECT_EQ(from_chart(abs, ChartPoint::pq(5, 4)), (DualVector{1, 2, 3, 4, 5, 6}));
  const Orbit fss = make_orbit(OrbitClass::FSS_M, {{"m", 1}, {"e", 7}});
  EXPECT_EQ(from_chart(fss, ChartPoint::pq(0, 0)), (DualVector{1, 0, 0, 0, 0, 7}));
  const Orbit bsf = make_orbit(OrbitClass::BSF, {{"f", 2}, {"I", 1}, {"k0", 3}});
  EXPECT_EQ(from_chart(bsf, ChartPoint::pq(4, 3)), (DualVector{0, 2, 1, 5, 4, -6}));
}

TEST(Chart, Errors)
{
  const DualVector abs{1, 2, 3, 4, 5, 6};
  const Orbit o = classify(abs);
  EXPECT_THROW(to_chart(o, {1, 2, 0, 4, 5, 6}), Error);
  EXPECT_THROW(from_chart(o, ChartPoint::etau(1, 2)), Error);
  EXPECT_THROW(from_chart(o, ChartPoint::point()), Error);
  EXPECT_THROW(make_orbit(OrbitClass::SSF, {{"m", 1}}), Error);
  EXPECT_THROW(parse_orbit_class("XYZ"), Error);
}

TEST(Chart, RoundTrips)
{
  Gen gen;
  for (OrbitClass cls : kAllClasses) {
    if (cls == OrbitClass::FSS_0) continue;
    for (int i = 0; i < kTrials; ++i) {
      const DualVector mu = of_class(gen, cls);
      const Orbit o = classify(mu);
      ASSERT_LE(max_abs_diff(from_chart(o, to_chart(o, mu)), mu), 1e-9) << to_string(cls);
      const ChartPoint z{o.chart_kind(), {gen.real(), gen.real()}};
      const ChartPoint back = to_chart(o, from_chart(o, z));
      ASSERT_NEAR(back.c[0], z.c[0], 1e-9);
      ASSERT_NEAR(back.c[1], z.c[1], 1e-9);
    }
  }
  const DualVector pt{0, 0, 0, 1, 2, 3};
  EXPECT_EQ(from_chart(classify(pt), to_chart(classify(pt), pt)), pt);
}

TEST(Transport, SameOrbitIsReachable)
{
  Gen gen;
  for (OrbitClass cls : kAllClasses) {
    for (int i = 0; i < 200; ++i) {
      const DualVector a = of_class(gen, cls);
      const Orbit o = classify(a);
      const DualVector b = o.dim() ? from_chart(o, {o.chart_kind(), {gen.real(), gen.real()}}) : a;
      const auto g = find_transport(a, b);
      ASSERT_TRUE(g.has_value()) << to_string(cls);
      ASSERT_LE(max_abs_diff(coadjoint_act(*g, a), b), 1e-9);
    }
  }
}

TEST(Transport, DifferentOrbitsAreNot)
{
  const DualVector a{1, 2, 3, 4, 5, 6};
  DualVector b = a;
  b.e += 1.0; // shifts U
  EXPECT_FALSE(find_transport(a, b).has_value());
  EXPECT_FALSE(find_transport(a, {2, 2, 3, 4, 5, 6}).has_value());
  EXPECT_FALSE(find_transport({0, 0, 0, 1, 2, 3}, {0, 0, 0, 1, 2, 4}).has_value());
}
