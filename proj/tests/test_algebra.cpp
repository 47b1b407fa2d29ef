#include <gtest/gtest.h>

#include <kinstatic/algebra.hpp>
#include <kinstatic/group.hpp>

#include "test_support.hpp"

using namespace kinstatic;
using kinstatic::testing::Gen;
using kinstatic::testing::kTrials;

namespace {

const AlgebraParams kUnit{{"c_vel", 1.0}, {"omega", 1.0}};

AlgebraVector vec(std::initializer_list<double> xs)
{
  AlgebraVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Nonzero brackets of a table as (i, j, k, value) with i < j.
std::vector<std::tuple<std::string, std::string, std::string, double>> nonzero_brackets(const BracketTable& t)
{
  std::vector<std::tuple<std::string, std::string, std::string, double>> out;
  const auto& l = t.basis_labels();
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i + 1; j < t.dim(); ++j)
      for (std::size_t k = 0; k < t.dim(); ++k)
        if (t(i, j, k) != 0.0) out.emplace_back(l[i], l[j], l[k], t(i, j, k));
  return out;
}

} // namespace

TEST(Registry, HasTwelveIdentifiers)
{
  EXPECT_EQ(registry_names().size(), 12u);
}

TEST(Registry, StaticIsAbelian)
{
  const auto t = registry_get("Static");
  EXPECT_EQ(t.dim(), 3u);
  EXPECT_TRUE(nonzero_brackets(t).empty());
}

TEST(Registry, GalileiHasOnlyKEtoP)
{
  const auto b = nonzero_brackets(registry_get("Galilei"));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], std::make_tuple(std::string("K"), std::string("E"), std::string("P"), 1.0));
}

TEST(Registry, StaticExtBrackets)
{
  const auto t = registry_get("StaticExt");
  EXPECT_EQ(t.basis_labels(), (std::vector<std::string>{"M", "F", "Y", "K", "P", "E"}));
  const auto b = nonzero_brackets(t);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(t(t.label_index("K"), t.label_index("P"), t.label_index("M")), 1.0);
  EXPECT_EQ(t(t.label_index("K"), t.label_index("E"), t.label_index("Y")), 1.0);
  EXPECT_EQ(t(t.label_index("P"), t.label_index("E"), t.label_index("F")), 1.0);
  // M, F, Y central
  for (const char* z : {"M", "F", "Y"}) {
    for (std::size_t j = 0; j < 6; ++j) {
      EXPECT_TRUE(bracket(t, t.basis(z), t.basis(j)).isZero(0.0));
    }
  }
}

TEST(Registry, DeSitterUsesParameters)
{
  const auto t = registry_get("dS-", {{"c_vel", 2.0}, {"omega", 3.0}});
  const auto K = t.label_index("K"), P = t.label_index("P"), E = t.label_index("E");
  EXPECT_DOUBLE_EQ(t(K, P, E), 0.25);
  EXPECT_DOUBLE_EQ(t(K, E, P), 1.0);
  EXPECT_DOUBLE_EQ(t(P, E, K), -9.0);
  EXPECT_DOUBLE_EQ(t.params().at("s"), -1.0);
}

TEST(Registry, BracketPatternsPerFamily)
{
  // (KP nonzero, KE nonzero, PE nonzero)
  const std::vector<std::pair<std::string, std::array<bool, 3>>> expect{
    {"dS+", {true, true, true}},          {"dS-", {true, true, true}},       {"NH+", {false, true, true}},
    {"NH-", {false, true, true}},         {"Poincare", {true, true, false}}, {"ParaPoincare+", {true, false, true}},
    {"ParaPoincare-", {true, false, true}}, {"Galilei", {false, true, false}}, {"Carroll", {true, false, false}},
    {"ParaGalilei", {false, false, true}}, {"Static", {false, false, false}}};
  for (const auto& [name, pattern] : expect) {
    const auto t = registry_get(name, kUnit);
    const auto K = t.basis("K"), P = t.basis("P"), E = t.basis("E");
    EXPECT_EQ(!bracket(t, K, P).isZero(0.0), pattern[0]) << name;
    EXPECT_EQ(!bracket(t, K, E).isZero(0.0), pattern[1]) << name;
    EXPECT_EQ(!bracket(t, P, E).isZero(0.0), pattern[2]) << name;
  }
}

TEST(Registry, Errors)
{
  EXPECT_THROW(registry_get("Bogus"), Error);
  EXPECT_THROW(registry_get("Galilei+"), Error);
  EXPECT_THROW(registry_get("dS+", {{"omega", 1.0}}), Error);
  EXPECT_THROW(registry_get("Carroll", {{"c_vel", 0.0}}), Error);
  EXPECT_THROW(registry_get("NH+", {{"omega", -1.0}}), Error);
  EXPECT_NO_THROW(registry_get("Galilei"));
}

TEST(Bracket, Examples)
{
  const auto ext = registry_get("StaticExt");
  EXPECT_EQ(bracket(ext, ext.basis("K"), ext.basis("P")), ext.basis("M"));

  const auto gal = registry_get("Galilei");
  // [2K, 3E] = 6 [K, E] = 6P
  EXPECT_EQ(bracket(gal, 2.0 * gal.basis("K"), 3.0 * gal.basis("E")), 6.0 * gal.basis("P"));

  Gen gen;
  const AlgebraVector a = gen.vec(6);
  EXPECT_TRUE(bracket(ext, a, a).isZero(1e-15));
}

TEST(Bracket, DimensionMismatchThrows)
{
  const auto ext = registry_get("StaticExt");
  EXPECT_THROW(bracket(ext, AlgebraVector::Zero(3), AlgebraVector::Zero(6)), Error);
  EXPECT_THROW(ad_matrix(ext, AlgebraVector::Zero(5)), Error);
}

TEST(Bracket, AntisymmetryProperty)
{
  Gen gen;
  for (const auto& name : registry_names()) {
    const auto t = registry_get(name, {{"c_vel", 1.7}, {"omega", 0.6}});
    for (int i = 0; i < kTrials; ++i) {
      const AlgebraVector a = gen.vec(int(t.dim()));
      const AlgebraVector b = gen.vec(int(t.dim()));
      ASSERT_LE((bracket(t, a, b) + bracket(t, b, a)).cwiseAbs().maxCoeff(), 1e-12) << name;
    }
  }
}

TEST(Jacobi, RegistryTablesAreExact)
{
  for (const auto& name : registry_names()) {
    const auto rep = check_jacobi(registry_get(name, kUnit), 0.0);
    EXPECT_EQ(rep.residual, 0.0) << name;
    EXPECT_TRUE(rep.pass) << name;
  }
}

TEST(Jacobi, So3TypeTable)
{
  BracketTable t("so3-like", {"K", "P", "E"});
  t.set("K", "P", "E", 1.0);
  t.set("K", "E", "P", 1.0);
  t.set("P", "E", "K", 1.0);
  EXPECT_EQ(check_jacobi(t).residual, 0.0);
}

TEST(Jacobi, DetectsViolation)
{
  // 4-dim table where [A,B]=C, [C,A]=D but [B,A]... chosen so the Jacobiator
  // on (A, B, C) is nonzero: [A,[B,C]] + [B,[C,A]] + [C,[A,B]] = 0 + [B,D] + 0 = D.
  BracketTable t("broken", {"A", "B", "C", "D"});
  t.set("A", "B", "C", 1.0);
  t.set("C", "A", "D", 1.0);
  t.set("B", "D", "D", 1.0);
  const auto rep = check_jacobi(t);
  EXPECT_FALSE(rep.pass);
  EXPECT_GT(rep.residual, 0.5);
}

TEST(Bch2, Examples)
{
  const auto ext = registry_get("StaticExt");
  const AlgebraVector K = ext.basis("K"), P = ext.basis("P"), M = ext.basis("M");
  EXPECT_EQ(bch2(ext, K, P), AlgebraVector(K + P + 0.5 * M));

  Gen gen;
  const AlgebraVector a = gen.vec(6);
  EXPECT_LE((bch2(ext, a, a) - 2.0 * a).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bch2, RefusesNonNilpotent)
{
  const auto ds = registry_get("dS+", kUnit);
  try {
    bch2(ds, ds.basis("K"), ds.basis("P"));
    FAIL() << "expected refusal";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("not step-2 nilpotent"), std::string::npos);
  }
  EXPECT_NO_THROW(bch2(registry_get("Galilei"), AlgebraVector::Zero(3), AlgebraVector::Zero(3)));
  EXPECT_TRUE(is_step2_nilpotent(registry_get("ParaGalilei", kUnit)));
  EXPECT_FALSE(is_step2_nilpotent(registry_get("Poincare", kUnit)));
}

TEST(Bch2, AssociativeOnStaticExt)
{
  const auto ext = registry_get("StaticExt");
  Gen gen;
  for (int i = 0; i < kTrials; ++i) {
    const AlgebraVector a = gen.vec(6), b = gen.vec(6), c = gen.vec(6);
    ASSERT_LE((bch2(ext, a, bch2(ext, b, c)) - bch2(ext, bch2(ext, a, b), c)).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Bch2, CentralPartIsAntisymmetricCocycle)
{
  const auto ext = registry_get("StaticExt");
  Gen gen;
  for (int i = 0; i < kTrials; ++i) {
    const GroupElement g = gen.group(), h = gen.group();
    const AlgebraVector z = bch2(ext, to_algebra(g), to_algebra(h));
    // oracle written out directly: (vx'-v'x, xt'-x't, vt'-v't) / 2
    ASSERT_NEAR(z[static_ext::M], 0.5 * (g.v * h.x - h.v * g.x), 1e-12);
    ASSERT_NEAR(z[static_ext::F], 0.5 * (g.x * h.t - h.x * g.t), 1e-12);
    ASSERT_NEAR(z[static_ext::Y], 0.5 * (g.v * h.t - h.v * g.t), 1e-12);
  }
}

TEST(AdMatrix, Examples)
{
  const auto st = registry_get("Static");
  EXPECT_TRUE(ad_matrix(st, st.basis("K") + 2.0 * st.basis("E")).isZero(0.0));

  const auto ext = registry_get("StaticExt");
  const Eigen::MatrixXd adK = ad_matrix(ext, ext.basis("K"));
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(6, 6);
  expect(static_ext::M, static_ext::P) = 1.0;
  expect(static_ext::Y, static_ext::E) = 1.0;
  EXPECT_EQ(adK, expect);

  // (1 + ad(vK + xP)) (0,0,0,0,dx,0) = (v dx, 0, 0, 0, dx, 0) when t = 0
  const double v = 1.5, x = -2.0, dx = 0.75;
  const AlgebraVector X = v * ext.basis("K") + x * ext.basis("P");
  const AlgebraVector d = dx * ext.basis("P");
  const AlgebraVector got = (Eigen::MatrixXd::Identity(6, 6) + ad_matrix(ext, X)) * d;
  EXPECT_EQ(got, vec({v * dx, 0, 0, 0, dx, 0}));
  // with t != 0 the F slot picks up -t dx
  const AlgebraVector Xt = X + 2.0 * ext.basis("E");
  const AlgebraVector gott = (Eigen::MatrixXd::Identity(6, 6) + ad_matrix(ext, Xt)) * d;
  EXPECT_EQ(gott, vec({v * dx, -2.0 * dx, 0, 0, dx, 0}));
}

TEST(AdMatrix, ExponentialTerminatesAtFirstOrder)
{
  const auto ext = registry_get("StaticExt");
  Gen gen;
  for (int i = 0; i < 50; ++i) {
    const Eigen::MatrixXd ad = ad_matrix(ext, to_algebra(gen.group()));
    EXPECT_TRUE((ad * ad).isZero(0.0));
    const Eigen::MatrixXd e = kinstatic::testing::exp_series(ad);
    EXPECT_LE((e - (Eigen::MatrixXd::Identity(6, 6) + ad)).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(BracketTable, ConstructionGuards)
{
  EXPECT_THROW(BracketTable("empty", {}), Error);
  BracketTable t("x", {"A", "B"});
  EXPECT_THROW(t.set("A", "A", "B", 1.0), Error);
  EXPECT_THROW(t.set("A", "Z", "B", 1.0), Error);
  t.set("A", "B", "B", 2.0);
  EXPECT_EQ(t(1, 0, 1), -2.0);
}
