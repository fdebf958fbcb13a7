#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace nk6;
using namespace nk6::test;

namespace {

// G(X,Y) from the definition: with Y extended by projection, nabla_X Y = 0 at
// x, so G(X,Y) is the tangential part of d/dt (c(t) x Y(c(t))) along the great
// circle c with c'(0) = X.
Vec7 g_by_definition(const Vec7& x, const Vec7& a, const Vec7& b, const MulTable& table) {
  const double len = a.norm();
  const Vec7 dir = a / len;
  const auto jy = [&](double t) {
    const Vec7 p = std::cos(t) * x + std::sin(t) * dir;
    const Vec7 y = b - b.dot(p) * p;
    return Vec7(table.cross(p, y));
  };
  const double h = 1e-3;
  const Vec7 d = (jy(-2 * h) - 8 * jy(-h) + 8 * jy(h) - jy(2 * h)) / (12 * h);
  return len * (d - d.dot(x) * x);
}

}  // namespace

TEST(MulTable, CayleyDicksonRows) {
  const MulTable t = MulTable::cayley_dickson();
  EXPECT_EQ(t.cross(unit(0), unit(0)), Vec7::Zero());
  EXPECT_EQ(t.cross(unit(0), unit(1)), unit(2));
  EXPECT_EQ(t.cross(unit(1), unit(0)), -unit(2));
  EXPECT_EQ(t.entries().size(), 7u);
  EXPECT_EQ(t.axiom_residual(), 0.0);
}

TEST(MulTable, TextRoundTrip) {
  for (const MulTable& t : MulTable::builtin_candidates()) {
    std::istringstream in(t.to_text());
    const MulTable back = MulTable::parse(in, t.name());
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        for (int k = 0; k < 7; ++k) EXPECT_EQ(back.f(i, j, k), t.f(i, j, k));
  }
}

TEST(MulTable, ShippedTablesMatchBuiltins) {
  const MulTable cd = MulTable::load(NK6_DATA_DIR "/cayley_dickson.table");
  const MulTable neg = MulTable::load(NK6_DATA_DIR "/cayley_dickson_negated.table");
  const MulTable ref = MulTable::cayley_dickson();
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        EXPECT_EQ(cd.f(i, j, k), ref.f(i, j, k));
        EXPECT_EQ(neg.f(i, j, k), -ref.f(i, j, k));
      }
}

TEST(MulTable, RejectsAxiomViolation) {
  std::istringstream in("1 2 3 1\n1 2 4 1\n");
  EXPECT_THROW(MulTable::parse(in, "bad"), TableError);
  // A Fano-incomplete table is antisymmetric but not a cross product.
  EXPECT_THROW(MulTable::from_entries({{1, 2, 3, 1}}, "partial"), TableError);
}

TEST(MulTable, RejectsMalformedText) {
  for (const char* text : {"", "1 2\n", "1 2 3 2\n", "1 2 9 1\n", "1 1 3 1\n", "a b c d\n"}) {
    std::istringstream in(text);
    EXPECT_ANY_THROW(MulTable::parse(in, "bad")) << text;
  }
  std::istringstream in("1 2 3 2\n");
  EXPECT_THROW(MulTable::parse(in, "bad"), ParseError);
}

TEST(MulTable, CrossProductAxiom) {
  const MulTable t = MulTable::cayley_dickson();
  std::mt19937_64 rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Vec7 u = random_vec7(rng), v = random_vec7(rng);
    const double lhs = t.cross(u, v).squaredNorm();
    const double rhs = u.squaredNorm() * v.squaredNorm() - std::pow(u.dot(v), 2);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, rhs));
  }
}

TEST(AlmostComplex, SquareAndCompatibility) {
  const MulTable t = MulTable::cayley_dickson();
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const SpherePoint x(random_unit7(rng));
    const Tangent7 u(x, random_tangent(rng, x.x()));
    const Tangent7 ju = almost_complex(x, u, t);
    const Tangent7 jju = almost_complex(x, ju, t);
    EXPECT_LT((jju.v() + u.v()).norm(), 1e-13);
    EXPECT_LT(std::abs(ju.v().dot(u.v())), 1e-13);
  }
  const SpherePoint e1(unit(0));
  const Tangent7 e2(e1, unit(1));
  EXPECT_LT((almost_complex(e1, e2, t).v() - unit(2)).norm(), 1e-15);
}

TEST(AlmostComplex, RejectsForeignBase) {
  const MulTable t = MulTable::cayley_dickson();
  const SpherePoint e1(unit(0)), e2(unit(1));
  EXPECT_THROW(almost_complex(e1, Tangent7(e2, unit(0)), t), DomainError);
  EXPECT_THROW(SpherePoint(2 * unit(0)), DomainError);
  EXPECT_THROW(Tangent7(e1, unit(0)), DomainError);
}

TEST(GTensor, MatchesDefinition) {
  for (const MulTable& t : MulTable::builtin_candidates()) {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 100; ++n) {
      const Vec7 x = random_unit7(rng);
      const Vec7 a = random_tangent(rng, x), b = random_tangent(rng, x);
      const SpherePoint p(x);
      const Vec7 g = g_tensor(p, Tangent7(p, a), Tangent7(p, b), t).v();
      EXPECT_LT((g - g_by_definition(x, a, b, t)).norm(), 1e-6 * a.norm() * b.norm());
      EXPECT_LT((g - g_tensor_fd(x, a, b, t)).norm(), 1e-6 * a.norm() * b.norm());
    }
  }
}

TEST(GTensor, OrthogonalToArguments) {
  const MulTable t = MulTable::cayley_dickson();
  std::mt19937_64 rng(8);
  for (int n = 0; n < 200; ++n) {
    const Vec7 x = random_unit7(rng);
    const Vec7 a = random_tangent(rng, x), b = random_tangent(rng, x);
    const Vec7 g = apply_g(x, a, b, t);
    EXPECT_LT(apply_g(x, a, a, t).norm(), 1e-14);
    EXPECT_LT(std::abs(g.dot(a)), 1e-13);
    EXPECT_LT(std::abs(g.dot(b)), 1e-13);
    EXPECT_LT(std::abs(g.dot(x)), 1e-14);
  }
}

TEST(Identities, HoldForEveryCandidateTable) {
  for (const MulTable& t : MulTable::builtin_candidates()) {
    const IdentityReport r = verify_nk_identities(t, 1000, 42);
    EXPECT_EQ(r.samples, 1000);
    EXPECT_LT(r.antisymmetry, 1e-12) << t.name();
    EXPECT_LT(r.j_compat, 1e-12) << t.name();
    EXPECT_LT(r.skew, 1e-12) << t.name();
    EXPECT_LT(r.inner_product, 1e-12) << t.name();
    EXPECT_LT(r.frame_products, 1e-12) << t.name();
    EXPECT_LT(r.j_square, 1e-12) << t.name();
    EXPECT_LT(r.derivative, 1e-6) << t.name();
  }
}

TEST(Identities, DeterministicForSeed) {
  const MulTable t = MulTable::cayley_dickson();
  const IdentityReport a = verify_nk_identities(t, 50, 9);
  const IdentityReport b = verify_nk_identities(t, 50, 9);
  EXPECT_EQ(a.inner_product, b.inner_product);
  EXPECT_EQ(a.derivative, b.derivative);
}
