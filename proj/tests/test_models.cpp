#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace nk6;
using namespace nk6::test;

namespace {

const MulTable& table() {
  static const MulTable t = MulTable::cayley_dickson();
  return t;
}

using Field = Vec4 (*)(const Vec4&);

Vec4 flow(Field f, Vec4 y, double t) {
  const int steps = 8;
  const double h = t / steps;
  for (int s = 0; s < steps; ++s) {
    const Vec4 k1 = f(y), k2 = f(y + 0.5 * h * k1), k3 = f(y + 0.5 * h * k2),
               k4 = f(y + h * k3);
    y += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return y;
}

// Lie bracket from the flow commutator: phi^Y_-t phi^X_-t phi^Y_t phi^X_t (y)
// = y + t^2 [X,Y](y) + O(t^3).
Vec4 bracket_by_flows(Field x, Field y, const Vec4& p) {
  const auto loop = [&](double t) {
    return flow(y, flow(x, flow(y, flow(x, p, t), t), -t), -t);
  };
  const double t = 1e-3;
  // Richardson step removes the O(t^3) term.
  return 2 * (loop(t / 2) - p) / (t * t / 4) - (loop(t) - p) / (t * t);
}

Vec4 random_s3(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  return Vec4(n01(rng), n01(rng), n01(rng), n01(rng)).normalized();
}

Vec4 tangent_s3(std::mt19937_64& rng, const Vec4& y) {
  std::normal_distribution<double> n01;
  Vec4 v(n01(rng), n01(rng), n01(rng), n01(rng));
  return v - v.dot(y) * y;
}

}  // namespace

TEST(Hopf, RoundTripAndJacobian) {
  for (const auto& q : random_chart_points(100, 1, 0.01)) {
    const Vec4 y = hopf_to_s3(q);
    EXPECT_NEAR(y.norm(), 1.0, 1e-15);
    const ChartPoint back = s3_to_hopf(y);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(back[a], q[a], 1e-12);
    const auto jac = hopf_jacobian(q);
    for (int a = 0; a < 3; ++a) {
      const double h = 1e-6;
      const Vec4 d = (hopf_to_s3(q.shifted(a, h)) - hopf_to_s3(q.shifted(a, -h))) / (2 * h);
      EXPECT_LT((jac.col(a) - d).norm(), 1e-9);
    }
  }
}

TEST(Hopf, RandomPointsAreUniformOnS3) {
  const auto pts = random_chart_points(100000, 2, 1e-3);
  Vec4 mean = Vec4::Zero(), second = Vec4::Zero();
  for (const auto& q : pts) {
    EXPECT_GE(q[0], 1e-3);
    EXPECT_LE(q[0], std::numbers::pi / 2 - 1e-3);
    const Vec4 y = hopf_to_s3(q);
    mean += y;
    second += y.cwiseProduct(y);
  }
  mean /= pts.size();
  second /= pts.size();
  for (int c = 0; c < 4; ++c) {
    EXPECT_NEAR(mean[c], 0.0, 0.01);
    EXPECT_NEAR(second[c], 0.25, 0.01);
  }
  EXPECT_EQ(random_chart_points(5, 3)[4][2], random_chart_points(5, 3)[4][2]);
}

TEST(Fields, OrthonormalTangent) {
  std::mt19937_64 rng(4);
  for (int n = 0; n < 100; ++n) {
    const Vec4 y = random_s3(rng);
    const std::array<Vec4, 3> x{field_x1(y), field_x2(y), field_x3(y)};
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(x[i].dot(y), 0.0, 1e-15);
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(x[i].dot(x[j]), i == j ? 1.0 : 0.0, 1e-15);
    }
  }
}

TEST(Fields, LieBracketsFromFlows) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 10; ++n) {
    const Vec4 y = random_s3(rng);
    EXPECT_LT((bracket_by_flows(field_x1, field_x2, y) - 2 * field_x3(y)).norm(), 1e-5);
    EXPECT_LT((bracket_by_flows(field_x2, field_x3, y) - 2 * field_x1(y)).norm(), 1e-5);
    EXPECT_LT((bracket_by_flows(field_x3, field_x1, y) - 2 * field_x2(y)).norm(), 1e-5);
  }
}

TEST(Dvv, PoleAndSphere) {
  const auto dvv = dvv_immersion();
  const Vec7 p = dvv->at(Vec4(1, 0, 0, 0));
  EXPECT_NEAR(p[0], 1.0, 1e-15);
  EXPECT_LT(p.tail<6>().norm(), 1e-15);
  std::mt19937_64 rng(6);
  for (int n = 0; n < 100; ++n) EXPECT_NEAR(dvv->at(random_s3(rng)).norm(), 1.0, 1e-14);
}

TEST(Dvv, PullbackMetricAndLagrangian) {
  const auto dvv = dvv_immersion();
  std::mt19937_64 rng(7);
  const Vec3 w(4.0 / 9, 8.0 / 3, 8.0 / 3);
  for (int n = 0; n < 100; ++n) {
    const Vec4 y = random_s3(rng);
    const Vec7 x = dvv->at(y);
    const std::array<Vec7, 3> d{dvv->push_forward(y, field_x1(y)),
                                dvv->push_forward(y, field_x2(y)),
                                dvv->push_forward(y, field_x3(y))};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(d[i].dot(d[j]), i == j ? w[i] : 0.0, 1e-10);
        EXPECT_NEAR(apply_j(x, d[i], table()).dot(d[j]), 0.0, 1e-10);
      }
  }
}

TEST(Dvv, PushForwardMatchesDifferences) {
  const auto dvv = dvv_immersion();
  std::mt19937_64 rng(8);
  for (int n = 0; n < 20; ++n) {
    const Vec4 y = random_s3(rng);
    const Vec4 v = tangent_s3(rng, y);
    const double h = 1e-5;
    const Vec7 d = (dvv->at(y + h * v) - dvv->at(y - h * v)) / (2 * h);
    EXPECT_LT((dvv->push_forward(y, v) - d).norm(), 1e-8);
  }
}

TEST(Dvv, ShippedPolynomialMatchesBuiltin) {
  const Polynomial4 shipped = Polynomial4::load(NK6_DATA_DIR "/dvv.poly");
  const Polynomial4 builtin = dvv_polynomial();
  EXPECT_EQ(shipped.degree(), 2);
  std::mt19937_64 rng(9);
  for (int n = 0; n < 50; ++n) {
    const Vec4 y = random_s3(rng);
    EXPECT_LT((shipped(y) - builtin(y)).norm(), 1e-15);
  }
  const Model m = make_model(NK6_DATA_DIR "/dvv.poly", table());
  ASSERT_TRUE(m.has_jets());
  const SFF h = second_fundamental_form(*m.immersion, ChartPoint(0.5, 1, 2), table());
  EXPECT_NEAR(h.norm_sq(), 25.0 / 8, 1e-10);
}

TEST(Polynomial, ParseErrors) {
  for (const char* text : {"8 1 0 0 0 1\n", "1 1 0 0\n", "1 -1 0 0 0 1\n", "x\n"}) {
    std::istringstream in(text);
    EXPECT_THROW(Polynomial4::parse(in), ParseError) << text;
  }
}

TEST(Polynomial, JetEvaluationMatchesValues) {
  const Polynomial4 p = dvv_polynomial();
  const ChartPoint q(0.4, 1.3, 2.2);
  std::array<Jet, 4> y;
  const Vec4 yv = hopf_to_s3(q);
  for (int c = 0; c < 4; ++c) y[c] = Jet::constant(yv[c], 3);
  const auto out = p(y);
  const Vec7 direct = p(yv);
  for (int c = 0; c < 7; ++c) EXPECT_NEAR(out[c].value(), direct[c], 1e-15);
}

TEST(PolynomialModel, RejectsMapsOffTheSphere) {
  const std::string path = testing::TempDir() + "/off_sphere.poly";
  std::ofstream(path) << "1 1 0 0 0 2\n";
  EXPECT_THROW(make_model(path, table()), DomainError);
}

TEST(Berger, Coefficients) {
  const BergerSpec spec;
  EXPECT_DOUBLE_EQ(spec.alpha(), 1.0 / 16);
  EXPECT_DOUBLE_EQ(spec.beta(), 20.0 / 16);
}

TEST(Berger, SectionalCurvatures) {
  const BergerSpec spec;
  std::mt19937_64 rng(10);
  const double b = std::sqrt(3.0) / (2 * std::sqrt(2.0));
  for (int n = 0; n < 100; ++n) {
    const Vec4 y = random_s3(rng);
    const Vec4 e1 = 1.5 * field_x1(y), e2 = b * field_x2(y), e3 = -b * field_x3(y);
    EXPECT_NEAR(berger_inner(spec, y, e1, e1), 1.0, 1e-14);
    EXPECT_NEAR(berger_sectional(spec, y, e1, e2), 1.0 / 16, 1e-12);
    EXPECT_NEAR(berger_sectional(spec, y, e2, e3), 21.0 / 16, 1e-12);
    // Unit normal n of a random plane in the orthonormal frame; cos phi = <n, E1>.
    const Vec3 nrm = random_unit3(rng);
    Vec3 a = nrm.cross(Vec3::UnitX());
    if (a.norm() < 1e-6) a = nrm.cross(Vec3::UnitY());
    const Vec3 c = nrm.cross(a);
    const auto vec = [&](const Vec3& v) { return Vec4(v[0] * e1 + v[1] * e2 + v[2] * e3); };
    EXPECT_NEAR(berger_sectional(spec, y, vec(a), vec(c)),
                1.0 / 16 + 20.0 / 16 * nrm[0] * nrm[0], 1e-12);
  }
}

TEST(Berger, RejectsBadInput) {
  const Vec4 y(1, 0, 0, 0);
  EXPECT_THROW(berger_sectional(BergerSpec{}, y, y, field_x1(y)), DomainError);
  EXPECT_THROW(berger_sectional(BergerSpec{-1, 1}, y, field_x1(y), field_x2(y)), DomainError);
}

TEST(Berger, AgreesWithGaussEquationAt1000Planes) {
  const auto dvv = dvv_immersion();
  const BergerSpec spec;
  std::mt19937_64 rng(11);
  FrameOptions fo;
  fo.source = FrameSource::Fields;
  int planes = 0;
  for (const auto& q : random_chart_points(100, 12, 0.05)) {
    const CurvaturePacket cp = curvature(*dvv, q, table(), fo);
    const Vec4 y = hopf_to_s3(q);
    const double b = std::sqrt(3.0) / (2 * std::sqrt(2.0));
    const std::array<Vec4, 3> e{1.5 * field_x1(y), b * field_x2(y), -b * field_x3(y)};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            EXPECT_NEAR(cp(i, j, k, l), berger_curvature(spec, y, e[i], e[j], e[k], e[l]), 1e-8);
    for (int n = 0; n < 10; ++n, ++planes) {
      const Vec3 u = random_unit3(rng), v = random_unit3(rng);
      const auto vec = [&](const Vec3& c) { return Vec4(c[0] * e[0] + c[1] * e[1] + c[2] * e[2]); };
      const double k = cp.sectional(u, v);
      EXPECT_NEAR(k, berger_sectional(spec, y, vec(u), vec(v)), 1e-8);
      EXPECT_GE(k, 1.0 / 16 - 1e-8);
      EXPECT_LE(k, 21.0 / 16 + 1e-8);
    }
  }
  EXPECT_EQ(planes, 1000);
}

TEST(TotallyGeodesic, CoordinatePlane) {
  for (const MulTable& t : MulTable::builtin_candidates()) {
    const auto w = lagrangian_coordinate_plane(t);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const Vec7 p = t.cross(unit(w[a]), unit(w[b]));
        for (int c = 0; c < 4; ++c) EXPECT_EQ(p[w[c]], 0.0);
      }
    const auto tg = totally_geodesic_immersion(t);
    for (const auto& q : random_chart_points(100, 13)) {
      const FramePacket fr = frame(*tg, q, t);
      EXPECT_LT(fr.lagrangian_residual, 1e-10);
      EXPECT_LT(second_fundamental_form(fr).norm_sq(), 1e-20);
    }
  }
}

TEST(Synthetic, Cases) {
  const SyntheticH a = synthetic_case('a'), b = synthetic_case("b"), c = synthetic_case('c');
  EXPECT_EQ(sff_from_tuple(a).norm_sq(), 0.0);
  EXPECT_NEAR(sff_from_tuple(b).norm_sq(), 45.0 / 8, 1e-14);
  EXPECT_NEAR(sff_from_tuple(c).norm_sq(), 25.0 / 8, 1e-14);
  EXPECT_NEAR(maximize_theta(sff_from_tuple(c)).theta, std::sqrt(5.0) / 2, 1e-10);
  EXPECT_THROW(synthetic_case('d'), DomainError);
  EXPECT_THROW(synthetic_case("ab"), DomainError);
}

TEST(TableSelection, OrientationOracle) {
  const auto candidates = MulTable::builtin_candidates();
  const TableScore cd = score_table(candidates[0]);
  EXPECT_TRUE(cd.accepted());
  EXPECT_NEAR(cd.h11, std::sqrt(5.0) / 2, 1e-10);
  const TableScore neg = score_table(candidates[1]);
  EXPECT_FALSE(neg.accepted());
  EXPECT_LT(neg.h11, 0);
  EXPECT_EQ(select_table(candidates).name(), candidates[0].name());
  EXPECT_EQ(select_table({candidates[1], candidates[0]}).name(), candidates[0].name());
  EXPECT_THROW(select_table({candidates[1]}), TableError);
}

TEST(Models, Registry) {
  EXPECT_TRUE(make_model("dvv", table()).has_jets());
  EXPECT_TRUE(make_model("totally-geodesic", table()).has_jets());
  const Model s = make_model("synthetic:b", table());
  EXPECT_FALSE(s.has_jets());
  EXPECT_EQ(s.synthetic->tag, 'b');
  EXPECT_THROW(make_model("nope", table()), DomainError);
}
