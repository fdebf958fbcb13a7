#include "support.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <sstream>

using namespace nk6;
using namespace nk6::test;

namespace {

const MulTable& table() {
  static const MulTable t = MulTable::cayley_dickson();
  return t;
}

NablaH random_nabla(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  NablaH nh;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) nh(l, i, j, k) = u(rng);
  return nh;
}

}  // namespace

TEST(FTensor, ZeroForm) {
  EXPECT_EQ(f_tensor(SFF(), standard_g_normal()).norm_sq(), 0.0);
}

TEST(FTensor, NormIdentityOnRandomForms) {
  std::mt19937_64 rng(1);
  for (int n = 0; n < 1000; ++n) {
    const SFF h = random_trace_free(rng);
    for (double orientation : {1.0, -1.0}) {
      const Tensor3 f = f_tensor(h, standard_g_normal(orientation));
      EXPECT_NEAR(f.norm_sq(), 0.75 * h.norm_sq(), 1e-10);
    }
  }
}

TEST(FTensor, FrameValuesMatchStandard) {
  const auto dvv = dvv_immersion();
  for (const auto& q : random_chart_points(10, 2, 0.05)) {
    const FramePacket fr = frame(*dvv, q, table());
    const auto g = standard_g_normal(fr.volume_form > 0 ? 1.0 : -1.0);
    for (int i = 0; i < 3; ++i) EXPECT_LT((fr.g_normal[i] - g[i]).norm(), 1e-10);
    const SFF h = second_fundamental_form(fr);
    EXPECT_NEAR(f_tensor(h, fr).norm_sq(), 75.0 / 32, 1e-10);
  }
}

TEST(TTensor, DvvIsJParallel) {
  const auto dvv = dvv_immersion();
  for (const auto& q : random_chart_points(20, 3, 0.05)) {
    const FramePacket fr = frame(*dvv, q, table());
    const SFF h = second_fundamental_form(fr);
    const NablaH nh = nabla_h(fr, table());
    const TTensorPacket tt = t_tensor(nh, f_tensor(h, fr), h);
    EXPECT_LT(tt.t_sq, 1e-8);
    EXPECT_NEAR(tt.nabla_sq, 75.0 / 32, 1e-6);
    EXPECT_NEAR(tt.cross, 75.0 / 32, 1e-6);
    EXPECT_LT(tt.norm_identity_residual, 1e-6);
    EXPECT_LT(j_parallel_defect(nh), 1e-7);
  }
}

TEST(TTensor, TotallyGeodesicVanishes) {
  const auto tg = totally_geodesic_immersion(table());
  const PointAnalysis pa = analyze_point(*tg, ChartPoint(0.4, 1, 2), table());
  EXPECT_LT(pa.tt.t_sq, 1e-20);
  EXPECT_LT(pa.tt.f_sq, 1e-20);
  EXPECT_LT(pa.tt.nabla_sq, 1e-20);
  EXPECT_LT(pa.j_defect, 1e-10);
}

TEST(TTensor, RejectsInconsistentDerivative) {
  std::mt19937_64 rng(4);
  const SFF h = random_trace_free(rng);
  const NablaH nh = random_nabla(rng);
  const Tensor3 f = f_tensor(h, standard_g_normal());
  EXPECT_THROW(t_tensor(nh, f, h), IdentityViolation);
  const TTensorPacket tt = t_tensor(nh, f, h, 0);
  EXPECT_GT(tt.norm_identity_residual, 1e-6);
  EXPECT_LT(tt.expansion_residual, 1e-12);
}

TEST(JParallelDefect, BoundedByT) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 200; ++n) {
    const SFF h = random_trace_free(rng);
    const NablaH nh = random_nabla(rng);
    const TTensorPacket tt = t_tensor(nh, f_tensor(h, standard_g_normal()), h, 0);
    EXPECT_LE(j_parallel_defect(nh), std::sqrt(tt.t_sq) + 1e-12);
  }
}

TEST(GradientBound, HoldsOnBuiltinModels) {
  const auto dvv = dvv_immersion();
  const auto tg = totally_geodesic_immersion(table());
  for (const Immersion* imm : {static_cast<const Immersion*>(dvv.get()),
                               static_cast<const Immersion*>(tg.get())}) {
    for (const auto& q : random_chart_points(30, 6)) {
      const PointAnalysis pa = analyze_point(*imm, q, table());
      EXPECT_GE(pa.tt.nabla_sq - 0.75 * pa.hsq, -1e-8);
    }
  }
}

TEST(Laplacian, DvvIdentity) {
  const auto dvv = dvv_immersion();
  const LaplacianCheck lc = laplacian_identity_check(*dvv, ChartPoint(0.7, 1.5, 3.0), table());
  EXPECT_NEAR(lc.half_laplacian, 0.0, 1e-4);
  EXPECT_NEAR(lc.nabla_sq, 75.0 / 32, 1e-6);
  EXPECT_NEAR(lc.hsq, 25.0 / 8, 1e-10);
  EXPECT_NEAR(lc.q_direct, 750.0 / 64, 1e-8);
  EXPECT_NEAR(lc.rhs, 0.0, 1e-4);
  EXPECT_LT(lc.residual1, 1e-4);
  EXPECT_LT(lc.residual2, 1e-10);
}

TEST(Laplacian, RegroupedRightHandSide) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int n = 0; n < 10000; ++n) {
    const CanonicalData cd = canonical_from_tuple(u(rng), u(rng), u(rng), u(rng));
    const double hsq = sff_from_tuple(cd.lambda1, cd.lambda2, cd.mu1, cd.mu2).norm_sq();
    const double q = commutator_invariant_direct(h_matrices(cd)).q;
    const double expected = 0.75 * hsq + 3 * hsq - q;
    const double got = laplacian_regrouped_rhs(cd, 0);
    EXPECT_LT(std::abs(got - expected), 1e-10 * std::max({1.0, std::abs(expected), q}));
  }
}

TEST(PointAnalysis, DvvSummary) {
  const auto dvv = dvv_immersion();
  const PointAnalysis pa = analyze_point(*dvv, ChartPoint(0.3, 0.2, 5.0), table());
  EXPECT_NEAR(pa.hsq, 25.0 / 8, 1e-10);
  EXPECT_NEAR(pa.theta, std::sqrt(5.0) / 2, 1e-10);
  EXPECT_NEAR(pa.integrand, 0.0, 1e-10);
  EXPECT_LT(pa.codazzi_residual, 1e-7);
  EXPECT_LT(pa.g_identity_residual, 1e-7);
  EXPECT_LT(pa.sff_trace_residual, 1e-10);
}

TEST(Integrand, Formula) {
  EXPECT_DOUBLE_EQ(simons_integrand(2.0, 1.0), 2.0 * (2.0 - 1.25 - 1.5));
  EXPECT_EQ(simons_integrand(0.0, 0.0), 0.0);
  EXPECT_NEAR(simons_integrand(25.0 / 8, std::sqrt(5.0) / 2), 0.0, 1e-15);
}

TEST(Quadrature, GaussLegendreExactness) {
  for (int n : {1, 2, 5, 16, 32}) {
    const Nodes1D g = gauss_legendre(n, 0, std::numbers::pi / 2);
    for (double x : g.x) {
      EXPECT_GT(x, 0);
      EXPECT_LT(x, std::numbers::pi / 2);
    }
    for (int deg = 0; deg <= 2 * n - 1; ++deg) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += g.w[i] * std::pow(g.x[i], deg);
      const double exact = std::pow(std::numbers::pi / 2, deg + 1) / (deg + 1);
      EXPECT_NEAR(s, exact, 1e-13 * exact) << n << " " << deg;
    }
  }
  EXPECT_THROW(gauss_legendre(0, 0, 1), DomainError);
}

TEST(Quadrature, TrapezoidExactForTrigPolynomials) {
  const Nodes1D t = periodic_trapezoid(8, 2 * std::numbers::pi);
  // cos^2(x) cos(kx) has frequencies up to k + 2, below the 8 nodes for k < 6.
  for (int k = 0; k < 6; ++k) {
    double s = 0;
    for (size_t i = 0; i < t.x.size(); ++i) s += t.w[i] * std::pow(std::cos(t.x[i]), 2) * std::cos(k * t.x[i]);
    const double exact = k == 0 ? std::numbers::pi : k == 2 ? std::numbers::pi / 2 : 0.0;
    EXPECT_NEAR(s, exact, 1e-14);
  }
}

TEST(Quadrature, RuleParsing) {
  const QuadratureRule r = QuadratureRule::parse("8,16,4");
  EXPECT_EQ(r.n_eta, 8);
  EXPECT_EQ(r.n_xi2, 4);
  EXPECT_EQ(r.node_count(), 512);
  EXPECT_EQ(r.eta_exactness(), 15);
  EXPECT_EQ(r.to_string(), "8,16,4");
  for (const char* bad : {"", "8,8", "8,8,8,8", "8,x,8", "0,8,8", "8,8,-1", "8,8,8.5"})
    EXPECT_THROW(QuadratureRule::parse(bad), ParseError) << bad;
}

TEST(Quadrature, PairwiseSum) {
  std::vector<double> v(1000, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 100.0, 1e-12);
  EXPECT_EQ(pairwise_sum({}), 0.0);
}

TEST(Quadrature, ParallelForCoversAndPropagates) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(100, 4, [&](int i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3, [](int i) { if (i == 7) throw DomainError("x"); }),
               DomainError);
}

TEST(Inequality, DvvEquality) {
  const auto dvv = dvv_immersion();
  const InequalityReport rep = integrate_inequality(*dvv, table(), QuadratureRule{32, 32, 32});
  EXPECT_NEAR(rep.integral, 0.0, 1e-8);
  EXPECT_LT(rep.sup_norm, 1e-10);
  EXPECT_EQ(rep.classification, EqualityClass::DvvType);
  EXPECT_FALSE(rep.violation);
  EXPECT_NEAR(rep.volume / (32 * std::numbers::pi * std::numbers::pi / 9), 1.0, 1e-6);
  EXPECT_NEAR(rep.hsq_max, 25.0 / 8, 1e-10);
  ASSERT_TRUE(rep.volume_delta);
  EXPECT_LT(*rep.volume_delta, 1e-8);
  EXPECT_EQ(rep.samples.size(), 32u * 32 * 32);
}

TEST(Inequality, TotallyGeodesicEquality) {
  const auto tg = totally_geodesic_immersion(table());
  const InequalityReport rep = integrate_inequality(*tg, table(), QuadratureRule{16, 16, 16});
  EXPECT_EQ(rep.integral, 0.0);
  EXPECT_LT(rep.hsq_max, 1e-20);
  EXPECT_EQ(rep.classification, EqualityClass::Geodesic);
  EXPECT_NEAR(rep.volume, 2 * std::numbers::pi * std::numbers::pi, 1e-10);
}

TEST(Inequality, RefinementAgreement) {
  const auto dvv = dvv_immersion();
  InequalityOptions opts;
  opts.check_refinement = false;
  const auto coarse = integrate_inequality(*dvv, table(), QuadratureRule{8, 8, 8}, opts);
  const auto fine = integrate_inequality(*dvv, table(), QuadratureRule{32, 32, 32}, opts);
  EXPECT_NEAR(coarse.volume / fine.volume, 1.0, 1e-6);
  EXPECT_FALSE(coarse.coarse_rule);
}

TEST(Inequality, UnderResolvedRuleRaises) {
  const auto dvv = dvv_immersion();
  InequalityOptions opts;
  opts.coarse = QuadratureRule{2, 2, 2};
  EXPECT_THROW(integrate_inequality(*dvv, table(), QuadratureRule{16, 16, 16}, opts),
               ResolutionError);
}

TEST(Inequality, ThreadCountDoesNotChangeResult) {
  const auto dvv = dvv_immersion();
  InequalityOptions one, four;
  one.threads = 1;
  four.threads = 4;
  one.check_refinement = four.check_refinement = false;
  const auto a = integrate_inequality(*dvv, table(), QuadratureRule{8, 8, 8}, one);
  const auto b = integrate_inequality(*dvv, table(), QuadratureRule{8, 8, 8}, four);
  EXPECT_EQ(a.integral, b.integral);
  EXPECT_EQ(a.volume, b.volume);
}

TEST(Inequality, SamplesCsv) {
  const auto tg = totally_geodesic_immersion(table());
  InequalityOptions opts;
  opts.check_refinement = false;
  const auto rep = integrate_inequality(*tg, table(), QuadratureRule{2, 2, 2}, opts);
  std::ostringstream out;
  rep.write_samples_csv(out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "eta,xi1,xi2,hsq,theta,integrand,sqrt_det");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 8);
}
