#include "nk6/simons.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nk6 {

double Tensor3::norm_sq() const {
  double s = 0;
  for (double v : c_) s += v * v;
  return s;
}

std::array<Mat3, 3> standard_g_normal(double orientation) {
  std::array<Mat3, 3> g;
  for (auto& m : g) m.setZero();
  const int perm[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : perm) {
    g[p[0]](p[1], p[2]) = orientation;
    g[p[0]](p[2], p[1]) = -orientation;
  }
  return g;
}

Tensor3 f_tensor(const SFF& h, const std::array<Mat3, 3>& gn) {
  Tensor3 f;
  for (int l = 0; l < 3; ++l)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = 0;
          for (int m = 0; m < 3; ++m) {
            s += h(m, b, c) * gn[a](m, l) + h(m, a, c) * gn[b](m, l) +
                 h(m, a, b) * gn[c](m, l);
          }
          f(l, a, b, c) = 0.25 * s;
        }
  return f;
}

Tensor3 f_tensor(const SFF& h, const FramePacket& fr) { return f_tensor(h, fr.g_normal); }

Tensor3 nabla_h_tensor(const NablaH& nh) {
  Tensor3 t;
  for (int l = 0; l < 3; ++l)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) t(l, a, b, c) = nh(l, b, c, a);
  return t;
}

TTensorPacket t_tensor(const NablaH& nh, const Tensor3& f, const SFF& h, double tol) {
  TTensorPacket p;
  p.f = f;
  const Tensor3 dh = nabla_h_tensor(nh);
  for (int l = 0; l < 3; ++l)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          p.t(l, a, b, c) = dh(l, a, b, c) - f(l, a, b, c);
          p.cross += dh(l, a, b, c) * f(l, a, b, c);
        }
  p.f_sq = f.norm_sq();
  p.t_sq = p.t.norm_sq();
  p.nabla_sq = nh.norm_sq();
  p.hsq = h.norm_sq();
  p.norm_identity_residual = std::abs(p.nabla_sq - p.t_sq - 0.75 * p.hsq);
  p.cross_residual = std::abs(p.cross - 0.75 * p.hsq);
  p.expansion_residual = std::abs(p.t_sq - (p.nabla_sq + p.f_sq - 2 * p.cross));
  if (tol > 0) {
    if (p.norm_identity_residual > tol) {
      throw IdentityViolation("|nabla h|^2 = |T|^2 + (3/4)|h|^2 fails", p.norm_identity_residual);
    }
    if (p.cross_residual > tol) {
      throw IdentityViolation("sum g(nabla h, F) = (3/4)|h|^2 fails", p.cross_residual);
    }
  }
  return p;
}

double j_parallel_defect(const NablaH& nh, int grid_polar, int grid_azimuth) {
  double worst = 0;
  for (int a = 0; a < grid_polar; ++a) {
    const double th = (a + 0.5) * std::numbers::pi / grid_polar;
    for (int b = 0; b < grid_azimuth; ++b) {
      const double ph = 2 * std::numbers::pi * b / grid_azimuth;
      const Vec3 v{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
      double s = 0;
      for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s += nh(l, i, j, k) * v[i] * v[j] * v[k] * v[l];
      worst = std::max(worst, std::abs(s));
    }
  }
  return worst;
}

double laplacian_regrouped_rhs(const CanonicalData& cd, double t_sq) {
  const ClosedForms cf = closed_forms(cd);
  const double s = cd.lambda1 + cd.lambda2;
  return t_sq + 3.75 * cf.hsq - 3 * cf.hsq * cf.hsq + 4.5 * s * s * cf.hsq + cf.r_residual;
}

LaplacianCheck laplacian_identity_check(const Immersion& imm, const ChartPoint& q,
                                        const MulTable& table, double step) {
  LaplacianCheck lc;
  const PointAnalysis pa = analyze_point(imm, q, table);
  const ScalarField hsq_field = [&](const ChartPoint& p) {
    return second_fundamental_form(imm, p, table).norm_sq();
  };
  lc.half_laplacian = 0.5 * laplace_beltrami(imm, hsq_field, q, step);
  lc.nabla_sq = pa.tt.nabla_sq;
  lc.hsq = pa.hsq;
  lc.t_sq = pa.tt.t_sq;
  lc.q_direct = commutator_invariant_direct(h_matrices(pa.h)).q;
  lc.rhs = lc.nabla_sq + 3 * lc.hsq - lc.q_direct;
  lc.residual1 = std::abs(lc.half_laplacian - lc.rhs);
  lc.residual2 = std::abs(lc.rhs - laplacian_regrouped_rhs(pa.canonical, lc.t_sq));
  return lc;
}

double simons_integrand(double hsq, double theta) {
  return hsq * (hsq - 1.25 - 1.5 * theta * theta);
}

PointAnalysis analyze_point(const Immersion& imm, const ChartPoint& q, const MulTable& table,
                            const FrameOptions& opts) {
  PointAnalysis pa;
  pa.q = q;
  FrameOptions o = opts;
  o.jet_order = 3;
  pa.frame = frame(imm, q, table, o);
  pa.h = second_fundamental_form(pa.frame);
  pa.nabla = nabla_h(pa.frame, table);
  pa.curvature = curvature(pa.h);
  pa.canonical = canonical_basis(pa.h);
  pa.theta = pa.canonical.theta;
  pa.hsq = pa.h.norm_sq();
  pa.integrand = simons_integrand(pa.hsq, pa.theta);
  pa.tt = t_tensor(pa.nabla, f_tensor(pa.h, pa.frame), pa.h, 0);
  pa.j_defect = j_parallel_defect(pa.nabla);
  pa.codazzi_residual = pa.nabla.codazzi_residual();
  pa.g_identity_residual = pa.nabla.g_identity_residual(pa.h, pa.frame);
  pa.sff_symmetry_residual = pa.h.symmetry_residual();
  pa.sff_trace_residual = pa.h.trace_residual();
  pa.sff_normal_residual = sff_normal_residual(pa.frame);
  return pa;
}

}  // namespace nk6
