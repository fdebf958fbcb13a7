#include "nk6/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <vector>

namespace nk6 {

namespace {

// Symmetric cubic in the ten monomials u_i u_j u_k, i <= j <= k, with
// multinomial weights folded into the coefficients.
struct Cubic {
  std::array<double, 10> w{};

  explicit Cubic(const SFF& h) {
    const auto c = h.symmetric_components();
    int n = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j)
        for (int k = j; k < 3; ++k, ++n) {
          const double mult = (i == j && j == k) ? 1 : ((i == j || j == k) ? 3 : 6);
          w[n] = mult * c[n];
        }
  }
};

struct GridMonomials {
  int polar, azimuth;
  double spacing;                            // max angular gap to the nearest node
  std::array<std::vector<double>, 10> mono;  // mono[m][node]
  std::vector<Vec3> points;

  GridMonomials(int p, int q) : polar(p), azimuth(q) {
    const size_t n = static_cast<size_t>(p) * q;
    for (auto& m : mono) m.resize(n);
    points.resize(n);
    spacing = std::hypot(std::numbers::pi / p, 2 * std::numbers::pi / q) / 2;
    for (int a = 0; a < p; ++a) {
      const double th = (a + 0.5) * std::numbers::pi / p;
      for (int b = 0; b < q; ++b) {
        const double ph = 2 * std::numbers::pi * b / q;
        const Vec3 u{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
        const size_t idx = static_cast<size_t>(a) * q + b;
        points[idx] = u;
        int m = 0;
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j)
            for (int k = j; k < 3; ++k, ++m) mono[m][idx] = u[i] * u[j] * u[k];
      }
    }
  }
};

const GridMonomials& grid(int p, int q) {
  static const GridMonomials standard(64, 128);
  if (p == standard.polar && q == standard.azimuth) return standard;
  thread_local std::unique_ptr<GridMonomials> custom;
  if (!custom || custom->polar != p || custom->azimuth != q) {
    custom = std::make_unique<GridMonomials>(p, q);
  }
  return *custom;
}

// C(u, u, .) as a vector, and C(u, ., .) as a matrix.
Vec3 cubic_gradient_half(const SFF& h, const Vec3& u) {
  Vec3 g = Vec3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[k] += h(k, i, j) * u[i] * u[j];
  return g;
}

Mat3 cubic_contract(const SFF& h, const Vec3& u) {
  Mat3 m = Mat3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) += h(k, i, j) * u[k];
  return m;
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3& u) {
  int axis = 0;
  for (int a = 1; a < 3; ++a)
    if (std::abs(u[a]) < std::abs(u[axis])) axis = a;
  Vec3 a = Vec3::Unit(axis);
  a = (a - a.dot(u) * u).normalized();
  return {a, u.cross(a)};
}

ThetaResult refine(const SFF& h, Vec3 u, const ThetaOptions& opts) {
  ThetaResult r;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Vec3 g = 3.0 * cubic_gradient_half(h, u);
    const Vec3 rg = g - g.dot(u) * u;
    r.gradient_norm = rg.norm();
    if (r.gradient_norm < opts.gradient_tolerance) break;
    const auto [a, b] = tangent_basis(u);
    const Mat3 hess = 6.0 * cubic_contract(h, u);
    Eigen::Matrix2d hr;
    hr << a.dot(hess * a), a.dot(hess * b), b.dot(hess * a), b.dot(hess * b);
    hr -= g.dot(u) * Eigen::Matrix2d::Identity();
    const Eigen::Vector2d gr{rg.dot(a), rg.dot(b)};
    Eigen::Vector2d step;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(hr, Eigen::EigenvaluesOnly);
    if (es.eigenvalues()[1] < 0) {
      step = -hr.ldlt().solve(gr);
    } else {
      // Gradient ascent with backtracking.
      const double f0 = h.cubic(u);
      double t = 0.5 / std::max(1.0, gr.norm());
      step = t * gr;
      for (int k = 0; k < 40; ++k) {
        const Vec3 trial = (u + step[0] * a + step[1] * b).normalized();
        if (h.cubic(trial) > f0) break;
        step *= 0.5;
      }
    }
    if (step.norm() > 0.5) step *= 0.5 / step.norm();
    u = (u + step[0] * a + step[1] * b).normalized();
    if (step.norm() < 1e-15) break;
  }
  r.u = u;
  r.theta = h.cubic(u);
  const Vec3 g = 3.0 * cubic_gradient_half(h, u);
  r.gradient_norm = (g - g.dot(u) * u).norm();
  return r;
}

bool lex_greater(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] > b[i]) return true;
    if (a[i] < b[i]) return false;
  }
  return false;
}

double max_abs_difference(const SFF& a, const SFF& b) {
  double r = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r = std::max(r, std::abs(a(k, i, j) - b(k, i, j)));
  return r;
}

double frobenius_sq(const Mat3& m) { return m.squaredNorm(); }

}  // namespace

ThetaResult maximize_theta(const SFF& h, const ThetaOptions& opts) {
  if (h.norm_sq() == 0) return {};
  const Cubic cubic(h);
  const GridMonomials& g = grid(opts.grid_polar, opts.grid_azimuth);
  const int p = g.polar, q = g.azimuth;
  const size_t n = g.points.size();
  std::vector<double> vals(n, 0.0);
  for (int m = 0; m < 10; ++m) {
    const double w = cubic.w[m];
    const double* mono = g.mono[m].data();
    for (size_t i = 0; i < n; ++i) vals[i] += w * mono[i];
  }
  // A maximizer lies within `spacing` of some node, and the second derivative
  // of f along great circles is bounded by 9 |h|, so nodes further than this
  // margin below the best node cannot seed the global maximum.
  const double top = *std::max_element(vals.begin(), vals.end());
  const double margin = 2 * 9 * std::sqrt(h.norm_sq()) * g.spacing * g.spacing;
  std::vector<size_t> cands;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < q; ++b) {
      const size_t idx = static_cast<size_t>(a) * q + b;
      if (vals[idx] < top - margin) continue;
      bool is_max = true;
      for (int da = -1; da <= 1 && is_max; ++da)
        for (int db = -1; db <= 1; ++db) {
          if (da == 0 && db == 0) continue;
          const int aa = a + da;
          if (aa < 0 || aa >= p) continue;
          const int bb = (b + db + q) % q;
          if (vals[static_cast<size_t>(aa) * q + bb] > vals[idx]) {
            is_max = false;
            break;
          }
        }
      if (is_max) cands.push_back(idx);
    }
  std::stable_sort(cands.begin(), cands.end(),
                   [&](size_t x, size_t y) { return vals[x] > vals[y]; });
  if (static_cast<int>(cands.size()) > opts.max_candidates) cands.resize(opts.max_candidates);

  ThetaResult best;
  best.theta = -std::numeric_limits<double>::infinity();
  for (size_t idx : cands) {
    const ThetaResult r = refine(h, g.points[idx], opts);
    const double tie = 1e-12 * std::max(1.0, std::abs(r.theta));
    if (r.theta > best.theta + tie ||
        (std::abs(r.theta - best.theta) <= tie && lex_greater(r.u, best.u))) {
      best = r;
    }
  }
  return best;
}

SFF sff_from_tuple(double l1, double l2, double m1, double m2) {
  // C(i,j,k), i <= j <= k: 111 112 113 122 123 133 222 223 233 333.
  return SFF::from_symmetric({l1 + l2, 0, 0, -l1, 0, -l2, m1, m2, -m1, -m2});
}

SFF sff_from_tuple(const SyntheticH& s) {
  return sff_from_tuple(s.lambda1, s.lambda2, s.mu1, s.mu2);
}

namespace {

void set_flags(CanonicalData& cd, double slack) {
  const double sum = cd.lambda1 + cd.lambda2;
  cd.sum_nonnegative = sum >= -slack;
  cd.triple_nonnegative =
      3 * cd.lambda1 + cd.lambda2 >= -slack && 3 * cd.lambda2 + cd.lambda1 >= -slack;
  cd.mu_bounded = std::abs(cd.mu1) <= sum + slack && std::abs(cd.mu2) <= sum + slack;
}

}  // namespace

CanonicalData canonical_from_tuple(double l1, double l2, double m1, double m2) {
  CanonicalData cd;
  cd.lambda1 = l1;
  cd.lambda2 = l2;
  cd.mu1 = m1;
  cd.mu2 = m2;
  cd.theta = l1 + l2;
  set_flags(cd, 1e-8);
  return cd;
}

CanonicalData canonical_basis(const SFF& h, const CanonicalOptions& opts) {
  CanonicalData cd;
  if (h.norm_sq() == 0) return cd;
  const ThetaResult tr = maximize_theta(h, opts.theta);
  cd.theta = tr.theta;
  const double scale = std::max(1.0, std::sqrt(h.norm_sq()));
  cd.degenerate = std::abs(tr.theta) < opts.constraint_slack * scale;

  const Vec3 e1 = tr.u;
  const auto [a, b] = tangent_basis(e1);
  const Mat3 c1 = cubic_contract(h, e1);
  Eigen::Matrix2d m;
  m << a.dot(c1 * a), a.dot(c1 * b), b.dot(c1 * a), b.dot(c1 * b);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
  const auto& v = es.eigenvectors();
  Vec3 e2 = v(0, 0) * a + v(1, 0) * b;
  Vec3 e3 = v(0, 1) * a + v(1, 1) * b;

  auto build = [&](const Vec3& x2, const Vec3& x3) {
    Mat3 r;
    r.row(0) = e1.transpose();
    r.row(1) = x2.transpose();
    r.row(2) = x3.transpose();
    return r;
  };
  SFF hc = h.rotated(build(e2, e3));
  double l1 = -hc(0, 1, 1), l2 = -hc(0, 2, 2);
  double m1 = hc(1, 1, 1), m2 = hc(1, 1, 2);

  if (std::abs(l1 - l2) < opts.umbilic_tolerance * scale) {
    // mu1 + i mu2 rotates by 3t under a rotation of (e2, e3) by t.
    const double t = std::atan2(m2, m1) / 3;
    const Vec3 r2 = std::cos(t) * e2 + std::sin(t) * e3;
    const Vec3 r3 = -std::sin(t) * e2 + std::cos(t) * e3;
    e2 = r2;
    e3 = r3;
  } else {
    if (m1 < 0) e2 = -e2;
    if (m2 < 0) e3 = -e3;
  }
  cd.basis = build(e2, e3);
  hc = h.rotated(cd.basis);
  l1 = -hc(0, 1, 1);
  l2 = -hc(0, 2, 2);
  m1 = hc(1, 1, 1);
  m2 = hc(1, 1, 2);
  cd.lambda1 = l1;
  cd.lambda2 = l2;
  cd.mu1 = m1;
  cd.mu2 = m2;
  set_flags(cd, opts.constraint_slack * scale);

  cd.reconstruction_residual = max_abs_difference(hc, sff_from_tuple(l1, l2, m1, m2));
  if (cd.reconstruction_residual > opts.reconstruction_tolerance * scale) {
    throw ReconstructionError("second fundamental form does not fit the canonical normal form",
                              cd.reconstruction_residual);
  }
  return cd;
}

HMatrices h_matrices(const SFF& h) {
  HMatrices hm;
  for (int k = 0; k < 3; ++k) hm.h[k] = shape_operator(h, k);
  return hm;
}

HMatrices h_matrices(const CanonicalData& cd) {
  return h_matrices(sff_from_tuple(cd.lambda1, cd.lambda2, cd.mu1, cd.mu2));
}

CommutatorInvariant commutator_invariant_direct(const HMatrices& hm) {
  CommutatorInvariant ci;
  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  for (int p = 0; p < 3; ++p) {
    const auto [i, j] = pairs[p];
    ci.n_terms[p] = frobenius_sq(hm.h[i] * hm.h[j] - hm.h[j] * hm.h[i]);
    ci.commutator_sum += 2 * ci.n_terms[p];
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ci.s(i, j) = (hm.h[i] * hm.h[j]).trace();
      ci.s_sum += ci.s(i, j) * ci.s(i, j);
    }
  ci.q = ci.commutator_sum + ci.s_sum;
  return ci;
}

ClosedForms closed_forms(double l1, double l2, double m1, double m2) {
  ClosedForms cf;
  const double mm = m1 * m1 + m2 * m2;
  const double a2 = l1 * l1, b2 = l2 * l2;
  cf.hsq = 4 * a2 + 4 * b2 + 2 * l1 * l2 + 4 * mm;
  cf.q_closed = 24 * (a2 * a2 + a2 * l1 * l2 + a2 * b2 + l1 * l2 * b2 + b2 * b2) +
                18 * (a2 + b2) * mm - 36 * l1 * l2 * mm + 24 * mm * mm;
  cf.r_residual = 24 * mm * mm +
                  3 * (l1 - l2) * (l1 - l2) * (2 * a2 + 2 * b2 - 3 * l1 * l2) +
                  12 * (5 * a2 + 5 * b2 + 4 * l1 * l2) * mm;
  cf.q_regrouped = 3 * cf.hsq * cf.hsq - 4.5 * (l1 + l2) * (l1 + l2) * cf.hsq - cf.r_residual;
  return cf;
}

ClosedForms closed_forms(const CanonicalData& cd) {
  return closed_forms(cd.lambda1, cd.lambda2, cd.mu1, cd.mu2);
}

}  // namespace nk6
