#include "nk6/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nk6 {

namespace {

using VecJet = std::array<Jet, 7>;

struct NonzeroConstant {
  int i, j, k;
  double f;
};

std::vector<NonzeroConstant> nonzero_constants(const MulTable& table) {
  std::vector<NonzeroConstant> out;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        if (const double f = table.f(i, j, k); f != 0) out.push_back({i, j, k, f});
  return out;
}

VecJet cross_jet(const VecJet& u, const VecJet& v,
                 const std::vector<NonzeroConstant>& consts) {
  const int order = std::min(u[0].order(), v[0].order());
  VecJet w;
  for (auto& c : w) c = Jet(order);
  for (const auto& c : consts) w[c.k] += (u[c.i] * v[c.j]) * c.f;
  return w;
}

Jet dot_jet(const VecJet& u, const VecJet& v) {
  Jet s(std::min(u[0].order(), v[0].order()));
  for (int n = 0; n < 7; ++n) s += u[n] * v[n];
  return s;
}

// Weights of the fourth-order central first-derivative stencil at offsets
// -2h, -h, h, 2h.
constexpr std::array<double, 4> kStencilOffsets{-2, -1, 1, 2};
constexpr std::array<double, 4> kStencilWeights{1.0 / 12, -8.0 / 12, 8.0 / 12,
                                                -1.0 / 12};

template <class F, class R>
R nested_difference(const F& f, const ChartPoint& q, const int* axes, int n,
                    double h) {
  if (n == 0) return f(q);
  R acc = f(q) * 0.0;
  for (int s = 0; s < 4; ++s) {
    acc += kStencilWeights[s] *
           nested_difference<F, R>(f, q.shifted(axes[0], kStencilOffsets[s] * h),
                                   axes + 1, n - 1, h);
  }
  return acc / h;
}

}  // namespace

Vec7 ImmersionJet::value() const {
  Vec7 v;
  for (int n = 0; n < 7; ++n) v[n] = comps[n].value();
  return v;
}

Vec7 ImmersionJet::partial(const MultiIndex& a) const {
  Vec7 v;
  for (int n = 0; n < 7; ++n) v[n] = comps[n].partial(a);
  return v;
}

std::array<Jet, 7> ImmersionJet::derivative(int a) const {
  std::array<Jet, 7> d;
  for (int n = 0; n < 7; ++n) d[n] = comps[n].derivative(a);
  return d;
}

std::optional<ImmersionJet> Immersion::analytic_jet(const ChartPoint&, int) const {
  return std::nullopt;
}

std::optional<Mat3> Immersion::frame_fields(const ChartPoint&) const {
  return std::nullopt;
}

double default_fd_step(int order, double extent) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps, 1.0 / (order + 4)) * extent;
}

ImmersionJet fd_jet(const Immersion& imm, const ChartPoint& q, int order, double step) {
  if (order < 0 || order > kMaxJetOrder) throw DomainError("jet order must be 0..3");
  ImmersionJet out;
  out.order = order;
  for (auto& c : out.comps) c = Jet(order);
  const auto f = [&](const ChartPoint& p) -> Vec7 { return imm.value(p); };
  for (int idx = 0; idx < jet_size(order); ++idx) {
    const MultiIndex& a = jet_exponent(idx);
    std::array<int, 3> axes{};
    int n = 0;
    double fact = 1;
    for (int v = 0; v < 3; ++v)
      for (int r = 0; r < a[v]; ++r) {
        axes[n++] = v;
        fact *= (r + 1);
      }
    const double h = step > 0 ? step : default_fd_step(n, imm.chart_extent());
    const Vec7 d = nested_difference<decltype(f), Vec7>(f, q, axes.data(), n, h);
    for (int c = 0; c < 7; ++c) out.comps[c].coeff(idx) = d[c] / fact;
  }
  return out;
}

ImmersionJet jet(const Immersion& imm, const ChartPoint& q, int order,
                 const JetOptions& opts) {
  if (order < 0 || order > kMaxJetOrder) throw DomainError("jet order must be 0..3");
  if (!imm.in_domain(q)) throw DomainError("chart point outside the chart domain");
  if (!opts.force_fd) {
    if (auto j = imm.analytic_jet(q, order)) return *j;
  }
  return fd_jet(imm, q, order, opts.fd_step);
}

FramePacket frame(const Immersion& imm, const ChartPoint& q, const MulTable& table,
                  const FrameOptions& opts) {
  FramePacket fr;
  fr.q = q;
  fr.jet = jet(imm, q, std::max(2, opts.jet_order), opts.jets);
  fr.base = fr.jet.value();
  for (int a = 0; a < 3; ++a) {
    MultiIndex m{0, 0, 0};
    m[a] = 1;
    fr.d[a] = fr.jet.partial(m);
  }
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) fr.metric(a, b) = fr.d[a].dot(fr.d[b]);

  Eigen::SelfAdjointEigenSolver<Mat3> es(fr.metric, Eigen::EigenvaluesOnly);
  const Vec3 ev = es.eigenvalues();
  if (!(ev[2] > 0) || ev[0] <= opts.degeneracy_threshold * ev[2]) {
    throw ChartDegeneracyError("chart Jacobian is rank-deficient at this point",
                               imm.degeneracy_distance(q));
  }
  fr.metric_inverse = fr.metric.inverse();
  fr.sqrt_det = std::sqrt(fr.metric.determinant());

  for (int c = 0; c < 3; ++c) fr.christoffel[c].setZero();
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      MultiIndex m{0, 0, 0};
      m[a] += 1;
      m[b] += 1;
      const Vec7 dd = fr.jet.partial(m);
      Vec3 lowered;
      for (int e = 0; e < 3; ++e) lowered[e] = dd.dot(fr.d[e]);
      const Vec3 raised = fr.metric_inverse * lowered;
      for (int c = 0; c < 3; ++c) {
        fr.christoffel[c](a, b) = raised[c];
        fr.christoffel[c](b, a) = raised[c];
      }
    }

  std::optional<Mat3> fields;
  if (opts.source != FrameSource::GramSchmidt) {
    fields = imm.frame_fields(q);
    if (!fields && opts.source == FrameSource::Fields) {
      throw DomainError("immersion '" + std::string(imm.name()) +
                        "' provides no frame fields");
    }
  }
  if (fields) {
    fr.source = FrameSource::Fields;
    fr.coeffs = *fields;
  } else {
    fr.source = FrameSource::GramSchmidt;
    // Modified Gram-Schmidt in the induced metric on the rows of initial_basis.
    Mat3 c = opts.initial_basis;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < i; ++k) {
        const double p = c.row(i).dot(fr.metric * c.row(k).transpose());
        c.row(i) -= p * c.row(k);
      }
      const double n2 = c.row(i).dot(fr.metric * c.row(i).transpose());
      if (!(n2 > 0)) {
        throw ChartDegeneracyError("initial basis is degenerate under the induced metric",
                                   imm.degeneracy_distance(q));
      }
      c.row(i) /= std::sqrt(n2);
    }
    fr.coeffs = c;
  }
  for (int i = 0; i < 3; ++i) {
    fr.e[i] = Vec7::Zero();
    for (int a = 0; a < 3; ++a) fr.e[i] += fr.coeffs(i, a) * fr.d[a];
    fr.e_star[i] = apply_j(fr.base, fr.e[i], table);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double want = i == j ? 1.0 : 0.0;
      fr.orthonormality_residual =
          std::max(fr.orthonormality_residual, std::abs(fr.e[i].dot(fr.e[j]) - want));
      fr.lagrangian_residual =
          std::max(fr.lagrangian_residual, std::abs(fr.e_star[i].dot(fr.e[j])));
    }
  if (fr.source == FrameSource::Fields &&
      fr.orthonormality_residual > opts.field_tolerance) {
    throw IdentityViolation("frame fields are not orthonormal in the induced metric",
                            fr.orthonormality_residual);
  }
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m) {
      const Vec7 g = apply_g(fr.base, fr.e[i], fr.e[m], table);
      for (int l = 0; l < 3; ++l) {
        fr.g_normal[i](m, l) = g.dot(fr.e_star[l]);
        fr.g_normality_residual = std::max(fr.g_normality_residual, std::abs(g.dot(fr.e[l])));
      }
    }
  fr.volume_form = fr.g_normal[0](1, 2);
  return fr;
}

SFF SFF::from_symmetric(const std::array<double, 10>& c) {
  SFF h;
  int n = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k, ++n) {
        const std::array<int, 3> idx{i, j, k};
        std::array<int, 3> p = idx;
        std::sort(p.begin(), p.end());
        do {
          h(p[2], p[0], p[1]) = c[n];
        } while (std::next_permutation(p.begin(), p.end()));
      }
  return h;
}

std::array<double, 10> SFF::symmetric_components() const {
  std::array<double, 10> c{};
  int n = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      for (int k = j; k < 3; ++k, ++n) c[n] = (*this)(k, i, j);
  return c;
}

double SFF::norm_sq() const {
  double s = 0;
  for (double v : h_) s += v * v;
  return s;
}

double SFF::symmetry_residual() const {
  double r = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        r = std::max(r, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
        r = std::max(r, std::abs((*this)(k, i, j) - (*this)(j, i, k)));
      }
  return r;
}

double SFF::trace_residual() const {
  double r = 0;
  for (int k = 0; k < 3; ++k)
    r = std::max(r, std::abs((*this)(k, 0, 0) + (*this)(k, 1, 1) + (*this)(k, 2, 2)));
  return r;
}

SFF SFF::rotated(const Mat3& r) const {
  SFF out;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int c = 0; c < 3; ++c)
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) s += r(i, a) * r(j, b) * r(k, c) * (*this)(c, a, b);
        out(k, i, j) = s;
      }
  return out;
}

SFF SFF::scaled(double s) const {
  SFF out = *this;
  for (auto& v : out.h_) v *= s;
  return out;
}

double SFF::cubic(const Vec3& u) const {
  double s = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += (*this)(k, i, j) * u[i] * u[j] * u[k];
  return s;
}

namespace {

// h(d_a, d_b) as a vector: the part of d_a d_b x normal to both the position
// vector and the tangent space.
std::array<std::array<Vec7, 3>, 3> chart_h_vectors(const FramePacket& fr) {
  std::array<std::array<Vec7, 3>, 3> hv;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      MultiIndex m{0, 0, 0};
      m[a] += 1;
      m[b] += 1;
      Vec7 v = fr.jet.partial(m) + fr.metric(a, b) * fr.base;
      for (int c = 0; c < 3; ++c) v -= fr.christoffel[c](a, b) * fr.d[c];
      hv[a][b] = v;
      hv[b][a] = v;
    }
  return hv;
}

std::array<std::array<Vec7, 3>, 3> frame_h_vectors(const FramePacket& fr) {
  const auto hv = chart_h_vectors(fr);
  std::array<std::array<Vec7, 3>, 3> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec7 v = Vec7::Zero();
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) v += fr.coeffs(i, a) * fr.coeffs(j, b) * hv[a][b];
      out[i][j] = v;
    }
  return out;
}

}  // namespace

SFF second_fundamental_form(const FramePacket& fr) {
  const auto hv = frame_h_vectors(fr);
  SFF h;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) h(k, i, j) = hv[i][j].dot(fr.e_star[k]);
  return h;
}

SFF second_fundamental_form(const Immersion& imm, const ChartPoint& q,
                            const MulTable& table, const FrameOptions& opts) {
  FrameOptions o = opts;
  o.jet_order = std::max(2, std::min(o.jet_order, 2));
  return second_fundamental_form(frame(imm, q, table, o));
}

double sff_normal_residual(const FramePacket& fr) {
  const auto hv = frame_h_vectors(fr);
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Vec7 rest = hv[i][j];
      for (int k = 0; k < 3; ++k) rest -= hv[i][j].dot(fr.e_star[k]) * fr.e_star[k];
      r = std::max(r, rest.norm());
    }
  return r;
}

Mat3 shape_operator(const SFF& h, int k) {
  if (k < 0 || k > 2) throw DomainError("normal index must be 0..2");
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = h(k, i, j);
  return m;
}

double NablaH::norm_sq() const {
  double s = 0;
  for (double v : c_) s += v * v;
  return s;
}

double NablaH::codazzi_residual() const {
  double r = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l)
          r = std::max(r, std::abs((*this)(k, i, j, l) - (*this)(k, i, l, j)));
  return r;
}

double NablaH::symmetry_residual() const {
  double r = 0;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          r = std::max(r, std::abs((*this)(l, i, j, k) - (*this)(l, j, i, k)));
  return r;
}

double NablaH::g_identity_residual(const SFF& h, const FramePacket& fr) const {
  double r = 0;
  for (int w = 0; w < 3; ++w)
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z) {
          // g(h(W,X), G(Y,Z)) = sum_m h^{m}_{wx} <G(e_y,e_z), J e_m>
          double hg = 0;
          for (int m = 0; m < 3; ++m) hg += h(m, w, x) * fr.g_normal[y](z, m);
          const double lhs = (*this)(y, x, z, w) - (*this)(z, x, y, w);
          r = std::max(r, std::abs(lhs - hg));
        }
  return r;
}

NablaH nabla_h(const FramePacket& fr, const MulTable& table) {
  if (fr.jet.order < 3) throw DomainError("nabla_h requires order-3 jets");
  const auto consts = nonzero_constants(table);
  const VecJet& x = fr.jet.comps;
  std::array<VecJet, 3> dx;
  for (int a = 0; a < 3; ++a) dx[a] = fr.jet.derivative(a);
  std::array<VecJet, 3> jdx;  // x cross d_c x, order 2
  for (int c = 0; c < 3; ++c) jdx[c] = cross_jet(x, dx[c], consts);

  // Cubic form C_abc = <d_a d_b x, x cross d_c x> as first-order jets.
  double cval[3][3][3];
  double cder[3][3][3][3];  // [d][a][b][c] = d_d C_abc
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      VecJet ddx;
      for (int n = 0; n < 7; ++n) ddx[n] = dx[a][n].derivative(b);
      for (int c = 0; c < 3; ++c) {
        const Jet cj = dot_jet(ddx, jdx[c]);
        cval[a][b][c] = cval[b][a][c] = cj.value();
        for (int d = 0; d < 3; ++d) {
          MultiIndex m{0, 0, 0};
          m[d] = 1;
          cder[d][a][b][c] = cder[d][b][a][c] = cj.partial(m);
        }
      }
    }

  // Levi-Civita covariant derivative of C in the chart basis.
  double cov[3][3][3][3];
  for (int d = 0; d < 3; ++d)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c) {
          double s = cder[d][a][b][c];
          for (int e = 0; e < 3; ++e) {
            s -= fr.christoffel[e](d, a) * cval[e][b][c];
            s -= fr.christoffel[e](d, b) * cval[a][e][c];
            s -= fr.christoffel[e](d, c) * cval[a][b][e];
          }
          cov[d][a][b][c] = s;
        }

  // Transform both tensors to the orthonormal frame.
  const Mat3& B = fr.coeffs;
  double cf[3][3][3] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int m = 0; m < 3; ++m) {
        double s = 0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) s += B(i, a) * B(j, b) * B(m, c) * cval[a][b][c];
        cf[i][j][m] = s;
      }
  double t1[3][3][3][3], t2[3][3][3][3];
  auto contract = [&](double in[3][3][3][3], double out[3][3][3][3], int slot) {
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r)
          for (int s = 0; s < 3; ++s) {
            std::array<int, 4> idx{p, q, r, s};
            double acc = 0;
            for (int a = 0; a < 3; ++a) {
              std::array<int, 4> src = idx;
              src[slot] = a;
              acc += B(idx[slot], a) * in[src[0]][src[1]][src[2]][src[3]];
            }
            out[p][q][r][s] = acc;
          }
  };
  contract(cov, t1, 0);
  contract(t1, t2, 1);
  contract(t2, t1, 2);
  contract(t1, t2, 3);

  // <(nabla h)(X,Y,Z), JW> = (nabla_X C)(Y,Z,W) - <h(Y,Z), G(X,W)>.
  NablaH nh;
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          double hg = 0;
          for (int m = 0; m < 3; ++m) hg += cf[i][j][m] * fr.g_normal[k](l, m);
          nh(l, i, j, k) = t2[k][i][j][l] - hg;
        }
  return nh;
}

NablaH nabla_h(const Immersion& imm, const ChartPoint& q, const MulTable& table,
               const FrameOptions& opts) {
  FrameOptions o = opts;
  o.jet_order = 3;
  return nabla_h(frame(imm, q, table, o), table);
}

CurvaturePacket curvature(const SFF& h) {
  CurvaturePacket cp;
  auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = delta(i, k) * delta(j, l) - delta(i, l) * delta(j, k);
          for (int p = 0; p < 3; ++p) s += h(p, i, k) * h(p, j, l) - h(p, i, l) * h(p, j, k);
          cp.r[((i * 3 + j) * 3 + k) * 3 + l] = s;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0, hh = 0;
      for (int k = 0; k < 3; ++k) {
        s += cp(i, k, j, k);
        for (int p = 0; p < 3; ++p) hh += h(p, i, k) * h(p, k, j);
      }
      cp.ricci(i, j) = s;
      cp.ricci_shifted(i, j) = 3.0 * delta(i, j) - hh;
    }
  cp.tau = cp.ricci.trace();
  cp.tau_closed = 6.0 - h.norm_sq();
  cp.sectional_sum = cp(0, 1, 0, 1) + cp(0, 2, 0, 2) + cp(1, 2, 1, 2);
  Eigen::SelfAdjointEigenSolver<Mat3> es(cp.ricci, Eigen::EigenvaluesOnly);
  cp.ricci_eigenvalues = es.eigenvalues();
  // In dimension three K(n^perp) = tau/2 - Ric(n, n) for unit n.
  cp.k_min = cp.tau / 2 - cp.ricci_eigenvalues[2];
  cp.k_max = cp.tau / 2 - cp.ricci_eigenvalues[0];
  return cp;
}

CurvaturePacket curvature(const Immersion& imm, const ChartPoint& q,
                          const MulTable& table, const FrameOptions& opts) {
  return curvature(second_fundamental_form(imm, q, table, opts));
}

double CurvaturePacket::sectional(const Vec3& x, const Vec3& y) const {
  double num = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) num += (*this)(i, j, k, l) * x[i] * y[j] * x[k] * y[l];
  const double area = x.squaredNorm() * y.squaredNorm() - std::pow(x.dot(y), 2);
  if (!(area > 0)) throw DomainError("sectional curvature of a degenerate plane");
  return num / area;
}

std::pair<Mat3, double> chart_metric(const Immersion& imm, const ChartPoint& q,
                                     const JetOptions& opts) {
  ImmersionJet j;
  if (auto a = opts.force_fd ? std::nullopt : imm.analytic_jet(q, 1)) {
    j = *a;
  } else {
    j = fd_jet(imm, q, 1, opts.fd_step);
  }
  std::array<Vec7, 3> d;
  for (int a = 0; a < 3; ++a) {
    MultiIndex m{0, 0, 0};
    m[a] = 1;
    d[a] = j.partial(m);
  }
  Mat3 g;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) g(a, b) = d[a].dot(d[b]);
  const double det = g.determinant();
  return {g, det > 0 ? std::sqrt(det) : 0.0};
}

double laplace_beltrami(const Immersion& imm, const ScalarField& f,
                        const ChartPoint& q, double step) {
  if (!imm.in_domain(q)) throw DomainError("chart point outside the chart domain");
  double h = step > 0 ? step : default_fd_step(2, imm.chart_extent());
  // Nested stencils reach 4h from q along any axis.
  const double dist = imm.degeneracy_distance(q);
  if (dist < 6 * h) h = dist / 6;
  constexpr double kMinStep = 1e-5;
  if (h < kMinStep) {
    throw ChartDegeneracyError("Laplace-Beltrami stencil underflows near chart degeneracy",
                               dist);
  }
  const auto flux = [&](const ChartPoint& p) -> Vec3 {
    Vec3 grad;
    for (int a = 0; a < 3; ++a) {
      double s = 0;
      for (int k = 0; k < 4; ++k) s += kStencilWeights[k] * f(p.shifted(a, kStencilOffsets[k] * h));
      grad[a] = s / h;
    }
    const auto [g, sq] = chart_metric(imm, p);
    return sq * (g.inverse() * grad);
  };
  double div = 0;
  for (int a = 0; a < 3; ++a) {
    double s = 0;
    for (int k = 0; k < 4; ++k)
      s += kStencilWeights[k] * flux(q.shifted(a, kStencilOffsets[k] * h))[a];
    div += s / h;
  }
  const double sq = chart_metric(imm, q).second;
  if (!(sq > 0)) {
    throw ChartDegeneracyError("degenerate metric at Laplace-Beltrami point",
                               imm.degeneracy_distance(q));
  }
  return div / sq;
}

}  // namespace nk6
