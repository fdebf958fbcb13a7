#pragma once

// Immersions M^3 -> S^6 in R^7 given on a 3-dimensional chart: jets, induced
// metric, adapted Lagrangian frames, second fundamental form h, its covariant
// derivative, Gauss-equation curvature and a chart Laplace-Beltrami operator.

#include "nk6/cayley.hpp"
#include "nk6/jet.hpp"
#include "nk6/types.hpp"

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace nk6 {

/// Chart coordinates (t1, t2, t3).
struct ChartPoint {
  std::array<double, 3> t{};

  ChartPoint() = default;
  ChartPoint(double t1, double t2, double t3) : t{t1, t2, t3} {}
  double operator[](int i) const { return t[i]; }
  double& operator[](int i) { return t[i]; }
  ChartPoint shifted(int axis, double delta) const {
    ChartPoint p = *this;
    p.t[axis] += delta;
    return p;
  }
};

/// Value and partial derivatives of the immersion at a chart point.
struct ImmersionJet {
  int order = 0;
  std::array<Jet, 7> comps;

  Vec7 value() const;
  Vec7 partial(const MultiIndex& a) const;
  /// First chart partial d/dt_a as a vector jet of order - 1.
  std::array<Jet, 7> derivative(int a) const;
};

/// An immersion of a 3-dimensional chart domain into S^6. Implementations are
/// immutable and safe to evaluate concurrently.
class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual std::string_view name() const = 0;
  virtual bool in_domain(const ChartPoint& q) const = 0;
  /// Chart distance from q to the locus where the chart Jacobian degenerates.
  virtual double degeneracy_distance(const ChartPoint& q) const = 0;
  virtual Vec7 value(const ChartPoint& q) const = 0;
  /// Exact jets, if the immersion can supply them.
  virtual std::optional<ImmersionJet> analytic_jet(const ChartPoint& q,
                                                   int order) const;
  /// Rows are chart-basis coefficients of a global orthonormal tangent frame
  /// (e_i = sum_a B(i,a) d_a), if the model provides one.
  virtual std::optional<Mat3> frame_fields(const ChartPoint& q) const;
  /// Typical coordinate length of the chart, scales finite-difference steps.
  virtual double chart_extent() const { return 1.0; }
};

using ImmersionHandle = std::shared_ptr<const Immersion>;

/// Finite-difference step for order-k derivatives with fourth-order central
/// stencils: eps^(1/(k+4)) times the chart extent.
double default_fd_step(int order, double extent = 1.0);

struct JetOptions {
  bool force_fd = false;
  double fd_step = 0;  // 0 selects default_fd_step per derivative order
};

/// Jet of order <= 3 at q. Analytic when available, else finite differences.
ImmersionJet jet(const Immersion& imm, const ChartPoint& q, int order,
                 const JetOptions& opts = {});

/// Jet built from nested fourth-order central differences of value().
ImmersionJet fd_jet(const Immersion& imm, const ChartPoint& q, int order,
                    double step = 0);

enum class FrameSource { Auto, Fields, GramSchmidt };

struct FrameOptions {
  FrameSource source = FrameSource::Auto;
  /// Rows are the chart-basis combinations fed to Gram-Schmidt, in order.
  Mat3 initial_basis = Mat3::Identity();
  int jet_order = 3;
  JetOptions jets;
  /// Frame fields must be orthonormal under the induced metric to this level.
  double field_tolerance = 1e-8;
  /// Relative metric eigenvalue below which the chart counts as degenerate.
  double degeneracy_threshold = 1e-14;
};

struct FramePacket {
  ChartPoint q;
  ImmersionJet jet;
  Vec7 base;
  std::array<Vec7, 3> e;       // orthonormal tangent frame
  std::array<Vec7, 3> e_star;  // e_star[i] = J e[i]
  std::array<Vec7, 3> d;       // chart partials d_a x
  Mat3 metric;                 // induced metric in the chart basis
  Mat3 metric_inverse;
  double sqrt_det = 0;
  std::array<Mat3, 3> christoffel;  // christoffel[c](a,b) = Gamma^c_ab
  Mat3 coeffs;                      // e_i = sum_a coeffs(i,a) d_a
  FrameSource source = FrameSource::GramSchmidt;
  double orthonormality_residual = 0;
  double lagrangian_residual = 0;  // max |<J e_i, e_j>|
  /// g_normal[i](m,l) = <G(e_i, e_m), J e_l>.
  std::array<Mat3, 3> g_normal;
  /// g(G(e1,e2), J e3), +-1 on a Lagrangian frame.
  double volume_form = 0;
  /// max |<G(e_i,e_j), e_k>|; zero when G maps tangent pairs to normals.
  double g_normality_residual = 0;
};

FramePacket frame(const Immersion& imm, const ChartPoint& q, const MulTable& table,
                  const FrameOptions& opts = {});

/// Second fundamental form coefficients h^{k*}_{ij} = <h(e_i,e_j), J e_k>.
class SFF {
 public:
  SFF() = default;

  double operator()(int k, int i, int j) const { return h_[(k * 3 + i) * 3 + j]; }
  double& operator()(int k, int i, int j) { return h_[(k * 3 + i) * 3 + j]; }

  /// Fully symmetric SFF from its ten independent values C(i,j,k), i<=j<=k.
  static SFF from_symmetric(const std::array<double, 10>& c);
  std::array<double, 10> symmetric_components() const;

  double norm_sq() const;
  /// max |h^{k}_{ij} - h^{j}_{ik}| and |h^{k}_{ij} - h^{k}_{ji}|.
  double symmetry_residual() const;
  /// max_k |sum_i h^{k}_{ii}|.
  double trace_residual() const;
  /// Components in the rotated frame e'_i = sum_a R(i,a) e_a.
  SFF rotated(const Mat3& r) const;
  SFF scaled(double s) const;
  /// f(u) = sum h^{k}_{ij} u_i u_j u_k.
  double cubic(const Vec3& u) const;

 private:
  std::array<double, 27> h_{};
};

SFF second_fundamental_form(const FramePacket& fr);
SFF second_fundamental_form(const Immersion& imm, const ChartPoint& q,
                            const MulTable& table, const FrameOptions& opts = {});

/// Max norm of the part of h(e_i,e_j) outside span{J e_k}.
double sff_normal_residual(const FramePacket& fr);

/// H_k = (h^{k*}_{ij}), the matrix of the shape operator A_{J e_k}.
Mat3 shape_operator(const SFF& h, int k);

/// Covariant derivative coefficients h^{l*}_{ij,k} = <(nabla h)(e_k,e_i,e_j), J e_l>.
class NablaH {
 public:
  double operator()(int l, int i, int j, int k) const {
    return c_[((l * 3 + i) * 3 + j) * 3 + k];
  }
  double& operator()(int l, int i, int j, int k) {
    return c_[((l * 3 + i) * 3 + j) * 3 + k];
  }
  double norm_sq() const;
  /// max |h^{k}_{ij,l} - h^{k}_{il,j}|.
  double codazzi_residual() const;
  /// max |h^{l}_{ij,k} - h^{l}_{ji,k}|.
  double symmetry_residual() const;
  /// max over frame vectors of g((nabla h)(W,X,Z),JY) - g((nabla h)(W,X,Y),JZ)
  /// - g(h(W,X), G(Y,Z)).
  double g_identity_residual(const SFF& h, const FramePacket& fr) const;

 private:
  std::array<double, 81> c_{};
};

/// Requires a frame with order-3 jets.
NablaH nabla_h(const FramePacket& fr, const MulTable& table);
NablaH nabla_h(const Immersion& imm, const ChartPoint& q, const MulTable& table,
               const FrameOptions& opts = {});

struct CurvaturePacket {
  std::array<double, 81> r{};  // R_ijkl from the Gauss equation
  Mat3 ricci;                  // R_ij = sum_k R_ikjk
  Vec3 ricci_eigenvalues;      // ascending
  /// 3 delta_ij - sum h h; differs from the contraction by the identity.
  Mat3 ricci_shifted;
  double tau = 0;         // trace of ricci
  double tau_closed = 0;  // 6 - |h|^2
  double sectional_sum = 0;  // sum_{i<j} K(e_i,e_j) = tau / 2
  double k_min = 0;
  double k_max = 0;

  double operator()(int i, int j, int k, int l) const {
    return r[((i * 3 + j) * 3 + k) * 3 + l];
  }
  /// K of the plane spanned by X, Y (frame coordinates, any basis of the plane).
  double sectional(const Vec3& x, const Vec3& y) const;
};

CurvaturePacket curvature(const SFF& h);
CurvaturePacket curvature(const Immersion& imm, const ChartPoint& q,
                          const MulTable& table, const FrameOptions& opts = {});

using ScalarField = std::function<double(const ChartPoint&)>;

/// Induced metric and sqrt(det g) at q from first-order jets.
std::pair<Mat3, double> chart_metric(const Immersion& imm, const ChartPoint& q,
                                     const JetOptions& opts = {});

/// (1/sqrt g) d_i (sqrt g g^{ij} d_j f) by nested central differences.
/// Throws ChartDegeneracyError when the stencil cannot fit inside the chart.
double laplace_beltrami(const Immersion& imm, const ScalarField& f,
                        const ChartPoint& q, double step = 0);

}  // namespace nk6
