#pragma once

// Tensors F and T = nabla h - F, the J-parallel defect, the Laplacian formula
// for |h|^2, per-point analysis and quadrature of the integral
//   int |h|^2 (|h|^2 - 5/4 - (3/2) Theta^2) dM
// over S^3 in the Hopf chart.

#include "nk6/canonical.hpp"
#include "nk6/geometry.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nk6 {

/// Components c(l,a,b,c) = <X(e_a,e_b,e_c), J e_l> of a normal-valued 3-tensor.
class Tensor3 {
 public:
  double operator()(int l, int a, int b, int c) const {
    return c_[((l * 3 + a) * 3 + b) * 3 + c];
  }
  double& operator()(int l, int a, int b, int c) {
    return c_[((l * 3 + a) * 3 + b) * 3 + c];
  }
  double norm_sq() const;

 private:
  std::array<double, 81> c_{};
};

/// g_normal[i](m,l) = orientation * epsilon_{iml}, the values of
/// <G(e_i,e_m), J e_l> on any Lagrangian frame.
std::array<Mat3, 3> standard_g_normal(double orientation = 1.0);

/// F(X,Y,Z) = (1/4)[G(X, A_{JZ} Y) + G(Y, A_{JX} Z) + G(Z, A_{JY} X)].
Tensor3 f_tensor(const SFF& h, const std::array<Mat3, 3>& g_normal);
Tensor3 f_tensor(const SFF& h, const FramePacket& fr);

/// (nabla h)(e_a,e_b,e_c) in the same layout as Tensor3.
Tensor3 nabla_h_tensor(const NablaH& nh);

struct TTensorPacket {
  Tensor3 f;
  Tensor3 t;
  double f_sq = 0;
  double t_sq = 0;
  double nabla_sq = 0;
  double cross = 0;  // sum g(nabla h, F)
  double hsq = 0;
  /// |nabla_sq - t_sq - (3/4) hsq|
  double norm_identity_residual = 0;
  /// |cross - (3/4) hsq|
  double cross_residual = 0;
  /// |t_sq - (nabla_sq + f_sq - 2 cross)|
  double expansion_residual = 0;
};

/// Throws IdentityViolation when either norm identity fails by more than tol
/// (tol <= 0 disables the check).
TTensorPacket t_tensor(const NablaH& nh, const Tensor3& f, const SFF& h, double tol = 1e-6);

/// max |g((nabla h)(v,v,v), Jv)| over a deterministic grid of unit vectors.
double j_parallel_defect(const NablaH& nh, int grid_polar = 24, int grid_azimuth = 48);

struct LaplacianCheck {
  double half_laplacian = 0;  // (1/2) Delta |h|^2 by finite differences
  double nabla_sq = 0;
  double hsq = 0;
  double q_direct = 0;
  double t_sq = 0;
  double rhs = 0;       // |nabla h|^2 + 3|h|^2 - Q
  double residual1 = 0; // |half_laplacian - rhs|
  double residual2 = 0; // |rhs - regrouped form|
};

/// Regrouped right-hand side
/// |T|^2 + (15/4)|h|^2 - 3|h|^4 + (9/2)(l1+l2)^2 |h|^2 + R(l, mu).
double laplacian_regrouped_rhs(const CanonicalData& cd, double t_sq);

LaplacianCheck laplacian_identity_check(const Immersion& imm, const ChartPoint& q,
                                        const MulTable& table, double step = 0);

/// Everything computable at one chart point.
struct PointAnalysis {
  ChartPoint q;
  FramePacket frame;
  SFF h;
  NablaH nabla;
  CurvaturePacket curvature;
  CanonicalData canonical;
  TTensorPacket tt;
  double j_defect = 0;
  double theta = 0;
  double hsq = 0;
  double integrand = 0;  // |h|^2 (|h|^2 - 5/4 - (3/2) Theta^2)
  double codazzi_residual = 0;
  double g_identity_residual = 0;
  double sff_symmetry_residual = 0;
  double sff_trace_residual = 0;
  double sff_normal_residual = 0;
};

PointAnalysis analyze_point(const Immersion& imm, const ChartPoint& q, const MulTable& table,
                            const FrameOptions& opts = {});

double simons_integrand(double hsq, double theta);

struct QuadratureRule {
  int n_eta = 32;
  int n_xi1 = 32;
  int n_xi2 = 32;

  /// "n1,n2,n3". Throws ParseError.
  static QuadratureRule parse(const std::string& text);
  std::string to_string() const;
  int node_count() const { return n_eta * n_xi1 * n_xi2; }
  /// Polynomial degree integrated exactly along eta.
  int eta_exactness() const { return 2 * n_eta - 1; }
};

struct Nodes1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre nodes and weights on [a, b]; all nodes interior.
Nodes1D gauss_legendre(int n, double a, double b);
/// Equispaced nodes k * period / n with equal weights.
Nodes1D periodic_trapezoid(int n, double period);

/// Sum of values in a fixed pairwise order, independent of thread count.
double pairwise_sum(const std::vector<double>& v);

enum class EqualityClass { Geodesic, DvvType, Strict, Indeterminate };
const char* to_string(EqualityClass c);

struct IntegrandSample {
  ChartPoint q;
  double hsq = 0;
  double theta = 0;
  double integrand = 0;
  double sqrt_det = 0;
};

struct InequalityOptions {
  double equality_tolerance = 1e-8;
  double indeterminate_tolerance = 1e-4;
  double geodesic_tolerance = 1e-10;
  /// Compare against `coarse` and throw ResolutionError past refinement_tolerance.
  bool check_refinement = true;
  QuadratureRule coarse{24, 24, 24};
  double refinement_tolerance = 1e-8;
  int threads = 0;  // 0: hardware concurrency
  bool keep_samples = true;
};

struct InequalityReport {
  std::string model;
  QuadratureRule rule;
  double integral = 0;
  double volume = 0;
  double integrand_min = 0;
  double integrand_max = 0;
  double sup_norm = 0;
  double hsq_max = 0;
  EqualityClass classification = EqualityClass::Strict;
  bool violation = false;  // integral below -equality_tolerance
  std::optional<QuadratureRule> coarse_rule;
  std::optional<double> volume_delta;    // relative
  std::optional<double> integral_delta;  // absolute
  std::vector<IntegrandSample> samples;

  /// Columns: eta, xi1, xi2, hsq, theta, integrand, sqrt_det.
  void write_samples_csv(std::ostream& out) const;
};

InequalityReport integrate_inequality(const Immersion& imm, const MulTable& table,
                                      const QuadratureRule& rule = {},
                                      const InequalityOptions& opts = {});

/// Applies fn(i) for i in [0, n) on worker threads; fn must be thread safe.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace nk6
