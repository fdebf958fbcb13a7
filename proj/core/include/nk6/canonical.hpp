#pragma once

// Canonical (lambda1, lambda2, mu1, mu2) normal form of a Lagrangian second
// fundamental form, the shape-operator matrices H_k and the commutator
// invariant sum N([H_i,H_j]) + sum S_ij^2 with its closed forms.

#include "nk6/geometry.hpp"
#include "nk6/models.hpp"

#include <array>

namespace nk6 {

struct ThetaOptions {
  int grid_polar = 64;
  int grid_azimuth = 128;
  int max_candidates = 32;
  double gradient_tolerance = 1e-12;
  int max_iterations = 200;
};

struct ThetaResult {
  Vec3 u = Vec3::UnitX();  // maximizer, frame coordinates
  double theta = 0;
  double gradient_norm = 0;
};

/// Global maximum of f(u) = sum h^{k}_{ij} u_i u_j u_k on the unit sphere.
/// Ties between maximizers resolve to the lexicographically largest u.
ThetaResult maximize_theta(const SFF& h, const ThetaOptions& opts = {});

struct CanonicalData {
  double lambda1 = 0, lambda2 = 0, mu1 = 0, mu2 = 0;
  double theta = 0;
  Mat3 basis = Mat3::Identity();  // rows e1, e2, e3 in the input frame
  double reconstruction_residual = 0;
  bool sum_nonnegative = true;      // lambda1 + lambda2 >= 0
  bool triple_nonnegative = true;   // 3 lambda1 + lambda2 >= 0, 3 lambda2 + lambda1 >= 0
  bool mu_bounded = true;           // |mu1|, |mu2| <= lambda1 + lambda2
  bool degenerate = false;          // theta ~ 0 while h != 0

  bool constraints_hold() const {
    return sum_nonnegative && triple_nonnegative && mu_bounded;
  }
};

struct CanonicalOptions {
  ThetaOptions theta;
  double constraint_slack = 1e-8;
  double reconstruction_tolerance = 1e-8;
  /// |lambda1 - lambda2| below which e2, e3 are rotated so that mu2 = 0.
  double umbilic_tolerance = 1e-9;
};

/// Throws ReconstructionError when h is not reproduced by the normal form.
CanonicalData canonical_basis(const SFF& h, const CanonicalOptions& opts = {});
CanonicalData canonical_from_tuple(double lambda1, double lambda2, double mu1, double mu2);

/// SFF in the canonical basis for the given invariants.
SFF sff_from_tuple(double lambda1, double lambda2, double mu1, double mu2);
SFF sff_from_tuple(const SyntheticH& s);

struct HMatrices {
  std::array<Mat3, 3> h;  // h[k](i,j) = h^{k}_{ij}
};

HMatrices h_matrices(const CanonicalData& cd);
HMatrices h_matrices(const SFF& h);

struct CommutatorInvariant {
  double q = 0;                      // sum_{i,j} N([H_i,H_j]) + sum_{i,j} S_ij^2
  Mat3 s;                            // S_ij = trace(H_i H_j)
  std::array<double, 3> n_terms{};   // N([H1,H2]), N([H1,H3]), N([H2,H3])
  double commutator_sum = 0;         // sum over ordered pairs
  double s_sum = 0;                  // sum_{i,j} S_ij^2
};

CommutatorInvariant commutator_invariant_direct(const HMatrices& hm);

struct ClosedForms {
  double hsq = 0;
  double q_closed = 0;
  double r_residual = 0;
  /// 3|h|^4 - (9/2)(lambda1 + lambda2)^2 |h|^2 - r_residual; equals q_closed.
  double q_regrouped = 0;
};

ClosedForms closed_forms(double lambda1, double lambda2, double mu1, double mu2);
ClosedForms closed_forms(const CanonicalData& cd);

}  // namespace nk6
