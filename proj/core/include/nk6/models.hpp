#pragma once

// Built-in immersions of S^3 into S^6 in the Hopf chart, the Berger metric of
// the DVV sphere, synthetic pointwise second fundamental forms and a name
// registry used by the command-line front end.

#include "nk6/cayley.hpp"
#include "nk6/geometry.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nk6 {

/// y = (cos eta cos xi1, cos eta sin xi1, sin eta cos xi2, sin eta sin xi2).
Vec4 hopf_to_s3(const ChartPoint& q);
/// Inverse of hopf_to_s3 for unit y, with xi1, xi2 in [0, 2 pi).
ChartPoint s3_to_hopf(const Vec4& y);
/// Columns are d y / d eta, d y / d xi1, d y / d xi2.
Eigen::Matrix<double, 4, 3> hopf_jacobian(const ChartPoint& q);
/// Uniformly distributed points of S^3 in Hopf coordinates, at least `margin`
/// away from the chart poles.
std::vector<ChartPoint> random_chart_points(int n, std::uint64_t seed,
                                            double margin = 1e-3);

/// Left-invariant fields on S^3 in R^4.
Vec4 field_x1(const Vec4& y);
Vec4 field_x2(const Vec4& y);
Vec4 field_x3(const Vec4& y);

/// Polynomial map R^4 -> R^7.
class Polynomial4 {
 public:
  struct Term {
    int row = 0;                // output coordinate, 0-based
    std::array<int, 4> exps{};  // exponents of y1..y4
    double coeff = 0;
  };

  Polynomial4() = default;
  explicit Polynomial4(std::vector<Term> terms);

  /// Text format: one "row a1 a2 a3 a4 coeff" line per term, row in 1..7;
  /// '#' starts a comment.
  static Polynomial4 parse(std::istream& in);
  static Polynomial4 load(const std::filesystem::path& path);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  int degree() const noexcept { return degree_; }
  Vec7 operator()(const Vec4& y) const;
  std::array<Jet, 7> operator()(const std::array<Jet, 4>& y) const;

 private:
  std::vector<Term> terms_;
  int degree_ = 0;
};

/// Immersion S^3 -> S^6 given by a polynomial in y, parametrized by the Hopf
/// chart. Optional frame fields are linear combinations of X1, X2, X3.
class S3Immersion : public Immersion {
 public:
  S3Immersion(std::string name, Polynomial4 poly,
              std::optional<Mat3> field_coeffs = std::nullopt);

  std::string_view name() const override { return name_; }
  bool in_domain(const ChartPoint& q) const override;
  double degeneracy_distance(const ChartPoint& q) const override;
  Vec7 value(const ChartPoint& q) const override;
  std::optional<ImmersionJet> analytic_jet(const ChartPoint& q, int order) const override;
  std::optional<Mat3> frame_fields(const ChartPoint& q) const override;

  const Polynomial4& polynomial() const noexcept { return poly_; }
  /// Rows: coefficients of each frame field on (X1, X2, X3).
  const std::optional<Mat3>& field_coeffs() const noexcept { return fields_; }
  /// Image of a point of S^3.
  Vec7 at(const Vec4& y) const { return poly_(y); }
  /// d Psi_y(v) for v in R^4.
  Vec7 push_forward(const Vec4& y, const Vec4& v) const;

 private:
  std::string name_;
  Polynomial4 poly_;
  std::optional<Mat3> fields_;
};

/// The DVV embedding of the Berger sphere, with frame fields
/// E1 = (3/2) X1, E2 = sqrt(3)/(2 sqrt 2) X2, E3 = -sqrt(3)/(2 sqrt 2) X3.
std::shared_ptr<const S3Immersion> dvv_immersion();
Polynomial4 dvv_polynomial();

/// Unit sphere of a coordinate 4-plane W of R^7 whose products all land in
/// W^perp. Throws TableError if the table has no such plane.
std::shared_ptr<const S3Immersion> totally_geodesic_immersion(const MulTable& table);
/// 0-based coordinate indices spanning W, searched over the table's triples.
std::array<int, 4> lagrangian_coordinate_plane(const MulTable& table);

/// Berger metric on S^3 with orthogonal X1, X2, X3.
struct BergerSpec {
  double w1 = 4.0 / 9.0;   // <X1, X1>
  double w23 = 8.0 / 3.0;  // <X2, X2> = <X3, X3>

  /// Coefficients of <R(X,Y)W,Z> = a (...) + b (... on E1-orthogonal parts).
  double alpha() const { return w1 / (w23 * w23); }
  double beta() const { return 4.0 / w23 - 4.0 * w1 / (w23 * w23); }
};

/// <R(X,Y)W,Z> for vectors of R^4 tangent to S^3 at unit y. Throws
/// DomainError for non-tangent input or nonpositive weights.
double berger_curvature(const BergerSpec& spec, const Vec4& y, const Vec4& x,
                        const Vec4& yv, const Vec4& z, const Vec4& w);
double berger_inner(const BergerSpec& spec, const Vec4& y, const Vec4& a, const Vec4& b);
double berger_sectional(const BergerSpec& spec, const Vec4& y, const Vec4& a,
                        const Vec4& b);

/// Pointwise second fundamental form data in canonical form.
struct SyntheticH {
  char tag = 'a';
  double lambda1 = 0, lambda2 = 0, mu1 = 0, mu2 = 0;
};

/// Tags 'a' (totally geodesic), 'b', 'c' (DVV type). Throws DomainError otherwise.
SyntheticH synthetic_case(char tag);
SyntheticH synthetic_case(std::string_view tag);

/// DVV selection oracle for a table: max Lagrangian residual, |G(E2,E3) - J E1|
/// and the sign of <h(E1,E1), J E1> at sample points.
struct TableScore {
  double lagrangian = 0;
  double g_alignment = 0;
  double h11 = 0;
  bool accepted(double lag_tol = 1e-10, double g_tol = 1e-8) const {
    return lagrangian < lag_tol && g_alignment < g_tol && h11 > 0;
  }
};
TableScore score_table(const MulTable& table, int samples = 8, std::uint64_t seed = 1);
/// First accepted candidate. Throws TableError if none passes.
MulTable select_table(const std::vector<MulTable>& candidates);

/// A model addressable by name: "dvv", "totally-geodesic", "synthetic:a|b|c"
/// or a path to a polynomial file.
struct Model {
  std::string name;
  ImmersionHandle immersion;           // null for synthetic data
  std::optional<SyntheticH> synthetic;
  bool has_jets() const noexcept { return immersion != nullptr; }
};

Model make_model(std::string_view name, const MulTable& table);

}  // namespace nk6
