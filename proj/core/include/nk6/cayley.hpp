#pragma once

// Octonionic kernel of the nearly Kaehler 6-sphere: the cross product on R^7
// (imaginary Cayley numbers), J_x U = x * U, the tensor G = (nabla J), and a
// randomized identity checker.

#include "nk6/types.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace nk6 {

inline constexpr double kTolUnit = 1e-12;

/// One structure constant f_{ijk} = sign, indices 1-based.
struct TableEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  int sign = 0;
};

/// Totally antisymmetric structure constants of a 7-dimensional cross product,
/// e_i x e_j = sum_k f_{ijk} e_k. Instances are validated on construction and
/// immutable afterwards.
class MulTable {
 public:
  /// Builds and validates a table from its listed entries; all unlisted
  /// triples are zero. Throws ParseError on malformed entries and TableError
  /// on axiom violations.
  static MulTable from_entries(const std::vector<TableEntry>& entries,
                               std::string name);

  /// Text format: one "i j k s" line per nonzero constant with i < j,
  /// s in {+1, -1}; '#' starts a comment.
  static MulTable parse(std::istream& in, std::string name);
  static MulTable load(const std::filesystem::path& path);

  /// Imaginary part of the Cayley-Dickson doubling of the quaternions,
  /// (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)).
  static MulTable cayley_dickson();

  /// Candidate tables in selection order: the Cayley-Dickson default, its
  /// negation (opposite orientation), and a permuted variant.
  static std::vector<MulTable> builtin_candidates();

  double f(int i, int j, int k) const { return f_[index(i, j, k)]; }
  const std::string& name() const noexcept { return name_; }

  /// Nonzero constants with i < j < k (one representative per orbit).
  std::vector<TableEntry> entries() const;
  /// Same content in the text format accepted by parse().
  std::string to_text() const;

  Vec7 cross(const Vec7& u, const Vec7& v) const;

  /// Max deviation of |u x v|^2 - |u|^2|v|^2 + <u,v>^2 as a biquadratic form.
  double axiom_residual() const;

  MulTable negated(std::string name) const;
  /// Relabels basis vectors: new e_{perm[a]} = old e_a (0-based perm).
  MulTable permuted(const std::array<int, 7>& perm, std::string name) const;

 private:
  MulTable() = default;
  static constexpr int index(int i, int j, int k) { return (i * 7 + j) * 7 + k; }
  void validate() const;

  std::array<double, 343> f_{};
  std::string name_;
};

/// Unit vector of R^7.
class SpherePoint {
 public:
  explicit SpherePoint(const Vec7& x, double tol = kTolUnit);
  const Vec7& x() const noexcept { return x_; }

 private:
  Vec7 x_;
};

/// Vector tangent to S^6 at its base point.
class Tangent7 {
 public:
  Tangent7(const SpherePoint& base, const Vec7& v, double tol = kTolUnit);
  const SpherePoint& base() const noexcept { return base_; }
  const Vec7& v() const noexcept { return v_; }

 private:
  SpherePoint base_;
  Vec7 v_;
};

inline Vec7 cross(const Vec7& u, const Vec7& v, const MulTable& table) {
  return table.cross(u, v);
}

// Unchecked kernels, for inner loops where tangency holds by construction.
inline Vec7 apply_j(const Vec7& x, const Vec7& u, const MulTable& table) {
  return table.cross(x, u);
}
/// G(X,Y) = (X x Y) - <X x Y, x> x.
inline Vec7 apply_g(const Vec7& x, const Vec7& a, const Vec7& b,
                    const MulTable& table) {
  Vec7 w = table.cross(a, b);
  return w - w.dot(x) * x;
}

/// J_x U = x x U. Throws DomainError if U is based elsewhere.
Tangent7 almost_complex(const SpherePoint& x, const Tangent7& u,
                        const MulTable& table);

/// G(X,Y) = (nabla_X J) Y, tangent to S^6 at x.
Tangent7 g_tensor(const SpherePoint& x, const Tangent7& a, const Tangent7& b,
                  const MulTable& table);

/// Covariant derivative (nabla_X G)(Y,Z) by central differences along the
/// great circle with velocity X, with Y and Z parallel-transported.
Vec7 nabla_g_fd(const Vec7& x, const Vec7& a, const Vec7& b, const Vec7& c,
                const MulTable& table, double step = 1e-5);

/// G(X,Y) recomputed as nabla_X(JY) - J nabla_X Y by central differences,
/// transporting Y parallel along the geodesic through x with velocity X.
Vec7 g_tensor_fd(const Vec7& x, const Vec7& a, const Vec7& b,
                 const MulTable& table, double step = 1e-5);

struct IdentityReport {
  int samples = 0;
  double antisymmetry = 0;     // G(X,Y) + G(Y,X)
  double j_compat = 0;         // G(X,JY) + J G(X,Y)
  double skew = 0;             // g(G(X,Y),Z) + g(G(X,Z),Y)
  double inner_product = 0;    // g(G(X,Y),G(Z,W)) expansion
  double derivative = 0;       // (nabla G) expansion, finite differences
  double frame_products = 0;   // g(G(e_i,e_j),G(e_k,e_l)) on a Lagrangian frame
  double j_square = 0;         // J^2 + id, |JU| - |U|
};

/// Samples random (x, X, Y, Z, W) and returns the max residual per identity.
IdentityReport verify_nk_identities(const MulTable& table, int n_samples,
                                    std::uint64_t seed, double fd_step = 1e-5);

}  // namespace nk6
