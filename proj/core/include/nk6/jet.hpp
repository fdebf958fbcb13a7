#pragma once

// Truncated multivariate Taylor polynomials in three chart variables, up to
// total order 3. A Jet stores Taylor coefficients c_a of
//   f(q + s) = sum_{|a| <= order} c_a s^a,
// so the partial derivative d^a f(q) equals a! c_a.

#include <array>
#include <cmath>
#include <cstddef>

namespace nk6 {

inline constexpr int kJetVars = 3;
inline constexpr int kMaxJetOrder = 3;
inline constexpr int kJetSize = 20;  // monomials of degree <= 3 in 3 variables

using MultiIndex = std::array<int, 3>;

/// Number of monomials of degree <= order.
constexpr int jet_size(int order) {
  constexpr std::array<int, 4> sizes{1, 4, 10, 20};
  return sizes[order];
}

/// Graded index of a multi-index (degree 0, then 1, ...).
int jet_index(const MultiIndex& a);
const MultiIndex& jet_exponent(int index);

class Jet {
 public:
  Jet() = default;
  explicit Jet(int order) : order_(order) {}

  static Jet constant(double value, int order);
  /// The chart coordinate `var` expanded at `value`.
  static Jet variable(int var, double value, int order);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double coeff(int index) const noexcept { return c_[index]; }
  double& coeff(int index) noexcept { return c_[index]; }

  /// d^a f at the expansion point; requires |a| <= order().
  double partial(const MultiIndex& a) const;
  /// First partial derivative d f / d t_var as a jet of order() - 1.
  Jet derivative(int var) const;
  /// Drops terms above `order`.
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator*(const Jet& a, const Jet& b);

  /// g(f) for scalar g given its derivatives g(v), g'(v), g''(v), g'''(v) at
  /// v = f.value().
  Jet compose(const std::array<double, 4>& g_derivs) const;

 private:
  std::array<double, kJetSize> c_{};
  int order_ = kMaxJetOrder;
};

Jet sin(const Jet& f);
Jet cos(const Jet& f);

}  // namespace nk6
