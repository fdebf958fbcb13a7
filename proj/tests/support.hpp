#pragma once

#include "nk6/nk6.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace nk6::test {

inline Vec7 random_vec7(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vec7 v;
  for (int i = 0; i < 7; ++i) v[i] = n01(rng);
  return v;
}

inline Vec7 random_unit7(std::mt19937_64& rng) { return random_vec7(rng).normalized(); }

inline Vec7 random_tangent(std::mt19937_64& rng, const Vec7& x) {
  Vec7 v = random_vec7(rng);
  return v - v.dot(x) * x;
}

inline Vec3 random_unit3(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  return Vec3(n01(rng), n01(rng), n01(rng)).normalized();
}

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond q(n01(rng), n01(rng), n01(rng), n01(rng));
  return q.normalized().toRotationMatrix();
}

inline Vec7 unit(int i) { return Vec7::Unit(i); }

/// Tuple with lambda1 + lambda2 > 0 and the canonical constraints satisfied.
inline std::array<double, 4> random_tuple(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-1, 1);
  for (;;) {
    const double l1 = scale * u(rng), l2 = scale * u(rng);
    const double s = l1 + l2;
    if (s <= 0 || 3 * l1 + l2 < 0 || 3 * l2 + l1 < 0) continue;
    return {l1, l2, s * u(rng), s * u(rng)};
  }
}

inline double max_abs_diff(const SFF& a, const SFF& b) {
  double m = 0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a(k, i, j) - b(k, i, j)));
  return m;
}

}  // namespace nk6::test

namespace nk6::test {

/// Random trace-free symmetric cubic form: C - (3/5) sym(delta x t), t_k = C_iik.
inline SFF random_trace_free(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::array<double, 10> c;
  for (double& v : c) v = u(rng);
  const SFF raw = SFF::from_symmetric(c);
  Vec3 t = Vec3::Zero();
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) t[k] += raw(k, i, i);
  SFF out;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        out(k, i, j) = raw(k, i, j) - 0.2 * ((i == j) * t[k] + (i == k) * t[j] + (j == k) * t[i]);
  return out;
}

/// Max of the cubic over a Fibonacci lattice of n unit vectors.
inline std::pair<double, Vec3> brute_force_max(const SFF& h, int n) {
  const double golden = std::numbers::pi * (3 - std::sqrt(5.0));
  double best = -std::numeric_limits<double>::infinity();
  Vec3 arg = Vec3::UnitX();
  for (int i = 0; i < n; ++i) {
    const double z = 1 - (2 * i + 1.0) / n;
    const double r = std::sqrt(1 - z * z);
    const Vec3 u(r * std::cos(golden * i), r * std::sin(golden * i), z);
    const double f = h.cubic(u);
    if (f > best) {
      best = f;
      arg = u;
    }
  }
  return {best, arg};
}

}  // namespace nk6::test
