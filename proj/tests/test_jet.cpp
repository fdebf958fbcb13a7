#include "nk6/jet.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace nk6;

TEST(Jet, IndexRoundTrip) {
  for (int i = 0; i < kJetSize; ++i) EXPECT_EQ(jet_index(jet_exponent(i)), i);
  EXPECT_EQ(jet_size(0), 1);
  EXPECT_EQ(jet_size(3), 20);
}

TEST(Jet, ProductOfVariables) {
  const Jet x = Jet::variable(0, 0.5, 3), y = Jet::variable(1, -2.0, 3);
  const Jet f = x * x * y;  // x^2 y
  EXPECT_DOUBLE_EQ(f.value(), -0.5);
  EXPECT_DOUBLE_EQ(f.partial({1, 0, 0}), 2 * 0.5 * -2.0);
  EXPECT_DOUBLE_EQ(f.partial({0, 1, 0}), 0.25);
  EXPECT_DOUBLE_EQ(f.partial({2, 0, 0}), -4.0);
  EXPECT_DOUBLE_EQ(f.partial({1, 1, 0}), 1.0);
  EXPECT_DOUBLE_EQ(f.partial({2, 1, 0}), 2.0);
  EXPECT_DOUBLE_EQ(f.partial({0, 0, 1}), 0.0);
}

TEST(Jet, TrigMatchesClosedForm) {
  const double a = 0.3, b = 1.1;
  const Jet x = Jet::variable(0, a, 3), z = Jet::variable(2, b, 3);
  const Jet f = sin(x * z);
  const double u = a * b;
  EXPECT_NEAR(f.value(), std::sin(u), 1e-15);
  EXPECT_NEAR(f.partial({1, 0, 0}), b * std::cos(u), 1e-15);
  EXPECT_NEAR(f.partial({0, 0, 2}), -a * a * std::sin(u), 1e-15);
  EXPECT_NEAR(f.partial({1, 0, 1}), std::cos(u) - u * std::sin(u), 1e-15);
  EXPECT_NEAR(f.partial({2, 0, 1}), -2 * b * std::sin(u) - u * b * std::cos(u), 1e-14);
  EXPECT_NEAR(f.partial({0, 0, 3}), -a * a * a * std::cos(u), 1e-15);
  const Jet g = cos(x);
  EXPECT_NEAR(g.partial({3, 0, 0}), std::sin(a), 1e-15);
}

TEST(Jet, DerivativeLowersOrder) {
  const Jet x = Jet::variable(0, 0.7, 3), y = Jet::variable(1, 0.2, 3);
  const Jet f = sin(x) * cos(y);
  const Jet fx = f.derivative(0);
  EXPECT_EQ(fx.order(), 2);
  EXPECT_NEAR(fx.value(), std::cos(0.7) * std::cos(0.2), 1e-15);
  EXPECT_NEAR(fx.partial({0, 2, 0}), f.partial({1, 2, 0}), 1e-15);
  EXPECT_NEAR(fx.partial({1, 1, 0}), f.partial({2, 1, 0}), 1e-15);
}

TEST(Jet, TruncationAndLinearOps) {
  const Jet x = Jet::variable(0, 1.0, 3);
  const Jet f = (x * x * x) * 2.0 - x + Jet::constant(4, 3);
  const Jet t = f.truncated(1);
  EXPECT_EQ(t.order(), 1);
  EXPECT_DOUBLE_EQ(t.value(), 5.0);
  EXPECT_DOUBLE_EQ(t.partial({1, 0, 0}), 5.0);
  EXPECT_DOUBLE_EQ((-f).value(), -5.0);
}

TEST(Jet, ComposeChainRule) {
  const Jet x = Jet::variable(1, 0.4, 3);
  const Jet f = x * x;
  const double v = 0.16;
  const Jet e = f.compose({std::exp(v), std::exp(v), std::exp(v), std::exp(v)});
  // d^3/dx^3 exp(x^2) = (12x + 8x^3) exp(x^2)
  EXPECT_NEAR(e.partial({0, 3, 0}), (12 * 0.4 + 8 * 0.064) * std::exp(v), 1e-14);
  EXPECT_NEAR(e.partial({0, 2, 0}), (2 + 4 * v) * std::exp(v), 1e-14);
}
