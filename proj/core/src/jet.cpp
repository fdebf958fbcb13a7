#include "nk6/jet.hpp"

#include "nk6/types.hpp"

#include <algorithm>
#include <vector>

namespace nk6 {

namespace {

struct JetTables {
  std::array<MultiIndex, kJetSize> exps{};
  int index[4][4][4]{};
  // (i, j, k): coefficient i times coefficient j contributes to k.
  struct Product {
    int i, j, k, degree;
  };
  std::vector<Product> products;
  std::array<double, kJetSize> factorial{};  // a! for each monomial

  JetTables() {
    int n = 0;
    for (int d = 0; d <= kMaxJetOrder; ++d)
      for (int a = d; a >= 0; --a)
        for (int b = d - a; b >= 0; --b) {
          const int c = d - a - b;
          exps[n] = {a, b, c};
          index[a][b][c] = n;
          ++n;
        }
    auto fact = [](int v) { return v <= 1 ? 1.0 : (v == 2 ? 2.0 : 6.0); };
    for (int i = 0; i < kJetSize; ++i) {
      factorial[i] = fact(exps[i][0]) * fact(exps[i][1]) * fact(exps[i][2]);
      for (int j = 0; j < kJetSize; ++j) {
        const MultiIndex s{exps[i][0] + exps[j][0], exps[i][1] + exps[j][1],
                           exps[i][2] + exps[j][2]};
        const int deg = s[0] + s[1] + s[2];
        if (deg <= kMaxJetOrder) products.push_back({i, j, index[s[0]][s[1]][s[2]], deg});
      }
    }
    std::stable_sort(products.begin(), products.end(),
                     [](const Product& a, const Product& b) { return a.degree < b.degree; });
  }
};

const JetTables& tables() {
  static const JetTables t;
  return t;
}

int degree(const MultiIndex& a) { return a[0] + a[1] + a[2]; }

}  // namespace

int jet_index(const MultiIndex& a) {
  if (a[0] < 0 || a[1] < 0 || a[2] < 0 || degree(a) > kMaxJetOrder) {
    throw DomainError("multi-index outside jet range");
  }
  return tables().index[a[0]][a[1]][a[2]];
}

const MultiIndex& jet_exponent(int index) { return tables().exps.at(index); }

Jet Jet::constant(double value, int order) {
  Jet j(order);
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(int var, double value, int order) {
  Jet j = constant(value, order);
  if (order >= 1) {
    MultiIndex a{0, 0, 0};
    a[var] = 1;
    j.c_[jet_index(a)] = 1.0;
  }
  return j;
}

double Jet::partial(const MultiIndex& a) const {
  if (degree(a) > order_) throw DomainError("partial derivative above jet order");
  const int idx = jet_index(a);
  return c_[idx] * tables().factorial[idx];
}

Jet Jet::derivative(int var) const {
  if (order_ < 1) throw DomainError("cannot differentiate an order-0 jet");
  Jet d(order_ - 1);
  const auto& t = tables();
  for (int i = 0; i < jet_size(order_ - 1); ++i) {
    MultiIndex a = t.exps[i];
    a[var] += 1;
    d.c_[i] = a[var] * c_[t.index[a[0]][a[1]][a[2]]];
  }
  return d;
}

Jet Jet::truncated(int order) const {
  Jet r(std::min(order, order_));
  for (int i = 0; i < jet_size(r.order_); ++i) r.c_[i] = c_[i];
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < jet_size(order_); ++i) c_[i] += o.c_[i];
  for (int i = jet_size(order_); i < kJetSize; ++i) c_[i] = 0;
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  order_ = std::min(order_, o.order_);
  for (int i = 0; i < jet_size(order_); ++i) c_[i] -= o.c_[i];
  for (int i = jet_size(order_); i < kJetSize; ++i) c_[i] = 0;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  r *= -1.0;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r(std::min(a.order_, b.order_));
  for (const auto& p : tables().products) {
    if (p.degree > r.order_) break;
    r.c_[p.k] += a.c_[p.i] * b.c_[p.j];
  }
  return r;
}

Jet Jet::compose(const std::array<double, 4>& g) const {
  // g(v + d) = sum_n g^(n)(v) d^n / n!, with d nilpotent of degree > order.
  Jet delta = *this;
  delta.c_[0] = 0;
  Jet result = constant(g[0], order_);
  Jet power = constant(1.0, order_);
  double nfact = 1.0;
  for (int n = 1; n <= order_; ++n) {
    power = power * delta;
    nfact *= n;
    result += power * (g[n] / nfact);
  }
  return result;
}

Jet sin(const Jet& f) {
  const double s = std::sin(f.value()), c = std::cos(f.value());
  return f.compose({s, c, -s, -c});
}

Jet cos(const Jet& f) {
  const double s = std::sin(f.value()), c = std::cos(f.value());
  return f.compose({c, -s, -c, s});
}

}  // namespace nk6
