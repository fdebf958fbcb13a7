#include "nk6/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

namespace nk6 {

namespace {

using Quat = std::array<double, 4>;

Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

Quat qconj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

using Oct = std::array<double, 8>;

Oct omul(const Oct& x, const Oct& y) {
  const Quat a{x[0], x[1], x[2], x[3]}, b{x[4], x[5], x[6], x[7]};
  const Quat c{y[0], y[1], y[2], y[3]}, d{y[4], y[5], y[6], y[7]};
  const Quat p = qmul(a, c), q = qmul(qconj(d), b);
  const Quat r = qmul(d, a), s = qmul(b, qconj(c));
  Oct out{};
  for (int t = 0; t < 4; ++t) {
    out[t] = p[t] - q[t];
    out[4 + t] = r[t] + s[t];
  }
  return out;
}

Vec7 random_tangent(const Vec7& x, std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vec7 v;
  for (int a = 0; a < 7; ++a) v[a] = n01(rng);
  return v - v.dot(x) * x;
}

Vec7 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Vec7 v;
  for (int a = 0; a < 7; ++a) v[a] = n01(rng);
  return v.normalized();
}

// Point and velocity of the great circle through x with initial velocity a.
struct GeodesicState {
  Vec7 point;
  Vec7 velocity_unit;  // transported unit tangent of the circle
};

GeodesicState geodesic(const Vec7& x, const Vec7& a, double t) {
  const double s = a.norm();
  if (s == 0) return {x, Vec7::Zero()};
  const Vec7 u = a / s;
  return {std::cos(s * t) * x + std::sin(s * t) * u,
          -std::sin(s * t) * x + std::cos(s * t) * u};
}

// Parallel transport of a tangent vector b along the great circle: the
// component along the velocity rotates with the circle, the rest is constant.
Vec7 transport(const Vec7& x, const Vec7& a, const Vec7& b, double t) {
  const double s = a.norm();
  if (s == 0) return b;
  const Vec7 u = a / s;
  const double along = b.dot(u);
  return b - along * u + along * geodesic(x, a, t).velocity_unit;
}

Vec7 tangential(const Vec7& x, const Vec7& v) { return v - v.dot(x) * x; }

}  // namespace

MulTable MulTable::from_entries(const std::vector<TableEntry>& entries,
                                std::string name) {
  MulTable t;
  t.name_ = std::move(name);
  std::array<int, 343> set{};
  auto put = [&](int i, int j, int k, int s) {
    const int idx = index(i, j, k);
    if (set[idx] && t.f_[idx] != s) {
      throw TableError("table '" + t.name_ + "': conflicting constants for (" +
                       std::to_string(i + 1) + "," + std::to_string(j + 1) +
                       "," + std::to_string(k + 1) + ")");
    }
    set[idx] = 1;
    t.f_[idx] = s;
  };
  for (const auto& e : entries) {
    const bool in_range = e.i >= 1 && e.i <= 7 && e.j >= 1 && e.j <= 7 &&
                          e.k >= 1 && e.k <= 7;
    if (!in_range) throw ParseError("table '" + t.name_ + "': index out of range 1..7");
    if (e.sign != 1 && e.sign != -1) {
      throw ParseError("table '" + t.name_ + "': sign must be +1 or -1");
    }
    if (e.i == e.j || e.j == e.k || e.i == e.k) {
      throw TableError("table '" + t.name_ +
                       "': repeated index violates antisymmetry");
    }
    const int i = e.i - 1, j = e.j - 1, k = e.k - 1, s = e.sign;
    put(i, j, k, s);
    put(j, k, i, s);
    put(k, i, j, s);
    put(j, i, k, -s);
    put(i, k, j, -s);
    put(k, j, i, -s);
  }
  t.validate();
  return t;
}

MulTable MulTable::parse(std::istream& in, std::string name) {
  std::vector<TableEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    TableEntry e;
    if (!(ls >> e.i)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected 'i j k s'");
    }
    if (!(ls >> e.j >> e.k >> e.sign)) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected 'i j k s'");
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": trailing input");
    }
    if (e.i >= e.j) {
      throw ParseError(name + ":" + std::to_string(lineno) + ": requires i < j");
    }
    entries.push_back(e);
  }
  if (entries.empty()) throw ParseError(name + ": no table entries");
  return from_entries(entries, std::move(name));
}

MulTable MulTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path.string());
  return parse(in, path.filename().string());
}

MulTable MulTable::cayley_dickson() {
  std::vector<TableEntry> entries;
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      Oct u{}, v{};
      u[i + 1] = 1;
      v[j + 1] = 1;
      const Oct p = omul(u, v);
      for (int k = j + 1; k < 7; ++k) {
        if (p[k + 1] != 0) {
          entries.push_back({i + 1, j + 1, k + 1, p[k + 1] > 0 ? 1 : -1});
        }
      }
    }
  }
  return from_entries(entries, "cayley-dickson");
}

std::vector<MulTable> MulTable::builtin_candidates() {
  const MulTable cd = cayley_dickson();
  return {cd, cd.negated("cayley-dickson-negated"),
          cd.permuted({0, 1, 3, 2, 4, 5, 6}, "cayley-dickson-swap34")};
}

std::vector<TableEntry> MulTable::entries() const {
  std::vector<TableEntry> out;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k)
        if (const double v = f(i, j, k); v != 0)
          out.push_back({i + 1, j + 1, k + 1, v > 0 ? 1 : -1});
  return out;
}

std::string MulTable::to_text() const {
  std::ostringstream os;
  os << "# cross-product table '" << name_ << "': i j k s means e_i x e_j = s e_k\n";
  for (const auto& e : entries()) {
    os << e.i << ' ' << e.j << ' ' << e.k << ' ' << (e.sign > 0 ? "+1" : "-1") << '\n';
  }
  return os.str();
}

Vec7 MulTable::cross(const Vec7& u, const Vec7& v) const {
  Vec7 w = Vec7::Zero();
  for (int i = 0; i < 7; ++i) {
    if (u[i] == 0) continue;
    for (int j = 0; j < 7; ++j) {
      const double uv = u[i] * v[j];
      if (uv == 0) continue;
      const double* row = &f_[index(i, j, 0)];
      for (int k = 0; k < 7; ++k) w[k] += row[k] * uv;
    }
  }
  return w;
}

double MulTable::axiom_residual() const {
  // |u x v|^2 - |u|^2|v|^2 + <u,v>^2 = sum A(i,l;j,m) u_i u_l v_j v_m; the
  // axiom holds iff the (i,l),(j,m)-symmetrization of A vanishes.
  auto raw = [&](int i, int l, int j, int m) {
    double s = 0;
    for (int k = 0; k < 7; ++k) s += f(i, j, k) * f(l, m, k);
    s -= (i == l ? 1.0 : 0.0) * (j == m ? 1.0 : 0.0);
    s += (i == j ? 1.0 : 0.0) * (l == m ? 1.0 : 0.0);
    return s;
  };
  double worst = 0;
  for (int i = 0; i < 7; ++i)
    for (int l = i; l < 7; ++l)
      for (int j = 0; j < 7; ++j)
        for (int m = j; m < 7; ++m) {
          const double sym = raw(i, l, j, m) + raw(l, i, j, m) +
                             raw(i, l, m, j) + raw(l, i, m, j);
          worst = std::max(worst, std::abs(sym));
        }
  return worst;
}

void MulTable::validate() const {
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k) {
        const double v = f(i, j, k);
        if (v != f(j, k, i) || v != -f(j, i, k)) {
          throw TableError("table '" + name_ + "': not totally antisymmetric");
        }
      }
  if (const double r = axiom_residual(); r > 0.5) {
    throw TableError("table '" + name_ +
                     "': violates |u x v|^2 = |u|^2|v|^2 - <u,v>^2 (residual " +
                     std::to_string(r) + ")");
  }
}

MulTable MulTable::negated(std::string name) const {
  MulTable t = *this;
  for (auto& v : t.f_) v = -v;
  t.name_ = std::move(name);
  return t;
}

MulTable MulTable::permuted(const std::array<int, 7>& perm, std::string name) const {
  std::vector<TableEntry> out;
  for (const auto& e : entries()) {
    int a = perm[e.i - 1], b = perm[e.j - 1], c = perm[e.k - 1];
    int s = e.sign;
    // Sort (a,b,c) tracking the permutation parity.
    if (a > b) { std::swap(a, b); s = -s; }
    if (b > c) { std::swap(b, c); s = -s; }
    if (a > b) { std::swap(a, b); s = -s; }
    out.push_back({a + 1, b + 1, c + 1, s});
  }
  return from_entries(out, std::move(name));
}

SpherePoint::SpherePoint(const Vec7& x, double tol) : x_(x) {
  if (!x.allFinite() || std::abs(x.norm() - 1.0) > tol) {
    throw DomainError("point is not on the unit sphere S^6");
  }
}

Tangent7::Tangent7(const SpherePoint& base, const Vec7& v, double tol)
    : base_(base), v_(v) {
  if (!v.allFinite() || std::abs(base.x().dot(v)) > tol * std::max(1.0, v.norm())) {
    throw DomainError("vector is not tangent to S^6 at its base point");
  }
}

namespace {
void require_same_base(const SpherePoint& x, const Tangent7& u) {
  if ((x.x() - u.base().x()).norm() > kTolUnit) {
    throw DomainError("tangent vector is based at a different point");
  }
}
}  // namespace

Tangent7 almost_complex(const SpherePoint& x, const Tangent7& u,
                        const MulTable& table) {
  require_same_base(x, u);
  // x x U is already tangent; the projection only strips roundoff.
  return Tangent7(x, tangential(x.x(), apply_j(x.x(), u.v(), table)));
}

Tangent7 g_tensor(const SpherePoint& x, const Tangent7& a, const Tangent7& b,
                  const MulTable& table) {
  require_same_base(x, a);
  require_same_base(x, b);
  return Tangent7(x, apply_g(x.x(), a.v(), b.v(), table));
}

Vec7 nabla_g_fd(const Vec7& x, const Vec7& a, const Vec7& b, const Vec7& c,
                const MulTable& table, double step) {
  auto field = [&](double t) {
    const Vec7 p = geodesic(x, a, t).point;
    return apply_g(p, transport(x, a, b, t), transport(x, a, c, t), table);
  };
  const Vec7 d = (field(step) - field(-step)) / (2 * step);
  return tangential(x, d);
}

Vec7 g_tensor_fd(const Vec7& x, const Vec7& a, const Vec7& b,
                 const MulTable& table, double step) {
  // With Y parallel along the curve, J nabla_X Y = 0 and only nabla_X(JY) remains.
  auto field = [&](double t) {
    const Vec7 p = geodesic(x, a, t).point;
    return apply_j(p, transport(x, a, b, t), table);
  };
  const Vec7 d = (field(step) - field(-step)) / (2 * step);
  return tangential(x, d);
}

IdentityReport verify_nk_identities(const MulTable& table, int n_samples,
                                    std::uint64_t seed, double fd_step) {
  if (n_samples < 1) throw DomainError("verify_nk_identities: n_samples must be >= 1");
  std::mt19937_64 rng(seed);
  IdentityReport rep;
  rep.samples = n_samples;
  auto upd = [](double& slot, double v) { slot = std::max(slot, std::abs(v)); };
  for (int s = 0; s < n_samples; ++s) {
    const Vec7 x = random_unit(rng);
    const Vec7 X = random_tangent(x, rng), Y = random_tangent(x, rng);
    const Vec7 Z = random_tangent(x, rng), W = random_tangent(x, rng);
    auto J = [&](const Vec7& u) { return apply_j(x, u, table); };
    auto G = [&](const Vec7& u, const Vec7& v) { return apply_g(x, u, v, table); };

    upd(rep.antisymmetry, (G(X, Y) + G(Y, X)).norm());
    upd(rep.j_compat, (G(X, J(Y)) + J(G(X, Y))).norm());
    upd(rep.skew, G(X, Y).dot(Z) + G(X, Z).dot(Y));
    const double lhs = G(X, Y).dot(G(Z, W));
    const double rhs = X.dot(Z) * Y.dot(W) - X.dot(W) * Z.dot(Y) +
                       J(X).dot(Z) * Y.dot(J(W)) - J(X).dot(W) * Y.dot(J(Z));
    upd(rep.inner_product, lhs - rhs);
    upd(rep.j_square, (J(J(X)) + X).norm());
    upd(rep.j_square, J(X).norm() - X.norm());

    const Vec7 fd = nabla_g_fd(x, X, Y, Z, table, fd_step);
    const Vec7 expect = Y.dot(J(Z)) * X + X.dot(Z) * J(Y) - X.dot(Y) * J(Z);
    upd(rep.derivative, (fd - expect).norm());

    // Lagrangian frame: e1, e2 with e2 orthogonal to J e1, e3 = G(e1, e2).
    const Vec7 e1 = X.normalized();
    Vec7 e2 = Y - Y.dot(e1) * e1;
    e2 -= e2.dot(J(e1)) * J(e1);
    e2.normalize();
    const Vec7 e3 = G(e1, e2).normalized();
    const std::array<Vec7, 3> e{e1, e2, e3};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double want = (i == k && j == l ? 1.0 : 0.0) -
                                (i == l && j == k ? 1.0 : 0.0);
            upd(rep.frame_products, G(e[i], e[j]).dot(G(e[k], e[l])) - want);
          }
  }
  return rep;
}

}  // namespace nk6
