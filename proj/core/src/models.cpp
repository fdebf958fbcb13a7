#include "nk6/models.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace nk6 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;

double wrap_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

std::array<Jet, 4> hopf_jet(const ChartPoint& q, int order) {
  const Jet eta = Jet::variable(0, q[0], order);
  const Jet xi1 = Jet::variable(1, q[1], order);
  const Jet xi2 = Jet::variable(2, q[2], order);
  const Jet ce = cos(eta), se = sin(eta);
  return {ce * cos(xi1), ce * sin(xi1), se * cos(xi2), se * sin(xi2)};
}

double tangent_tolerance(const Vec4& v) { return 1e-10 * (1.0 + v.norm()); }

void require_tangent(const Vec4& y, const Vec4& v) {
  if (std::abs(y.dot(v)) > tangent_tolerance(v)) {
    throw DomainError("vector is not tangent to S^3 at the base point");
  }
}

Vec3 x_coordinates(const Vec4& y, const Vec4& v) {
  return {v.dot(field_x1(y)), v.dot(field_x2(y)), v.dot(field_x3(y))};
}

}  // namespace

Vec4 hopf_to_s3(const ChartPoint& q) {
  return {std::cos(q[0]) * std::cos(q[1]), std::cos(q[0]) * std::sin(q[1]),
          std::sin(q[0]) * std::cos(q[2]), std::sin(q[0]) * std::sin(q[2])};
}

ChartPoint s3_to_hopf(const Vec4& y) {
  const double r12 = std::hypot(y[0], y[1]), r34 = std::hypot(y[2], y[3]);
  return {std::atan2(r34, r12), wrap_angle(std::atan2(y[1], y[0])),
          wrap_angle(std::atan2(y[3], y[2]))};
}

Eigen::Matrix<double, 4, 3> hopf_jacobian(const ChartPoint& q) {
  const double ce = std::cos(q[0]), se = std::sin(q[0]);
  const double c1 = std::cos(q[1]), s1 = std::sin(q[1]);
  const double c2 = std::cos(q[2]), s2 = std::sin(q[2]);
  Eigen::Matrix<double, 4, 3> j;
  j << -se * c1, -ce * s1, 0,
       -se * s1, ce * c1, 0,
       ce * c2, 0, -se * s2,
       ce * s2, 0, se * c2;
  return j;
}

std::vector<ChartPoint> random_chart_points(int n, std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  std::vector<ChartPoint> out;
  out.reserve(n);
  while (static_cast<int>(out.size()) < n) {
    Vec4 y;
    for (int a = 0; a < 4; ++a) y[a] = n01(rng);
    const ChartPoint q = s3_to_hopf(y.normalized());
    if (std::min(q[0], kPi / 2 - q[0]) >= margin) out.push_back(q);
  }
  return out;
}

Vec4 field_x1(const Vec4& y) { return {y[1], -y[0], y[3], -y[2]}; }
Vec4 field_x2(const Vec4& y) { return {y[2], -y[3], -y[0], y[1]}; }
Vec4 field_x3(const Vec4& y) { return {y[3], y[2], -y[1], -y[0]}; }

Polynomial4::Polynomial4(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.row < 0 || t.row > 6) throw ParseError("polynomial row must be 1..7");
    int d = 0;
    for (int e : t.exps) {
      if (e < 0) throw ParseError("negative exponent in polynomial term");
      d += e;
    }
    if (!std::isfinite(t.coeff)) throw ParseError("non-finite polynomial coefficient");
    degree_ = std::max(degree_, d);
  }
}

Polynomial4 Polynomial4::parse(std::istream& in) {
  std::vector<Term> terms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    int row = 0;
    if (!(ls >> row)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos) {
        throw ParseError("polynomial line " + std::to_string(lineno) + ": expected row index");
      }
      continue;
    }
    Term t;
    t.row = row - 1;
    for (int& e : t.exps) {
      if (!(ls >> e)) throw ParseError("polynomial line " + std::to_string(lineno) + ": expected 4 exponents");
    }
    if (!(ls >> t.coeff)) {
      throw ParseError("polynomial line " + std::to_string(lineno) + ": expected coefficient");
    }
    std::string rest;
    if (ls >> rest) throw ParseError("polynomial line " + std::to_string(lineno) + ": trailing input");
    if (row < 1 || row > 7) {
      throw ParseError("polynomial line " + std::to_string(lineno) + ": row must be 1..7");
    }
    terms.push_back(t);
  }
  if (terms.empty()) throw ParseError("polynomial file has no terms");
  return Polynomial4(std::move(terms));
}

Polynomial4 Polynomial4::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open polynomial file " + path.string());
  return parse(in);
}

Vec7 Polynomial4::operator()(const Vec4& y) const {
  Vec7 out = Vec7::Zero();
  for (const auto& t : terms_) {
    double m = t.coeff;
    for (int a = 0; a < 4; ++a)
      for (int e = 0; e < t.exps[a]; ++e) m *= y[a];
    out[t.row] += m;
  }
  return out;
}

std::array<Jet, 7> Polynomial4::operator()(const std::array<Jet, 4>& y) const {
  const int order = y[0].order();
  std::vector<std::array<Jet, 4>> powers(degree_ + 1);
  for (int a = 0; a < 4; ++a) {
    powers[0][a] = Jet::constant(1.0, order);
    for (int e = 1; e <= degree_; ++e) powers[e][a] = powers[e - 1][a] * y[a];
  }
  std::array<Jet, 7> out;
  for (auto& c : out) c = Jet(order);
  for (const auto& t : terms_) {
    Jet m = Jet::constant(t.coeff, order);
    for (int a = 0; a < 4; ++a)
      if (t.exps[a] > 0) m = m * powers[t.exps[a]][a];
    out[t.row] += m;
  }
  return out;
}

S3Immersion::S3Immersion(std::string name, Polynomial4 poly,
                         std::optional<Mat3> field_coeffs)
    : name_(std::move(name)), poly_(std::move(poly)), fields_(std::move(field_coeffs)) {}

bool S3Immersion::in_domain(const ChartPoint& q) const {
  return q[0] >= 0 && q[0] <= kPi / 2 && q[1] >= 0 && q[1] < kTwoPi && q[2] >= 0 &&
         q[2] < kTwoPi;
}

double S3Immersion::degeneracy_distance(const ChartPoint& q) const {
  return std::max(0.0, std::min(q[0], kPi / 2 - q[0]));
}

Vec7 S3Immersion::value(const ChartPoint& q) const { return poly_(hopf_to_s3(q)); }

std::optional<ImmersionJet> S3Immersion::analytic_jet(const ChartPoint& q,
                                                      int order) const {
  ImmersionJet j;
  j.order = order;
  j.comps = poly_(hopf_jet(q, order));
  return j;
}

std::optional<Mat3> S3Immersion::frame_fields(const ChartPoint& q) const {
  if (!fields_) return std::nullopt;
  const double ce = std::cos(q[0]), se = std::sin(q[0]);
  if (ce == 0 || se == 0) return std::nullopt;
  const Vec4 y = hopf_to_s3(q);
  const auto jac = hopf_jacobian(q);
  // The Hopf chart partials are orthogonal with squared lengths 1, cos^2, sin^2.
  const Vec3 inv_len2{1.0, 1.0 / (ce * ce), 1.0 / (se * se)};
  const std::array<Vec4, 3> x{field_x1(y), field_x2(y), field_x3(y)};
  Mat3 b;
  for (int i = 0; i < 3; ++i) {
    Vec4 v = Vec4::Zero();
    for (int k = 0; k < 3; ++k) v += (*fields_)(i, k) * x[k];
    for (int a = 0; a < 3; ++a) b(i, a) = v.dot(jac.col(a)) * inv_len2[a];
  }
  return b;
}

Vec7 S3Immersion::push_forward(const Vec4& y, const Vec4& v) const {
  std::array<Jet, 4> yj;
  for (int a = 0; a < 4; ++a) {
    yj[a] = Jet::constant(y[a], 1);
    yj[a].coeff(1) = v[a];  // first chart variable carries the direction v
  }
  const auto out = poly_(yj);
  Vec7 d;
  for (int n = 0; n < 7; ++n) d[n] = out[n].coeff(1);
  return d;
}

Polynomial4 dvv_polynomial() {
  const double s5 = std::sqrt(5.0);
  const double c4 = std::sqrt(3.0) / (9 * std::sqrt(2.0));
  const double c5 = std::sqrt(15.0) / (9 * std::sqrt(2.0));
  using T = Polynomial4::Term;
  std::vector<T> t{
      {0, {2, 0, 0, 0}, 5.0 / 9}, {0, {0, 2, 0, 0}, 5.0 / 9},
      {0, {0, 0, 2, 0}, -5.0 / 9}, {0, {0, 0, 0, 2}, -5.0 / 9},
      {0, {1, 0, 0, 0}, 4.0 / 9},
      {1, {0, 1, 0, 0}, -2.0 / 3},
      {2, {2, 0, 0, 0}, 2 * s5 / 9}, {2, {0, 2, 0, 0}, 2 * s5 / 9},
      {2, {0, 0, 2, 0}, -2 * s5 / 9}, {2, {0, 0, 0, 2}, -2 * s5 / 9},
      {2, {1, 0, 0, 0}, -2 * s5 / 9},
      {3, {1, 0, 1, 0}, -10 * c4}, {3, {0, 0, 1, 0}, -2 * c4}, {3, {0, 1, 0, 1}, -10 * c4},
      {4, {1, 0, 0, 1}, 2 * c5}, {4, {0, 0, 0, 1}, -2 * c5}, {4, {0, 1, 1, 0}, -2 * c5},
      {5, {1, 0, 1, 0}, 2 * c5}, {5, {0, 0, 1, 0}, -2 * c5}, {5, {0, 1, 0, 1}, 2 * c5},
      {6, {1, 0, 0, 1}, 10 * c4}, {6, {0, 0, 0, 1}, 2 * c4}, {6, {0, 1, 1, 0}, -10 * c4},
  };
  return Polynomial4(std::move(t));
}

std::shared_ptr<const S3Immersion> dvv_immersion() {
  const double c = std::sqrt(3.0) / (2 * std::sqrt(2.0));
  Mat3 fields = Mat3::Zero();
  fields(0, 0) = 1.5;
  fields(1, 1) = c;
  fields(2, 2) = -c;
  static const auto instance =
      std::make_shared<const S3Immersion>("dvv", dvv_polynomial(), fields);
  return instance;
}

std::array<int, 4> lagrangian_coordinate_plane(const MulTable& table) {
  for (const auto& e : table.entries()) {
    std::array<int, 4> w{};
    int n = 0;
    for (int a = 0; a < 7; ++a)
      if (a != e.i - 1 && a != e.j - 1 && a != e.k - 1) w[n++] = a;
    bool closed = true;
    for (int a : w)
      for (int b : w)
        for (int c : w)
          if (table.f(a, b, c) != 0) closed = false;
    if (closed) return w;
  }
  throw TableError("table '" + table.name() + "' has no Lagrangian coordinate 4-plane");
}

std::shared_ptr<const S3Immersion> totally_geodesic_immersion(const MulTable& table) {
  const auto w = lagrangian_coordinate_plane(table);
  std::vector<Polynomial4::Term> terms;
  for (int a = 0; a < 4; ++a) {
    Polynomial4::Term t;
    t.row = w[a];
    t.exps[a] = 1;
    t.coeff = 1.0;
    terms.push_back(t);
  }
  return std::make_shared<const S3Immersion>("totally-geodesic",
                                             Polynomial4(std::move(terms)),
                                             Mat3::Identity());
}

double berger_inner(const BergerSpec& spec, const Vec4& y, const Vec4& a, const Vec4& b) {
  if (!(spec.w1 > 0) || !(spec.w23 > 0)) throw DomainError("Berger weights must be positive");
  require_tangent(y, a);
  require_tangent(y, b);
  const Vec3 ca = x_coordinates(y, a), cb = x_coordinates(y, b);
  return spec.w1 * ca[0] * cb[0] + spec.w23 * (ca[1] * cb[1] + ca[2] * cb[2]);
}

double berger_curvature(const BergerSpec& spec, const Vec4& y, const Vec4& x,
                        const Vec4& yv, const Vec4& z, const Vec4& w) {
  if (!(spec.w1 > 0) || !(spec.w23 > 0)) throw DomainError("Berger weights must be positive");
  if (std::abs(y.norm() - 1) > kTolUnit) throw DomainError("base point is not on S^3");
  for (const Vec4* v : {&x, &yv, &z, &w}) require_tangent(y, *v);
  const Vec3 cx = x_coordinates(y, x), cy = x_coordinates(y, yv);
  const Vec3 cz = x_coordinates(y, z), cw = x_coordinates(y, w);
  auto full = [&](const Vec3& a, const Vec3& b) {
    return spec.w1 * a[0] * b[0] + spec.w23 * (a[1] * b[1] + a[2] * b[2]);
  };
  auto perp = [&](const Vec3& a, const Vec3& b) {
    return spec.w23 * (a[1] * b[1] + a[2] * b[2]);
  };
  return spec.alpha() * (full(cx, cz) * full(cy, cw) - full(cx, cw) * full(cy, cz)) +
         spec.beta() * (perp(cx, cz) * perp(cy, cw) - perp(cx, cw) * perp(cy, cz));
}

double berger_sectional(const BergerSpec& spec, const Vec4& y, const Vec4& a,
                        const Vec4& b) {
  const double area = berger_inner(spec, y, a, a) * berger_inner(spec, y, b, b) -
                      std::pow(berger_inner(spec, y, a, b), 2);
  if (!(area > 0)) throw DomainError("sectional curvature of a degenerate plane");
  return berger_curvature(spec, y, a, b, a, b) / area;
}

SyntheticH synthetic_case(char tag) {
  const double l = std::sqrt(5.0) / 4;
  switch (tag) {
    case 'a':
      return {'a', 0, 0, 0, 0};
    case 'b':
      return {'b', l, l, std::sqrt(10.0) / 4, 0};
    case 'c':
      return {'c', l, l, 0, 0};
    default:
      throw DomainError(std::string("unknown synthetic case '") + tag + "'");
  }
}

SyntheticH synthetic_case(std::string_view tag) {
  if (tag.size() != 1) throw DomainError("unknown synthetic case '" + std::string(tag) + "'");
  return synthetic_case(tag[0]);
}

TableScore score_table(const MulTable& table, int samples, std::uint64_t seed) {
  const auto dvv = dvv_immersion();
  TableScore s;
  s.h11 = std::numeric_limits<double>::infinity();
  FrameOptions opts;
  opts.source = FrameSource::Fields;
  opts.jet_order = 2;
  for (const auto& q : random_chart_points(samples, seed, 0.05)) {
    const FramePacket fr = frame(*dvv, q, table, opts);
    s.lagrangian = std::max(s.lagrangian, fr.lagrangian_residual);
    const Vec7 g = apply_g(fr.base, fr.e[1], fr.e[2], table);
    s.g_alignment = std::max(s.g_alignment, (g - fr.e_star[0]).norm());
    s.h11 = std::min(s.h11, second_fundamental_form(fr)(0, 0, 0));
  }
  return s;
}

MulTable select_table(const std::vector<MulTable>& candidates) {
  for (const auto& t : candidates) {
    if (score_table(t).accepted()) return t;
  }
  throw TableError("no candidate multiplication table passes the DVV orientation oracle");
}

Model make_model(std::string_view name, const MulTable& table) {
  Model m;
  m.name = std::string(name);
  if (name == "dvv") {
    m.immersion = dvv_immersion();
  } else if (name == "totally-geodesic") {
    m.immersion = totally_geodesic_immersion(table);
  } else if (name.rfind("synthetic:", 0) == 0) {
    m.synthetic = synthetic_case(name.substr(10));
  } else if (std::filesystem::is_regular_file(std::filesystem::path(name))) {
    const std::filesystem::path path(name);
    auto imm = std::make_shared<const S3Immersion>(path.stem().string(),
                                                   Polynomial4::load(path));
    for (const auto& q : random_chart_points(16, 3)) {
      const double r = std::abs(imm->value(q).norm() - 1);
      if (r > 1e-10) {
        throw DomainError("polynomial model '" + path.string() + "' does not map into S^6");
      }
    }
    m.immersion = imm;
  } else {
    throw DomainError("unknown model '" + std::string(name) + "'");
  }
  return m;
}

}  // namespace nk6
