#include "nk6/simons.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

namespace nk6 {

QuadratureRule QuadratureRule::parse(const std::string& text) {
  QuadratureRule r;
  std::array<int*, 3> slots{&r.n_eta, &r.n_xi1, &r.n_xi2};
  std::istringstream in(text);
  for (int i = 0; i < 3; ++i) {
    std::string part;
    if (!std::getline(in, part, ',')) throw ParseError("quadrature rule must be n1,n2,n3");
    try {
      size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 1) throw ParseError("");
      *slots[i] = v;
    } catch (const std::exception&) {
      throw ParseError("invalid quadrature count '" + part + "'");
    }
  }
  std::string rest;
  if (std::getline(in, rest)) throw ParseError("quadrature rule must be n1,n2,n3");
  return r;
}

std::string QuadratureRule::to_string() const {
  return std::to_string(n_eta) + "," + std::to_string(n_xi1) + "," + std::to_string(n_xi2);
}

Nodes1D gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  Nodes1D r;
  r.x.resize(n);
  r.w.resize(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = 0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2 / ((1 - z * z) * dp * dp);
    r.x[i] = mid - half * z;
    r.x[n - 1 - i] = mid + half * z;
    r.w[i] = r.w[n - 1 - i] = half * w;
  }
  return r;
}

Nodes1D periodic_trapezoid(int n, double period) {
  if (n < 1) throw DomainError("trapezoid rule needs at least one node");
  Nodes1D r;
  for (int k = 0; k < n; ++k) {
    r.x.push_back(period * k / n);
    r.w.push_back(period / n);
  }
  return r;
}

double pairwise_sum(const std::vector<double>& v) {
  const auto rec = [&](auto&& self, size_t lo, size_t hi) -> double {
    if (hi - lo <= 8) {
      double s = 0;
      for (size_t i = lo; i < hi; ++i) s += v[i];
      return s;
    }
    const size_t m = lo + (hi - lo) / 2;
    return self(self, lo, m) + self(self, m, hi);
  };
  return rec(rec, 0, v.size());
}

const char* to_string(EqualityClass c) {
  switch (c) {
    case EqualityClass::Geodesic:
      return "geodesic";
    case EqualityClass::DvvType:
      return "DVV-type";
    case EqualityClass::Strict:
      return "strict";
    case EqualityClass::Indeterminate:
      return "indeterminate";
  }
  return "unknown";
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  t = std::clamp(t, 1, std::max(1, n));
  if (t == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(t);
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += t) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void InequalityReport::write_samples_csv(std::ostream& out) const {
  out << "eta,xi1,xi2,hsq,theta,integrand,sqrt_det\n";
  const auto old = out.precision(17);
  for (const auto& s : samples) {
    out << s.q[0] << ',' << s.q[1] << ',' << s.q[2] << ',' << s.hsq << ',' << s.theta << ','
        << s.integrand << ',' << s.sqrt_det << '\n';
  }
  out.precision(old);
}

namespace {

struct RuleResult {
  double integral = 0;
  double volume = 0;
  std::vector<IntegrandSample> samples;
};

RuleResult run_rule(const Immersion& imm, const MulTable& table, const QuadratureRule& rule,
                    int threads) {
  const Nodes1D eta = gauss_legendre(rule.n_eta, 0, std::numbers::pi / 2);
  const Nodes1D xi1 = periodic_trapezoid(rule.n_xi1, 2 * std::numbers::pi);
  const Nodes1D xi2 = periodic_trapezoid(rule.n_xi2, 2 * std::numbers::pi);
  const int n = rule.node_count();
  RuleResult rr;
  rr.samples.resize(n);
  std::vector<double> wi(n), wv(n);
  FrameOptions opts;
  opts.jet_order = 2;
  parallel_for(n, threads, [&](int idx) {
    const int a = idx / (rule.n_xi1 * rule.n_xi2);
    const int b = (idx / rule.n_xi2) % rule.n_xi1;
    const int c = idx % rule.n_xi2;
    IntegrandSample s;
    s.q = ChartPoint(eta.x[a], xi1.x[b], xi2.x[c]);
    const FramePacket fr = frame(imm, s.q, table, opts);
    const SFF h = second_fundamental_form(fr);
    s.hsq = h.norm_sq();
    s.theta = maximize_theta(h).theta;
    s.integrand = simons_integrand(s.hsq, s.theta);
    s.sqrt_det = fr.sqrt_det;
    const double w = eta.w[a] * xi1.w[b] * xi2.w[c] * s.sqrt_det;
    wi[idx] = w * s.integrand;
    wv[idx] = w;
    rr.samples[idx] = s;
  });
  rr.integral = pairwise_sum(wi);
  rr.volume = pairwise_sum(wv);
  return rr;
}

}  // namespace

InequalityReport integrate_inequality(const Immersion& imm, const MulTable& table,
                                      const QuadratureRule& rule,
                                      const InequalityOptions& opts) {
  InequalityReport rep;
  rep.model = std::string(imm.name());
  rep.rule = rule;
  RuleResult fine = run_rule(imm, table, rule, opts.threads);
  rep.integral = fine.integral;
  rep.volume = fine.volume;
  rep.integrand_min = std::numeric_limits<double>::infinity();
  rep.integrand_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : fine.samples) {
    rep.integrand_min = std::min(rep.integrand_min, s.integrand);
    rep.integrand_max = std::max(rep.integrand_max, s.integrand);
    rep.sup_norm = std::max(rep.sup_norm, std::abs(s.integrand));
    rep.hsq_max = std::max(rep.hsq_max, s.hsq);
  }
  if (rep.sup_norm < opts.equality_tolerance) {
    rep.classification = rep.hsq_max < opts.geodesic_tolerance ? EqualityClass::Geodesic
                                                                : EqualityClass::DvvType;
  } else if (rep.sup_norm < opts.indeterminate_tolerance) {
    rep.classification = EqualityClass::Indeterminate;
  } else {
    rep.classification = EqualityClass::Strict;
  }
  rep.violation = rep.integral < -opts.equality_tolerance;
  if (opts.check_refinement) {
    const RuleResult coarse = run_rule(imm, table, opts.coarse, opts.threads);
    rep.coarse_rule = opts.coarse;
    rep.volume_delta = std::abs(fine.volume - coarse.volume) / std::abs(fine.volume);
    rep.integral_delta = std::abs(fine.integral - coarse.integral);
    if (*rep.volume_delta > opts.refinement_tolerance) {
      throw ResolutionError("volume differs between quadrature rules " +
                                opts.coarse.to_string() + " and " + rule.to_string(),
                            *rep.volume_delta);
    }
    if (*rep.integral_delta > opts.refinement_tolerance * std::max(1.0, std::abs(fine.integral))) {
      throw ResolutionError("integral differs between quadrature rules " +
                                opts.coarse.to_string() + " and " + rule.to_string(),
                            *rep.integral_delta);
    }
  }
  if (opts.keep_samples) rep.samples = std::move(fine.samples);
  return rep;
}

}  // namespace nk6
