#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

namespace nk6::cli {

std::map<std::string, double> default_tolerances() {
  return {
      {"algebraic", 1e-12},  {"fd", 1e-6},         {"lagrangian", 1e-10},
      {"orthonormal", 1e-10}, {"sff", 1e-9},        {"normality", 1e-10},
      {"volume_form", 1e-9}, {"codazzi", 1e-7},    {"g_identity", 1e-7},
      {"gauss", 1e-8},       {"norm_identity", 1e-6}, {"f_norm", 1e-10},
      {"slack", 1e-8},       {"canonical", 1e-8},  {"closed_form", 1e-12},
      {"reference", 1e-8},   {"theta", 1e-6},
  };
}

void resolve_tolerances(RunConfig& cfg) {
  cfg.tolerances = default_tolerances();
  for (const auto& kv : cfg.tol_overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--tol expects KEY=VAL, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string val = kv.substr(eq + 1);
    if (!cfg.tolerances.count(key)) throw UsageError("unknown tolerance key '" + key + "'");
    double v = 0;
    try {
      size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      throw UsageError("invalid tolerance value '" + val + "'");
    }
    if (!(v > 0) || !std::isfinite(v)) throw UsageError("tolerance '" + key + "' must be positive");
    cfg.tolerances[key] = v;
  }
}

MulTable resolve_table(const std::string& spec) {
  if (spec == "auto") return select_table(MulTable::builtin_candidates());
  return MulTable::load(spec);
}

Json provenance(const RunConfig& cfg, const std::optional<MulTable>& table) {
  Json p;
  p["tool"] = "nk6";
  p["version"] = kVersion;
#ifdef __VERSION__
  p["compiler"] = __VERSION__;
#endif
  p["eigen"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
               "." + std::to_string(EIGEN_MINOR_VERSION);
  Json c;
  c["command"] = cfg.command;
  c["model"] = cfg.model;
  c["table"] = cfg.table;
  c["seed"] = cfg.seed;
  c["samples"] = cfg.samples;
  c["rule"] = cfg.rule;
  c["fd_step"] = cfg.fd_step;
  c["format"] = cfg.format;
  Json tol = Json::object();
  for (const auto& [k, v] : cfg.tolerances) tol[k] = v;
  c["tolerances"] = tol;
  p["config"] = c;
  if (table) {
    p["table"] = {{"name", table->name()}, {"entries", table->to_text()}};
  }
  return p;
}

bool Suite::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Suite::add(std::string name, std::string reference, double residual, double tolerance,
                std::string note) {
  Check c;
  c.name = std::move(name);
  c.reference = std::move(reference);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = std::isfinite(residual) && residual <= tolerance;
  c.note = std::move(note);
  checks.push_back(std::move(c));
}

Json to_json(const Suite& s) {
  Json j;
  j["name"] = s.name;
  j["pass"] = s.pass();
  Json arr = Json::array();
  for (const auto& c : s.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["reference"] = c.reference;
    cj["residual"] = c.residual;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    if (!c.note.empty()) cj["note"] = c.note;
    arr.push_back(cj);
  }
  j["checks"] = arr;
  return j;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Suite cayley_suite(const RunConfig& cfg, const MulTable& table) {
  const auto& tol = cfg.tolerances;
  const IdentityReport r =
      verify_nk_identities(table, cfg.identity_samples, cfg.seed, cfg.fd_step);
  Suite s{"cayley", {}};
  s.add("table_axiom", "|u x v|^2 = |u|^2 |v|^2 - <u,v>^2", table.axiom_residual(),
        tol.at("algebraic"));
  s.add("j_square", "J^2 = -id, |JU| = |U|", r.j_square, tol.at("algebraic"));
  s.add("antisymmetry", "G(X,Y) + G(Y,X) = 0", r.antisymmetry, tol.at("algebraic"));
  s.add("j_compatibility", "G(X,JY) + J G(X,Y) = 0", r.j_compat, tol.at("algebraic"));
  s.add("skew", "g(G(X,Y),Z) + g(G(X,Z),Y) = 0", r.skew, tol.at("algebraic"));
  s.add("inner_product",
        "g(G(X,Y),G(Z,W)) = g(X,Z)g(Y,W) - g(X,W)g(Y,Z) + g(JX,Z)g(Y,JW) - g(JX,W)g(Y,JZ)",
        r.inner_product, tol.at("algebraic"));
  s.add("frame_products", "g(G(e_i,e_j),G(e_k,e_l)) = d_ik d_jl - d_il d_jk on Lagrangian frames",
        r.frame_products, tol.at("algebraic"));
  s.add("covariant_derivative",
        "(nabla G)(X,Y,Z) = g(X,Z)JY - g(X,Y)JZ - g(JX,Z)Y ... (finite differences)",
        r.derivative, tol.at("fd"));
  return s;
}

struct Agg {
  double value = 0;
  void max(double v) { value = std::isnan(v) ? kInf : std::max(value, v); }
};

std::vector<Suite> geometry_suites(const RunConfig& cfg, const Model& model,
                                   const MulTable& table) {
  const auto& tol = cfg.tolerances;
  const auto points = random_chart_points(cfg.samples, cfg.seed, 0.05);
  Agg orth, lag, sym, trace, normal, gnorm, vol, codazzi, gid, gauss, nsym;
  Agg fnorm, normid, cross, expansion, slack, recon, constraint;
  double vol_sign = 0;
  bool sign_flip = false;
  int failures = 0;
  std::string failure_note;
  for (const auto& q : points) {
    try {
      const PointAnalysis pa = analyze_point(*model.immersion, q, table);
      orth.max(pa.frame.orthonormality_residual);
      lag.max(pa.frame.lagrangian_residual);
      sym.max(pa.sff_symmetry_residual);
      trace.max(pa.sff_trace_residual);
      normal.max(pa.sff_normal_residual);
      gnorm.max(pa.frame.g_normality_residual);
      vol.max(std::abs(std::abs(pa.frame.volume_form) - 1));
      if (vol_sign == 0) vol_sign = pa.frame.volume_form;
      if (vol_sign * pa.frame.volume_form < 0) sign_flip = true;
      codazzi.max(pa.codazzi_residual);
      gid.max(pa.g_identity_residual);
      gauss.max(std::abs(pa.curvature.tau - pa.curvature.tau_closed));
      nsym.max(pa.nabla.symmetry_residual());
      fnorm.max(std::abs(pa.tt.f_sq - 0.75 * pa.hsq));
      normid.max(pa.tt.norm_identity_residual);
      cross.max(pa.tt.cross_residual);
      expansion.max(pa.tt.expansion_residual);
      slack.max(std::max(0.0, 0.75 * pa.hsq - pa.tt.nabla_sq));
      recon.max(pa.canonical.reconstruction_residual);
      const CanonicalData& cd = pa.canonical;
      const double s = cd.lambda1 + cd.lambda2;
      constraint.max(std::max({0.0, -s, -(3 * cd.lambda1 + cd.lambda2),
                               -(3 * cd.lambda2 + cd.lambda1), std::abs(cd.mu1) - s,
                               std::abs(cd.mu2) - s}));
    } catch (const Error& e) {
      ++failures;
      if (failure_note.empty()) failure_note = e.what();
    }
  }
  Suite g{"geometry", {}};
  g.add("evaluation", "frame, jets and canonical form computable at every sample",
        failures, 0, failure_note);
  g.add("orthonormal_frame", "<e_i, e_j> = d_ij", orth.value, tol.at("orthonormal"));
  g.add("lagrangian", "<J e_i, e_j> = 0", lag.value, tol.at("lagrangian"));
  g.add("sff_symmetry", "h^{k*}_{ij} = h^{k*}_{ji} = h^{j*}_{ik}", sym.value, tol.at("sff"));
  g.add("minimality", "sum_i h(e_i, e_i) = 0", trace.value, tol.at("sff"));
  g.add("sff_normal", "h(e_i,e_j) lies in span{J e_k}", normal.value, tol.at("sff"));
  g.add("g_normality", "g(G(e_i,e_j), e_k) = 0", gnorm.value, tol.at("normality"));
  g.add("volume_form", "g(G(e_1,e_2), J e_3) = +-1 with constant sign",
        sign_flip ? kInf : vol.value, tol.at("volume_form"));
  g.add("codazzi", "h^{k*}_{ij,l} = h^{k*}_{il,j}", codazzi.value, tol.at("codazzi"));
  g.add("nabla_h_symmetry", "h^{l*}_{ij,k} = h^{l*}_{ji,k}", nsym.value, tol.at("codazzi"));
  g.add("g_identity", "g((nabla h)(W,X,Z),JY) - g((nabla h)(W,X,Y),JZ) = g(h(W,X),G(Y,Z))",
        gid.value, tol.at("g_identity"));
  g.add("gauss_scalar", "tau from the Gauss equation = 6 - |h|^2", gauss.value, tol.at("gauss"));

  Suite s{"simons", {}};
  s.add("f_norm", "|F|^2 = (3/4)|h|^2", fnorm.value, tol.at("f_norm"));
  s.add("norm_identity", "|nabla h|^2 = |T|^2 + (3/4)|h|^2", normid.value, tol.at("norm_identity"));
  s.add("cross_term", "sum g(nabla h, F) = (3/4)|h|^2", cross.value, tol.at("norm_identity"));
  s.add("t_expansion", "|T|^2 = |nabla h|^2 + |F|^2 - 2 sum g(nabla h, F)", expansion.value,
        tol.at("norm_identity"));
  s.add("gradient_bound", "|nabla h|^2 >= (3/4)|h|^2", slack.value, tol.at("slack"));
  s.add("canonical_reconstruction", "h reproduced by the (lambda, mu) normal form", recon.value,
        tol.at("canonical"));
  s.add("canonical_constraints",
        "l1 + l2 >= 0, 3 l1 + l2 >= 0, 3 l2 + l1 >= 0, |mu_i| <= l1 + l2", constraint.value,
        tol.at("canonical"));
  return {g, s};
}

Suite dvv_reference_suite(const RunConfig& cfg, const MulTable& table) {
  const auto& tol = cfg.tolerances;
  const auto dvv = dvv_immersion();
  FrameOptions fo;
  fo.source = FrameSource::Fields;
  Agg metric, galign, hvals, hsq, theta, tuple;
  const double r5 = std::sqrt(5.0);
  const SFF expected = SFF::from_symmetric({r5 / 2, 0, 0, -r5 / 4, 0, -r5 / 4, 0, 0, 0, 0});
  for (const auto& q : random_chart_points(cfg.samples, cfg.seed + 1, 0.05)) {
    const Vec4 y = hopf_to_s3(q);
    const std::array<Vec4, 3> x{field_x1(y), field_x2(y), field_x3(y)};
    const Vec3 w{4.0 / 9, 8.0 / 3, 8.0 / 3};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double g = dvv->push_forward(y, x[i]).dot(dvv->push_forward(y, x[j]));
        metric.max(std::abs(g - (i == j ? w[i] : 0.0)));
      }
    const FramePacket fr = frame(*dvv, q, table, fo);
    galign.max((apply_g(fr.base, fr.e[1], fr.e[2], table) - fr.e_star[0]).norm());
    const SFF h = second_fundamental_form(fr);
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) hvals.max(std::abs(h(k, i, j) - expected(k, i, j)));
    hsq.max(std::abs(h.norm_sq() - 25.0 / 8));
    const CanonicalData cd = canonical_basis(h);
    theta.max(std::abs(cd.theta - r5 / 2));
    tuple.max(std::max({std::abs(cd.lambda1 - r5 / 4), std::abs(cd.lambda2 - r5 / 4),
                        std::abs(cd.mu1), std::abs(cd.mu2)}));
  }
  Suite s{"dvv_reference", {}};
  s.add("pullback_metric", "X-frame metric = diag(4/9, 8/3, 8/3)", metric.value,
        tol.at("lagrangian"));
  s.add("g_alignment", "G(E2,E3) = J E1", galign.value, tol.at("reference"));
  s.add("h_table", "h(E1,E1) = (sqrt5/2) J E1, h(E1,E2) = -(sqrt5/4) J E2, ...", hvals.value,
        tol.at("reference"));
  s.add("h_norm", "|h|^2 = 25/8", hsq.value, tol.at("reference"));
  s.add("theta", "Theta = sqrt5/2", theta.value, tol.at("theta"));
  s.add("canonical_tuple", "(l1, l2, mu1, mu2) = (sqrt5/4, sqrt5/4, 0, 0)", tuple.value,
        1e-7);
  return s;
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Eigen::Quaterniond qt(n01(rng), n01(rng), n01(rng), n01(rng));
  return qt.normalized().toRotationMatrix();
}

Suite algebra_suite(const RunConfig& cfg, const SyntheticH& syn) {
  const auto& tol = cfg.tolerances;
  const SFF base = sff_from_tuple(syn);
  const ClosedForms cf = closed_forms(syn.lambda1, syn.lambda2, syn.mu1, syn.mu2);
  const CommutatorInvariant ci = commutator_invariant_direct(h_matrices(base));
  const double scale = std::max(1.0, std::abs(ci.q));
  Suite s{"algebra", {}};
  s.add("hsq_closed_form", "|h|^2 = 4l1^2 + 4l2^2 + 2l1l2 + 4mu1^2 + 4mu2^2",
        std::abs(cf.hsq - base.norm_sq()), tol.at("closed_form") * std::max(1.0, cf.hsq));
  s.add("q_closed_form", "sum N([H_i,H_j]) + sum S_ij^2 closed form",
        std::abs(cf.q_closed - ci.q) / scale, tol.at("closed_form"));
  s.add("q_regrouped", "3|h|^4 - (9/2)(l1+l2)^2|h|^2 - R = Q", std::abs(cf.q_regrouped - ci.q) / scale,
        tol.at("closed_form"));
  s.add("r_residual_sign", "R >= 0", std::max(0.0, -cf.r_residual), tol.at("algebraic"));
  s.add("f_norm", "|F|^2 = (3/4)|h|^2",
        std::abs(f_tensor(base, standard_g_normal()).norm_sq() - 0.75 * base.norm_sq()),
        tol.at("f_norm"));
  std::mt19937_64 rng(cfg.seed);
  Agg inv, recon, constraint;
  for (int n = 0; n < cfg.samples; ++n) {
    const SFF rotated = base.rotated(random_rotation(rng));
    try {
      const CanonicalData cd = canonical_basis(rotated);
      recon.max(cd.reconstruction_residual);
      const double s0 = syn.lambda1 + syn.lambda2, s1 = cd.lambda1 + cd.lambda2;
      const double m0 = syn.mu1 * syn.mu1 + syn.mu2 * syn.mu2;
      const double m1 = cd.mu1 * cd.mu1 + cd.mu2 * cd.mu2;
      const double q1 = commutator_invariant_direct(h_matrices(rotated)).q;
      inv.max(std::max({std::abs(s0 - s1),
                        std::abs(syn.lambda1 * syn.lambda2 - cd.lambda1 * cd.lambda2),
                        std::abs(m0 - m1), std::abs(rotated.norm_sq() - base.norm_sq()),
                        std::abs(q1 - ci.q)}));
      constraint.max(cd.constraints_hold() ? 0.0 : kInf);
    } catch (const ReconstructionError& e) {
      recon.max(e.residual());
    }
  }
  s.add("gauge_invariants",
        "l1+l2, l1 l2, mu1^2+mu2^2, |h|^2, Q invariant under frame rotation", inv.value,
        tol.at("canonical"));
  s.add("canonical_reconstruction", "h reproduced by the (lambda, mu) normal form", recon.value,
        tol.at("canonical"));
  s.add("canonical_constraints", "l1 + l2 >= 0, 3 l1 + l2 >= 0, |mu_i| <= l1 + l2",
        constraint.value, tol.at("canonical"));
  return s;
}

}  // namespace

std::vector<Suite> run_verify(const RunConfig& cfg, const Model& model,
                              const std::optional<MulTable>& table) {
  std::vector<Suite> suites;
  if (!model.has_jets()) {
    suites.push_back(algebra_suite(cfg, *model.synthetic));
    return suites;
  }
  suites.push_back(cayley_suite(cfg, *table));
  for (auto& s : geometry_suites(cfg, model, *table)) suites.push_back(std::move(s));
  if (model.name == "dvv") suites.push_back(dvv_reference_suite(cfg, *table));
  return suites;
}

namespace {

void fill_algebraic(AnalysisRow& row, const SFF& h, const CanonicalData& cd) {
  const CurvaturePacket cp = curvature(h);
  row.hsq = h.norm_sq();
  row.theta = cd.theta;
  row.lambda1 = cd.lambda1;
  row.lambda2 = cd.lambda2;
  row.mu1 = cd.mu1;
  row.mu2 = cd.mu2;
  row.k_min = cp.k_min;
  row.k_max = cp.k_max;
  row.ric_min = cp.ricci_eigenvalues[0];
  row.ric_max = cp.ricci_eigenvalues[2];
  row.tau = cp.tau;
  row.tau_closed = cp.tau_closed;
  row.sectional_sum = cp.sectional_sum;
}

ChartPoint parse_point(const std::string& text) {
  std::array<double, 3> v{};
  size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const size_t next = text.find(',', pos);
    const std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      size_t used = 0;
      v[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("invalid chart point '" + text + "'");
    }
    if ((next == std::string::npos) != (i == 2)) throw UsageError("chart point needs 3 coordinates");
    pos = next + 1;
  }
  return {v[0], v[1], v[2]};
}

}  // namespace

std::vector<AnalysisRow> run_analyze(const RunConfig& cfg, const Model& model,
                                     const std::optional<MulTable>& table) {
  std::vector<AnalysisRow> rows;
  if (!model.has_jets()) {
    AnalysisRow row;
    const SFF h = sff_from_tuple(*model.synthetic);
    fill_algebraic(row, h, canonical_basis(h));
    row.t_sq = std::nullopt;
    rows.push_back(row);
    return rows;
  }
  std::vector<ChartPoint> points;
  for (const auto& p : cfg.points) points.push_back(parse_point(p));
  if (points.empty()) points = random_chart_points(cfg.samples, cfg.seed);
  for (const auto& q : points) {
    AnalysisRow row;
    row.q = q;
    try {
      const PointAnalysis pa = analyze_point(*model.immersion, q, *table);
      fill_algebraic(row, pa.h, pa.canonical);
      row.nabla_sq = pa.tt.nabla_sq;
      row.t_sq = pa.tt.t_sq;
      row.j_defect = pa.j_defect;
    } catch (const ChartDegeneracyError&) {
      row.ok = false;
      row.status = "chart-degenerate";
    } catch (const Error& e) {
      row.ok = false;
      row.status = std::string("error: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

// Pinching thresholds, reported as annotations only.
struct Flags {
  bool k_below = false;   // K_min < 1/16
  bool k_above = false;   // K_max > 21/16
  bool ric_below = false; // Ric < 3/4
  bool hsq_below = false; // |h|^2 < 5/2
};

Flags flags_for(const AnalysisRow& r) {
  constexpr double eps = 1e-9;
  return {r.k_min < 1.0 / 16 - eps, r.k_max > 21.0 / 16 + eps, r.ric_min < 0.75 - eps,
          r.hsq < 2.5 - eps};
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

void write_analysis_csv(std::ostream& out, const std::vector<AnalysisRow>& rows) {
  out << "eta,xi1,xi2,status,hsq,theta,lambda1,lambda2,mu1,mu2,k_min,k_max,ric_min,ric_max,"
         "tau,tau_closed,sectional_sum,nabla_sq,t_sq,j_defect,k_min_below_1_16,k_max_above_21_16,"
         "ric_min_below_3_4,hsq_below_5_2\n";
  for (const auto& r : rows) {
    out << fmt(r.q[0]) << ',' << fmt(r.q[1]) << ',' << fmt(r.q[2]) << ',' << r.status;
    if (!r.ok) {
      out << std::string(20, ',') << '\n';
      continue;
    }
    const Flags f = flags_for(r);
    for (double v : {r.hsq, r.theta, r.lambda1, r.lambda2, r.mu1, r.mu2, r.k_min, r.k_max,
                     r.ric_min, r.ric_max, r.tau, r.tau_closed, r.sectional_sum})
      out << ',' << fmt(v);
    out << ',' << fmt(r.nabla_sq) << ',' << fmt(r.t_sq) << ',' << fmt(r.j_defect);
    out << ',' << f.k_below << ',' << f.k_above << ',' << f.ric_below << ',' << f.hsq_below
        << '\n';
  }
}

Json analysis_json(const std::vector<AnalysisRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["point"] = {r.q[0], r.q[1], r.q[2]};
    j["status"] = r.status;
    if (r.ok) {
      j["hsq"] = r.hsq;
      j["theta"] = r.theta;
      j["canonical"] = {{"lambda1", r.lambda1}, {"lambda2", r.lambda2}, {"mu1", r.mu1},
                        {"mu2", r.mu2}};
      j["sectional_range"] = {r.k_min, r.k_max};
      j["ricci_range"] = {r.ric_min, r.ric_max};
      j["tau"] = r.tau;
      j["tau_closed"] = r.tau_closed;
      j["sectional_sum"] = r.sectional_sum;
      if (r.nabla_sq) j["nabla_h_sq"] = *r.nabla_sq;
      if (r.t_sq) j["t_sq"] = *r.t_sq;
      if (r.j_defect) j["j_parallel_defect"] = *r.j_defect;
      const Flags f = flags_for(r);
      j["annotations"] = {{"k_min_below_1_16", f.k_below},
                          {"k_max_above_21_16", f.k_above},
                          {"ric_min_below_3_4", f.ric_below},
                          {"hsq_below_5_2", f.hsq_below}};
    }
    arr.push_back(j);
  }
  return arr;
}

Json inequality_json(const InequalityReport& rep) {
  Json j;
  j["model"] = rep.model;
  j["rule"] = rep.rule.to_string();
  j["integrand"] = "|h|^2 (|h|^2 - 5/4 - (3/2) Theta^2)";
  j["integral"] = rep.integral;
  j["volume"] = rep.volume;
  j["integrand_min"] = rep.integrand_min;
  j["integrand_max"] = rep.integrand_max;
  j["sup_norm"] = rep.sup_norm;
  j["hsq_max"] = rep.hsq_max;
  j["classification"] = to_string(rep.classification);
  j["violation"] = rep.violation;
  if (rep.coarse_rule) {
    j["refinement"] = {{"coarse_rule", rep.coarse_rule->to_string()},
                       {"volume_delta_relative", *rep.volume_delta},
                       {"integral_delta", *rep.integral_delta}};
  }
  return j;
}

}  // namespace nk6::cli
