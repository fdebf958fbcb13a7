#include "CLI11.hpp"
#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

namespace fs = std::filesystem;
using namespace nk6;
using namespace nk6::cli;

namespace {

struct Context {
  RunConfig cfg;
  Model model;
  std::optional<MulTable> table;
};

Context prepare(RunConfig cfg) {
  resolve_tolerances(cfg);
  if (cfg.samples < 1) throw UsageError("--samples must be positive");
  if (!(cfg.fd_step > 0)) throw UsageError("--fd-step must be positive");
  if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
  Context ctx;
  ctx.table = resolve_table(cfg.table);
  try {
    ctx.model = make_model(cfg.model, *ctx.table);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (!ctx.model.has_jets()) ctx.table.reset();
  ctx.cfg = std::move(cfg);
  return ctx;
}

Json envelope(const Context& ctx) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = ctx.cfg.command;
  j["provenance"] = provenance(ctx.cfg, ctx.table);
  return j;
}

void emit(const Context& ctx, const std::string& file, const std::string& text) {
  if (ctx.cfg.out_dir.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(ctx.cfg.out_dir);
  std::ofstream out(fs::path(ctx.cfg.out_dir) / file);
  if (!out) throw UsageError("cannot write " + (fs::path(ctx.cfg.out_dir) / file).string());
  out << text;
}

struct Verified {
  Json json = Json::array();
  bool pass = true;
};

Verified verify_block(const Context& ctx) {
  Verified v;
  for (const auto& s : run_verify(ctx.cfg, ctx.model, ctx.table)) {
    v.json.push_back(to_json(s));
    v.pass = v.pass && s.pass();
  }
  return v;
}

int cmd_verify(const Context& ctx) {
  const Verified v = verify_block(ctx);
  Json j = envelope(ctx);
  j["suites"] = v.json;
  j["pass"] = v.pass;
  emit(ctx, "verify.json", j.dump(2) + "\n");
  return v.pass ? kPass : kAssertionFailure;
}

int cmd_analyze(const Context& ctx) {
  const auto rows = run_analyze(ctx.cfg, ctx.model, ctx.table);
  if (ctx.cfg.format == "csv") {
    std::ostringstream out;
    write_analysis_csv(out, rows);
    emit(ctx, "analysis.csv", out.str());
  } else {
    Json j = envelope(ctx);
    j["points"] = analysis_json(rows);
    emit(ctx, "analysis.json", j.dump(2) + "\n");
  }
  return kPass;
}

InequalityReport integrate(const Context& ctx) {
  if (!ctx.model.has_jets()) throw UsageError("model '" + ctx.model.name + "' has no immersion to integrate");
  InequalityOptions opts;
  opts.threads = ctx.cfg.threads;
  opts.equality_tolerance = ctx.cfg.tolerances.at("slack");
  try {
    return integrate_inequality(*ctx.model.immersion, *ctx.table, QuadratureRule::parse(ctx.cfg.rule),
                                opts);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

int cmd_integrate(const Context& ctx) {
  const InequalityReport rep = integrate(ctx);
  Json j = envelope(ctx);
  j["inequality"] = inequality_json(rep);
  if (ctx.cfg.out_dir.empty()) {
    if (ctx.cfg.format == "csv") {
      rep.write_samples_csv(std::cout);
    } else {
      std::cout << j.dump(2) << "\n";
    }
  } else {
    emit(ctx, "inequality.json", j.dump(2) + "\n");
    std::ostringstream csv;
    rep.write_samples_csv(csv);
    emit(ctx, "integrand.csv", csv.str());
  }
  return rep.violation ? kAssertionFailure : kPass;
}

int cmd_report(const Context& ctx) {
  const Verified v = verify_block(ctx);
  const auto rows = run_analyze(ctx.cfg, ctx.model, ctx.table);
  Json j = envelope(ctx);
  j["suites"] = v.json;
  j["points"] = analysis_json(rows);
  bool pass = v.pass;
  std::optional<InequalityReport> rep;
  if (ctx.model.has_jets()) {
    rep = integrate(ctx);
    j["inequality"] = inequality_json(*rep);
    pass = pass && !rep->violation;
  }
  j["pass"] = pass;
  emit(ctx, "report.json", j.dump(2) + "\n");
  if (!ctx.cfg.out_dir.empty()) {
    std::ostringstream csv;
    write_analysis_csv(csv, rows);
    emit(ctx, "analysis.csv", csv.str());
    if (rep) {
      std::ostringstream samples;
      rep->write_samples_csv(samples);
      emit(ctx, "integrand.csv", samples.str());
    }
  }
  return pass ? kPass : kAssertionFailure;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--model", cfg.model, "dvv, totally-geodesic, synthetic:a|b|c or a polynomial file");
  sub->add_option("--table", cfg.table, "multiplication table file, or 'auto'");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--samples", cfg.samples, "random sample points");
  sub->add_option("--rule", cfg.rule, "quadrature nodes n_eta,n_xi1,n_xi2");
  sub->add_option("--fd-step", cfg.fd_step, "finite-difference step for identity checks");
  sub->add_option("--tol", cfg.tol_overrides, "tolerance override KEY=VAL")->take_all();
  sub->add_option("--out", cfg.out_dir, "output directory");
  sub->add_option("--format", cfg.format, "json or csv");
  sub->add_option("--threads", cfg.threads, "worker threads, 0 for all cores");
  sub->add_option("--points", cfg.points, "chart points eta,xi1,xi2")->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification engine for Lagrangian submanifolds of the nearly Kaehler 6-sphere"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("NK6_TABLE_PATH"); env && *env) cfg.table = env;
  const std::pair<const char*, const char*> subs[] = {
      {"verify", "run the identity and reference checks"},
      {"analyze", "pointwise invariants at sample points"},
      {"integrate", "integrate the integral inequality over the model"},
      {"report", "verify, analyze and integrate in one document"},
  };
  for (const auto& [name, help] : subs) add_common(app.add_subcommand(name, help), cfg);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsageError;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  try {
    const Context ctx = prepare(cfg);
    if (cfg.command == "verify") return cmd_verify(ctx);
    if (cfg.command == "analyze") return cmd_analyze(ctx);
    if (cfg.command == "integrate") return cmd_integrate(ctx);
    return cmd_report(ctx);
  } catch (const UsageError& e) {
    std::cerr << "nk6: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    std::cerr << "nk6: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    std::cerr << "nk6: " << e.what() << "\n";
    return kAssertionFailure;
  } catch (const std::exception& e) {
    std::cerr << "nk6: " << e.what() << "\n";
    return kUsageError;
  }
}
