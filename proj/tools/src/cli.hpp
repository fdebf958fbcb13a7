#pragma once

#include "nk6/nk6.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nk6::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode { kPass = 0, kAssertionFailure = 1, kUsageError = 2 };

/// Raised for invalid command-line configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string command;
  std::string model = "dvv";
  std::string table = "auto";
  std::uint64_t seed = 7;
  int samples = 20;
  int identity_samples = 1000;
  std::string rule = "32,32,32";
  double fd_step = 1e-5;
  std::vector<std::string> tol_overrides;
  std::string out_dir;
  std::string format = "json";
  int threads = 0;
  std::vector<std::string> points;

  std::map<std::string, double> tolerances;  // resolved
};

/// Default tolerances keyed by check family.
std::map<std::string, double> default_tolerances();
/// Applies KEY=VAL overrides; throws UsageError on unknown keys or values <= 0.
void resolve_tolerances(RunConfig& cfg);

/// Table from a path, or the first candidate accepted by the DVV oracle.
MulTable resolve_table(const std::string& spec);

Json provenance(const RunConfig& cfg, const std::optional<MulTable>& table);

struct Check {
  std::string name;
  std::string reference;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  std::string note;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  bool pass() const;
  void add(std::string name, std::string reference, double residual, double tolerance,
           std::string note = {});
};

Json to_json(const Suite& s);

std::vector<Suite> run_verify(const RunConfig& cfg, const Model& model,
                              const std::optional<MulTable>& table);

struct AnalysisRow {
  ChartPoint q;
  bool ok = true;
  std::string status = "ok";
  double hsq = 0, theta = 0;
  double lambda1 = 0, lambda2 = 0, mu1 = 0, mu2 = 0;
  double k_min = 0, k_max = 0;
  double ric_min = 0, ric_max = 0;
  double tau = 0, tau_closed = 0, sectional_sum = 0;
  std::optional<double> nabla_sq, t_sq, j_defect;
};

std::vector<AnalysisRow> run_analyze(const RunConfig& cfg, const Model& model,
                                     const std::optional<MulTable>& table);
void write_analysis_csv(std::ostream& out, const std::vector<AnalysisRow>& rows);
Json analysis_json(const std::vector<AnalysisRow>& rows);

Json inequality_json(const InequalityReport& rep);

}  // namespace nk6::cli
