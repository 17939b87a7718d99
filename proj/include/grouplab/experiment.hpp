#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "grouplab/group_spec.hpp"
#include "grouplab/parallel.hpp"

namespace grouplab {

/// One batch run: an experiment name from the registry, a family of group
/// specs, experiment parameters and a seed. A fixed seed plus a fixed config
/// yields byte-identical CSV/JSON output regardless of thread count.
struct ExperimentConfig {
  std::string experiment;
  std::vector<GroupSpec> family;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 1;
  std::string format = "csv";
  int threads = 0;  // 0 = library default
  std::uint32_t enumeration_cap = kDefaultEnumerationCap;

  /// Family forms: "library", an array of spec strings/objects, or
  /// {"template": "cyclic($n)", "ranges": {"n": {"from":2,"to":6,"step":1}}}.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::filesystem::path& path);

  /// `--set key.path=value` override; value is parsed as JSON when possible,
  /// kept as a string otherwise.
  void apply_override(const std::string& key_eq_value);

  nlohmann::json to_json() const;
};

struct ResultRow {
  std::vector<std::string> cells;  // one per column, error column excluded
  std::string error;               // nonempty marks a row-level failure
  double wall_ms = 0;              // pretty output only; never serialized
};

struct RunResult {
  std::string experiment;
  std::uint64_t seed = 1;
  std::vector<std::string> columns;  // without the trailing "error" column
  std::vector<ResultRow> rows;

  bool any_error() const;
  /// 0 = clean, 2 = some row errored.
  int exit_code() const { return any_error() ? 2 : 0; }
};

/// Content-addressed row cache. Keys are canonical (config, member) strings;
/// entries are JSON files named by a stable 64-bit hash. A corrupt entry is
/// recomputed and overwritten with a warning on stderr.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  std::optional<std::vector<std::vector<std::string>>> lookup(const std::string& key) const;
  void store(const std::string& key, const std::vector<std::vector<std::string>>& rows) const;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct Experiment {
  std::string name;
  std::string summary;
  std::vector<std::string> columns;
  /// Rows for one family member (several for row-expanding experiments).
  std::function<std::vector<std::vector<std::string>>(
      const GroupSpec&, const ExperimentConfig&, std::uint64_t row_seed, Exec exec)>
      run;
};

const std::vector<Experiment>& experiment_registry();
const Experiment& find_experiment(const std::string& name);

/// Dispatches the family to a worker pool; rows come back ordered by family
/// index no matter how the pool schedules them. Row errors are isolated.
RunResult run_experiment(const ExperimentConfig& config, const ResultCache* cache,
                         Exec exec = Exec::parallel);

void write_csv(std::ostream& out, const RunResult& r);
void write_json(std::ostream& out, const RunResult& r);
void write_pretty(std::ostream& out, const RunResult& r);
void write_result(std::ostream& out, const RunResult& r, const std::string& format);

}  // namespace grouplab
