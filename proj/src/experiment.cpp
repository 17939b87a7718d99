#include "grouplab/experiment.hpp"

#include <algorithm>
#include <chrono>

#include <unistd.h>
#include <fstream>
#include <iostream>
#include <sstream>

#include "grouplab/errors.hpp"
#include "grouplab/folner.hpp"
#include "grouplab/growth.hpp"
#include "grouplab/milnor.hpp"
#include "grouplab/partial_structure.hpp"
#include "grouplab/structure.hpp"
#include "grouplab/words.hpp"

namespace grouplab {

namespace {

std::uint64_t fnv64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[static_cast<std::size_t>(i)] = digits[v & 15];
  return out;
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

template <class T>
T param(const nlohmann::json& params, const char* key, T fallback) {
  if (!params.contains(key)) return fallback;
  try {
    return params.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    raise(ErrorKind::parse_error, std::string("bad experiment parameter: ") + key);
  }
}

GroupPtr build_member(const GroupSpec& spec, const ExperimentConfig& cfg) {
  BuildOptions opts;
  opts.enumeration_cap = cfg.enumeration_cap;
  return build_group(spec, opts);
}

std::uint64_t row_seed_for(const ExperimentConfig& cfg, const GroupSpec& member) {
  return fnv64(member.canonical() + "#" + std::to_string(cfg.seed));
}

}  // namespace

// --- config ---------------------------------------------------------------------

namespace {

std::vector<GroupSpec> parse_family(const nlohmann::json& j) {
  std::vector<GroupSpec> out;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "library") return standard_library();
    out.push_back(GroupSpec::parse(s));
    return out;
  }
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(GroupSpec::from_json(item));
    return out;
  }
  if (j.is_object() && j.contains("template")) {
    const auto tmpl = j.at("template").get<std::string>();
    // ranged variables expand in name order; values ascending
    std::vector<std::pair<std::string, std::vector<std::int64_t>>> vars;
    if (j.contains("ranges")) {
      for (const auto& [name, range] : j.at("ranges").items()) {
        const auto from = range.at("from").get<std::int64_t>();
        const auto to = range.at("to").get<std::int64_t>();
        const auto step = range.contains("step") ? range.at("step").get<std::int64_t>() : 1;
        if (step <= 0 || to < from)
          raise(ErrorKind::parse_error, "bad range for family variable " + name);
        std::vector<std::int64_t> vals;
        for (std::int64_t v = from; v <= to; v += step) vals.push_back(v);
        vars.emplace_back(name, std::move(vals));
      }
    }
    std::sort(vars.begin(), vars.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> idx(vars.size(), 0);
    while (true) {
      std::string text = tmpl;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        const std::string key = "$" + vars[i].first;
        const std::string val = std::to_string(vars[i].second[idx[i]]);
        for (std::size_t at = text.find(key); at != std::string::npos; at = text.find(key))
          text.replace(at, key.size(), val);
      }
      out.push_back(GroupSpec::parse(text));
      std::size_t i = vars.size();
      while (i > 0) {
        --i;
        if (++idx[i] < vars[i].second.size()) break;
        idx[i] = 0;
        if (i == 0) return out;
      }
      if (vars.empty()) return out;
    }
  }
  raise(ErrorKind::parse_error, "family must be \"library\", an array, or a template object");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (!j.contains("experiment") || !j.contains("family"))
    raise(ErrorKind::parse_error, "config needs \"experiment\" and \"family\" fields");
  cfg.experiment = j.at("experiment").get<std::string>();
  cfg.family = parse_family(j.at("family"));
  if (j.contains("params")) cfg.params = j.at("params");
  cfg.seed = param<std::uint64_t>(j, "seed", 1);
  cfg.format = param<std::string>(j, "format", "csv");
  cfg.threads = param<int>(j, "threads", 0);
  cfg.enumeration_cap = param<std::uint32_t>(j, "cap", kDefaultEnumerationCap);
  find_experiment(cfg.experiment);  // validates the name
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::io_error, "cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::parse_error, "config " + path.string() + ": " + e.what());
  }
  return from_json(j);
}

void ExperimentConfig::apply_override(const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos)
    raise(ErrorKind::parse_error, "--set expects key=value, got " + key_eq_value);
  const std::string key = key_eq_value.substr(0, eq);
  const std::string value = key_eq_value.substr(eq + 1);

  nlohmann::json j = to_json();
  nlohmann::json* node = &j;
  std::istringstream path(key);
  std::string part, prev;
  std::vector<std::string> parts;
  while (std::getline(path, part, '.')) parts.push_back(part);
  if (parts.empty()) raise(ErrorKind::parse_error, "--set key is empty");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
  nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
  (*node)[parts.back()] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
  *this = from_json(j);
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  auto fam = nlohmann::json::array();
  for (const auto& s : family) fam.push_back(s.canonical());
  j["family"] = fam;
  j["params"] = params;
  j["seed"] = seed;
  j["format"] = format;
  j["threads"] = threads;
  j["cap"] = enumeration_cap;
  return j;
}

// --- cache ----------------------------------------------------------------------

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) raise(ErrorKind::io_error, "cannot create cache dir " + dir_.string());
}

std::optional<std::vector<std::vector<std::string>>> ResultCache::lookup(
    const std::string& key) const {
  const auto path = dir_ / (hex64(fnv64(key)) + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("key") || !j.contains("rows") ||
      j.at("key").get<std::string>() != key) {
    std::cerr << "grouplab: warning: corrupt cache entry " << path.string()
              << "; recomputing\n";
    return std::nullopt;
  }
  try {
    return j.at("rows").get<std::vector<std::vector<std::string>>>();
  } catch (const nlohmann::json::exception&) {
    std::cerr << "grouplab: warning: corrupt cache entry " << path.string()
              << "; recomputing\n";
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key,
                        const std::vector<std::vector<std::string>>& rows) const {
  const auto path = dir_ / (hex64(fnv64(key)) + ".json");
  nlohmann::json j;
  j["key"] = key;
  j["rows"] = rows;
  // write-then-rename so concurrent writers of the same key cannot tear it
  const auto tmp = path.string() + "." + std::to_string(::getpid()) + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump();
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

// --- registry -------------------------------------------------------------------

namespace {

std::vector<std::vector<std::string>> run_analyze(const GroupSpec& spec,
                                                  const ExperimentConfig& cfg,
                                                  std::uint64_t row_seed, Exec) {
  const auto g = build_member(spec, cfg);
  ReportOptions opts;
  opts.seed = row_seed;
  opts.tuple_budget = param<std::uint64_t>(cfg.params, "tuple_budget", 200000);
  opts.prufer_exact_cap = param<std::uint32_t>(cfg.params, "prufer_exact_cap", 256);
  opts.prufer_sample_budget = param<std::uint32_t>(cfg.params, "prufer_sample_budget", 32);
  const StructureReport r = structure_report(g, opts);
  const auto& k1 = r.k_generated.at(1);
  const auto& k2 = r.k_generated.at(2);
  return {{spec.canonical(),
           std::to_string(r.order),
           std::to_string(r.exponent),
           bool_str(r.abelian),
           bool_str(r.nilpotent),
           r.nilpotency_class ? std::to_string(*r.nilpotency_class) : "",
           bool_str(r.soluble),
           r.derived_length ? std::to_string(*r.derived_length) : "",
           std::to_string(r.radical.size()),
           std::to_string(r.socle.size()),
           bool_str(r.semisimple),
           bool_str(r.csa),
           std::to_string(r.c_dim),
           std::to_string(r.rank.value),
           bool_str(r.rank.exact),
           std::to_string(r.min_generating_number),
           std::to_string(r.width),
           std::to_string(k1.max_size),
           bool_str(k1.exact),
           std::to_string(k2.max_size),
           bool_str(k2.exact),
           std::to_string(r.radical_rank.value),
           bool_str(r.radical_rank.exact),
           std::to_string(r.socle_index_in_quotient)}};
}

std::vector<std::vector<std::string>> run_identity(const GroupSpec& spec,
                                                   const ExperimentConfig& cfg,
                                                   std::uint64_t, Exec exec,
                                                   const std::string& default_word) {
  const auto g = build_member(spec, cfg);
  const FreeWord w = FreeWord::parse(param<std::string>(cfg.params, "word", default_word));
  const IdentityScan scan = satisfies_identity(g, w, exec);
  return {{spec.canonical(), w.str(), bool_str(scan.holds),
           scan.witness ? g->element_name(scan.witness->first) : "",
           scan.witness ? g->element_name(scan.witness->second) : "",
           std::to_string(scan.pairs_scanned)}};
}

std::vector<std::vector<std::string>> run_milnor(const GroupSpec& spec,
                                                 const ExperimentConfig& cfg, std::uint64_t,
                                                 Exec exec) {
  const auto g = build_member(spec, cfg);
  const int max_degree = param<int>(cfg.params, "max_degree", 2);
  const int max_weight = param<int>(cfg.params, "max_weight", 2);
  const auto scan_name = param<std::string>(cfg.params, "scan", "reps");
  const PairScan scan = scan_name == "all" ? PairScan::all_pairs : PairScan::class_reps;
  const LocallyMilnorResult r = locally_milnor(g, max_degree, max_weight, scan, exec);
  return {{spec.canonical(), std::to_string(max_degree), std::to_string(max_weight), scan_name,
           bool_str(r.holds), std::to_string(r.failing_pairs.size()),
           r.failing_pairs.empty() ? "" : g->element_name(r.failing_pairs.front().first),
           r.failing_pairs.empty() ? "" : g->element_name(r.failing_pairs.front().second),
           std::to_string(r.pairs_scanned)}};
}

std::vector<std::vector<std::string>> run_growth(const GroupSpec& spec,
                                                 const ExperimentConfig& cfg,
                                                 std::uint64_t row_seed, Exec exec) {
  BuildOptions opts;
  opts.enumeration_cap = cfg.enumeration_cap;
  const auto g = build_group(spec, opts);
  const int radius = param<int>(cfg.params, "radius", 2);
  const auto alphabet = param<std::string>(cfg.params, "alphabet", "sym");
  if (alphabet != "sym" && alphabet != "pos")
    raise(ErrorKind::parse_error, "alphabet must be sym or pos");
  const auto budget = param<std::uint64_t>(cfg.params, "budget", 20000);
  const ApproxReport r = approx_degree(g, radius, alphabet == "sym", budget, row_seed, exec);
  return {{spec.canonical(), alphabet, std::to_string(r.radius_limit),
           std::to_string(r.best_degree), r.witness_a, r.witness_b,
           std::to_string(r.pairs_tried), bool_str(r.exhaustive)}};
}

std::vector<std::vector<std::string>> run_folner(const GroupSpec& spec,
                                                 const ExperimentConfig& cfg,
                                                 std::uint64_t row_seed, Exec exec) {
  const auto g = build_member(spec, cfg);
  const auto set_size = param<std::uint32_t>(cfg.params, "set_size", 2);
  const auto budget = param<std::uint64_t>(cfg.params, "budget", 512);
  std::vector<Rational> eps;
  if (cfg.params.contains("epsilons")) {
    for (const auto& e : cfg.params.at("epsilons")) eps.push_back(Rational::parse(e.get<std::string>()));
  } else {
    eps = {Rational(1), Rational(1, 2), Rational(1, 3), Rational(1, 4)};
  }
  const auto cells = amenability_profile(g, set_size, eps, budget, row_seed, exec);
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : cells)
    rows.push_back({spec.canonical(), c.epsilon.str(), std::to_string(c.set_size),
                    std::to_string(c.alpha_hat), bool_str(c.exact),
                    std::to_string(c.windows_tried),
                    g->order() <= 16 ? "exact" : "greedy"});
  return rows;
}

PartialStructure structure_param(const ExperimentConfig& cfg) {
  if (cfg.params.contains("structure"))
    return PartialStructure::from_json(cfg.params.at("structure"));
  return PartialStructure::integer_window(param<int>(cfg.params, "window", 3));
}

std::vector<std::vector<std::string>> run_lef(const GroupSpec& spec,
                                              const ExperimentConfig& cfg, std::uint64_t,
                                              Exec) {
  const auto g = build_member(spec, cfg);
  const PartialStructure p = structure_param(cfg);
  std::string map_str;
  bool found = false;
  if (p.labels.size() <= g->order()) {
    const auto embedding = lef_embed(p, g);
    found = embedding.has_value();
    if (found) {
      for (std::size_t l = 0; l < p.labels.size(); ++l) {
        if (l) map_str += " ";
        map_str += p.labels[l] + "->" + g->element_name((*embedding)[l]);
      }
    }
  }
  return {{spec.canonical(), std::to_string(p.labels.size()), bool_str(found), map_str}};
}

std::vector<std::vector<std::string>> run_sofic(const GroupSpec& spec,
                                                const ExperimentConfig& cfg,
                                                std::uint64_t row_seed, Exec) {
  const auto g = build_member(spec, cfg);
  const PartialStructure p = cfg.params.contains("structure")
                                 ? PartialStructure::from_json(cfg.params.at("structure"))
                                 : PartialStructure::group_table(g);
  const auto degree = param<std::uint32_t>(cfg.params, "degree", 6);
  const auto budget = param<std::uint64_t>(cfg.params, "budget", 4000);
  const SoficMap m = sofic_search(p, degree, budget, row_seed);
  const SoficScore s = sofic_defect(m);
  return {{spec.canonical(), std::to_string(degree), s.max_defect.str(),
           s.min_separation.str(), "true", std::to_string(budget)}};
}

}  // namespace

const std::vector<Experiment>& experiment_registry() {
  static const std::vector<Experiment> registry = [] {
    std::vector<Experiment> r;
    r.push_back({"analyze",
                 "structural invariants per group (series, radical, socle, ranks, width)",
                 {"group", "order", "exponent", "is_abelian", "is_nilpotent", "nilpotency_class",
                  "is_soluble", "derived_length", "radical_order", "socle_order", "is_semisimple",
                  "is_csa", "c_dimension", "prufer_rank", "prufer_exact", "min_generators",
                  "commutator_width", "max_1_generated", "max_1_exact", "max_2_generated",
                  "max_2_exact", "radical_prufer_rank", "radical_prufer_exact",
                  "socle_index_in_quotient"},
                 run_analyze});
    const std::vector<std::string> identity_cols = {"group",     "word",      "holds",
                                                    "witness_x", "witness_y", "pairs_scanned"};
    r.push_back({"identity", "two-variable identity scan with witnesses", identity_cols,
                 [](const GroupSpec& s, const ExperimentConfig& c, std::uint64_t rs, Exec e) {
                   return run_identity(s, c, rs, e, "[x,y]");
                 }});
    r.push_back({"jones", "identity scan preset for the [x,y]^6 simple-group probe",
                 identity_cols,
                 [](const GroupSpec& s, const ExperimentConfig& c, std::uint64_t rs, Exec e) {
                   return run_identity(s, c, rs, e, "[x,y]^6");
                 }});
    const std::vector<std::string> milnor_cols = {
        "group",         "max_degree",   "max_weight",   "scan", "locally_milnor",
        "failing_pairs", "first_fail_x", "first_fail_y", "pairs_scanned"};
    r.push_back({"milnor", "locally-Milnor pair scan under degree/weight bounds", milnor_cols,
                 run_milnor});
    r.push_back({"milnor-threshold", "alias of milnor (wreath threshold experiments)",
                 milnor_cols, run_milnor});
    r.push_back({"growth",
                 "best approximation degree to F2 (sym) or M2 (pos) over generator pairs",
                 {"group", "alphabet", "radius_limit", "best_degree", "witness_a", "witness_b",
                  "pairs_tried", "exhaustive"},
                 run_growth});
    r.push_back({"folner",
                 "empirical alpha-hat(eps, n): worst minimal Folner witness over windows",
                 {"group", "epsilon", "set_size", "alpha_hat", "exact", "windows_tried", "mode"},
                 run_folner});
    r.push_back({"lef",
                 "partial-table embeddability into each family member",
                 {"group", "labels", "found", "map"},
                 run_lef});
    r.push_back({"sofic",
                 "heuristic sofic map of each member's table into S_degree, exact scoring",
                 {"group", "degree", "max_defect", "min_separation", "heuristic", "iterations"},
                 run_sofic});
    return r;
  }();
  return registry;
}

const Experiment& find_experiment(const std::string& name) {
  for (const auto& e : experiment_registry())
    if (e.name == name) return e;
  raise(ErrorKind::parse_error, "unknown experiment: " + name);
}

// --- runner ---------------------------------------------------------------------

bool RunResult::any_error() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const ResultRow& r) { return !r.error.empty(); });
}

RunResult run_experiment(const ExperimentConfig& config, const ResultCache* cache, Exec exec) {
  const Experiment& exp = find_experiment(config.experiment);
  if (config.threads > 0) set_threads(config.threads);

  RunResult result;
  result.experiment = exp.name;
  result.seed = config.seed;
  result.columns = exp.columns;

  const auto n = static_cast<std::int64_t>(config.family.size());
  std::vector<std::vector<ResultRow>> per_member(static_cast<std::size_t>(n));

  parallel_for(exec, n, [&](std::int64_t i) {
    const GroupSpec& member = config.family[static_cast<std::size_t>(i)];
    const std::uint64_t row_seed = row_seed_for(config, member);
    const std::string key = "v1|" + exp.name + "|" + config.params.dump() +
                            "|cap=" + std::to_string(config.enumeration_cap) +
                            "|seed=" + std::to_string(row_seed) + "|" + member.canonical();
    auto& slot = per_member[static_cast<std::size_t>(i)];
    const auto start = std::chrono::steady_clock::now();
    try {
      std::optional<std::vector<std::vector<std::string>>> rows;
      if (cache) rows = cache->lookup(key);
      if (!rows) {
        rows = exp.run(member, config, row_seed, exec);
        if (cache) cache->store(key, *rows);
      }
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      for (auto& cells : *rows) {
        ResultRow row;
        row.cells = std::move(cells);
        row.wall_ms = ms;
        slot.push_back(std::move(row));
      }
    } catch (const std::exception& e) {
      ResultRow row;
      row.cells.assign(exp.columns.size(), "");
      if (!row.cells.empty()) row.cells[0] = member.canonical();
      const auto* known = dynamic_cast<const Error*>(&e);
      row.error = known ? std::string(error_kind_name(known->kind())) + ": " + e.what()
                        : std::string("error: ") + e.what();
      row.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      slot.push_back(std::move(row));
    }
  });

  for (auto& rows : per_member)
    for (auto& row : rows) result.rows.push_back(std::move(row));
  return result;
}

// --- writers --------------------------------------------------------------------

namespace {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(std::ostream& out, const RunResult& r) {
  out << "# grouplab-csv v=1 experiment=" << r.experiment << " seed=" << r.seed << "\n";
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << ",error\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      out << (i ? "," : "") << csv_escape(i < row.cells.size() ? row.cells[i] : "");
    out << "," << csv_escape(row.error) << "\n";
  }
}

void write_json(std::ostream& out, const RunResult& r) {
  nlohmann::ordered_json j;
  j["schema"] = "grouplab-v1";
  j["experiment"] = r.experiment;
  j["seed"] = r.seed;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      obj[r.columns[i]] = i < row.cells.size() ? row.cells[i] : "";
    if (!row.error.empty()) obj["error"] = row.error;
    rows.push_back(std::move(obj));
  }
  j["rows"] = std::move(rows);
  out << j.dump(2) << "\n";
}

void write_pretty(std::ostream& out, const RunResult& r) {
  std::vector<std::string> cols = r.columns;
  cols.push_back("error");
  cols.push_back("ms");
  std::vector<std::size_t> width(cols.size());
  for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();

  auto row_cells = [&](const ResultRow& row) {
    std::vector<std::string> cells;
    for (std::size_t i = 0; i < r.columns.size(); ++i)
      cells.push_back(i < row.cells.size() ? row.cells[i] : "");
    cells.push_back(row.error);
    std::ostringstream ms;
    ms.setf(std::ios::fixed);
    ms.precision(1);
    ms << row.wall_ms;
    cells.push_back(ms.str());
    return cells;
  };

  for (const auto& row : r.rows) {
    const auto cells = row_cells(row);
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  }
  out << "experiment " << r.experiment << " (seed " << r.seed << ")\n";
  for (std::size_t i = 0; i < cols.size(); ++i)
    out << (i ? "  " : "") << cols[i] << std::string(width[i] - cols[i].size(), ' ');
  out << "\n";
  for (const auto& row : r.rows) {
    const auto cells = row_cells(row);
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i ? "  " : "") << cells[i] << std::string(width[i] - cells[i].size(), ' ');
    out << "\n";
  }
}

void write_result(std::ostream& out, const RunResult& r, const std::string& format) {
  if (format == "csv") {
    write_csv(out, r);
  } else if (format == "json") {
    write_json(out, r);
  } else if (format == "pretty") {
    write_pretty(out, r);
  } else {
    raise(ErrorKind::parse_error, "unknown format: " + format);
  }
}

}  // namespace grouplab
