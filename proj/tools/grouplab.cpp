// grouplab: finite-group laboratory CLI.
//
// Subcommands: group show|build, analyze, identity, milnor, growth, lef,
// sofic, folner, experiment run|list. Exit codes: 0 clean, 2 some row
// errored, 1 fatal.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "grouplab/errors.hpp"
#include "grouplab/experiment.hpp"
#include "grouplab/folner.hpp"
#include "grouplab/growth.hpp"
#include "grouplab/milnor.hpp"
#include "grouplab/partial_structure.hpp"
#include "grouplab/structure.hpp"
#include "grouplab/words.hpp"

namespace {

using namespace grouplab;

struct GlobalOpts {
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  int threads = 0;
  std::uint32_t cap = kDefaultEnumerationCap;
  std::string cache_dir = ".grouplab_cache";
  bool no_cache = false;
};

int emit(const GlobalOpts& g, const RunResult& result) {
  if (g.output.empty()) {
    write_result(std::cout, result, g.format);
  } else {
    std::ofstream out(g.output, std::ios::binary);
    if (!out) {
      std::cerr << "grouplab: cannot open output file " << g.output << "\n";
      return 1;
    }
    write_result(out, result, g.format);
  }
  return result.exit_code();
}

ExperimentConfig single_config(const GlobalOpts& g, const std::string& experiment,
                               const std::string& spec_text, nlohmann::json params) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.family = {GroupSpec::parse(spec_text)};
  cfg.params = std::move(params);
  cfg.seed = g.seed;
  cfg.threads = g.threads;
  cfg.enumeration_cap = g.cap;
  return cfg;
}

int run_and_emit(const GlobalOpts& g, const ExperimentConfig& cfg) {
  std::optional<ResultCache> cache;
  if (!g.no_cache) cache.emplace(g.cache_dir);
  const RunResult result = run_experiment(cfg, cache ? &*cache : nullptr);
  return emit(g, result);
}

/// Element reference: a decimal id or cycle notation (for permutation-built
/// tabled groups).
std::uint32_t parse_element(const GroupPtr& g, const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos)
    return static_cast<std::uint32_t>(std::stoul(text));
  const auto id_perm = g->element_permutation(0);
  if (!id_perm)
    raise(ErrorKind::invalid_parameter,
          "cycle notation needs a permutation-built group; use a numeric id for " +
              g->description());
  const auto id = g->id_of_permutation(Permutation::parse_cycles(id_perm->degree(), text));
  if (!id)
    raise(ErrorKind::invalid_parameter,
          "element " + text + " not found in " + g->description());
  return *id;
}

std::pair<std::string, std::string> split_pair(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    raise(ErrorKind::parse_error, "--pair expects \"a;b\", got " + text);
  return {text.substr(0, semi), text.substr(semi + 1)};
}

int cmd_group(const GlobalOpts& g, const std::string& spec_text, bool build) {
  const GroupSpec spec = GroupSpec::parse(spec_text);
  std::ostringstream out;
  out << "spec:    " << spec.canonical() << "\n";
  const std::uint64_t closed = spec.closed_form_order();
  if (closed) out << "order:   " << closed << "\n";
  if (build) {
    BuildOptions opts;
    opts.enumeration_cap = g.cap;
    const GroupPtr grp = build_group(spec, opts);
    out << "backing: "
        << (grp->is_tabled() ? "cayley-table" : "permutation-native") << "\n";
    if (grp->is_tabled()) {
      out << "order:   " << grp->order() << "\n";
      out << "classes: " << grp->class_reps().size() << "\n";
      out << "gens:   ";
      for (std::uint32_t id : grp->generators()) out << " " << grp->element_name(id);
      out << "\n";
    } else {
      out << "degree:  " << grp->degree() << "\n";
      out << "gens:   ";
      for (const auto& p : grp->generator_permutations()) out << " " << p.cycle_string();
      out << "\n";
    }
  }
  if (g.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(g.output, std::ios::binary);
    f << out.str();
  }
  return 0;
}

int cmd_growth_profile(const GlobalOpts& g, const std::string& spec_text,
                       const std::string& pair, int radius, const std::string& alphabet) {
  BuildOptions opts;
  opts.enumeration_cap = g.cap;
  const GroupPtr grp = build_group(GroupSpec::parse(spec_text), opts);
  const bool symmetric = alphabet != "pos";
  const auto [a_text, b_text] = split_pair(pair);

  BallProfile profile;
  if (grp->is_tabled()) {
    profile = ball_profile(grp, parse_element(grp, a_text), parse_element(grp, b_text), radius,
                           symmetric);
  } else {
    profile = ball_profile(Permutation::parse_cycles(grp->degree(), a_text),
                           Permutation::parse_cycles(grp->degree(), b_text), radius, symmetric);
  }

  RunResult r;
  r.experiment = "growth-profile";
  r.seed = g.seed;
  r.columns = {"radius", "ball", "free", "ratio"};
  for (std::size_t i = 0; i < profile.sizes.size(); ++i) {
    const std::uint64_t free = free_ball_size(static_cast<int>(i), symmetric);
    std::ostringstream ratio;
    ratio.setf(std::ios::fixed);
    ratio.precision(6);
    ratio << static_cast<double>(profile.sizes[i]) / static_cast<double>(free);
    ResultRow row;
    row.cells = {std::to_string(i), std::to_string(profile.sizes[i]), std::to_string(free),
                 ratio.str()};
    r.rows.push_back(std::move(row));
  }
  return emit(g, r);
}

int cmd_milnor_pair(const GlobalOpts& g, const std::string& spec_text, const std::string& pair,
                    int max_degree, int max_weight, const std::string& given_spec) {
  BuildOptions opts;
  opts.enumeration_cap = g.cap;
  const GroupPtr grp = build_group(GroupSpec::parse(spec_text), opts);
  const auto [a_text, b_text] = split_pair(pair);
  const std::uint32_t a = parse_element(grp, a_text);
  const std::uint32_t b = parse_element(grp, b_text);

  std::optional<MilnorSpec> found;
  if (!given_spec.empty()) {
    // evaluate the given coefficient vector instead of searching
    const MilnorSpec spec = MilnorSpec::parse(given_spec);
    if (milnor_value(grp, a, b, spec)) found = spec;
  } else {
    found = milnor_search(grp, a, b, max_degree, max_weight);
  }

  RunResult r;
  r.experiment = given_spec.empty() ? "milnor-pair" : "milnor-value";
  r.seed = g.seed;
  r.columns = {"group", "a", "b", "found", "spec", "degree", "weight", "polynomial"};
  ResultRow row;
  row.cells = {grp->description(),
               grp->element_name(a),
               grp->element_name(b),
               found ? "true" : "false",
               found ? found->str() : "",
               found ? std::to_string(found->degree()) : "",
               found ? std::to_string(found->weight()) : "",
               found ? milnor_polynomial(*found).str() : ""};
  r.rows.push_back(std::move(row));
  return emit(g, r);
}

int cmd_folner_window(const GlobalOpts& g, const std::string& spec_text,
                      const std::string& window, const std::string& epsilon,
                      const std::string& mode_name) {
  BuildOptions opts;
  opts.enumeration_cap = g.cap;
  const GroupPtr grp = build_group(GroupSpec::parse(spec_text), opts);
  FolnerQuery q;
  q.g = grp;
  q.epsilon = Rational::parse(epsilon);
  std::istringstream in(window);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) q.a.push_back(parse_element(grp, item));
  const FolnerMode mode = mode_name == "greedy"
                              ? FolnerMode::greedy
                              : (mode_name == "exact" ? FolnerMode::exact
                                                      : (grp->order() <= 16 ? FolnerMode::exact
                                                                            : FolnerMode::greedy));
  const FolnerResult res = folner_search(q, mode);

  RunResult r;
  r.experiment = "folner-window";
  r.seed = g.seed;
  r.columns = {"group", "epsilon", "mode",        "v_size", "av_size",
               "bound", "holds",   "exact_min", "v"};
  const Rational bound = Rational(static_cast<std::int64_t>(res.v.size())) *
                         (Rational(1) + q.epsilon);
  std::string v_str;
  for (std::uint32_t x : res.v) {
    if (!v_str.empty()) v_str += " ";
    v_str += grp->element_name(x);
  }
  ResultRow row;
  row.cells = {grp->description(),
               q.epsilon.str(),
               mode == FolnerMode::exact ? "exact" : "greedy",
               std::to_string(res.v.size()),
               std::to_string(res.av_size),
               bound.str(),
               res.certificate_holds(q) ? "true" : "false",
               res.exact ? "true" : "false",
               v_str};
  r.rows.push_back(std::move(row));
  return emit(g, r);
}

int cmd_sofic_structure(const GlobalOpts& g, const std::string& file, std::uint32_t degree,
                        std::uint64_t budget) {
  std::ifstream in(file);
  if (!in) raise(ErrorKind::io_error, "cannot open structure file " + file);
  nlohmann::json j;
  in >> j;
  const PartialStructure p = PartialStructure::from_json(j);
  const SoficMap m = sofic_search(p, degree, budget, g.seed);
  const SoficScore s = sofic_defect(m);

  RunResult r;
  r.experiment = "sofic";
  r.seed = g.seed;
  r.columns = {"group", "degree", "max_defect", "min_separation", "heuristic", "iterations"};
  ResultRow row;
  row.cells = {"(structure)", std::to_string(degree), s.max_defect.str(),
               s.min_separation.str(), "true", std::to_string(budget)};
  r.rows.push_back(std::move(row));
  return emit(g, r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grouplab: a finite-group laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--format", g.format, "csv|json|pretty")->capture_default_str();
  app.add_option("-o,--output", g.output, "write output to a file instead of stdout");
  app.add_option("--seed", g.seed, "random seed for sampled searches")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = default)");
  app.add_option("--cap", g.cap, "enumeration cap for tabled groups")->capture_default_str();
  app.add_option("--cache-dir", g.cache_dir, "result cache directory")->capture_default_str();
  app.add_flag("--no-cache", g.no_cache, "disable the result cache");

  // group show|build
  auto* group_cmd = app.add_subcommand("group", "inspect a group spec");
  std::string group_spec;
  auto* show_cmd = group_cmd->add_subcommand("show", "parse and echo a spec");
  show_cmd->add_option("spec", group_spec)->required();
  auto* build_cmd = group_cmd->add_subcommand("build", "construct the group and summarize");
  build_cmd->add_option("spec", group_spec)->required();
  group_cmd->require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "structural invariants of one group");
  std::string analyze_spec;
  analyze_cmd->add_option("spec", analyze_spec)->required();

  // identity
  auto* identity_cmd = app.add_subcommand("identity", "check a two-variable identity");
  std::string id_spec, id_word = "[x,y]";
  identity_cmd->add_option("--group", id_spec)->required();
  identity_cmd->add_option("--word", id_word, "word over x y X Y with [u,v] and ^n sugar");

  // milnor
  auto* milnor_cmd = app.add_subcommand("milnor", "Milnor word search");
  std::string ml_spec, ml_pair, ml_scan = "reps", ml_given;
  int ml_degree = 2, ml_weight = 2;
  milnor_cmd->add_option("--group", ml_spec)->required();
  milnor_cmd->add_option("--max-degree", ml_degree)->capture_default_str();
  milnor_cmd->add_option("--max-weight", ml_weight)->capture_default_str();
  milnor_cmd->add_option("--pair", ml_pair, "single pair \"a;b\" instead of the whole group");
  milnor_cmd->add_option("--spec", ml_given, "evaluate a coefficient vector \"(-1,1)\" on --pair");
  milnor_cmd->add_option("--scan", ml_scan, "reps|all (whole-group scan mode)");

  // growth
  auto* growth_cmd = app.add_subcommand("growth", "Cayley ball growth / approximation degree");
  std::string gr_spec, gr_pair, gr_alphabet = "sym";
  int gr_radius = 2;
  std::uint64_t gr_budget = 20000;
  growth_cmd->add_option("--group", gr_spec)->required();
  growth_cmd->add_option("--radius", gr_radius)->capture_default_str();
  growth_cmd->add_option("--alphabet", gr_alphabet, "sym|pos")->capture_default_str();
  growth_cmd->add_option("--pair", gr_pair, "profile one pair \"a;b\" instead of searching");
  growth_cmd->add_option("--budget", gr_budget, "pair budget for the search");

  // lef
  auto* lef_cmd = app.add_subcommand("lef", "partial-table embedding search");
  std::string lef_spec, lef_structure;
  int lef_window = 3;
  lef_cmd->add_option("--group", lef_spec)->required();
  lef_cmd->add_option("--window", lef_window, "integer window radius")->capture_default_str();
  lef_cmd->add_option("--structure", lef_structure, "partial structure JSON file");

  // sofic
  auto* sofic_cmd = app.add_subcommand("sofic", "sofic map search (heuristic, exact scoring)");
  std::string so_spec, so_structure;
  std::uint32_t so_degree = 6;
  std::uint64_t so_budget = 4000;
  sofic_cmd->add_option("--group", so_spec, "group whose table is the domain");
  sofic_cmd->add_option("--structure", so_structure, "partial structure JSON file");
  sofic_cmd->add_option("--degree", so_degree)->capture_default_str();
  sofic_cmd->add_option("--budget", so_budget)->capture_default_str();

  // folner
  auto* folner_cmd = app.add_subcommand("folner", "Folner witness search");
  std::string fo_spec, fo_window, fo_eps = "1/2", fo_mode = "auto";
  std::uint32_t fo_set_size = 2;
  std::uint64_t fo_budget = 512;
  std::vector<std::string> fo_epsilons;
  folner_cmd->add_option("--group", fo_spec)->required();
  folner_cmd->add_option("--window", fo_window, "explicit window \"a,b,...\" (single search)");
  folner_cmd->add_option("--epsilon", fo_eps, "epsilon for --window mode")->capture_default_str();
  folner_cmd->add_option("--mode", fo_mode, "exact|greedy|auto")->capture_default_str();
  folner_cmd->add_option("--set-size", fo_set_size, "|A| for the profile mode")
      ->capture_default_str();
  folner_cmd->add_option("--epsilons", fo_epsilons, "epsilon grid for the profile mode");
  folner_cmd->add_option("--budget", fo_budget, "window budget for the profile mode");

  // experiment run|list
  auto* exp_cmd = app.add_subcommand("experiment", "batch experiment runner");
  auto* exp_run = exp_cmd->add_subcommand("run", "run a config file");
  std::string exp_file;
  std::vector<std::string> exp_sets;
  exp_run->add_option("config", exp_file)->required();
  exp_run->add_option("--set", exp_sets, "override config values, key.path=value");
  auto* exp_list = exp_cmd->add_subcommand("list", "list registered experiments");
  exp_cmd->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (*group_cmd) return cmd_group(g, group_spec, build_cmd->parsed());
    if (*analyze_cmd)
      return run_and_emit(g, single_config(g, "analyze", analyze_spec, {}));
    if (*identity_cmd)
      return run_and_emit(g, single_config(g, "identity", id_spec, {{"word", id_word}}));
    if (*milnor_cmd) {
      if (!ml_pair.empty())
        return cmd_milnor_pair(g, ml_spec, ml_pair, ml_degree, ml_weight, ml_given);
      if (!ml_given.empty())
        raise(ErrorKind::parse_error, "--spec needs --pair");
      return run_and_emit(
          g, single_config(g, "milnor", ml_spec,
                           {{"max_degree", ml_degree},
                            {"max_weight", ml_weight},
                            {"scan", ml_scan}}));
    }
    if (*growth_cmd) {
      if (!gr_pair.empty())
        return cmd_growth_profile(g, gr_spec, gr_pair, gr_radius, gr_alphabet);
      return run_and_emit(g, single_config(g, "growth", gr_spec,
                                           {{"radius", gr_radius},
                                            {"alphabet", gr_alphabet},
                                            {"budget", gr_budget}}));
    }
    if (*lef_cmd) {
      nlohmann::json params{{"window", lef_window}};
      if (!lef_structure.empty()) {
        std::ifstream in(lef_structure);
        if (!in) raise(ErrorKind::io_error, "cannot open " + lef_structure);
        nlohmann::json s;
        in >> s;
        params["structure"] = s;
      }
      return run_and_emit(g, single_config(g, "lef", lef_spec, params));
    }
    if (*sofic_cmd) {
      if (!so_structure.empty()) return cmd_sofic_structure(g, so_structure, so_degree, so_budget);
      if (so_spec.empty())
        raise(ErrorKind::parse_error, "sofic needs --group or --structure");
      return run_and_emit(g, single_config(g, "sofic", so_spec,
                                           {{"degree", so_degree}, {"budget", so_budget}}));
    }
    if (*folner_cmd) {
      if (!fo_window.empty())
        return cmd_folner_window(g, fo_spec, fo_window, fo_eps, fo_mode);
      nlohmann::json params{{"set_size", fo_set_size}, {"budget", fo_budget}};
      if (!fo_epsilons.empty()) params["epsilons"] = fo_epsilons;
      return run_and_emit(g, single_config(g, "folner", fo_spec, params));
    }
    if (*exp_list) {
      for (const auto& e : experiment_registry()) {
        std::cout << e.name << ": " << e.summary << "\n  columns:";
        for (const auto& c : e.columns) std::cout << " " << c;
        std::cout << "\n";
      }
      return 0;
    }
    if (*exp_run) {
      ExperimentConfig cfg = ExperimentConfig::load_file(exp_file);
      for (const auto& kv : exp_sets) cfg.apply_override(kv);
      // command-line flags win over the config file when explicitly given
      if (app.count("--seed")) cfg.seed = g.seed;
      if (app.count("--threads")) cfg.threads = g.threads;
      if (app.count("--cap")) cfg.enumeration_cap = g.cap;
      if (app.count("--format")) cfg.format = g.format;
      std::optional<ResultCache> cache;
      if (!g.no_cache) cache.emplace(g.cache_dir);
      const RunResult result = run_experiment(cfg, cache ? &*cache : nullptr);
      GlobalOpts out_opts = g;
      out_opts.format = cfg.format;
      return emit(out_opts, result);
    }
  } catch (const Error& e) {
    std::cerr << "grouplab: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "grouplab: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
