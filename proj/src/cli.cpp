#include "tverberg/cli.hpp"

#include "tverberg/centerpoint.hpp"
#include "tverberg/csv.hpp"
#include "tverberg/geometry.hpp"
#include "tverberg/json_io.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace tverberg {

namespace {

constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;
constexpr Index kDefaultDirections = 10000;

struct Globals {
  std::string seed_text;
  std::int64_t trials = 10000;
  unsigned threads = 1;
  std::string format;  // empty: per-command default
  std::string out;
  bool override_guards = false;
};

struct Output {
  Json config;
  Json result;                     // JSON payload
  std::optional<std::string> csv;  // CSV payload when the format is csv
  bool csv_default = false;        // csv unless --format says otherwise
};

std::uint64_t parse_seed(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used, 0);
    if (used != text.size()) throw InputError("");
    return v;
  } catch (...) {
    throw InputError("invalid seed '" + text + "'");
  }
}

std::uint64_t resolve_seed(const Globals& g) {
  if (!g.seed_text.empty()) return parse_seed(g.seed_text);
  if (const char* env = std::getenv("TVERBERG_LAB_SEED"); env && *env) return parse_seed(env);
  return kDefaultSeed;
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

const char* kSweepHeader =
    "m,n,k,d,t,c,event_id,successes,trials,estimate,ci_low,ci_high,seed,empty_class_trials,lower_bound,"
    "upper_bound,violation\n";

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << kSweepHeader;
  for (const auto& r : rows) {
    os << r.m << ',' << r.n << ',' << r.k << ',' << r.d << ',' << r.t << ',' << format_double(r.c) << ','
       << csv_escape(r.est.event_id) << ',' << r.est.successes << ',' << r.est.trials << ','
       << format_double(r.est.estimate) << ',' << format_double(r.est.ci_low) << ','
       << format_double(r.est.ci_high) << ',' << r.est.seed << ',' << r.est.empty_class_trials << ','
       << csv_cell(r.lower_bound) << ',' << csv_cell(r.upper_bound) << ',' << (r.violation ? "true" : "false")
       << '\n';
  }
  return os.str();
}

std::string pertsep_csv(const std::vector<PertsepRow>& rows) {
  std::ostringstream os;
  os << "m,k,d,trials,mean,p5,min,max\n";
  for (const auto& r : rows)
    os << r.m << ',' << r.k << ',' << r.d << ',' << r.trials << ',' << format_double(r.mean) << ','
       << format_double(r.p5) << ',' << format_double(r.min) << ',' << format_double(r.max) << '\n';
  return os.str();
}

std::string bound_csv(const BoundReport& r) {
  std::ostringstream os;
  os << "formula_id,side,value";
  for (const auto& [k, v] : r.params) os << ',' << k;
  os << "\n" << to_string(r.formula_id) << ',' << to_string(r.side) << ',' << format_double(r.value);
  for (const auto& [k, v] : r.params) os << ',' << format_double(v);
  os << '\n';
  return os.str();
}

Json rows_json(const std::vector<SweepRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

Json rows_json(const std::vector<PertsepRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back(to_json(r));
  return a;
}

// ---- bounds -------------------------------------------------------------

struct BoundsArgs {
  std::string id;
  std::int64_t m = 0, n = 0, k = 0, d = 0, n_inner = 0;
  std::optional<std::int64_t> t;
  double x = 0.0;
  bool uncorrected = false;
};

std::int64_t need(const std::optional<std::int64_t>& v, const char* name, std::int64_t min) {
  if (!v) throw InputError(std::string("missing --") + name);
  if (*v < min) throw InputError(std::string("--") + name + " must be >= " + std::to_string(min));
  return *v;
}

Output cmd_bounds(const BoundsArgs& a, const CLI::App& sub) {
  auto opt = [&](const char* name, std::int64_t v) -> std::optional<std::int64_t> {
    if (sub.count(std::string("--") + name) == 0) return std::nullopt;
    return v;
  };
  const auto m = opt("m", a.m), n = opt("n", a.n), k = opt("k", a.k), d = opt("d", a.d);
  BoundReport r;
  if (a.id == "cover") {
    r = report_cover_radon(need(n, "n", 1), need(d, "d", 1));
  } else if (a.id == "hemisphere") {
    r = report_hemisphere(need(n, "n", 1), need(d, "d", 1));
  } else if (a.id == "tverberg-lower") {
    r = report_equipartition_lower(need(m, "m", 1), need(n, "n", 1), need(d, "d", 1));
  } else if (a.id == "tverberg-upper") {
    r = report_equipartition_upper(need(m, "m", 1), need(n, "n", 1), need(d, "d", 1));
  } else if (a.id == "tolerance-lower") {
    const auto dd = need(d, "d", 1);
    const auto nn = need(n, "n", 2 * dd);
    r = report_tolerance_lower(need(m, "m", 1), nn, dd, need(a.t, "t", 0), !a.uncorrected);
  } else if (a.id == "radon-tolerance") {
    const auto dd = need(d, "d", 1);
    r = report_radon_tolerance(need(k, "k", 2 * dd + 2), dd, need(a.t, "t", 0));
  } else if (a.id == "urn") {
    r = report_urn({need(m, "m", 1), need(n, "n", 1), need(k, "k", 1)});
  } else if (a.id == "allocation-lower") {
    const auto mm = need(m, "m", 1), kk = need(k, "k", 1), dd = need(d, "d", 1);
    if (a.t) need(a.t, "t", 0);
    std::int64_t inner = a.n_inner;
    if (sub.count("--n-inner") == 0) inner = allocation_tverberg_lower_scan(mm, kk, dd, a.t, !a.uncorrected).best_n_inner;
    if (inner < 1) throw InputError("--n-inner must be >= 1 (or k >= m for the scan)");
    r = report_allocation_lower(mm, kk, dd, a.t, inner, !a.uncorrected);
  } else if (a.id == "erdos-renyi") {
    r = report_erdos_renyi(a.x, need(m, "m", 1));
  } else {
    throw InputError("unknown formula '" + a.id + "'");
  }
  Output o;
  o.config = {{"subcommand", "bounds"}, {"formula", a.id}, {"params", to_json(r)["params"]}};
  if (a.uncorrected) o.config["uncorrected"] = true;
  o.result = to_json(r);
  o.csv = bound_csv(r);
  return o;
}

// ---- simulate -----------------------------------------------------------

struct SimulateArgs {
  std::string event = "tverberg";
  std::string model = "equipartition";
  std::string dist = "standard_gaussian";
  std::int64_t m = 2, n = 3, k = 0, d = 2, t = 0;
  std::string write_sample;
};

Output cmd_simulate(const SimulateArgs& a, const Globals& g, std::uint64_t seed) {
  ModelSpec spec;
  spec.model = partition_model_from_string(a.model);
  spec.colors = a.m;
  spec.dist = BalancedDistribution{distribution_from_string(a.dist), a.d, {}};
  if (spec.model == PartitionModel::Equipartition)
    spec.per_color = a.n;
  else
    spec.total = a.k;
  spec.validate();
  EventSpec ev{event_from_string(a.event), static_cast<int>(a.t)};

  const TrialEstimate est = estimate_event(spec, ev, g.trials, seed, {g.threads, g.override_guards});

  if (!a.write_sample.empty()) {
    ModelSpec first = spec;
    first.seed = stream_key(seed, 0);
    std::ofstream f(a.write_sample, std::ios::binary);
    if (!f) throw InputError("cannot write '" + a.write_sample + "'");
    const ColoredPartition p = sample_partition(first);
    ColoredPartition nonempty;
    nonempty.dim = p.dim;
    for (const auto& c : p.classes)
      if (c.cols() > 0) nonempty.classes.push_back(c);
    write_dataset_csv(f, LabeledDataset::from_partition(nonempty));
  }

  Output o;
  Json model = to_json(spec);
  model.erase("seed");
  o.config = {{"subcommand", "simulate"}, {"event", ev.id()}, {"model", model}, {"trials", g.trials}};
  o.result = to_json(est);
  SweepRow row;
  row.m = a.m;
  row.n = spec.model == PartitionModel::Equipartition ? a.n : 0;
  row.k = spec.model == PartitionModel::Equipartition ? a.m * a.n : a.k;
  row.d = a.d;
  row.t = a.t;
  row.est = est;
  o.csv = sweep_csv({row});
  return o;
}

// ---- dataset ------------------------------------------------------------

struct DatasetArgs {
  std::string check;
  std::string path;
  bool homogeneous = false;
  std::int64_t directions = kDefaultDirections;
  std::int64_t t_max = -1;
};

Json mle_pairs(const LabeledDataset& ds, Json& warnings) {
  const ColoredPartition p = ds.to_partition();
  const Index m = p.class_count();
  Json matrix = Json::array();
  Json out;
  if (m < 2) {
    warnings.push_back("dataset has a single label; no pairs to check");
    out["labels"] = ds.label_names;
    out["matrix"] = matrix;
    out["all_pairs"] = nullptr;
    return out;
  }
  std::vector<std::vector<bool>> mle(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), true));
  bool all = true;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      const bool meet = hulls_common_point(ColoredPartition(p.dim, {p.classes[i], p.classes[j]})).has_value();
      mle[i][j] = mle[j][i] = meet;
      all = all && meet;
    }
  for (const auto& row : mle) matrix.push_back(row);
  out["labels"] = ds.label_names;
  out["matrix"] = matrix;
  out["all_pairs"] = all;
  return out;
}

Output cmd_dataset(const DatasetArgs& a, const Globals& g, std::uint64_t seed) {
  const LabeledDataset ds = read_dataset_csv(a.path);
  ds.validate();
  Output o;
  o.config = {{"subcommand", "dataset"}, {"check", a.check}, {"path", a.path}, {"rows", ds.size()}, {"dim", ds.dim()}};
  Json warnings = Json::array();
  Json result;
  if (a.check == "mle-pairs") {
    result = mle_pairs(ds, warnings);
  } else if (a.check == "pertsep0") {
    o.config["homogeneous"] = a.homogeneous;
    result = to_json(pertsep0(ds, {a.homogeneous, g.override_guards}));
    result["labels"] = ds.label_names;
  } else if (a.check == "degnsep") {
    if (ds.dim() <= 2) {
      result["value"] = degnsep_exact_low_dim(ds);
      result["exact"] = true;
    } else {
      const auto est = degnsep_sampled(ds, a.directions, seed);
      o.config["directions"] = a.directions;
      result["value"] = est.value;
      result["exact"] = false;
      result["upper_bound"] = true;
      result["best_direction"] = point_json(est.best_direction);
    }
    result["weakly_separable_through_origin"] = weakly_separable_through_origin(ds);
  } else if (a.check == "tolerance") {
    const ColoredPartition p = ds.to_partition();
    const int t_max = a.t_max >= 0 ? static_cast<int>(a.t_max) : static_cast<int>(p.total_size());
    o.config["t_max"] = t_max;
    std::vector<Index> row_of;
    ds.to_partition(&row_of);
    ToleranceResult tol = tolerance_exact(p, t_max, g.override_guards);
    for (auto& i : tol.breaking_set) i = row_of[static_cast<std::size_t>(i)];
    std::sort(tol.breaking_set.begin(), tol.breaking_set.end());
    result = to_json(tol);
  } else {
    throw InputError("unknown dataset check '" + a.check + "'");
  }
  result["warnings"] = warnings;
  o.result = result;
  return o;
}

// ---- centerpoint --------------------------------------------------------

struct CenterpointArgs {
  std::string path;
  std::string m = "auto";
  int retries = 20;
  std::string method = "equipartition";
  double eps0 = 0.5;
};

Output cmd_centerpoint(const CenterpointArgs& a, std::uint64_t seed) {
  const PointSet s = read_points_csv(a.path);
  if (s.cols() < 1) throw InputError("point cloud is empty");
  Index m = 0;
  if (a.m == "auto") {
    m = suggest_colors(s.cols(), s.rows(), a.eps0);
  } else {
    try {
      std::size_t used = 0;
      m = std::stoll(a.m, &used);
      if (used != a.m.size()) throw InputError("");
    } catch (...) {
      throw InputError("--m must be an integer or 'auto'");
    }
  }
  std::optional<CenterpointResult> r;
  if (a.method == "equipartition")
    r = centerpoint_equipartition(s, m, a.retries, seed);
  else if (a.method == "allocation")
    r = centerpoint_allocation(s, m, a.retries, seed);
  else
    throw InputError("unknown method '" + a.method + "'");

  Output o;
  o.config = {{"subcommand", "centerpoint"}, {"path", a.path},   {"m", a.m},          {"colors", m},
              {"retries", a.retries},        {"method", a.method}, {"eps0", a.eps0}, {"points", s.cols()},
              {"dim", s.rows()}};
  if (r) {
    o.result = to_json(*r);
    o.result["success"] = true;
    o.result["centerpoint_bar"] = static_cast<double>(s.cols()) / static_cast<double>(s.rows() + 1);
  } else {
    o.result = {{"success", false}, {"attempts", a.retries}, {"method", a.method}, {"certified_depth", nullptr}};
  }
  return o;
}

// ---- sweep --------------------------------------------------------------

template <typename T>
std::vector<T> list_of(const Json& cfg, const char* key) {
  if (!cfg.contains(key)) throw InputError(std::string("sweep config: missing '") + key + "'");
  const Json& v = cfg.at(key);
  if (!v.is_array()) throw InputError(std::string("sweep config: '") + key + "' must be an array");
  return v.get<std::vector<T>>();
}

Output cmd_sweep(const std::string& path, const Globals& g, const CLI::App& app, std::uint64_t seed) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(f);
  } catch (const Json::exception& e) {
    throw InputError(std::string("sweep config: ") + e.what());
  }
  if (!cfg.is_object()) throw InputError("sweep config must be a JSON object");

  Output o;
  o.csv_default = true;
  try {
    const std::string experiment = cfg.at("experiment").get<std::string>();
    const std::int64_t trials = app.count("--trials") ? g.trials : cfg.value("trials", g.trials);
    if (trials < 1) throw InputError("trials must be >= 1");
    const DistributionKind dist = distribution_from_string(cfg.value("dist", std::string("standard_gaussian")));
    const RunOptions run{g.threads, g.override_guards};
    o.config = {{"subcommand", "sweep"}, {"path", path}, {"experiment", experiment}, {"file", cfg}, {"trials", trials}};

    if (experiment == "sandwich") {
      const Json grid = cfg.at("grid");
      std::vector<GridCell> cells;
      for (auto m : list_of<std::int64_t>(grid, "m"))
        for (auto n : list_of<std::int64_t>(grid, "n"))
          for (auto d : list_of<std::int64_t>(grid, "d")) cells.push_back({m, n, d});
      const auto rows = sandwich_experiment(cells, dist, trials, seed, run);
      std::int64_t violations = 0;
      for (const auto& r : rows) violations += r.violation ? 1 : 0;
      o.result = {{"rows", rows_json(rows)}, {"violations", violations}};
      o.csv = sweep_csv(rows);
    } else if (experiment == "threshold") {
      const auto model = partition_model_from_string(cfg.value("model", std::string("equipartition")));
      const auto rows = threshold_sweep(cfg.at("d").get<std::int64_t>(), list_of<std::int64_t>(cfg, "m"),
                                        list_of<double>(cfg, "c"), dist, trials, seed, model, run);
      o.result = {{"rows", rows_json(rows)}};
      o.csv = sweep_csv(rows);
    } else if (experiment == "pertsep_convergence") {
      const auto rows = pertsep_convergence(cfg.at("m").get<std::int64_t>(), cfg.at("d").get<std::int64_t>(),
                                            list_of<std::int64_t>(cfg, "k"), dist, trials, seed, run);
      o.result = {{"rows", rows_json(rows)}};
      o.csv = pertsep_csv(rows);
    } else {
      throw InputError("unknown experiment '" + experiment + "'");
    }
  } catch (const Json::exception& e) {
    throw InputError(std::string("sweep config: ") + e.what());
  }
  return o;
}

void emit(const Output& o, const Globals& g, std::uint64_t seed, std::int64_t wall_ms, std::ostream& out) {
  std::string format = g.format.empty() ? (o.csv_default ? "csv" : "json") : g.format;
  if (format != "json" && format != "csv") throw InputError("--format must be json or csv");
  if (format == "csv" && !o.csv) throw InputError("this subcommand has no CSV output; use --format json");

  Json envelope;
  envelope["version"] = kToolVersion;
  envelope["seed"] = seed;
  envelope["config"] = o.config;
  envelope["wall_time_ms"] = wall_ms;

  std::string body;
  if (format == "json") {
    envelope["result"] = o.result;
    body = envelope.dump(2) + "\n";
  } else {
    body = *o.csv;
  }

  if (g.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + g.out + "'");
  f << body;
  if (format == "csv") {
    // CSV stays pure; the run envelope goes to a sidecar file.
    envelope["result"] = {{"csv", g.out}};
    std::ofstream meta(g.out + ".meta.json", std::ios::binary);
    if (!meta) throw InputError("cannot write '" + g.out + ".meta.json'");
    meta << envelope.dump(2) << "\n";
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random Tverberg partitions: bounds, simulations, separability and centerpoints", "tverberg-lab"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed_text, "64-bit seed (decimal or 0x hex); falls back to $TVERBERG_LAB_SEED, then 0xC0FFEE");
  app.add_option("--trials", g.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  app.add_option("--threads", g.threads, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 256u));
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", g.out, "output path (default stdout)");
  app.add_flag("--override-guards", g.override_guards, "allow exponential enumerations beyond the size guards");

  BoundsArgs ba;
  auto* bounds = app.add_subcommand("bounds", "evaluate a closed-form probability or bound");
  bounds->add_option("formula", ba.id,
                     "cover | hemisphere | tverberg-lower | tverberg-upper | tolerance-lower | radon-tolerance | "
                     "urn | allocation-lower | erdos-renyi")
      ->required();
  bounds->add_option("--m", ba.m, "colors (urns)");
  bounds->add_option("--n", ba.n, "points per color (urn target)");
  bounds->add_option("--k", ba.k, "total points (throws)");
  bounds->add_option("--d", ba.d, "dimension");
  bounds->add_option("--t", ba.t, "tolerance");
  bounds->add_option("--x", ba.x, "argument of the Erdos-Renyi limit");
  bounds->add_option("--n-inner", ba.n_inner, "per-color target for allocation-lower (default: best by scan)");
  bounds->add_flag("--uncorrected", ba.uncorrected, "binomial sums start at i = 1");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of a partition event");
  simulate->add_option("--event", sa.event,
                       "tverberg | center-tverberg | tverberg-tolerance | radon | radon-tolerance | box-tverberg | "
                       "pairwise-mle");
  simulate->add_option("--model", sa.model, "equipartition | allocation");
  simulate->add_option("--dist", sa.dist, "gaussian | ball | sphere | cube | mixture");
  simulate->add_option("--m", sa.m, "colors");
  simulate->add_option("--n", sa.n, "points per color (equipartition)");
  simulate->add_option("--k", sa.k, "total points (allocation)");
  simulate->add_option("--d", sa.d, "dimension");
  simulate->add_option("--t", sa.t, "tolerance for tolerance events");
  simulate->add_option("--write-sample", sa.write_sample, "write the first trial's partition as a dataset CSV");

  DatasetArgs da;
  auto* dataset = app.add_subcommand("dataset", "checks on a labeled CSV dataset");
  dataset->add_option("check", da.check, "mle-pairs | pertsep0 | degnsep | tolerance")->required();
  dataset->add_option("csv", da.path, "CSV with header x1..xd,label")->required();
  dataset->add_flag("--homogeneous", da.homogeneous, "pertsep0: separating hyperplanes through the origin");
  dataset->add_option("--directions", da.directions, "degnsep: sampled directions when d > 2")
      ->check(CLI::PositiveNumber);
  dataset->add_option("--t-max", da.t_max, "tolerance: cap on the reported tolerance (default: number of rows)");

  CenterpointArgs ca;
  auto* centerpoint = app.add_subcommand("centerpoint", "approximate centerpoint from random Tverberg partitions");
  centerpoint->add_option("csv", ca.path, "CSV with header x1..xd[,label]")->required();
  centerpoint->add_option("--m", ca.m, "colors, or 'auto'");
  centerpoint->add_option("--retries", ca.retries, "fresh colorings to try")->check(CLI::PositiveNumber);
  centerpoint->add_option("--method", ca.method, "equipartition | allocation");
  centerpoint->add_option("--eps0", ca.eps0, "auto mode: slack in ceil((1 + eps0) log2 m)");

  std::string sweep_path;
  auto* sweep = app.add_subcommand("sweep", "run an experiment described by a JSON config");
  sweep->add_option("config", sweep_path, "experiment config JSON")->required();

  std::vector<const char*> argv{"tverberg-lab"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? 0 : 2;
    }
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t seed = resolve_seed(g);
    Output o;
    if (*bounds)
      o = cmd_bounds(ba, *bounds);
    else if (*simulate)
      o = cmd_simulate(sa, g, seed);
    else if (*dataset)
      o = cmd_dataset(da, g, seed);
    else if (*centerpoint)
      o = cmd_centerpoint(ca, seed);
    else
      o = cmd_sweep(sweep_path, g, app, seed);
    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
    emit(o, g, seed, wall.count(), out);
    return 0;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const GuardError& e) {
    err << "refused: " << e.what() << "\n";
    return 3;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tverberg
