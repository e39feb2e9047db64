// Acceptance harness: one PASS/FAIL line per criterion. Exits 1 when any
// selected criterion fails.
//
//   acceptance [--only AC3] [--seed N]

#include "tverberg/centerpoint.hpp"
#include "tverberg/cli.hpp"
#include "tverberg/formulas.hpp"
#include "tverberg/geometry.hpp"
#include "tverberg/json_io.hpp"
#include "tverberg/montecarlo.hpp"
#include "tverberg/sampling.hpp"
#include "tverberg/separability.hpp"

#include "CLI11.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace tverberg;
namespace fs = std::filesystem;

// Pinned tolerances.
constexpr double kCoverTarget = 0.5;
constexpr double kCoverMcLow = 0.49, kCoverMcHigh = 0.51;
constexpr double kAc1Seconds = 10.0;
constexpr double kAc2Seconds = 300.0;
constexpr double kHemisphereTarget = 0.75, kHemisphereTol = 0.01;
constexpr double kUrnSigmas = 3.0;
constexpr double kUrnSpot = 150.0 / 243.0;
constexpr double kUrnSpotTol = 1e-15;
constexpr double kThresholdHigh = 0.9, kThresholdLow = 0.1;
constexpr double kCenterpointRate = 0.5;
constexpr double kDegnsepGap = 1e-3;
constexpr double kDegnsepOrderSlack = 1e-12;  // sampled >= exact up to rounding
constexpr double kPertsepFloor = 0.4;
constexpr double kAc9Seconds = 120.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::uint64_t seed = 0xC0FFEE;
  fs::path source_dir = TVERBERG_SOURCE_DIR;
  fs::path scratch;
};

struct CliCall {
  int code = -1;
  std::string out;
  std::string err;
};

CliCall cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  CliCall c;
  c.code = run_cli(args, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

Json cli_json(const std::vector<std::string>& args) {
  const auto c = cli(args);
  if (c.code != 0) throw std::runtime_error("cli exit " + std::to_string(c.code) + ": " + c.err);
  return Json::parse(c.out);
}

std::string hex(std::uint64_t v) {
  std::ostringstream s;
  s << "0x" << std::hex << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

std::string config(const Context& ctx, const std::string& name) { return (ctx.source_dir / "configs" / name).string(); }

// ---------------------------------------------------------------------------

Outcome ac1(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  int exact = 0;
  for (int d = 1; d <= 10; ++d) {
    const Json j = cli_json({"bounds", "cover", "--n", std::to_string(2 * (d + 1)), "--d", std::to_string(d)});
    exact += j["result"]["value"].get<double>() == kCoverTarget;
  }
  const Json mc = cli_json({"--seed", hex(ctx.seed), "--trials", "40000", "simulate", "--event", "radon", "--model",
                            "allocation", "--m", "2", "--k", "6", "--d", "2", "--dist", "gaussian"});
  const double est = mc["result"]["estimate"].get<double>();
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = exact == 10 && est >= kCoverMcLow && est <= kCoverMcHigh && secs < kAc1Seconds;
  o.detail = "cover exact 0.5 for " + std::to_string(exact) + "/10 d; MC(k=6,d=2,4e4) = " + fmt(est, 5) +
             " in [0.49,0.51]; " + fmt(secs, 3) + " s < 10 s";
  return o;
}

Outcome ac2(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const Json j =
      cli_json({"--seed", hex(ctx.seed), "--format", "json", "sweep", config(ctx, "sandwich_grid.json")});
  const double secs = seconds_since(t0);
  const auto& rows = j["result"]["rows"];
  int violations = 0, checked = 0;
  for (const auto& r : rows) {
    // Recheck [lower - hw, upper + hw] here rather than trusting the flag.
    const auto& e = r["estimate"];
    const double est = e["estimate"].get<double>();
    const double hw = 0.5 * (e["ci_high"].get<double>() - e["ci_low"].get<double>());
    const double lo = tverberg_equipartition_lower(r["m"], r["n"], r["d"]);
    const double hi = tverberg_equipartition_upper(r["m"], r["n"], r["d"]);
    const bool bad = est < lo - hw || est > hi + hw;
    violations += bad || r["violation"].get<bool>();
    ++checked;
  }
  Outcome o;
  o.pass = checked == 27 && violations == 0 && secs < kAc2Seconds;
  o.detail = std::to_string(checked) + " cells, " + std::to_string(violations) + " violations; " + fmt(secs, 3) +
             " s < 300 s";
  return o;
}

Outcome ac3(const Context& ctx) {
  // The center misses conv(sample) exactly when all points lie in a closed
  // half-plane through it (up to a null set).
  const Json j = cli_json({"--seed", hex(ctx.seed), "--trials", "100000", "simulate", "--event", "center-tverberg",
                           "--m", "1", "--n", "3", "--d", "2", "--dist", "gaussian"});
  const double all_in_halfspace = 1.0 - j["result"]["estimate"].get<double>();
  Outcome o;
  o.pass = std::abs(all_in_halfspace - kHemisphereTarget) <= kHemisphereTol;
  o.detail = "MC all-in-halfspace(n=3,d=2,1e5) = " + fmt(all_in_halfspace, 5) + ", closed form " +
             fmt(hemisphere_probability(3, 2), 5) + ", target 0.75 +- 0.01";
  return o;
}

// Random two-class instance: n in [4, 12], d in {1, 2, 3}, distribution and
// class offset cycling so that separable, borderline and mixed cases occur.
LabeledDataset ac4_instance(std::uint64_t seed, int i) {
  static const DistributionKind kinds[] = {DistributionKind::StandardGaussian, DistributionKind::UniformBall,
                                           DistributionKind::UniformSphere, DistributionKind::UniformCube,
                                           DistributionKind::SymmetricTwoGaussianMixture};
  static const double offsets[] = {0.0, 0.5, 1.5, 3.0};
  SplitMix64 rng(stream_key(seed, static_cast<std::uint64_t>(i), 4));
  BalancedDistribution dist;
  dist.kind = kinds[i % 5];
  dist.dim = 1 + (i / 5) % 3;
  const Index n = 4 + static_cast<Index>(rng() % 9);
  LabeledDataset ds;
  ds.points = draw_points(dist, stream_key(seed, static_cast<std::uint64_t>(i), 5), 0, n);
  ds.label_names = {"a", "b"};
  const Index n_a = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(n - 1));
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index j = 0; j < n; ++j) order[static_cast<std::size_t>(j)] = j;
  std::shuffle(order.begin(), order.end(), rng);
  ds.labels.assign(static_cast<std::size_t>(n), 1);
  const double offset = offsets[(i / 15) % 4];
  for (Index j = n_a; j < n; ++j) {
    const Index row = order[static_cast<std::size_t>(j)];
    ds.labels[static_cast<std::size_t>(row)] = 2;
    ds.points(0, row) += offset;
  }
  return ds;
}

Outcome ac4(const Context& ctx) {
  const int instances = 200;
  int equal = 0, plus_one = 0, brute = 0;
  for (int i = 0; i < instances; ++i) {
    const LabeledDataset ds = ac4_instance(ctx.seed, i);
    const Index removals = min_removals_to_separable(ds).count;
    const int tol = tolerance_exact(ds.to_partition(), static_cast<int>(ds.points.cols())).tolerance;
    equal += removals == tol;
    plus_one += removals == tol + 1;
    brute += removals == min_removals_brute_force(ds).count;
  }
  Outcome o;
  o.pass = equal == instances && brute == instances;
  o.detail = "min_removals == tolerance in " + std::to_string(equal) + "/200; min_removals == tolerance + 1 in " +
             std::to_string(plus_one) + "/200; enumeration == brute force in " + std::to_string(brute) + "/200";
  return o;
}

Outcome ac5(const Context& ctx) {
  const std::int64_t experiments = 100000;
  const int max_k = 30;
  int checked = 0, outside = 0;
  double worst = 0.0;
  std::string worst_cell;
  for (std::int64_t m = 2; m <= 4; ++m)
    for (std::int64_t n = 1; n <= 3; ++n) {
      // One throw sequence of length max_k per experiment; every prefix is a
      // sample for its own k.
      std::vector<std::int64_t> hits(max_k + 1, 0);
      const std::uint64_t cell = stream_key(ctx.seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(n));
      for (std::int64_t e = 0; e < experiments; ++e) {
        const std::uint64_t key = stream_key(cell, static_cast<std::uint64_t>(e));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(m), 0);
        std::int64_t short_urns = m;
        for (int k = 1; k <= max_k; ++k) {
          auto& c = counts[static_cast<std::size_t>(draw_color(m, key, k - 1))];
          if (++c == n) --short_urns;
          hits[static_cast<std::size_t>(k)] += short_urns == 0;
        }
      }
      for (int k = 1; k <= max_k; ++k) {
        const double p = urn_coverage_probability({m, n, k});
        const double mc = static_cast<double>(hits[static_cast<std::size_t>(k)]) / static_cast<double>(experiments);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(experiments));
        // A degenerate p has zero spread, so the sample must match exactly.
        const bool ok = se > 0.0 ? std::abs(mc - p) <= kUrnSigmas * se : mc == p;
        const double z = se > 0.0 ? std::abs(mc - p) / se : (mc == p ? 0.0 : INFINITY);
        if (z > worst) {
          worst = z;
          worst_cell = "(m=" + std::to_string(m) + ",n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")";
        }
        outside += !ok;
        ++checked;
      }
    }
  const double spot = urn_coverage_probability({3, 1, 5});
  Outcome o;
  o.pass = outside == 0 && std::abs(spot - kUrnSpot) <= kUrnSpotTol;
  o.detail = std::to_string(checked - outside) + "/" + std::to_string(checked) + " cells within 3 SE (worst " +
             fmt(worst, 3) + " SE at " + worst_cell + "); P(m=3,n=1,k=5) = " + fmt(spot, 17) + " vs 150/243";
  return o;
}

Outcome ac6(const Context& ctx) {
  const Json j =
      cli_json({"--seed", hex(ctx.seed), "--format", "json", "sweep", config(ctx, "threshold_d2.json")});
  std::vector<double> high, low;
  for (const auto& r : j["result"]["rows"]) {
    const double c = r["c"].get<double>();
    const double est = r["estimate"]["estimate"].get<double>();
    if (c == 3.0) high.push_back(est);
    if (c == 0.25) low.push_back(est);
  }
  const bool up = high.size() == 4 && std::is_sorted(high.begin(), high.end());
  const bool down = low.size() == 4 && std::is_sorted(low.rbegin(), low.rend());
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (double x : v) s += (s.empty() ? "" : ",") + fmt(x, 4);
    return s;
  };
  Outcome o;
  o.pass = up && down && high.back() >= kThresholdHigh && low.back() <= kThresholdLow;
  o.detail = "c=3: [" + list(high) + "] nondecreasing=" + (up ? "yes" : "no") + "; c=0.25: [" + list(low) +
             "] nonincreasing=" + (down ? "yes" : "no");
  return o;
}

Outcome ac7(const Context& ctx) {
  const int runs = 100, retries = 20;
  const Index n_points = 60;
  const Index m = suggest_colors(n_points, 2);
  int successes = 0, unsound = 0;
  BalancedDistribution dist;
  dist.dim = 2;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t run_seed = stream_key(ctx.seed, static_cast<std::uint64_t>(r), 7);
    const PointSet s = draw_points(dist, run_seed, 0, n_points);
    const auto res = centerpoint_equipartition(s, m, retries, run_seed, false);
    if (!res) continue;
    ++successes;
    unsound += tukey_depth_sweep(res->point, s) < m;
  }
  const double rate = static_cast<double>(successes) / runs;
  Outcome o;
  o.pass = unsound == 0 && rate >= kCenterpointRate;
  o.detail = "m=" + std::to_string(m) + ", " + std::to_string(successes) + "/100 successes, " +
             std::to_string(unsound) + " with sweep depth < m";
  return o;
}

Outcome ac8(const Context& ctx) {
  LabeledDataset three;
  three.points.resize(1, 3);
  three.points << 1, 2, 3;
  three.labels = {2, 1, 2};  // y = +1, -1, +1
  three.label_names = {"neg", "pos"};
  const double v = degnsep_exact_low_dim(three);

  const int instances = 100;
  const Index directions = 10000;
  int below = 0, wide = 0;
  double worst_gap = 0.0;
  BalancedDistribution dist;
  dist.dim = 2;
  for (int i = 0; i < instances; ++i) {
    const std::uint64_t key = stream_key(ctx.seed, static_cast<std::uint64_t>(i), 8);
    LabeledDataset ds;
    const Index n = 20;
    ds.points = draw_points(dist, key, 0, n);
    ds.label_names = {"neg", "pos"};
    for (Index j = 0; j < n; ++j) ds.labels.push_back(1 + static_cast<int>(draw_color(2, key, j)));
    const double exact = degnsep_exact_low_dim(ds);
    const double sampled = degnsep_sampled(ds, directions, key).value;
    below += sampled < exact - kDegnsepOrderSlack;
    wide += sampled - exact > kDegnsepGap;
    worst_gap = std::max(worst_gap, sampled - exact);
  }
  Outcome o;
  o.pass = v == 2.0 / 3.0 && below == 0 && wide == 0;
  o.detail = "d=1 example = " + fmt(v, 17) + "; sampled < exact in " + std::to_string(below) +
             "/100, gap > 1e-3 in " + std::to_string(wide) + "/100 (max gap " + fmt(worst_gap, 3) + ")";
  return o;
}

Outcome ac9(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const Json j =
      cli_json({"--seed", hex(ctx.seed), "--format", "json", "sweep", config(ctx, "pertsep_m3_d1.json")});
  const double secs = seconds_since(t0);
  std::vector<double> means;
  std::string list;
  for (const auto& r : j["result"]["rows"]) {
    means.push_back(r["mean"].get<double>());
    list += (list.empty() ? "" : ",") + fmt(means.back(), 4);
  }
  const bool up = means.size() == 3 && std::is_sorted(means.begin(), means.end());
  Outcome o;
  o.pass = up && means.back() >= kPertsepFloor && secs < kAc9Seconds;
  o.detail = "means over k=30,300,2000: [" + list + "] nondecreasing=" + (up ? "yes" : "no") + "; " +
             fmt(secs, 3) + " s < 120 s";
  return o;
}

// Output with wall_time_ms removed; CSV bodies are compared verbatim.
std::string comparable(const CliCall& c) {
  if (c.code != 0) return "exit " + std::to_string(c.code) + ": " + c.err;
  if (!c.out.empty() && c.out.front() == '{') {
    Json j = Json::parse(c.out);
    j.erase("wall_time_ms");
    return j.dump();
  }
  return c.out;
}

Outcome ac10(const Context& ctx) {
  const std::string seed = hex(ctx.seed);
  const std::string sample = (ctx.scratch / "sample.csv").string();
  const std::string sample_out = (ctx.scratch / "sample_est.json").string();
  // Writes the dataset used by the dataset and centerpoint commands below.
  const CliCall writer = cli({"--seed", seed, "--trials", "50", "--out", sample_out, "simulate", "--event", "radon",
                              "--m", "2", "--n", "6", "--d", "2", "--write-sample", sample});
  if (writer.code != 0) return {false, "could not write sample: " + writer.err};

  const std::vector<std::vector<std::string>> commands{
      {"bounds", "cover", "--n", "6", "--d", "2"},
      {"--seed", seed, "--trials", "40000", "simulate", "--event", "radon", "--model", "allocation", "--m", "2",
       "--k", "6", "--d", "2", "--dist", "gaussian"},
      {"--seed", seed, "--trials", "100000", "simulate", "--event", "center-tverberg", "--m", "1", "--n", "3", "--d",
       "2"},
      {"--seed", seed, "--format", "json", "sweep", config(ctx, "sandwich_grid.json")},
      {"--seed", seed, "sweep", config(ctx, "threshold_d2.json")},
      {"--seed", seed, "sweep", config(ctx, "pertsep_m3_d1.json")},
      {"--seed", seed, "bounds", "urn", "--m", "3", "--n", "1", "--k", "5"},
      {"--seed", seed, "dataset", "pertsep0", sample},
      {"--seed", seed, "dataset", "degnsep", sample},
      {"--seed", seed, "centerpoint", sample, "--m", "auto"},
  };
  int identical = 0, thread_identical = 0, thread_checked = 0;
  std::string first_diff;
  for (const auto& args : commands) {
    const std::string a = comparable(cli(args));
    const std::string b = comparable(cli(args));
    if (a == b && a.rfind("exit ", 0) != 0) {
      ++identical;
    } else if (first_diff.empty()) {
      first_diff = args[args.size() > 4 ? 4 : 0];
    }
    // Monte Carlo commands must not depend on the worker count either.
    const bool mc = std::find(args.begin(), args.end(), "simulate") != args.end() ||
                    std::find(args.begin(), args.end(), "sweep") != args.end();
    if (mc) {
      auto threaded = args;
      threaded.insert(threaded.begin(), {"--threads", "2"});
      ++thread_checked;
      thread_identical += comparable(cli(threaded)) == a;
    }
  }
  const int total = static_cast<int>(commands.size());
  Outcome o;
  o.pass = identical == total && thread_identical == thread_checked;
  o.detail = std::to_string(identical) + "/" + std::to_string(total) + " commands byte-identical on rerun; " +
             std::to_string(thread_identical) + "/" + std::to_string(thread_checked) +
             " identical with --threads 2" + (first_diff.empty() ? "" : "; first mismatch: " + first_diff);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<std::string> only;
  Context ctx;
  app.add_option("--only", only, "run only these criteria (AC1..AC10)");
  app.add_option("--seed", ctx.seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  ctx.scratch = fs::temp_directory_path() / ("tverberg_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(ctx.scratch);

  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
      {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
  };
  for (const auto& name : only)
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return c.first == name; })) {
      std::cerr << "unknown criterion " << name << "\n";
      return 2;
    }

  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << std::left << std::setw(5) << name << (o.pass ? "PASS  " : "FAIL  ") << o.detail << "  ["
              << fmt(seconds_since(t0), 3) << " s]" << std::endl;
  }
  fs::remove_all(ctx.scratch);
  return failed == 0 ? 0 : 1;
}
