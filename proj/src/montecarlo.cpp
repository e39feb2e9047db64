#include "tverberg/montecarlo.hpp"

#include "tverberg/geometry.hpp"
#include "tverberg/separability.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace tverberg {

namespace {

constexpr double kWilsonZ = 1.96;
constexpr Index kToleranceGuardPoints = 24;
constexpr int kToleranceGuardT = 3;

// Runs fn(i) for i in [0, trials) over contiguous chunks and sums the
// integer outcomes component-wise; the sum is independent of scheduling.
template <typename Fn>
std::vector<std::int64_t> run_trials(std::int64_t trials, unsigned threads, std::size_t slots, Fn fn) {
  const auto workers = static_cast<std::int64_t>(std::max(1u, threads));
  const std::int64_t used = std::min<std::int64_t>(workers, std::max<std::int64_t>(trials, 1));
  std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(used), std::vector<std::int64_t>(slots, 0));
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](std::int64_t w) {
    const std::int64_t lo = trials * w / used;
    const std::int64_t hi = trials * (w + 1) / used;
    try {
      for (std::int64_t i = lo; i < hi; ++i) fn(i, partial[static_cast<std::size_t>(w)]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  if (used == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::int64_t w = 0; w < used; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<std::int64_t> total(slots, 0);
  for (const auto& p : partial)
    for (std::size_t s = 0; s < slots; ++s) total[s] += p[s];
  return total;
}

Index smallest_class(const ColoredPartition& p) {
  Index s = p.classes.front().cols();
  for (const auto& c : p.classes) s = std::min(s, c.cols());
  return s;
}

bool is_tolerance_event(EventKind k) {
  return k == EventKind::TverbergTolerance || k == EventKind::RadonTolerance;
}

}  // namespace

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::Tverberg: return "tverberg";
    case EventKind::CenterTverberg: return "center_tverberg";
    case EventKind::TverbergTolerance: return "tverberg_tolerance";
    case EventKind::Radon: return "radon";
    case EventKind::RadonTolerance: return "radon_tolerance";
    case EventKind::BoxTverberg: return "box_tverberg";
    case EventKind::PairwiseMle: return "pairwise_mle";
  }
  return "unknown";
}

EventKind event_from_string(const std::string& s) {
  std::string key = s;
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "tverberg") return EventKind::Tverberg;
  if (key == "center_tverberg") return EventKind::CenterTverberg;
  if (key == "tverberg_tolerance" || key == "tolerance") return EventKind::TverbergTolerance;
  if (key == "radon") return EventKind::Radon;
  if (key == "radon_tolerance") return EventKind::RadonTolerance;
  if (key == "box_tverberg" || key == "box") return EventKind::BoxTverberg;
  if (key == "pairwise_mle" || key == "mle") return EventKind::PairwiseMle;
  throw InputError("unknown event '" + s + "'");
}

std::string EventSpec::id() const {
  if (is_tolerance_event(kind)) return to_string(kind) + "(t=" + std::to_string(t) + ")";
  return to_string(kind);
}

void wilson_interval(std::int64_t successes, std::int64_t trials, double& low, double& high) {
  if (trials <= 0) {
    low = 0.0;
    high = 1.0;
    return;
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / n;
  const double mid = (p + z2 / (2 * n)) / denom;
  const double half = kWilsonZ * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  low = std::max(0.0, std::min(p, mid - half));
  high = std::min(1.0, std::max(p, mid + half));
}

bool event_occurs(const ColoredPartition& p, const EventSpec& event, const Point& center,
                  bool override_guards) {
  if (p.has_empty_class()) return false;
  switch (event.kind) {
    case EventKind::Tverberg:
    case EventKind::Radon:
      return hulls_common_point(p).has_value();
    case EventKind::CenterTverberg:
      for (const auto& c : p.classes)
        if (!hull_contains(c, center)) return false;
      return true;
    case EventKind::TverbergTolerance:
    case EventKind::RadonTolerance: {
      if (event.t == 0) return hulls_common_point(p).has_value();
      if (event.t >= smallest_class(p)) return false;
      // Tolerance >= t iff no removal of at most t points breaks.
      return tolerance_exact(p, event.t - 1, override_guards).at_cap;
    }
    case EventKind::BoxTverberg:
      return box_hulls_common_point(p).has_value();
    case EventKind::PairwiseMle:
      for (Index i = 0; i < p.class_count(); ++i)
        for (Index j = i + 1; j < p.class_count(); ++j)
          if (!hulls_common_point(ColoredPartition(p.dim, {p.classes[i], p.classes[j]}))) return false;
      return true;
  }
  return false;
}

TrialEstimate estimate_event(const ModelSpec& spec, const EventSpec& event, std::int64_t trials,
                             std::uint64_t seed, const RunOptions& opts) {
  spec.validate();
  if (trials < 1) throw InputError("trials must be >= 1");
  if ((event.kind == EventKind::Radon || event.kind == EventKind::RadonTolerance) && spec.colors != 2)
    throw InputError("radon events need m = 2");
  if (is_tolerance_event(event.kind)) {
    if (event.t < 0) throw InputError("tolerance t must be >= 0");
    const Index points = spec.model == PartitionModel::Equipartition ? spec.colors * spec.per_color : spec.total;
    const bool trivially_zero = spec.model == PartitionModel::Equipartition && event.t >= spec.per_color;
    if (!opts.override_guards && !trivially_zero && points > kToleranceGuardPoints && event.t - 1 > kToleranceGuardT)
      throw GuardError("tolerance event: more than 24 points with t > 4; pass the override to proceed");
  }

  const Point center = spec.dist.center_or_origin();
  // slot 0: successes, slot 1: trials with an empty class
  const auto counts = run_trials(trials, opts.threads, 2, [&](std::int64_t i, std::vector<std::int64_t>& acc) {
    ModelSpec trial = spec;
    trial.seed = stream_key(seed, static_cast<std::uint64_t>(i));
    const ColoredPartition p = sample_partition(trial);
    if (p.has_empty_class()) {
      ++acc[1];
      return;
    }
    if (event_occurs(p, event, center, opts.override_guards)) ++acc[0];
  });

  TrialEstimate est;
  est.successes = counts[0];
  est.trials = trials;
  est.estimate = static_cast<double>(counts[0]) / static_cast<double>(trials);
  wilson_interval(est.successes, est.trials, est.ci_low, est.ci_high);
  est.seed = seed;
  est.event_id = event.id();
  est.empty_class_trials = counts[1];
  return est;
}

std::vector<SweepRow> sandwich_experiment(const std::vector<GridCell>& grid, DistributionKind dist,
                                          std::int64_t trials, std::uint64_t seed,
                                          const RunOptions& opts) {
  std::vector<SweepRow> rows;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const GridCell& cell = grid[c];
    ModelSpec spec;
    spec.model = PartitionModel::Equipartition;
    spec.colors = cell.m;
    spec.per_color = cell.n;
    spec.dist = BalancedDistribution{dist, cell.d, {}};

    SweepRow row;
    row.m = cell.m;
    row.n = cell.n;
    row.k = cell.m * cell.n;
    row.d = cell.d;
    row.est = estimate_event(spec, {EventKind::Tverberg, 0}, trials, stream_key(seed, c, 1), opts);
    row.lower_bound = tverberg_equipartition_lower(cell.m, cell.n, cell.d);
    if (spec.dist.product_symmetric()) row.upper_bound = tverberg_equipartition_upper(cell.m, cell.n, cell.d);
    const double hw = row.est.half_width();
    row.violation = row.est.estimate + hw < *row.lower_bound ||
                    (row.upper_bound && row.est.estimate - hw > *row.upper_bound);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<SweepRow> threshold_sweep(std::int64_t d, const std::vector<std::int64_t>& m_list,
                                      const std::vector<double>& c_list, DistributionKind dist,
                                      std::int64_t trials, std::uint64_t seed, PartitionModel model,
                                      const RunOptions& opts) {
  std::vector<SweepRow> rows;
  std::uint64_t cell = 0;
  for (double c : c_list) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("threshold_sweep: c must be finite and >= 0");
    for (std::int64_t m : m_list) {
      if (m < 1) throw InputError("threshold_sweep: m must be >= 1");
      ModelSpec spec;
      spec.model = model;
      spec.colors = m;
      spec.dist = BalancedDistribution{dist, d, {}};
      const double lg = std::log2(static_cast<double>(m));
      SweepRow row;
      row.m = m;
      row.d = d;
      row.c = c;
      if (model == PartitionModel::Equipartition) {
        spec.per_color = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(c * lg - 1e-9)));
        row.n = spec.per_color;
        row.k = m * spec.per_color;
      } else {
        const double loglog = m >= 3 ? std::log(std::log(static_cast<double>(m))) : 0.0;
        spec.total = std::max<std::int64_t>(m, static_cast<std::int64_t>(std::ceil(c * m * lg * loglog - 1e-9)));
        row.k = spec.total;
      }
      row.est = estimate_event(spec, {EventKind::Tverberg, 0}, trials, stream_key(seed, cell++, 2), opts);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double min_pairwise_pertsep0(const ColoredPartition& p, bool override_guards) {
  if (p.class_count() < 2) throw InputError("min_pairwise_pertsep0: needs at least two colors");
  double best = 0.5;
  for (Index i = 0; i < p.class_count(); ++i) {
    for (Index j = i + 1; j < p.class_count(); ++j) {
      if (p.classes[i].cols() == 0 || p.classes[j].cols() == 0) return 0.0;
      const LabeledDataset ds = LabeledDataset::from_partition(ColoredPartition(p.dim, {p.classes[i], p.classes[j]}));
      const RemovalResult r = p.dim == 1 ? min_removals_sweep_1d(ds)
                                         : min_removals_to_separable(ds, {false, override_guards});
      best = std::min(best, static_cast<double>(r.count) / static_cast<double>(ds.size()));
    }
  }
  return best;
}

std::vector<PertsepRow> pertsep_convergence(std::int64_t m, std::int64_t d,
                                            const std::vector<std::int64_t>& k_list,
                                            DistributionKind dist, std::int64_t trials,
                                            std::uint64_t seed, const RunOptions& opts) {
  if (m < 2) throw InputError("pertsep_convergence: m must be >= 2");
  if (trials < 1) throw InputError("trials must be >= 1");
  std::vector<PertsepRow> rows;
  for (std::size_t c = 0; c < k_list.size(); ++c) {
    ModelSpec spec;
    spec.model = PartitionModel::Allocation;
    spec.colors = m;
    spec.total = k_list[c];
    spec.dist = BalancedDistribution{dist, d, {}};
    spec.validate();
    const std::uint64_t cell_seed = stream_key(seed, c, 3);

    std::vector<double> values(static_cast<std::size_t>(trials));
    run_trials(trials, opts.threads, 0, [&](std::int64_t i, std::vector<std::int64_t>&) {
      ModelSpec trial = spec;
      trial.seed = stream_key(cell_seed, static_cast<std::uint64_t>(i));
      values[static_cast<std::size_t>(i)] = min_pairwise_pertsep0(sample_allocation(trial), opts.override_guards);
    });

    PertsepRow row;
    row.m = m;
    row.k = spec.total;
    row.d = d;
    row.trials = trials;
    double sum = 0.0;
    for (double v : values) sum += v;  // serial order keeps the mean reproducible
    row.mean = sum / static_cast<double>(trials);
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(trials)));
    row.p5 = sorted[std::max<std::size_t>(rank, 1) - 1];
    row.min = sorted.front();
    row.max = sorted.back();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace tverberg
