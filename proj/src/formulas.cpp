#include "tverberg/formulas.hpp"

#include "tverberg/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace tverberg {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw InputError(msg);
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      carry += (sum - t) + v;
    else
      carry += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

double log_binomial(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double exact_half_mass(std::int64_t N, std::int64_t lo, std::int64_t hi) {
  unsigned __int128 c = 1;  // C(N, i)
  unsigned __int128 total = 0;
  for (std::int64_t i = 0; i <= hi; ++i) {
    if (i >= lo) total += c;
    c = c * static_cast<unsigned>(N - i) / static_cast<unsigned>(i + 1);
  }
  return static_cast<double>(std::ldexp(static_cast<long double>(total), -static_cast<int>(N)));
}

double log_half_mass(std::int64_t N, std::int64_t lo, std::int64_t hi) {
  const double ln2 = std::numbers::ln2;
  double peak = -INFINITY;
  for (std::int64_t i = lo; i <= hi; ++i)
    peak = std::max(peak, log_binomial(N, i) - static_cast<double>(N) * ln2);
  CompensatedSum acc;
  for (std::int64_t i = lo; i <= hi; ++i)
    acc.add(std::exp(log_binomial(N, i) - static_cast<double>(N) * ln2 - peak));
  return std::exp(peak) * acc.value();
}

// (1 - x)^m without cancellation for tiny x.
double pow_one_minus(double x, std::int64_t m) {
  if (x >= 1.0) return m == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(m) * std::log1p(-x));
}

double ceil_guarded(double v) { return std::ceil(v - 1e-9 * std::max(1.0, std::abs(v))); }

}  // namespace

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::CoverRadon: return "cover_radon";
    case FormulaId::Hemisphere: return "hemisphere";
    case FormulaId::TverbergEquipartitionLower: return "tverberg_equipartition_lower";
    case FormulaId::TverbergEquipartitionUpper: return "tverberg_equipartition_upper";
    case FormulaId::TverbergToleranceLower: return "tverberg_tolerance_lower";
    case FormulaId::RadonToleranceLower: return "radon_tolerance_lower";
    case FormulaId::UrnCoverage: return "urn_coverage";
    case FormulaId::AllocationTverbergLower: return "allocation_tverberg_lower";
    case FormulaId::ErdosRenyiLimit: return "erdos_renyi_limit";
  }
  return "unknown";
}

std::string to_string(BoundSide side) {
  switch (side) {
    case BoundSide::Exact: return "exact";
    case BoundSide::Lower: return "lower";
    case BoundSide::Upper: return "upper";
  }
  return "unknown";
}

double binomial_half_mass(std::int64_t N, std::int64_t lo, std::int64_t hi) {
  require(N >= 0, "binomial_half_mass: N must be >= 0");
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, N);
  if (lo > hi) return 0.0;
  if (lo == 0 && hi == N) return 1.0;
  if (N <= 62) return exact_half_mass(N, lo, hi);
  // Sum whichever side carries less mass to keep relative precision.
  if (hi - lo + 1 > N / 2 + 1) {
    const double complement =
        (lo > 0 ? log_half_mass(N, 0, lo - 1) : 0.0) + (hi < N ? log_half_mass(N, hi + 1, N) : 0.0);
    return clamp01(1.0 - complement);
  }
  return clamp01(log_half_mass(N, lo, hi));
}

double cover_radon_probability(std::int64_t n, std::int64_t d) {
  require(n >= 1 && d >= 1, "cover_radon_probability: requires n >= 1, d >= 1");
  return clamp01(1.0 - binomial_half_mass(n - 1, 0, d));
}

double hemisphere_probability(std::int64_t n, std::int64_t d) {
  require(n >= 1 && d >= 1, "hemisphere_probability: requires n >= 1, d >= 1");
  return binomial_half_mass(n - 1, 0, d - 1);
}

double tverberg_equipartition_lower(std::int64_t m, std::int64_t n, std::int64_t d) {
  require(m >= 1 && n >= 1 && d >= 1, "tverberg_equipartition_lower: requires m, n, d >= 1");
  return clamp01(pow_one_minus(hemisphere_probability(n, d), m));
}

double tverberg_equipartition_upper(std::int64_t m, std::int64_t n, std::int64_t d) {
  require(m >= 1 && n >= 1 && d >= 1, "tverberg_equipartition_upper: requires m, n, d >= 1");
  const double one_side = pow_one_minus(std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(n, 2000))), m);
  const double either = pow_one_minus(std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(n - 1, 2000))), m);
  const double base = clamp01(2.0 * one_side - either);
  return clamp01(std::pow(base, static_cast<double>(d)));
}

double tverberg_tolerance_lower(std::int64_t m, std::int64_t n, std::int64_t d, std::int64_t t,
                                bool corrected) {
  require(m >= 1 && d >= 1, "tverberg_tolerance_lower: requires m, d >= 1");
  require(n >= 2 * d, "tverberg_tolerance_lower: requires n >= 2d");
  require(t >= 0, "tverberg_tolerance_lower: requires t >= 0");
  const std::int64_t groups = n / (2 * d);
  const double tail = binomial_half_mass(groups, corrected ? 0 : 1, t);
  return clamp01(pow_one_minus(tail, m));
}

double radon_tolerance_lower(std::int64_t k, std::int64_t d, std::int64_t t) {
  require(d >= 1, "radon_tolerance_lower: requires d >= 1");
  require(k >= 2 * d + 2, "radon_tolerance_lower: requires k >= 2d + 2");
  require(t >= 0, "radon_tolerance_lower: requires t >= 0");
  const std::int64_t groups = k / (2 * d + 2);
  return clamp01(1.0 - binomial_half_mass(groups, 0, t));
}

double urn_coverage_probability(const UrnParams& u) {
  const std::int64_t m = u.urns, n = u.per_urn_target, k = u.throws;
  require(m >= 1 && n >= 1 && k >= 1, "urn_coverage_probability: parameters must be positive");
  if (k < m * n) return 0.0;
  if (m == 1) return 1.0;

  // cov[r][j]: P(j throws into r urns leave every urn with >= n balls).
  // Splitting j throws between the last urn and the other r-1 urns is
  // Binomial(j, 1/r), which turns the truncated-EGF convolution into a sum
  // of probabilities.
  std::vector<double> log_fact(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::int64_t i = 1; i <= k; ++i) log_fact[i] = log_fact[i - 1] + std::log(static_cast<double>(i));

  std::vector<double> prev(static_cast<std::size_t>(k) + 1, 0.0);
  for (std::int64_t j = n; j <= k; ++j) prev[j] = 1.0;
  for (std::int64_t r = 2; r <= m; ++r) {
    std::vector<double> cur(static_cast<std::size_t>(k) + 1, 0.0);
    const double lp = std::log(1.0 / static_cast<double>(r));
    const double lq = std::log(static_cast<double>(r - 1) / static_cast<double>(r));
    const std::int64_t j_lo = r == m ? k : r * n;
    const std::int64_t j_hi = k - (m - r) * n;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
      CompensatedSum acc;
      for (std::int64_t i = n; i <= j - (r - 1) * n; ++i) {
        const double lpmf = log_fact[j] - log_fact[i] - log_fact[j - i] + static_cast<double>(i) * lp +
                            static_cast<double>(j - i) * lq;
        acc.add(std::exp(lpmf) * prev[j - i]);
      }
      cur[j] = acc.value();
    }
    prev = std::move(cur);
  }
  return clamp01(prev[k]);
}

double allocation_tverberg_lower(std::int64_t m, std::int64_t k, std::int64_t d,
                                 std::optional<std::int64_t> t, std::int64_t n_inner, bool corrected) {
  require(n_inner >= 1, "allocation_tverberg_lower: requires n_inner >= 1");
  require(m >= 1 && k >= 1 && d >= 1, "allocation_tverberg_lower: requires m, k, d >= 1");
  const double coverage = urn_coverage_probability({m, n_inner, k});
  double inner = 0.0;
  if (t) {
    if (n_inner >= 2 * d) inner = tverberg_tolerance_lower(m, n_inner, d, *t, corrected);
  } else {
    inner = tverberg_equipartition_lower(m, n_inner, d);
  }
  return clamp01(coverage * inner);
}

AllocationScan allocation_tverberg_lower_scan(std::int64_t m, std::int64_t k, std::int64_t d,
                                              std::optional<std::int64_t> t, bool corrected) {
  AllocationScan best;
  for (std::int64_t n = 1; n <= k / m; ++n) {
    const double v = allocation_tverberg_lower(m, k, d, t, n, corrected);
    if (best.best_n_inner == 0 || v > best.value) best = {n, v};
  }
  return best;
}

double erdos_renyi_limit(double x, std::int64_t m) {
  require(m >= 1, "erdos_renyi_limit: requires m >= 1");
  return std::exp(-std::exp(-x - std::lgamma(static_cast<double>(m))));
}

std::int64_t threshold_sample_size(std::int64_t m, double epsilon, SampleModel model) {
  require(epsilon >= 0.0, "threshold_sample_size: requires epsilon >= 0");
  const double lg = std::log2(static_cast<double>(m));
  if (model == SampleModel::Equipartition) {
    require(m >= 1, "threshold_sample_size: requires m >= 1");
    return static_cast<std::int64_t>(ceil_guarded((1.0 + epsilon) * lg));
  }
  require(m >= 3, "threshold_sample_size: allocation size needs m >= 3 (ln ln m > 0)");
  const double v = (1.0 + epsilon) * static_cast<double>(m) * lg * std::log(std::log(static_cast<double>(m)));
  return static_cast<std::int64_t>(ceil_guarded(v));
}

std::optional<std::int64_t> soberon_reference_tolerance(std::int64_t N, std::int64_t m, std::int64_t d,
                                                        double epsilon) {
  require(N >= 1 && m >= 1 && d >= 1, "soberon_reference_tolerance: requires N, m, d >= 1");
  require(epsilon > 0.0 && epsilon < 1.0, "soberon_reference_tolerance: requires 0 < eps < 1");
  const double Nd = static_cast<double>(N), md = static_cast<double>(m);
  const double inner =
      0.5 * (static_cast<double>(d + 1) * (md - 1.0) * Nd * std::log(Nd * md) + Nd * std::log(1.0 / epsilon));
  const double rhs = Nd / md - std::sqrt(inner);
  const auto t = static_cast<std::int64_t>(std::floor(rhs)) - 1;
  if (t < 0) return std::nullopt;
  return t;
}

BoundReport report_cover_radon(std::int64_t n, std::int64_t d) {
  return {FormulaId::CoverRadon,
          {{"n", double(n)}, {"d", double(d)}},
          cover_radon_probability(n, d),
          BoundSide::Exact,
          ""};
}

BoundReport report_hemisphere(std::int64_t n, std::int64_t d) {
  return {FormulaId::Hemisphere,
          {{"n", double(n)}, {"d", double(d)}},
          hemisphere_probability(n, d),
          BoundSide::Exact,
          ""};
}

BoundReport report_equipartition_lower(std::int64_t m, std::int64_t n, std::int64_t d) {
  return {FormulaId::TverbergEquipartitionLower,
          {{"m", double(m)}, {"n", double(n)}, {"d", double(d)}},
          tverberg_equipartition_lower(m, n, d),
          BoundSide::Lower,
          ""};
}

BoundReport report_equipartition_upper(std::int64_t m, std::int64_t n, std::int64_t d) {
  return {FormulaId::TverbergEquipartitionUpper,
          {{"m", double(m)}, {"n", double(n)}, {"d", double(d)}},
          tverberg_equipartition_upper(m, n, d),
          BoundSide::Upper,
          "holds for product-symmetric distributions (independent coordinate signs)"};
}

BoundReport report_tolerance_lower(std::int64_t m, std::int64_t n, std::int64_t d, std::int64_t t,
                                   bool corrected) {
  return {FormulaId::TverbergToleranceLower,
          {{"m", double(m)}, {"n", double(n)}, {"d", double(d)}, {"t", double(t)}},
          tverberg_tolerance_lower(m, n, d, t, corrected),
          BoundSide::Lower,
          corrected ? "binomial sum over i = 0..t"
                    : "uncorrected variant: binomial sum over i = 1..t (t = 0 gives the vacuous value 1)"};
}

BoundReport report_radon_tolerance(std::int64_t k, std::int64_t d, std::int64_t t) {
  return {FormulaId::RadonToleranceLower,
          {{"k", double(k)}, {"d", double(d)}, {"t", double(t)}},
          radon_tolerance_lower(k, d, t),
          BoundSide::Lower,
          ""};
}

BoundReport report_urn(const UrnParams& u) {
  return {FormulaId::UrnCoverage,
          {{"m", double(u.urns)}, {"n", double(u.per_urn_target)}, {"k", double(u.throws)}},
          urn_coverage_probability(u),
          BoundSide::Exact,
          "m urns, target n balls per urn, k throws"};
}

BoundReport report_allocation_lower(std::int64_t m, std::int64_t k, std::int64_t d,
                                    std::optional<std::int64_t> t, std::int64_t n_inner, bool corrected) {
  BoundReport r{FormulaId::AllocationTverbergLower,
                {{"m", double(m)}, {"k", double(k)}, {"d", double(d)}, {"n_inner", double(n_inner)}},
                allocation_tverberg_lower(m, k, d, t, n_inner, corrected),
                BoundSide::Lower,
                ""};
  if (t) {
    r.params["t"] = double(*t);
    r.note = corrected ? "inner binomial sum over i = 0..t" : "uncorrected variant: inner binomial sum over i = 1..t";
  }
  return r;
}

BoundReport report_erdos_renyi(double x, std::int64_t m) {
  return {FormulaId::ErdosRenyiLimit,
          {{"x", x}, {"m", double(m)}},
          erdos_renyi_limit(x, m),
          BoundSide::Exact,
          "limit function only; left-hand normalization not modelled"};
}

}  // namespace tverberg
