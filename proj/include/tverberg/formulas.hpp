#pragma once

// Closed-form probabilities and bounds for random Radon/Tverberg partitions.
//
// Symbols: m colors, n points per color, k total points, d dimension,
// t tolerance. All probabilities are returned in [0, 1].

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace tverberg {

enum class FormulaId {
  CoverRadon,
  Hemisphere,
  TverbergEquipartitionLower,
  TverbergEquipartitionUpper,
  TverbergToleranceLower,
  RadonToleranceLower,
  UrnCoverage,
  AllocationTverbergLower,
  ErdosRenyiLimit,
};

enum class BoundSide { Exact, Lower, Upper };

std::string to_string(FormulaId id);
std::string to_string(BoundSide side);

struct BoundReport {
  FormulaId formula_id;
  std::map<std::string, double> params;
  double value = 0.0;
  BoundSide side = BoundSide::Exact;
  std::string note;  // which variant was evaluated, caveats
};

struct UrnParams {
  std::int64_t urns = 1;            // m
  std::int64_t per_urn_target = 1;  // n
  std::int64_t throws = 1;          // k
};

/// 2^-N * sum_{i=lo}^{hi} C(N, i); indices are clamped to [0, N]. Exact for
/// N <= 62, log-space with compensated summation beyond.
double binomial_half_mass(std::int64_t N, std::int64_t lo, std::int64_t hi);

/// P(two random color classes of n points in R^d have intersecting hulls):
/// 1 - 2^{-n+1} sum_{i=0}^{d} C(n-1, i).
double cover_radon_probability(std::int64_t n, std::int64_t d);

/// P(n balanced points lie in a common closed half-space through the
/// center): 2^{-n+1} sum_{i=0}^{d-1} C(n-1, i).
double hemisphere_probability(std::int64_t n, std::int64_t d);

/// (1 - hemisphere_probability(n, d))^m.
double tverberg_equipartition_lower(std::int64_t m, std::int64_t n, std::int64_t d);

/// (2(1-2^{-n})^m - (1-2^{-n+1})^m)^d, clamped to [0, 1].
double tverberg_equipartition_upper(std::int64_t m, std::int64_t n, std::int64_t d);

/// (1 - 2^{-g} sum_i C(g, i))^m with g = floor(n / 2d). The sum runs over
/// i = 0..t when corrected, i = 1..t otherwise. Requires n >= 2d.
double tverberg_tolerance_lower(std::int64_t m, std::int64_t n, std::int64_t d, std::int64_t t,
                                bool corrected = true);

/// 1 - 2^{-g} sum_{i=0}^{t} C(g, i) with g = floor(k / (2d + 2)).
/// Requires k >= 2d + 2.
double radon_tolerance_lower(std::int64_t k, std::int64_t d, std::int64_t t);

/// P(every one of m urns holds >= n balls after k uniform throws).
double urn_coverage_probability(const UrnParams& u);

/// Random-allocation bound: urn coverage with target n_inner times the
/// equipartition bound for n_inner points per color. With t set, the
/// tolerance bound is used (zero when n_inner < 2d, where no group of size
/// 2d fits); otherwise the plain Tverberg lower bound.
double allocation_tverberg_lower(std::int64_t m, std::int64_t k, std::int64_t d,
                                 std::optional<std::int64_t> t, std::int64_t n_inner,
                                 bool corrected = true);

struct AllocationScan {
  std::int64_t best_n_inner = 0;
  double value = 0.0;
};

/// Maximizes allocation_tverberg_lower over n_inner in [1, floor(k / m)].
AllocationScan allocation_tverberg_lower_scan(std::int64_t m, std::int64_t k, std::int64_t d,
                                              std::optional<std::int64_t> t, bool corrected = true);

/// exp(-e^{-x} / (m-1)!).
double erdos_renyi_limit(double x, std::int64_t m);

enum class SampleModel { Equipartition, Allocation };

/// ceil((1+eps) log2 m) points per color for equipartitions, or
/// ceil((1+eps) m log2(m) ln ln m) total points for allocations (m >= 3).
std::int64_t threshold_sample_size(std::int64_t m, double epsilon, SampleModel model);

/// Largest t with t + 1 <= N/m - sqrt((1/2)[(d+1)(m-1) N ln(Nm) + N ln(1/eps)]),
/// or nullopt when no t >= 0 qualifies. Reference curve only.
std::optional<std::int64_t> soberon_reference_tolerance(std::int64_t N, std::int64_t m,
                                                        std::int64_t d, double epsilon);

// BoundReport builders used by the CLI and experiment reports.
BoundReport report_cover_radon(std::int64_t n, std::int64_t d);
BoundReport report_hemisphere(std::int64_t n, std::int64_t d);
BoundReport report_equipartition_lower(std::int64_t m, std::int64_t n, std::int64_t d);
BoundReport report_equipartition_upper(std::int64_t m, std::int64_t n, std::int64_t d);
BoundReport report_tolerance_lower(std::int64_t m, std::int64_t n, std::int64_t d, std::int64_t t,
                                   bool corrected);
BoundReport report_radon_tolerance(std::int64_t k, std::int64_t d, std::int64_t t);
BoundReport report_urn(const UrnParams& u);
BoundReport report_allocation_lower(std::int64_t m, std::int64_t k, std::int64_t d,
                                    std::optional<std::int64_t> t, std::int64_t n_inner,
                                    bool corrected);
BoundReport report_erdos_renyi(double x, std::int64_t m);

}  // namespace tverberg
