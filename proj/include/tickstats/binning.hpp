#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tickstats/types.hpp"

namespace tickstats {

// Equal-count bin edges over a sample of conditioning values.
struct BinSpec {
  std::vector<double> edges;     // strictly increasing, size = n_bins + 1
  std::int64_t target_count = 0;  // intended terms per bin (n / requested bins)

  int n_bins() const { return static_cast<int>(edges.size()) - 1; }
};

// Quantile edges (linear interpolation between order statistics) so that each
// bin receives an equal share of the sample. Tied quantiles are merged, which
// can leave fewer bins than requested; constant input collapses to a single
// degenerate bin [c, c].
BinSpec equal_count_bins(std::vector<double> values, int n_bins);

// Bin index for a value: bins are [e_k, e_{k+1}) except the last, which is
// closed. Values outside [front, back] map to -1.
int find_bin(const BinSpec& spec, double value);

// Drops the floor(frac * n) smallest and largest values by rank. Samples too
// small for a full rank on either side are returned unchanged.
std::vector<double> trim_extremes(std::vector<double> values, double frac);

// One conditioned curve, ready for serialization.
struct BinnedCurve {
  std::string estimator;
  std::map<std::string, double> params;

  std::vector<double> lo, hi, center, value, se;
  std::vector<std::int64_t> count;

  // Unconditional mean over every term (dropped bins included).
  double pooled_value = 0.0;
  std::int64_t total_count = 0;

  std::size_t size() const { return value.size(); }
};

// Per-bin sums held as integers so that merging partial accumulations is
// associative and commutative down to the last bit. Each term contributes an
// integer numerator; the shared denominator is applied once at finalize.
class CurveAccumulator {
 public:
  explicit CurveAccumulator(std::size_t n_bins);

  // Full term: conditioning value (for the bin center) plus a numerator.
  void add(int bin, std::int64_t cond, std::int64_t numerator);

  // Term that shapes the bin center but carries no numerator (used when the
  // value is defined only on a subset of observations).
  void add_observation_only(int bin, std::int64_t cond);

  void merge(const CurveAccumulator& other);

  // value = mean(numerator)/denom, se = sample_std(numerator)/denom/sqrt(n).
  // Bins with fewer than min_count observations are dropped; bins whose
  // numerator support is smaller than min_count keep their row with NaNs.
  BinnedCurve finalize(const BinSpec& spec, double denom, std::int64_t min_count,
                       std::string estimator,
                       std::map<std::string, double> params) const;

  // Ratio-of-sums variant for count-conditioned variance over fixed clock
  // windows: value = (sum numerator)/(denom * sum cond), abscissa transformed
  // from the per-window count n to window_ms / mean(n). Rows come out sorted
  // by that transformed abscissa.
  BinnedCurve finalize_window_ratio(const BinSpec& spec, double window_ms,
                                    double denom, std::int64_t min_count,
                                    std::string estimator,
                                    std::map<std::string, double> params) const;

  std::size_t n_bins() const { return cells_.size(); }

 private:
  struct Cell {
    std::int64_t count = 0;   // observations (center support)
    std::int64_t n_used = 0;  // terms carrying a numerator
    __int128 sum_cond = 0;
    __int128 sum_num = 0;
    __int128 sum_num_sq = 0;
  };
  std::vector<Cell> cells_;
};

}  // namespace tickstats
