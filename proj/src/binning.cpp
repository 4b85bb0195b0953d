#include "tickstats/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tickstats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double quantile_interpolated(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * p;
  const auto lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (lo + 1 >= n) return sorted.back();
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double sample_se(__int128 sum, __int128 sum_sq, std::int64_t n) {
  const long double s = static_cast<long double>(sum);
  const long double mean = s / static_cast<long double>(n);
  long double var =
      (static_cast<long double>(sum_sq) - mean * s) / static_cast<long double>(n - 1);
  if (var < 0) var = 0;  // integer sums are exact; this only kills -0 noise
  return static_cast<double>(std::sqrt(var / static_cast<long double>(n)));
}

}  // namespace

BinSpec equal_count_bins(std::vector<double> values, int n_bins) {
  if (values.empty()) throw DataError("equal_count_bins: empty sample");
  if (n_bins < 1) throw DataError("equal_count_bins: need at least one bin");
  std::sort(values.begin(), values.end());

  BinSpec spec;
  spec.edges.reserve(static_cast<std::size_t>(n_bins) + 1);
  for (int j = 0; j <= n_bins; ++j) {
    spec.edges.push_back(
        quantile_interpolated(values, static_cast<double>(j) / n_bins));
  }
  spec.edges.erase(std::unique(spec.edges.begin(), spec.edges.end()),
                   spec.edges.end());
  if (spec.edges.size() == 1) spec.edges.push_back(spec.edges.front());

  spec.target_count =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(values.size()) / n_bins);
  return spec;
}

int find_bin(const BinSpec& spec, double value) {
  if (value < spec.edges.front() || value > spec.edges.back()) return -1;
  auto it = std::upper_bound(spec.edges.begin(), spec.edges.end(), value);
  int idx = static_cast<int>(it - spec.edges.begin()) - 1;
  if (idx == spec.n_bins()) --idx;  // top edge belongs to the last bin
  return idx;
}

std::vector<double> trim_extremes(std::vector<double> values, double frac) {
  std::sort(values.begin(), values.end());
  const auto n = static_cast<std::int64_t>(values.size());
  const auto k = static_cast<std::int64_t>(frac * static_cast<double>(n));
  if (k <= 0 || 2 * k >= n) return values;
  return {values.begin() + k, values.end() - k};
}

CurveAccumulator::CurveAccumulator(std::size_t n_bins) : cells_(n_bins) {}

void CurveAccumulator::add(int bin, std::int64_t cond, std::int64_t numerator) {
  Cell& c = cells_.at(static_cast<std::size_t>(bin));
  ++c.count;
  ++c.n_used;
  c.sum_cond += cond;
  c.sum_num += numerator;
  c.sum_num_sq += static_cast<__int128>(numerator) * numerator;
}

void CurveAccumulator::add_observation_only(int bin, std::int64_t cond) {
  Cell& c = cells_.at(static_cast<std::size_t>(bin));
  ++c.count;
  c.sum_cond += cond;
}

void CurveAccumulator::merge(const CurveAccumulator& other) {
  if (other.cells_.size() != cells_.size())
    throw DataError("CurveAccumulator: merging mismatched bin counts");
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    cells_[i].count += other.cells_[i].count;
    cells_[i].n_used += other.cells_[i].n_used;
    cells_[i].sum_cond += other.cells_[i].sum_cond;
    cells_[i].sum_num += other.cells_[i].sum_num;
    cells_[i].sum_num_sq += other.cells_[i].sum_num_sq;
  }
}

BinnedCurve CurveAccumulator::finalize(const BinSpec& spec, double denom,
                                       std::int64_t min_count,
                                       std::string estimator,
                                       std::map<std::string, double> params) const {
  if (static_cast<std::size_t>(spec.n_bins()) != cells_.size())
    throw DataError("CurveAccumulator: bin spec does not match accumulator");

  BinnedCurve curve;
  curve.estimator = std::move(estimator);
  curve.params = std::move(params);

  __int128 all_num = 0;
  std::int64_t all_used = 0;
  for (const Cell& c : cells_) {
    all_num += c.sum_num;
    all_used += c.n_used;
  }
  curve.total_count = all_used;
  curve.pooled_value =
      all_used > 0 ? static_cast<double>(static_cast<long double>(all_num) /
                                         all_used / denom)
                   : kNaN;

  for (std::size_t i = 0; i < cells_.size(); ++i) {
    const Cell& c = cells_[i];
    if (c.count < min_count) continue;
    curve.lo.push_back(spec.edges[i]);
    curve.hi.push_back(spec.edges[i + 1]);
    curve.center.push_back(static_cast<double>(
        static_cast<long double>(c.sum_cond) / static_cast<long double>(c.count)));
    curve.count.push_back(c.n_used);
    if (c.n_used < min_count) {
      curve.value.push_back(kNaN);
      curve.se.push_back(kNaN);
    } else {
      curve.value.push_back(static_cast<double>(
          static_cast<long double>(c.sum_num) / c.n_used / denom));
      curve.se.push_back(sample_se(c.sum_num, c.sum_num_sq, c.n_used) / denom);
    }
  }
  return curve;
}

BinnedCurve CurveAccumulator::finalize_window_ratio(
    const BinSpec& spec, double window_ms, double denom, std::int64_t min_count,
    std::string estimator, std::map<std::string, double> params) const {
  if (static_cast<std::size_t>(spec.n_bins()) != cells_.size())
    throw DataError("CurveAccumulator: bin spec does not match accumulator");

  BinnedCurve curve;
  curve.estimator = std::move(estimator);
  curve.params = std::move(params);

  __int128 all_num = 0;
  __int128 all_cond = 0;
  std::int64_t all_used = 0;
  for (const Cell& c : cells_) {
    all_num += c.sum_num;
    all_cond += c.sum_cond;
    all_used += c.n_used;
  }
  curve.total_count = all_used;
  curve.pooled_value =
      all_cond > 0 ? static_cast<double>(static_cast<long double>(all_num) /
                                         static_cast<long double>(all_cond) / denom)
                   : kNaN;

  // Bins ascend in trades-per-window; the reported abscissa window/mean(n)
  // descends, so rows are emitted in reverse to keep the curve ascending.
  for (std::size_t ri = cells_.size(); ri-- > 0;) {
    const Cell& c = cells_[ri];
    if (c.count < min_count || c.sum_cond <= 0) continue;
    const double mean_n = static_cast<double>(
        static_cast<long double>(c.sum_cond) / static_cast<long double>(c.count));
    curve.lo.push_back(window_ms / spec.edges[ri + 1]);
    curve.hi.push_back(window_ms / spec.edges[ri]);
    curve.center.push_back(window_ms / mean_n);
    curve.count.push_back(c.n_used);
    curve.value.push_back(static_cast<double>(
        static_cast<long double>(c.sum_num) /
        static_cast<long double>(c.sum_cond) / denom));
    curve.se.push_back(sample_se(c.sum_num, c.sum_num_sq, c.n_used) /
                       (denom * mean_n));
  }
  return curve;
}

}  // namespace tickstats
