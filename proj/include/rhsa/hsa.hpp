#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rhsa {

// Uniform-width histogram of similarity values. Bin counts carry Poisson
// variance (equal to the count); the values inside a bin are summarized by
// their mean and sample variance.
struct Histogram {
  std::vector<double> edges;  // n_bins + 1, strictly increasing
  std::vector<std::size_t> counts;
  std::vector<double> count_variance;
  std::vector<double> value_mean;      // bin midpoint when empty
  std::vector<double> value_variance;  // 0 when fewer than 2 values

  std::size_t n_bins() const { return counts.size(); }
  bool empty_bin(std::size_t i) const { return counts[i] == 0; }
  std::size_t total() const;
};

// Values outside [lo, hi] are clamped into the end bins.
Histogram build_histogram(std::span<const double> values, std::size_t n_bins, double lo, double hi);

// ln C - ln R per bin, with variance 1/C + 1/R from Poisson counts.
struct LogDivCurve {
  std::vector<double> x;
  std::vector<double> x_variance;
  std::vector<double> y;
  std::vector<double> y_variance;
  std::vector<bool> included;
  std::vector<double> consecutive_count;
  std::vector<double> random_count;

  std::size_t n_included() const;
};

LogDivCurve log_divide(const Histogram& consecutive, const Histogram& random);

// Same operation on real-valued counts. `x` and `x_variance` give the
// abscissa per bin.
LogDivCurve log_divide_counts(std::span<const double> consecutive, std::span<const double> random,
                              std::span<const double> x, std::span<const double> x_variance);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_variance = 0.0;
  double intercept_variance = 0.0;
  std::size_t n_bins_used = 0;

  friend bool operator==(const SlopeFit&, const SlopeFit&) = default;
};

struct FitOptions {
  // Bins with non-positive variance get 1 / max_count instead.
  bool variance_floor = true;
};

// Weighted least squares y = a + b x with weights 1 / y_variance over the
// included bins. x_variance is not used.
SlopeFit fit_slope_weighted(const LogDivCurve& curve, const FitOptions& options = {});

struct RhsaAnalysis {
  Histogram consecutive;
  Histogram random;
  LogDivCurve curve;
  std::optional<SlopeFit> fit;  // unset when fewer than 2 bins are usable
  double rhsa = 0.0;
};

RhsaAnalysis analyze_rhsa(std::span<const double> consecutive_values,
                          std::span<const double> random_values, std::size_t n_bins, double lo,
                          double hi);

// |slope| of the log-ratio fit; 0 for degenerate curves.
double compute_rhsa(std::span<const double> consecutive_values,
                    std::span<const double> random_values, std::size_t n_bins, double lo,
                    double hi);

// bin_x,log_div_y,y_err,included
std::string curve_to_csv(const LogDivCurve& curve);
// {slope, intercept, slope_stderr, n_bins_used, rhsa}
std::string fit_to_json(const RhsaAnalysis& analysis);

}  // namespace rhsa
