#include "rhsa/hsa.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "rhsa/error.hpp"
#include "rhsa/io.hpp"

namespace rhsa {

std::size_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

Histogram build_histogram(std::span<const double> values, std::size_t n_bins, double lo, double hi) {
  if (values.empty()) throw Error(ErrorKind::EmptyInput, "histogram of no values");
  if (n_bins < 2) throw Error(ErrorKind::InvalidArgument, "histogram needs at least 2 bins");
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi)) {
    throw Error(ErrorKind::InvalidArgument, "invalid histogram range [" + format_real(lo) + ", " +
                                                format_real(hi) + "]");
  }

  Histogram h;
  const double width = (hi - lo) / static_cast<double>(n_bins);
  h.edges.resize(n_bins + 1);
  for (std::size_t i = 0; i < n_bins; ++i) h.edges[i] = lo + static_cast<double>(i) * width;
  h.edges[n_bins] = hi;

  std::vector<std::size_t> bin_of(values.size());
  h.counts.assign(n_bins, 0);
  std::vector<double> sum(n_bins, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (std::isnan(v)) throw Error(ErrorKind::InvalidArgument, "histogram value is NaN");
    const double pos = std::floor((v - lo) / width);
    std::size_t b = pos <= 0.0 ? 0 : static_cast<std::size_t>(std::min(pos, static_cast<double>(n_bins - 1)));
    bin_of[k] = b;
    ++h.counts[b];
    sum[b] += v;
  }

  h.count_variance.resize(n_bins);
  h.value_mean.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.count_variance[b] = static_cast<double>(h.counts[b]);
    h.value_mean[b] = h.counts[b] ? sum[b] / static_cast<double>(h.counts[b])
                                  : 0.5 * (h.edges[b] + h.edges[b + 1]);
  }
  std::vector<double> ss(n_bins, 0.0);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double d = values[k] - h.value_mean[bin_of[k]];
    ss[bin_of[k]] += d * d;
  }
  h.value_variance.resize(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    h.value_variance[b] = h.counts[b] > 1 ? ss[b] / static_cast<double>(h.counts[b] - 1) : 0.0;
  }
  return h;
}

std::size_t LogDivCurve::n_included() const {
  return static_cast<std::size_t>(std::count(included.begin(), included.end(), true));
}

LogDivCurve log_divide_counts(std::span<const double> c, std::span<const double> r,
                              std::span<const double> x, std::span<const double> x_variance) {
  const auto n = c.size();
  if (r.size() != n || x.size() != n || x_variance.size() != n) {
    throw Error(ErrorKind::InvalidArgument, "log division needs equally sized inputs");
  }
  LogDivCurve curve;
  curve.x.assign(x.begin(), x.end());
  curve.x_variance.assign(x_variance.begin(), x_variance.end());
  curve.consecutive_count.assign(c.begin(), c.end());
  curve.random_count.assign(r.begin(), r.end());
  curve.y.assign(n, 0.0);
  curve.y_variance.assign(n, 0.0);
  curve.included.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(c[i] > 0.0 && r[i] > 0.0)) continue;
    curve.y[i] = std::log(c[i]) - std::log(r[i]);
    // sigma^2(ln(C/R)) = sigma^2_C / C^2 + sigma^2_R / R^2 with Poisson sigma^2 = count.
    curve.y_variance[i] = 1.0 / c[i] + 1.0 / r[i];
    curve.included[i] = true;
  }
  return curve;
}

LogDivCurve log_divide(const Histogram& consecutive, const Histogram& random) {
  if (consecutive.edges != random.edges) {
    throw Error(ErrorKind::InvalidArgument, "log division of histograms with different edges");
  }
  const auto n = consecutive.n_bins();
  std::vector<double> c(n), r(n), x_var(n);
  for (std::size_t i = 0; i < n; ++i) {
    c[i] = static_cast<double>(consecutive.counts[i]);
    r[i] = static_cast<double>(random.counts[i]);
    x_var[i] = consecutive.counts[i] ? consecutive.value_variance[i] / c[i] : 0.0;
  }
  return log_divide_counts(c, r, consecutive.value_mean, x_var);
}

SlopeFit fit_slope_weighted(const LogDivCurve& curve, const FitOptions& options) {
  double max_count = 0.0;
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    if (!curve.included[i]) continue;
    max_count = std::max({max_count, curve.consecutive_count[i], curve.random_count[i]});
  }

  std::vector<double> xs, ys, ws;
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    if (!curve.included[i]) continue;
    double var = curve.y_variance[i];
    if (!(var > 0.0)) {
      if (!options.variance_floor || !(max_count > 0.0)) {
        throw Error(ErrorKind::Degenerate, "bin " + std::to_string(i) + " has zero variance");
      }
      var = 1.0 / max_count;
    }
    xs.push_back(curve.x[i]);
    ys.push_back(curve.y[i]);
    ws.push_back(1.0 / var);
  }
  if (xs.size() < 2) {
    throw Error(ErrorKind::Degenerate, "slope fit needs at least 2 usable bins, got " + std::to_string(xs.size()));
  }

  // Centered form: b = sum w (x - xm)(y - ym) / sum w (x - xm)^2.
  double sw = 0.0, swx = 0.0, swy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sw += ws[i];
    swx += ws[i] * xs[i];
    swy += ws[i] * ys[i];
  }
  const double xm = swx / sw;
  const double ym = swy / sw;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - xm;
    sxx += ws[i] * dx * dx;
    sxy += ws[i] * dx * (ys[i] - ym);
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::Degenerate, "slope fit: all abscissae coincide");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ym - fit.slope * xm;
  fit.slope_variance = 1.0 / sxx;
  fit.intercept_variance = 1.0 / sw + xm * xm / sxx;
  fit.n_bins_used = xs.size();
  return fit;
}

RhsaAnalysis analyze_rhsa(std::span<const double> consecutive_values,
                          std::span<const double> random_values, std::size_t n_bins, double lo,
                          double hi) {
  RhsaAnalysis a;
  a.consecutive = build_histogram(consecutive_values, n_bins, lo, hi);
  a.random = build_histogram(random_values, n_bins, lo, hi);
  a.curve = log_divide(a.consecutive, a.random);
  try {
    a.fit = fit_slope_weighted(a.curve);
    a.rhsa = std::abs(a.fit->slope);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    a.fit.reset();
    a.rhsa = 0.0;
  }
  return a;
}

double compute_rhsa(std::span<const double> consecutive_values,
                    std::span<const double> random_values, std::size_t n_bins, double lo,
                    double hi) {
  return analyze_rhsa(consecutive_values, random_values, n_bins, lo, hi).rhsa;
}

std::string curve_to_csv(const LogDivCurve& curve) {
  std::string out = "bin_x,log_div_y,y_err,included\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    out += format_real(curve.x[i]) + ',' + format_real(curve.y[i]) + ',' +
           format_real(std::sqrt(curve.y_variance[i])) + ',' + (curve.included[i] ? "1" : "0") + '\n';
  }
  return out;
}

std::string fit_to_json(const RhsaAnalysis& analysis) {
  nlohmann::ordered_json j;
  if (analysis.fit) {
    j["slope"] = analysis.fit->slope;
    j["intercept"] = analysis.fit->intercept;
    j["slope_stderr"] = std::sqrt(analysis.fit->slope_variance);
    j["n_bins_used"] = analysis.fit->n_bins_used;
  } else {
    j["slope"] = nullptr;
    j["intercept"] = nullptr;
    j["slope_stderr"] = nullptr;
    j["n_bins_used"] = analysis.curve.n_included();
  }
  j["rhsa"] = analysis.rhsa;
  return j.dump(2) + "\n";
}

}  // namespace rhsa
