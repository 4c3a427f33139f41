#include "fitts/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fitts/distributions.hpp"

namespace fitts {
namespace {

constexpr double kCollinearTolerance = 1e-9;
constexpr double kSaturationTolerance = 1e-10;
constexpr int kCriterionGridBits = 32;

double on_criterion_grid(double x) {
  if (!std::isfinite(x)) return x;
  return std::ldexp(std::nearbyint(std::ldexp(x, kCriterionGridBits)), -kCriterionGridBits);
}

std::string column_name(std::size_t j) {
  return j == 0 ? std::string("intercept") : "x" + std::to_string(j);
}

[[noreturn]] void throw_collinear(const std::vector<std::vector<double>>& cols, std::size_t j,
                                  double original_norm) {
  std::vector<std::string> names{column_name(j)};
  if (original_norm == 0.0) {
    throw CollinearPredictors(names, "collinear predictors: " + names[0] + " is identically zero");
  }
  // Express column j in terms of the already-triangularized columns.
  std::vector<double> c(j, 0.0);
  for (std::size_t r = j; r-- > 0;) {
    double s = cols[j][r];
    for (std::size_t q = r + 1; q < j; ++q) s -= cols[q][r] * c[q];
    c[r] = s / cols[r][r];
  }
  double cmax = 0.0;
  for (double v : c) cmax = std::max(cmax, std::fabs(v));
  std::string parents;
  for (std::size_t r = 0; r < j; ++r) {
    if (std::fabs(c[r]) > 1e-9 * cmax) {
      names.push_back(column_name(r));
      parents += (parents.empty() ? "" : ", ") + column_name(r);
    }
  }
  throw CollinearPredictors(names, "collinear predictors: " + names[0] +
                                       " is a linear combination of " + parents);
}

}  // namespace

FitResult ols_fit(std::span<const PredictorRow> rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw InsufficientObservations("ols_fit: no observations");
  const std::size_t p = rows.front().predictors.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].predictors.size() != p) {
      throw std::invalid_argument("ols_fit: row " + std::to_string(i) + " has " +
                                  std::to_string(rows[i].predictors.size()) +
                                  " predictors, expected " + std::to_string(p));
    }
    for (double v : rows[i].predictors) {
      if (!std::isfinite(v)) throw std::domain_error("ols_fit: non-finite predictor in row " + std::to_string(i));
    }
    if (!std::isfinite(rows[i].response_mt_s)) {
      throw std::domain_error("ols_fit: non-finite response in row " + std::to_string(i));
    }
  }
  if (n < p + 2) {
    throw InsufficientObservations("ols_fit: " + std::to_string(p) + " predictors need at least " +
                                   std::to_string(p + 2) + " observations, got " +
                                   std::to_string(n));
  }

  const std::size_t m = p + 1;
  std::vector<std::vector<double>> cols(m, std::vector<double>(n));
  std::vector<double> qty(n);
  for (std::size_t i = 0; i < n; ++i) {
    cols[0][i] = 1.0;
    for (std::size_t j = 0; j < p; ++j) cols[j + 1][i] = rows[i].predictors[j];
    qty[i] = rows[i].response_mt_s;
  }
  std::vector<double> original_norm(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (double v : cols[j]) s += v * v;
    original_norm[j] = std::sqrt(s);
  }

  std::vector<double> v(n);
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = j; i < n; ++i) s += cols[j][i] * cols[j][i];
    const double norm = std::sqrt(s);
    if (norm <= kCollinearTolerance * original_norm[j] || original_norm[j] == 0.0) {
      throw_collinear(cols, j, original_norm[j]);
    }
    const double alpha = cols[j][j] > 0.0 ? -norm : norm;
    double vnorm2 = 0.0;
    for (std::size_t i = j; i < n; ++i) {
      v[i] = cols[j][i];
      if (i == j) v[i] -= alpha;
      vnorm2 += v[i] * v[i];
    }
    auto reflect = [&](std::vector<double>& col) {
      double dot = 0.0;
      for (std::size_t i = j; i < n; ++i) dot += v[i] * col[i];
      const double scale = 2.0 * dot / vnorm2;
      for (std::size_t i = j; i < n; ++i) col[i] -= scale * v[i];
    };
    for (std::size_t q = j + 1; q < m; ++q) reflect(cols[q]);
    reflect(qty);
    cols[j][j] = alpha;
    for (std::size_t i = j + 1; i < n; ++i) cols[j][i] = 0.0;
  }

  FitResult fit;
  fit.n = n;
  fit.p = p;
  fit.coefficients.assign(m, 0.0);
  for (std::size_t r = m; r-- > 0;) {
    double s = qty[r];
    for (std::size_t q = r + 1; q < m; ++q) s -= cols[q][r] * fit.coefficients[q];
    fit.coefficients[r] = s / cols[r][r];
  }

  double y_scale = 1.0;
  double y_sum = 0.0;
  for (const auto& row : rows) {
    y_scale = std::max(y_scale, std::fabs(row.response_mt_s));
    y_sum += row.response_mt_s;
  }
  const double y_mean = y_sum / static_cast<double>(n);
  double rss = 0.0;
  double tss = 0.0;
  for (const auto& row : rows) {
    double pred = fit.coefficients[0];
    for (std::size_t j = 0; j < p; ++j) pred += fit.coefficients[j + 1] * row.predictors[j];
    const double r = row.response_mt_s - pred;
    rss += r * r;
    tss += (row.response_mt_s - y_mean) * (row.response_mt_s - y_mean);
  }
  if (std::sqrt(rss / static_cast<double>(n)) <= kSaturationTolerance * y_scale) {
    rss = 0.0;
    fit.saturated = true;
  }
  fit.rss = rss;
  fit.r2 = rss == 0.0 ? 1.0 : std::clamp(1.0 - rss / tss, 0.0, 1.0);
  fit.adj_r2 = adj_r2(fit.r2, n, p);
  if (p == 0) {
    fit.f_stat = 0.0;
    fit.p_value = 1.0;
  } else {
    const FTest f = overall_f(fit.r2, n, p);
    fit.f_stat = f.f_stat;
    fit.p_value = f.p_value;
  }
  fit.aic = aic(rss, n, fit.k());
  fit.bic = bic(rss, n, fit.k());
  return fit;
}

double adj_r2(double r2, std::size_t n, std::size_t p) {
  if (n <= p + 1) throw std::domain_error("adj_r2: undefined for n <= p + 1");
  return 1.0 - (1.0 - r2) * static_cast<double>(n - 1) / static_cast<double>(n - p - 1);
}

FTest overall_f(double r2, std::size_t n, std::size_t p) {
  if (p == 0) throw std::domain_error("overall_f: needs at least one predictor");
  if (n <= p + 1) throw std::domain_error("overall_f: undefined for n <= p + 1");
  if (!(r2 >= 0.0 && r2 <= 1.0)) throw std::domain_error("overall_f: r2 outside [0, 1]");
  if (r2 == 1.0) return {std::numeric_limits<double>::infinity(), 0.0};
  const double d1 = static_cast<double>(p);
  const double d2 = static_cast<double>(n - p - 1);
  const double f = (r2 / d1) / ((1.0 - r2) / d2);
  return {f, stats::f_upper_tail(f, d1, d2)};
}

namespace {

double likelihood_term(double rss, std::size_t n, std::size_t k) {
  if (!(rss >= 0.0) || !std::isfinite(rss)) throw std::domain_error("information criterion: rss must be finite and >= 0");
  if (n == 0) throw std::domain_error("information criterion: n must be >= 1");
  if (k == 0) throw std::domain_error("information criterion: k must be >= 1");
  if (rss == 0.0) return -std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  return on_criterion_grid(nd * std::log(rss / nd));
}

}  // namespace

double bic_penalty(std::size_t n, std::size_t k) {
  return on_criterion_grid(static_cast<double>(k) * std::log(static_cast<double>(n)));
}

double aic(double rss, std::size_t n, std::size_t k) {
  return likelihood_term(rss, n, k) + 2.0 * static_cast<double>(k);
}

double bic(double rss, std::size_t n, std::size_t k) {
  return likelihood_term(rss, n, k) + bic_penalty(n, k);
}

FTest partial_f(const FitResult& full, const FitResult& reduced) {
  if (full.n != reduced.n) throw std::invalid_argument("partial_f: models were fit on different observation counts");
  if (reduced.p >= full.p) throw std::invalid_argument("partial_f: reduced model must have fewer predictors");
  if (full.n <= full.p + 1) throw std::domain_error("partial_f: no residual degrees of freedom");
  const double slack = 1e-12 * std::max(1.0, reduced.rss);
  if (reduced.rss < full.rss - slack) {
    throw std::invalid_argument("partial_f: models are not nested (reduced rss below full rss)");
  }
  if (reduced.rss <= full.rss) return {0.0, 1.0};
  if (full.rss == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  const double d1 = static_cast<double>(full.p - reduced.p);
  const double d2 = static_cast<double>(full.n - full.p - 1);
  const double f = ((reduced.rss - full.rss) / d1) / (full.rss / d2);
  return {f, stats::f_upper_tail(f, d1, d2)};
}

}  // namespace fitts
