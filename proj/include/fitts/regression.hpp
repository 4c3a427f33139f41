#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fitts {

struct PredictorRow {
  std::vector<double> predictors;
  double response_mt_s = 0.0;
};

struct FTest {
  double f_stat = 0.0;
  double p_value = 1.0;
  bool operator==(const FTest&) const = default;
};

/// Ordinary least squares fit with an intercept.
///
/// `coefficients` is {intercept, slope_1, ..., slope_p}. A fit whose residual
/// RMS is below 1e-10 of the response scale is treated as exact: `rss` is
/// snapped to 0, `saturated` is set, R2 is 1, F is +inf and AIC/BIC are -inf.
struct FitResult {
  std::vector<double> coefficients;
  double rss = 0.0;
  double r2 = 0.0;
  double adj_r2 = 0.0;
  double f_stat = 0.0;
  double p_value = 1.0;
  double aic = 0.0;
  double bic = 0.0;
  std::size_t n = 0;
  std::size_t p = 0;
  bool saturated = false;

  std::size_t k() const { return p + 1; }
  bool operator==(const FitResult&) const = default;
};

class CollinearPredictors : public std::runtime_error {
 public:
  CollinearPredictors(std::vector<std::string> columns, const std::string& what)
      : std::runtime_error(what), columns_(std::move(columns)) {}
  /// Dependent column first, then the columns it is a combination of.
  const std::vector<std::string>& columns() const noexcept { return columns_; }

 private:
  std::vector<std::string> columns_;
};

class InsufficientObservations : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Householder QR on the design matrix [1 | X]; deterministic elimination order.
/// Throws InsufficientObservations when n < p + 2 and CollinearPredictors on
/// rank deficiency (columns are named "intercept", "x1", "x2", ...).
FitResult ols_fit(std::span<const PredictorRow> rows);

double adj_r2(double r2, std::size_t n, std::size_t p);

/// Overall regression F test; r2 == 1 yields {+inf, 0}.
FTest overall_f(double r2, std::size_t n, std::size_t p);

// n ln(rss/n) + 2k and n ln(rss/n) + k ln(n), constants dropped. Both are
// rounded to a 2^-32 grid so that aic - bic == 2k - bic_penalty(n, k) holds
// exactly. rss == 0 gives -inf.
double aic(double rss, std::size_t n, std::size_t k);
double bic(double rss, std::size_t n, std::size_t k);
/// k ln(n) on the same 2^-32 grid (within 2^-33 of the exact value).
double bic_penalty(std::size_t n, std::size_t k);

/// Nested-model F test of `full` against `reduced`.
FTest partial_f(const FitResult& full, const FitResult& reduced);

}  // namespace fitts
