#include "normsim/stats.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "normsim/error.hpp"

namespace normsim {
namespace {

using Matrix = std::vector<std::vector<double>>;

// Gauss-Jordan inverse with partial pivoting; pivots are judged relative to the
// largest diagonal entry so that scale does not matter.
Matrix invert(Matrix a) {
  const std::size_t p = a.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < p; ++i) scale = std::max(scale, std::abs(a[i][i]));
  if (!(scale > 0.0)) throw DegenerateInputError("singular regression design");

  Matrix inv(p, std::vector<double>(p, 0.0));
  for (std::size_t i = 0; i < p; ++i) inv[i][i] = 1.0;

  for (std::size_t col = 0; col < p; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < p; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) <= 1e-12 * scale)
      throw DegenerateInputError("singular regression design (zero-variance or collinear regressor)");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < p; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < p; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < p; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) throw DegenerateInputError("mean of an empty sample");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw DegenerateInputError("sample variance needs at least two values");
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return ss / static_cast<double>(xs.size() - 1);
}

OlsFit ols_with_intercept(const std::vector<std::span<const double>>& regressors,
                          std::span<const double> response) {
  const std::size_t p = regressors.size();
  const std::size_t n = response.size();
  for (const auto& x : regressors)
    if (x.size() != n) throw ModelError("regressor length does not match response length");
  if (n < p + 2) throw DegenerateInputError("too few observations for the regression");

  std::vector<double> x_mean(p);
  for (std::size_t j = 0; j < p; ++j) x_mean[j] = mean(regressors[j]);
  const double y_mean = mean(response);

  Matrix xtx(p, std::vector<double>(p, 0.0));
  std::vector<double> xty(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double yc = response[i] - y_mean;
    for (std::size_t j = 0; j < p; ++j) {
      const double xj = regressors[j][i] - x_mean[j];
      xty[j] += xj * yc;
      for (std::size_t l = j; l < p; ++l) xtx[j][l] += xj * (regressors[l][i] - x_mean[l]);
    }
  }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < j; ++l) xtx[j][l] = xtx[l][j];

  const Matrix inv = invert(xtx);
  std::vector<double> beta(p, 0.0);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < p; ++l) beta[j] += inv[j][l] * xty[l];

  double intercept = y_mean;
  for (std::size_t j = 0; j < p; ++j) intercept -= beta[j] * x_mean[j];

  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fitted = intercept;
    for (std::size_t j = 0; j < p; ++j) fitted += beta[j] * regressors[j][i];
    const double e = response[i] - fitted;
    ssr += e * e;
  }
  const double sigma2 = ssr / static_cast<double>(n - p - 1);

  OlsFit fit;
  fit.n = n;
  fit.residual_variance = sigma2;
  fit.coefficients.push_back(intercept);
  fit.coefficients.insert(fit.coefficients.end(), beta.begin(), beta.end());

  double intercept_var = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t l = 0; l < p; ++l) intercept_var += x_mean[j] * inv[j][l] * x_mean[l];
  fit.std_errors.push_back(std::sqrt(sigma2 * intercept_var));
  for (std::size_t j = 0; j < p; ++j) fit.std_errors.push_back(std::sqrt(sigma2 * inv[j][j]));
  return fit;
}

}  // namespace normsim
