#include "moobench/solvers/min_norm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace moobench::solvers {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

std::string to_string(NormMode mode) {
  switch (mode) {
    case NormMode::l2: return "l2";
    case NormMode::loss: return "loss";
    case NormMode::loss_plus: return "loss+";
    case NormMode::none: return "none";
  }
  return "none";
}

NormMode parse_norm_mode(const std::string& name) {
  if (name == "l2") return NormMode::l2;
  if (name == "loss") return NormMode::loss;
  if (name == "loss+") return NormMode::loss_plus;
  if (name == "none" || name == "None") return NormMode::none;
  throw std::invalid_argument("unknown gradient normalization '" + name +
                              "' (expected l2, loss, loss+ or none)");
}

std::vector<double> normalization_factors(std::span<const std::vector<double>> gradients,
                                          NormMode mode, std::span<const double> losses) {
  const bool uses_loss = mode == NormMode::loss || mode == NormMode::loss_plus;
  const bool uses_norm = mode == NormMode::l2 || mode == NormMode::loss_plus;
  if (uses_loss && losses.size() != gradients.size()) {
    throw std::invalid_argument("normalization: one loss per gradient required");
  }
  std::vector<double> factors(gradients.size(), 1.0);
  for (std::size_t j = 0; j < gradients.size(); ++j) {
    if (uses_loss) {
      if (!(losses[j] > 0.0)) {
        throw std::invalid_argument("normalization '" + to_string(mode) + "': loss " +
                                    std::to_string(j) + " is not positive");
      }
      factors[j] *= losses[j];
    }
    if (uses_norm) {
      const double n = std::sqrt(dot(gradients[j], gradients[j]));
      if (!(n > 0.0)) {
        throw std::invalid_argument("normalization '" + to_string(mode) + "': gradient " +
                                    std::to_string(j) + " has zero norm");
      }
      factors[j] *= n;
    }
  }
  return factors;
}

std::vector<double> min_norm_weights(std::span<const double> gram, std::size_t n,
                                     std::size_t max_iter, double tol, double* gap_out,
                                     std::size_t* iterations_out) {
  if (n == 0 || gram.size() != n * n) throw std::invalid_argument("min_norm_weights: bad Gram matrix");
  if (!(tol > 0.0)) throw std::invalid_argument("min_norm_weights: tol must be positive");
  auto K = [&](std::size_t i, std::size_t j) { return gram[i * n + j]; };

  std::vector<double> w(n, 0.0);
  std::size_t start = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (K(i, i) < K(start, start)) start = i;
  w[start] = 1.0;

  std::vector<double> kw(n);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      kw[i] = 0.0;
      for (std::size_t j = 0; j < n; ++j) kw[i] += K(i, j) * w[j];
    }
  };

  double gap = 0.0;
  std::size_t it = 0;
  for (; it < max_iter; ++it) {
    refresh();
    const double norm2 = dot(w, kw);
    std::size_t toward = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (kw[i] < kw[toward]) toward = i;
    gap = norm2 - kw[toward];
    if (gap < tol) break;

    std::size_t away = n;
    for (std::size_t i = 0; i < n; ++i)
      if (w[i] > 0.0 && (away == n || kw[i] > kw[away])) away = i;
    const double away_gap = kw[away] - norm2;

    // direction v in weight space: FW = e_toward - w, away = w - e_away
    const bool fw_step = gap >= away_gap;
    double max_step = 1.0;
    double slope = 0.0;  // v^T K w
    double curvature = 0.0;  // v^T K v
    if (fw_step) {
      slope = kw[toward] - norm2;
      curvature = K(toward, toward) - 2.0 * kw[toward] + norm2;
    } else {
      max_step = w[away] < 1.0 ? w[away] / (1.0 - w[away]) : std::numeric_limits<double>::infinity();
      slope = norm2 - kw[away];
      curvature = norm2 - 2.0 * kw[away] + K(away, away);
    }
    double step = curvature > 0.0 ? -slope / curvature : max_step;
    step = std::clamp(step, 0.0, max_step);
    if (!std::isfinite(step) || step == 0.0) break;

    if (fw_step) {
      for (auto& v : w) v *= 1.0 - step;
      w[toward] += step;
    } else {
      for (auto& v : w) v *= 1.0 + step;
      w[away] -= step;
      if (step == max_step) w[away] = 0.0;
    }
    for (auto& v : w) v = std::max(v, 0.0);
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& v : w) v /= total;
  }
  refresh();
  gap = dot(w, kw) - *std::min_element(kw.begin(), kw.end());
  if (gap_out != nullptr) *gap_out = gap;
  if (iterations_out != nullptr) *iterations_out = it;
  return w;
}

MinNormResult min_norm_frank_wolfe(std::span<const std::vector<double>> gradients, NormMode mode,
                                   std::span<const double> losses, std::size_t max_iter,
                                   double tol) {
  if (gradients.empty()) throw std::invalid_argument("min_norm_frank_wolfe: no gradients");
  const std::size_t dim = gradients.front().size();
  for (const auto& g : gradients)
    if (g.size() != dim) throw std::invalid_argument("min_norm_frank_wolfe: gradient dimensions differ");

  const auto factors = normalization_factors(gradients, mode, losses);
  std::vector<std::vector<double>> normalized(gradients.size(), std::vector<double>(dim));
  for (std::size_t j = 0; j < gradients.size(); ++j)
    for (std::size_t k = 0; k < dim; ++k) normalized[j][k] = gradients[j][k] / factors[j];

  const std::size_t n = gradients.size();
  std::vector<double> gram(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      gram[i * n + j] = gram[j * n + i] = dot(normalized[i], normalized[j]);

  MinNormResult r;
  r.weights = min_norm_weights(gram, n, max_iter, tol, &r.gap, &r.iterations);
  r.direction.assign(dim, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < dim; ++k) r.direction[k] += r.weights[j] * normalized[j][k];
  r.norm = std::sqrt(dot(r.direction, r.direction));
  // recompute the gap from the final direction rather than the incremental Kw
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& g : normalized) worst = std::min(worst, dot(g, r.direction));
  r.gap = r.norm * r.norm - worst;
  return r;
}

}  // namespace moobench::solvers
