#include "monoculus/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "monoculus/algorithms.hpp"

namespace monoculus {

RunMetrics compute_metrics(const RunResult& run, const Configuration& initial) {
  const OracleMetrics oracle = centroid_oracle_metrics(initial.positions());
  RunMetrics m;
  m.d_opt = oracle.d_opt;
  m.d_max = oracle.d_max;
  m.work = run.work;
  m.rounds = run.rounds;
  if (m.d_opt > 0.0) m.rho = static_cast<double>(m.work) / m.d_opt;
  if (m.d_max > 0.0) m.tau = static_cast<double>(m.rounds) / m.d_max;
  m.hull_perimeters = run.hull_perimeters;
  return m;
}

double lemma3_bound(std::size_t n, double b) {
  if (n < 3) throw std::domain_error("lemma3_bound needs n >= 3");
  if (!(b > 0.0)) throw std::domain_error("lemma3_bound needs b > 0");
  const double theta = 2.0 * std::numbers::pi / static_cast<double>(n);
  return b * (1.0 - std::sqrt(0.5 * (1.0 + std::cos(theta))));
}

FiveNumberSummary five_number_summary(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("five-number summary of an empty sample");
  std::sort(values.begin(), values.end());
  auto quantile = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  return {values.size(), values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

MetricsSummary aggregate(std::span<const RunMetrics> metrics) {
  if (metrics.empty()) throw std::invalid_argument("aggregate of no runs");
  std::vector<double> rho, tau, work, rounds, d_opt, d_max;
  for (const auto& m : metrics) {
    if (m.rho) rho.push_back(*m.rho);
    if (m.tau) tau.push_back(*m.tau);
    work.push_back(static_cast<double>(m.work));
    rounds.push_back(static_cast<double>(m.rounds));
    d_opt.push_back(m.d_opt);
    d_max.push_back(m.d_max);
  }
  MetricsSummary s;
  s.runs = metrics.size();
  if (!rho.empty()) s.rho = five_number_summary(rho);
  if (!tau.empty()) s.tau = five_number_summary(tau);
  s.work = five_number_summary(work);
  s.rounds = five_number_summary(rounds);
  s.d_opt = five_number_summary(d_opt);
  s.d_max = five_number_summary(d_max);
  return s;
}

}  // namespace monoculus
