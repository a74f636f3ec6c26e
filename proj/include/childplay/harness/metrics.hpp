#pragma once

#include <cmath>
#include <map>
#include <string>

#include "childplay/core/errors.hpp"
#include "childplay/core/game.hpp"

namespace childplay {

/// Proportion with its spread. sd is the binomial standard deviation of a
/// single draw scaled by 1/sqrt(n); se is the sample standard deviation of
/// the 0/1 outcomes divided by sqrt(n).
struct ProportionStat {
  double p = 0.0;
  long n = 0;
  double sd = 0.0;
  double se = 0.0;

  double percent() const { return 100.0 * p; }
  double sd_percent() const { return 100.0 * sd; }
  double se_percent() const { return 100.0 * se; }
};

inline ProportionStat binomial_stats(long successes, long n) {
  if (n < 1 || successes < 0 || successes > n) throw ContractViolation("binomial_stats needs 0 <= successes <= n, n >= 1");
  ProportionStat s;
  s.n = n;
  s.p = static_cast<double>(successes) / static_cast<double>(n);
  s.sd = std::sqrt(s.p * (1.0 - s.p) / static_cast<double>(n));
  if (n > 1) {
    const double sample_var = s.p * (1.0 - s.p) * static_cast<double>(n) / static_cast<double>(n - 1);
    s.se = std::sqrt(sample_var) / std::sqrt(static_cast<double>(n));
  }
  return s;
}

/// Arithmetic mean of one percentage per game; all seven games required.
inline double combined_score(const std::map<std::string, double, std::less<>>& per_game) {
  double sum = 0.0;
  for (GameKind k : kAllGameKinds) {
    const auto it = per_game.find(to_string(k));
    if (it == per_game.end()) throw ConfigError(std::string(to_string(k)), "missing metric for " + std::string(to_string(k)));
    sum += it->second;
  }
  return sum / static_cast<double>(kAllGameKinds.size());
}

}  // namespace childplay
