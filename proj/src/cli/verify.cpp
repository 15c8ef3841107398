#include "normsim/cli/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "normsim/behavior.hpp"
#include "normsim/belief.hpp"
#include "normsim/error.hpp"
#include "normsim/oracles.hpp"
#include "normsim/simulation.hpp"
#include "normsim/stats.hpp"

namespace normsim::cli {
namespace {

constexpr std::array<double, 4> kVariances{0.04, 0.25, 1.0, 4.0};
constexpr std::array<int, 4> kSizes{1, 2, 5, 20};
constexpr std::array kKinds{StatisticKind::MeanSignal, StatisticKind::ElicitedNorm,
                            StatisticKind::MeanPersonalValue, StatisticKind::MeanAction};

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

ClaimResult make(std::string claim, double err, double tol, std::string detail = {}) {
  return {std::move(claim), err <= tol, err, std::move(detail)};
}

ClaimResult conjugate_quadrature() {
  double worst = 0.0;
  for (double nu_s : kVariances)
    for (double nu_eps : kVariances)
      for (int k : {0, 1, 2, 5, 20})
        for (double dy : {-2.0, 0.0, 3.0}) {
          const ModelParams p{0.5, nu_s, nu_eps};
          SignalBundle signals{0.5 + dy, std::nullopt};
          if (k > 0) signals.group = GroupEvidence{0.5 - dy, k};
          const Gaussian a = posterior_s(p, signals);
          const Gaussian b = numeric_posterior_oracle(p, signals);
          worst = std::max({worst, std::abs(a.mean - b.mean), std::abs(a.variance - b.variance)});
        }
  return make("conjugate posterior matches quadrature", worst, 1e-6);
}

ClaimResult convex_combination() {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> lv(std::log(1e-2), std::log(1e2)), loc(-5.0, 5.0);
  double worst = 0.0;
  bool inside = true;
  for (int t = 0; t < 2000; ++t) {
    const ModelParams p{loc(gen), std::exp(lv(gen)), std::exp(lv(gen))};
    const double y = loc(gen);
    const double w = shrinkage_weight(p);
    const double r = personal_value(p, y);
    const double n = perceived_norm_mi(p, y);
    worst = std::max(worst, rel_err(n, (1.0 - w) * p.mu_s() + w * r));
    const double lo = std::min(p.mu_s(), r) - 1e-12, hi = std::max(p.mu_s(), r) + 1e-12;
    inside = inside && n >= lo && n <= hi;
  }
  return make("minimal-information norm is a convex combination of prior mean and personal value",
              inside ? worst : 1.0, 1e-12);
}

ClaimResult round_trip() {
  double worst = 0.0;
  for (double nu_s : kVariances)
    for (double nu_eps : kVariances)
      for (auto kind : kKinds)
        for (double ybar : {-1.0, 0.3, 2.5}) {
          const ModelParams p{0.4, nu_s, nu_eps, 2.0};
          const double v = encode_statistic(p, kind, ybar);
          if (kind == StatisticKind::MeanAction && v <= 0.0) continue;
          worst = std::max(worst, rel_err(decode_statistic(p, {kind, v, 3, Regime::Public}), ybar));
        }
  return make("decoding inverts the statistic encoding", worst, 1e-10);
}

ClaimResult linearity(const CoefficientModel& model) {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> lv(std::log(0.04), std::log(4.0)), loc(-2.0, 2.0);
  std::uniform_int_distribution<int> pick(0, 3), size(1, 20);
  double worst = 0.0;
  for (int t = 0; t < 2000; ++t) {
    const ModelParams p{loc(gen), std::exp(lv(gen)), std::exp(lv(gen)), 1.0};
    const auto kind = kKinds[pick(gen)];
    const auto regime = pick(gen) % 2 ? Regime::Public : Regime::Private;
    const int k = size(gen);
    const double y = loc(gen);
    const double v = kind == StatisticKind::MeanAction ? std::abs(loc(gen)) + 0.05 : loc(gen);
    const double direct = perceived_norm_with_disclosure(p, y, {kind, v, k, regime});
    worst = std::max(worst, rel_err(direct, model(p, k, kind, regime).apply(y, p.mu_s(), v)));
  }
  return make("perceived norm is affine in the disclosed statistic with tabulated weights", worst,
              1e-12);
}

ClaimResult sign_grid(const CoefficientModel& model, StatisticKind kind, bool reversed,
                      std::string claim) {
  auto slope = [&](double s, double e, int k) {
    return model({0.0, s, e, 1.0}, k, kind, Regime::Public).on_statistic;
  };
  int violations = 0;
  for (double s : kVariances)
    for (double e : kVariances)
      for (std::size_t i = 1; i < kSizes.size(); ++i)
        if (!(slope(s, e, kSizes[i]) > slope(s, e, kSizes[i - 1]))) ++violations;
  for (int k : kSizes)
    for (double other : kVariances)
      for (std::size_t i = 1; i < kVariances.size(); ++i) {
        const double lo = kVariances[i - 1], hi = kVariances[i];
        const bool up_in_s = slope(hi, other, k) > slope(lo, other, k);
        const bool up_in_e = slope(other, hi, k) > slope(other, lo, k);
        if (up_in_s != reversed) ++violations;
        if (up_in_e == reversed) ++violations;
      }
  return make(std::move(claim), violations, 0.0, std::to_string(violations) + " violations");
}

ClaimResult norm_value_ratio(const CoefficientModel& model) {
  double worst = 0.0;
  for (double s : kVariances)
    for (double e : kVariances)
      for (int k : kSizes)
        for (auto regime : {Regime::Public, Regime::Private}) {
          const ModelParams p{0.0, s, e, 1.0};
          const double ratio = model(p, k, StatisticKind::ElicitedNorm, regime).on_statistic /
                               model(p, k, StatisticKind::MeanPersonalValue, regime).on_statistic;
          worst = std::max(worst, rel_err(ratio, (s + e) / s));
        }
  return make("disclosed norms move beliefs more than disclosed values by (nu_s+nu_eps)/nu_s",
              worst, 1e-12);
}

ClaimResult private_below_public(const CoefficientModel& model) {
  int violations = 0;
  for (double s : kVariances)
    for (double e : kVariances)
      for (int k : kSizes)
        for (auto kind : kKinds) {
          const ModelParams p{0.0, s, e, 1.0};
          if (!(model(p, k, kind, Regime::Private).on_statistic <
                model(p, k, kind, Regime::Public).on_statistic))
            ++violations;
        }
  const ModelParams unit{0.0, 1.0, 1.0, 1.0};
  const double spot =
      std::max(std::abs(model(unit, 1, StatisticKind::MeanSignal, Regime::Private).on_statistic -
                        1.0 / 6.0),
               std::abs(model(unit, 1, StatisticKind::MeanSignal, Regime::Public).on_statistic -
                        4.0 / 9.0));
  ClaimResult r = make("private disclosure moves beliefs less than public disclosure",
                       violations > 0 ? 1.0 : spot, 1e-15);
  r.detail = std::to_string(violations) + " violations";
  return r;
}

ClaimResult best_response_grid() {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> nd(-0.5, 1.9), lt(std::log(0.2), std::log(100.0));
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double norm = nd(gen), theta = std::exp(lt(gen));
    double best_a = 0.0, best_u = utility(0.0, norm, theta, 0.0);
    for (int i = 1; i <= 20000; ++i) {
      const double a = i * 1e-4;
      const double u = utility(a, norm, theta, -a);
      if (u > best_u) {
        best_u = u;
        best_a = a;
      }
    }
    worst = std::max(worst, std::abs(best_a - best_response_uce(norm, theta)));
  }
  return make("unit-cost best response maximizes utility", worst, 1e-4);
}

ClaimResult regression(const CoefficientModel& model, StatisticKind kind, Regime regime,
                       unsigned threads) {
  WorldConfig c;
  c.params = ModelParams{0.0, 1.0, 1.0, 1.0};
  c.n_current = 4;
  c.n_previous = 1;
  c.disclosure = kind;
  c.regime = regime;
  c.replications = 100'000;
  c.seed = 20'260'001 + static_cast<int>(kind) * 2 + static_cast<int>(regime);
  const RegressionEstimate est = regression_oracle(c, {.threads = threads});
  const double expected = model(c.params, 1, kind, regime).on_statistic;
  std::ostringstream detail;
  detail << "slope " << est.slope << " in [" << est.ci_low << ", " << est.ci_high << "]";
  ClaimResult r{"regression slope matches weight: " + std::string(to_string(regime)) + " " +
                    std::string(to_string(kind)),
                est.contains(expected), std::abs(est.slope - expected), detail.str()};
  return r;
}

ClaimResult dispersion(unsigned threads) {
  WorldConfig c;
  c.params = ModelParams{0.5, 0.25, 0.5, 1.0};
  c.n_current = 100;
  c.replications = 1000;
  c.seed = 77;
  const auto reps = run_experiment(c, {.threads = threads});
  std::vector<double> values, norms;
  bool ordered = true;
  for (const auto& rep : reps) {
    ordered = ordered && rep.summary.var_perceived_norm <= rep.summary.var_personal_value;
    for (const auto& a : rep.agents) {
      values.push_back(a.state.personal_value);
      norms.push_back(a.state.perceived_norm);
    }
  }
  const double w2 = perceived_norm_variance_ratio(c.params);
  const double err = std::abs(sample_variance(norms) / sample_variance(values) - w2) / w2;
  return make("perceived norms are less dispersed than personal values", ordered ? err : 1.0,
              0.02);
}

ClaimResult action_value_slope(unsigned threads) {
  double worst = 0.0;
  std::vector<double> slopes;
  for (auto [nu_s, nu_eps] : {std::pair{0.04, 0.04}, std::pair{0.08, 0.04}, std::pair{0.04, 0.08}}) {
    WorldConfig c;
    c.params = ModelParams{2.0, nu_s, nu_eps, 50.0};
    c.n_current = 10;
    c.replications = 10'000;
    c.seed = 91;
    const auto reps = run_experiment(c, {.threads = threads});
    std::vector<double> r, a;
    for (const auto& rep : reps)
      for (const auto& ag : rep.agents) {
        r.push_back(ag.state.personal_value);
        a.push_back(*ag.state.action);
      }
    const OlsFit fit = ols_with_intercept({r}, a);
    const double w = shrinkage_weight(c.params);
    const double excess = std::abs(fit.coefficients[1] - w) - (kZ99 * fit.std_errors[1] + 1e-12);
    worst = std::max(worst, std::max(excess, 0.0));
    slopes.push_back(fit.coefficients[1]);
  }
  const bool ordered = slopes[1] > slopes[0] && slopes[2] < slopes[0];
  return make("action-on-value slope equals the shrinkage weight", ordered ? worst : 1.0, 0.0);
}

ClaimResult expectation_gap() {
  const ModelParams p{0.5, 0.04, 0.04, 50.0};
  WorldConfig c;
  c.params = p;
  c.n_current = 10;
  c.replications = 20;
  c.seed = 5;
  double diff_total = 0.0, var_total = 0.0;
  std::uint64_t oracle_seed = 1000;
  const auto reps = run_experiment(c, {.threads = 1});
  for (const auto& rep : reps) {
    std::vector<double> norms;
    double expectation = 0.0, action = 0.0, var = 0.0;
    for (const auto& a : rep.agents) {
      const auto mc = mc_empirical_expectation(p, a.state.own_signal, 20'000, oracle_seed++, false);
      expectation += mc.mean;
      var += mc.std_error * mc.std_error;
      action += *a.state.action;
      norms.push_back(a.state.perceived_norm);
    }
    const double n = static_cast<double>(rep.agents.size());
    diff_total += (expectation - action) / n - group_gap(p, norms).gap;
    var_total += var / (n * n);
  }
  const double r = static_cast<double>(reps.size());
  const double diff = diff_total / r;
  const double se = std::sqrt(var_total) / r;
  const double excess = std::max(std::abs(diff) - kZ99 * se, 0.0);
  std::ostringstream detail;
  detail << "mean difference " << diff << ", se " << se;
  return make("average empirical expectation differs from average action by the closed-form gap",
              excess, 0.0, detail.str());
}

}  // namespace

std::vector<ClaimResult> run_verification(VerifyLevel level, const CoefficientModel& model,
                                          unsigned threads) {
  std::vector<ClaimResult> out;
  auto guarded = [&](auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      out.push_back({"(suite error)", false, 0.0, e.what()});
    }
  };
  guarded(conjugate_quadrature);
  guarded(convex_combination);
  guarded(round_trip);
  guarded([&] { return linearity(model); });
  guarded([&] {
    return sign_grid(model, StatisticKind::ElicitedNorm, false,
                     "elicited-norm weight rises with |K|, falls with nu_s, rises with nu_eps");
  });
  guarded([&] {
    return sign_grid(model, StatisticKind::MeanPersonalValue, false,
                     "personal-value weight rises with |K|, falls with nu_s, rises with nu_eps");
  });
  guarded([&] {
    return sign_grid(model, StatisticKind::MeanAction, false,
                     "action weight follows the elicited-norm pattern");
  });
  guarded([&] {
    return sign_grid(model, StatisticKind::MeanSignal, true,
                     "mean-signal weight rises with |K|, rises with nu_s, falls with nu_eps");
  });
  guarded([&] { return norm_value_ratio(model); });
  guarded([&] { return private_below_public(model); });
  guarded(best_response_grid);
  if (level == VerifyLevel::Full) {
    for (auto [kind, regime] : {std::pair{StatisticKind::ElicitedNorm, Regime::Public},
                                std::pair{StatisticKind::MeanPersonalValue, Regime::Public},
                                std::pair{StatisticKind::MeanSignal, Regime::Public},
                                std::pair{StatisticKind::MeanSignal, Regime::Private}})
      guarded([&] { return regression(model, kind, regime, threads); });
    guarded([&] { return dispersion(threads); });
    guarded([&] { return action_value_slope(threads); });
    guarded(expectation_gap);
  }
  return out;
}

}  // namespace normsim::cli
