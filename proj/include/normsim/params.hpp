#pragma once

namespace normsim {

/// Environment of the appropriateness model.
///
/// The latent standard is S ~ N(mu_s, nu_s) and each private signal is
/// y_i = S + eps_i with eps_i ~ N(0, nu_eps). Both nu_s and nu_eps are
/// variances. theta is the common norm sensitivity used by the behavior layer.
class ModelParams {
public:
  /// Throws ModelError unless nu_s > 0, nu_eps > 0, theta >= 0 and all are finite.
  ModelParams(double mu_s, double nu_s, double nu_eps, double theta = 0.0);

  double mu_s() const { return mu_s_; }
  double nu_s() const { return nu_s_; }
  double nu_eps() const { return nu_eps_; }
  double theta() const { return theta_; }

  ModelParams with_mu_s(double v) const { return {v, nu_s_, nu_eps_, theta_}; }
  ModelParams with_nu_s(double v) const { return {mu_s_, v, nu_eps_, theta_}; }
  ModelParams with_nu_eps(double v) const { return {mu_s_, nu_s_, v, theta_}; }
  ModelParams with_theta(double v) const { return {mu_s_, nu_s_, nu_eps_, v}; }

  bool operator==(const ModelParams&) const = default;

private:
  double mu_s_;
  double nu_s_;
  double nu_eps_;
  double theta_;
};

}  // namespace normsim
