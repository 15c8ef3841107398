#include "normsim/params.hpp"

#include <cmath>
#include <string>

#include "normsim/error.hpp"

namespace normsim {

ModelParams::ModelParams(double mu_s, double nu_s, double nu_eps, double theta)
    : mu_s_(mu_s), nu_s_(nu_s), nu_eps_(nu_eps), theta_(theta) {
  if (!std::isfinite(mu_s)) throw ModelError("mu_s must be finite");
  if (!std::isfinite(nu_s) || !(nu_s > 0.0))
    throw ModelError("nu_s must be a finite variance > 0, got " + std::to_string(nu_s));
  if (!std::isfinite(nu_eps) || !(nu_eps > 0.0))
    throw ModelError("nu_eps must be a finite variance > 0, got " + std::to_string(nu_eps));
  if (!std::isfinite(theta) || theta < 0.0)
    throw ModelError("theta must be finite and >= 0, got " + std::to_string(theta));
}

}  // namespace normsim
