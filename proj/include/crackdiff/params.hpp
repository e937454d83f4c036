#ifndef CRACKDIFF_PARAMS_HPP
#define CRACKDIFF_PARAMS_HPP

#include <string>
#include <utility>
#include <vector>

namespace crackdiff {

enum class WallFluxMode { Constant, Profile };

// Flux density prescribed along the crack walls in profile mode, as a function
// of x on (-1, 0). Must integrate to alpha/2 and vanish at x = 0.
class WallFluxProfile {
public:
  // f(x) = -alpha * x
  static WallFluxProfile linear(double alpha);
  // piecewise-linear through (x_k, f_k); x_k strictly increasing, covering [-1, 0]
  static WallFluxProfile tabulated(std::vector<std::pair<double, double>> table);

  double operator()(double x) const;
  // exact integral of the (piecewise-linear) profile over (-1, 0)
  double integral() const;
  double at_zero() const { return (*this)(0.0); }
  const std::string& id() const { return id_; }

private:
  WallFluxProfile() = default;
  std::string id_;
  std::vector<double> xs_, fs_;
};

struct ParamSet {
  double alpha = 0.1;   // crack thickness fraction, in [0, 1)
  double beta = 0.0;    // crack-bottom flux parameter, 0 <= beta < alpha (or 0 when alpha = 0)
  double epsilon = 0.2; // period of the crack array, in (0, 1]
  WallFluxMode wall_flux_mode = WallFluxMode::Constant;
  std::string profile_id = "linear"; // used when wall_flux_mode == Profile
  std::vector<std::pair<double, double>> profile_table; // used when profile_id == "tabulated"
};

// Throws Error on violated bounds or mode inconsistencies.
void validate_params(const ParamSet& p);

// Resolved profile for a validated ParamSet in profile mode.
WallFluxProfile resolve_profile(const ParamSet& p);

}  // namespace crackdiff

#endif
