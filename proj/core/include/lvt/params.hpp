#pragma once

namespace lvt {

/// Scalar constants of the land-value / built-capital system and of the baseline spatial profiles.
struct ModelParams {
  double r{0.05};       ///< discount rate [1/time]
  double tau{0.0};      ///< ad valorem land value tax rate [1/time]
  double D_V{0.1};      ///< diffusion coefficient of V [length^2/time]
  double beta{0.5};     ///< rent elasticity w.r.t. built capital, in (0, 1)
  double c_b{1.0};      ///< baseline construction cost
  double I_0{1.0};      ///< investment sensitivity to profitability
  double kappa{0.05};   ///< profitability threshold
  double delta{0.05};   ///< depreciation rate
  double A_0{1.0};      ///< peak productivity
  double mu_0{0.05};    ///< peak centrality (local growth) effect
  double gamma{0.3};    ///< productivity decay with distance [1/length]
  double lambda{0.3};   ///< centrality decay with distance [1/length]

  /// Throws ConfigError when any documented invariant is violated.
  void validate() const;

  bool operator==(const ModelParams&) const = default;
};

}  // namespace lvt

namespace lvt {

/// Land tax rate as a function of distance from the centre: tau(d) = tau0 + eta * d.
/// Uniform taxation is the eta = 0 case.
struct TaxSchedule {
  enum class Kind { Uniform, RadialLinear };

  Kind kind{Kind::Uniform};
  double tau0{0.0};
  double eta{0.0};

  static TaxSchedule uniform(double tau) { return {Kind::Uniform, tau, 0.0}; }
  static TaxSchedule radial_linear(double tau0, double eta) { return {Kind::RadialLinear, tau0, eta}; }

  double at(double d) const { return kind == Kind::Uniform ? tau0 : tau0 + eta * d; }

  bool operator==(const TaxSchedule&) const = default;
};

}  // namespace lvt
