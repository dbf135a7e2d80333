#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "lvt/grid.hpp"
#include "lvt/params.hpp"

namespace lvt {

/// K^beta with the right-continuous value 0 at K <= 0.
inline double capital_power(double K, double beta);

/// Effective decay rate r + tau - mu. May be negative.
inline double alpha(const ModelParams& p, double mu) { return p.r + p.tau - mu; }

/// Profitability threshold kappa + delta / I_0.
inline double theta(const ModelParams& p) { return p.kappa + p.delta / p.I_0; }

/// Instantaneous profitability A K^beta / (V + c_b).
double profitability(const ModelParams& p, double A, double K, double V);

struct AlphaField {
  Field values;
  std::size_t negative_count{0};
  bool has_negative() const { return negative_count > 0; }
};

/// r + tau - mu pointwise; negative entries are counted, not rejected.
AlphaField alpha_field(const ModelParams& p, const Field& mu);

/// Attractiveness ratio A / alpha; nodes with alpha <= 0 are undefined.
struct PsiField {
  Field values;                ///< A / alpha where defined, 0 elsewhere
  std::vector<bool> defined;   ///< same indexing as Field storage
  std::size_t undefined_count{0};
};

PsiField psi_field(const ModelParams& p, const Field& A, const Field& mu);

inline double capital_power(double K, double beta) {
  return K > 0.0 ? std::pow(K, beta) : 0.0;
}

}  // namespace lvt
