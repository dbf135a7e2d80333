#include "lvt/model.hpp"

#include "lvt/error.hpp"

namespace lvt {

double profitability(const ModelParams& p, double A, double K, double V) {
  return A * capital_power(K, p.beta) / (V + p.c_b);
}

AlphaField alpha_field(const ModelParams& p, const Field& mu) {
  AlphaField out{Field(mu.nx(), mu.ny()), 0};
  auto dst = out.values.values();
  auto src = mu.values();
  for (std::size_t k = 0; k < src.size(); ++k) {
    dst[k] = alpha(p, src[k]);
    if (dst[k] < 0.0) ++out.negative_count;
  }
  return out;
}

PsiField psi_field(const ModelParams& p, const Field& A, const Field& mu) {
  if (A.nx() != mu.nx() || A.ny() != mu.ny()) throw ConfigError("A and mu grids differ in shape");
  PsiField out{Field(A.nx(), A.ny()), std::vector<bool>(A.size(), false), 0};
  auto a = A.values();
  auto m = mu.values();
  auto dst = out.values.values();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double rate = alpha(p, m[k]);
    if (rate > 0.0) {
      dst[k] = a[k] / rate;
      out.defined[k] = true;
    } else {
      ++out.undefined_count;
    }
  }
  return out;
}

}  // namespace lvt
