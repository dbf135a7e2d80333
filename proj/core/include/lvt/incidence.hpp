#pragma once

namespace lvt {

/// Linearised market around the pre-tax price P0.
struct IncidenceInputs {
  double D_prime{-1.0};  ///< demand slope, < 0
  double S_prime{1.0};   ///< supply slope, > 0
  double P0{1.0};
  double tau_unit{0.0};  ///< per-unit tax, >= 0
  double t_adval{0.0};   ///< ad valorem rate in [0, 1)

  void validate() const;
};

struct IncidenceResult {
  double tax;             ///< total wedge per unit
  double delta_P_buyer;   ///< rise of the gross price, S' tax / (S' - D')
  double delta_P_seller;  ///< change of the net-of-tax price, delta_P_buyer - tax
  double buyer_burden;    ///< delta_P_buyer
  double seller_burden;   ///< tax - delta_P_buyer; buyer_burden + seller_burden == tax exactly
  double pass_through;    ///< delta_P_buyer / tax, 0 when tax == 0
  double delta_Q;         ///< D' delta_P_buyer
  double deadweight_loss;  ///< 0.5 * tax * |delta_Q|
};

IncidenceResult unit_tax_incidence(const IncidenceInputs& in);

/// Same as the unit form with the wedge t * P0.
IncidenceResult advalorem_incidence(const IncidenceInputs& in);

/// Present value R / (r + tau_v) of a perpetual rent under a recurring land tax.
double lvt_capitalization(double R, double r, double tau_v);

/// Incidence summary for a land value tax on a fixed factor: the price falls by the capitalised
/// tax and quantity is unchanged, so the deadweight loss is 0.
struct LvtIncidence {
  double value_untaxed;
  double value_taxed;
  double capitalized_loss;
  double deadweight_loss;
};

LvtIncidence lvt_incidence(double R, double r, double tau_v);

}  // namespace lvt
