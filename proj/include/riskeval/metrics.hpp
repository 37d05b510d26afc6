#pragma once

#include "riskeval/dataset.hpp"
#include "riskeval/weight.hpp"

namespace riskeval {

// Risk cutoff implied by a misclassification cost matrix:
//   c = (C_FP - C_TN) / [(C_FP - C_TN) + (C_FN - C_TP)].
// Requires C_FP > C_TN and C_FN > C_TP (errors cost more than being right).
double cutoff_from_costs(double cost_fp, double cost_tn, double cost_fn,
                         double cost_tp);

// Cost-weighted misclassification loss at a single cutoff c in (0, 1):
//   l_c(r, y) = c 1{r > c, y = 0} + (1 - c) 1{r < c, y = 1}.
// A risk exactly at the cutoff is charged nothing for either outcome.
double cost_loss(double risk, int outcome, double cutoff);
// Dataset average L(c) = E_n[l_c(r_i, Y_i)]
//                      = c FPR(c) (1 - pi) + (1 - c) FNR(c) pi.
double cost_loss(const ValidationSet& data, double cutoff);

// Net benefit of treating above the cutoff (opt-in) or of withholding
// treatment below it (opt-out). Classification is strict: treated iff
// risk > cutoff, spared iff risk < cutoff. Related to the cost loss by
//   L(c) = (1 - c) [pi - NB_in(c)] = c [(1 - pi) - NB_out(c)]
// whenever no risk ties the cutoff.
double net_benefit_opt_in(const ValidationSet& data, double cutoff);
double net_benefit_opt_out(const ValidationSet& data, double cutoff);

// Weighted counterparts: the cutoff is integrated out against a WeightSpec.
// l_w(r, y) = y A(r) + (1 - y) B(r); the second form takes a probability in
// place of the binary outcome (it is linear in q).
double weighted_loss(double risk, int outcome, const WeightSpec& w);
double weighted_loss_prob(double p, double q, const WeightSpec& w);

// Weighted Brier score BS_w = E_n[l_w(r_i, Y_i)] and its value under the
// hypothesis that the model is perfectly calibrated,
// BS_w^c = E_n[l_w(r_i, r_i)].
double weighted_brier(const ValidationSet& data, const WeightSpec& w);
double weighted_brier_calibrated(const ValidationSet& data,
                                 const WeightSpec& w);

// Spiegelhalter's calibration Z-statistic and its weighted generalization
//   Z_w = sqrt(n) E_n[(Y_i - r_i)(1 - F_w(r_i) - mu_w)] / sigma_0n,
// where sigma_0n^2 = E_n[r_i(1 - r_i)(1 - F_w(r_i) - mu_w)^2]. The uniform
// weight reduces Z_w to the classic statistic exactly. Throws
// DegenerateDataError when the null variance vanishes (all risks 0 or 1).
double spiegelhalter_z(const ValidationSet& data);
double spiegelhalter_z_weighted(const ValidationSet& data,
                                const WeightSpec& w);

}  // namespace riskeval
