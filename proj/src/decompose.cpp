#include "riskeval/decompose.hpp"

#include <cmath>
#include <stdexcept>

#include "riskeval/errors.hpp"
#include "riskeval/kahan.hpp"
#include "riskeval/metrics.hpp"

namespace riskeval {

double divergence(double p, double q, const WeightSpec& w) {
  return weighted_loss_prob(p, q, w) - weighted_loss_prob(q, q, w);
}

Decomposition decompose(const ValidationSet& data, const WeightSpec& w,
                        const BinningSpec& binning, McbVariant variant) {
  double pi = data.prevalence();
  if (pi == 0.0 || pi == 1.0) {
    throw DegenerateDataError(
        "decompose: both outcome classes are required (observed prevalence "
        "is 0 or 1)");
  }

  Binning bins = assign_bins(data, binning);
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  const double n = static_cast<double>(data.size());

  // Bin-level loss values reused across rows.
  std::vector<double> bin_self_loss(bins.bins.size());
  for (std::size_t k = 0; k < bins.bins.size(); ++k) {
    double q = bins.bins[k].event_rate;
    bin_self_loss[k] = weighted_loss_prob(q, q, w);
  }

  KahanSum bs_sum, mcb_sum;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double a = w.case_loss(r[i]);
    double b = w.control_loss(r[i]);
    bs_sum.add(y[i] ? a : b);
    if (variant == McbVariant::PerSample) {
      double q = bins.bins[bins.assignment[i]].event_rate;
      mcb_sum.add(q * a + (1.0 - q) * b - bin_self_loss[bins.assignment[i]]);
    }
  }

  Decomposition out;
  out.weighted_brier = bs_sum.value() / n;
  out.uncertainty = weighted_loss_prob(pi, pi, w);

  KahanSum dsc_sum;
  for (std::size_t k = 0; k < bins.bins.size(); ++k) {
    double share = static_cast<double>(bins.bins[k].count) / n;
    dsc_sum.add(share * (weighted_loss_prob(pi, bins.bins[k].event_rate, w) -
                         bin_self_loss[k]));
  }
  out.discrimination = dsc_sum.value();

  if (variant == McbVariant::PerSample) {
    out.miscalibration = mcb_sum.value() / n;
  } else {
    KahanSum s;
    for (std::size_t k = 0; k < bins.bins.size(); ++k) {
      double share = static_cast<double>(bins.bins[k].count) / n;
      s.add(share * (weighted_loss_prob(bins.bins[k].mean_risk,
                                        bins.bins[k].event_rate, w) -
                     bin_self_loss[k]));
    }
    out.miscalibration = s.value();
  }

  out.residual = out.weighted_brier -
                 (out.miscalibration - out.discrimination + out.uncertainty);
  out.bins = std::move(bins.bins);
  return out;
}

double scaled_weighted_brier(const ValidationSet& data, const WeightSpec& w) {
  double pi = data.prevalence();
  if (pi == 0.0 || pi == 1.0) {
    throw DegenerateDataError(
        "scaled_weighted_brier: both outcome classes are required");
  }
  double unc = weighted_loss_prob(pi, pi, w);
  if (!(unc > 0.0)) {
    throw DegenerateDataError(
        "scaled_weighted_brier: outcome uncertainty is zero under this "
        "weight");
  }
  return 1.0 - weighted_brier(data, w) / unc;
}

double ipa(const ValidationSet& data) {
  return scaled_weighted_brier(data, WeightSpec::uniform());
}

}  // namespace riskeval
