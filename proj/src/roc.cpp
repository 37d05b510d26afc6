#include "riskeval/roc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "riskeval/errors.hpp"
#include "riskeval/kahan.hpp"
#include "riskeval/metrics.hpp"

namespace riskeval {

namespace {

void check_scores(std::span<const double> scores,
                  std::span<const std::int8_t> outcomes) {
  if (scores.empty() || scores.size() != outcomes.size()) {
    throw std::invalid_argument(
        "roc: scores and outcomes must be nonempty and equal-length");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) {
      throw std::invalid_argument("roc: scores must be finite");
    }
  }
  for (std::int8_t y : outcomes) {
    if (y != 0 && y != 1) {
      throw std::invalid_argument("roc: outcomes must be 0 or 1");
    }
  }
}

}  // namespace

RocCurve roc_curve(std::span<const double> scores,
                   std::span<const std::int8_t> outcomes) {
  check_scores(scores, outcomes);
  std::size_t n = scores.size();
  std::size_t n1 = 0;
  for (std::int8_t y : outcomes) n1 += static_cast<std::size_t>(y);
  std::size_t n0 = n - n1;
  if (n1 == 0 || n0 == 0) {
    throw DegenerateDataError("roc: both outcome classes are required");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return scores[i] > scores[j];
  });

  RocCurve out;
  out.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  std::size_t tp = 0, fp = 0;
  KahanSum area;
  std::size_t i = 0;
  while (i < n) {
    double s = scores[order[i]];
    std::size_t tp_prev = tp, fp_prev = fp;
    while (i < n && scores[order[i]] == s) {
      if (outcomes[order[i]]) {
        ++tp;
      } else {
        ++fp;
      }
      ++i;
    }
    double x = static_cast<double>(fp) / static_cast<double>(n0);
    double y = static_cast<double>(tp) / static_cast<double>(n1);
    out.points.push_back({x, y, s});
    double x_prev = static_cast<double>(fp_prev) / static_cast<double>(n0);
    double y_prev = static_cast<double>(tp_prev) / static_cast<double>(n1);
    area.add((x - x_prev) * 0.5 * (y + y_prev));
  }
  out.auc = area.value();
  return out;
}

RocCurve roc_curve(const ValidationSet& data) {
  return roc_curve(data.risks(), data.outcomes());
}

std::vector<double> default_cutoff_grid() {
  std::vector<double> grid(99);
  for (int i = 0; i < 99; ++i) grid[i] = (i + 1) / 100.0;
  return grid;
}

DecisionCurve decision_curve(const ValidationSet& data,
                             std::span<const double> cutoffs) {
  DecisionCurve out;
  out.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  out.loss.reserve(cutoffs.size());
  out.nb_opt_in.reserve(cutoffs.size());
  out.nb_opt_out.reserve(cutoffs.size());
  for (double c : cutoffs) {
    out.loss.push_back(cost_loss(data, c));
    out.nb_opt_in.push_back(net_benefit_opt_in(data, c));
    out.nb_opt_out.push_back(net_benefit_opt_out(data, c));
  }
  return out;
}

DecisionCurve decision_curve(const ValidationSet& data) {
  return decision_curve(data, default_cutoff_grid());
}

RocHull::RocHull(std::span<const double> scores,
                 std::span<const std::int8_t> outcomes) {
  RocCurve curve = roc_curve(scores, outcomes);
  std::size_t n1 = 0;
  for (std::int8_t y : outcomes) n1 += static_cast<std::size_t>(y);
  prevalence_ = static_cast<double>(n1) / static_cast<double>(outcomes.size());

  // Monotone-chain upper hull. ROC points arrive ordered by decreasing
  // threshold (nondecreasing fpr/tpr); pop while the middle point is on or
  // below the chord, leaving strictly concave vertices.
  for (const RocPoint& p : curve.points) {
    while (vertices_.size() >= 2) {
      const RocPoint& p0 = vertices_[vertices_.size() - 2];
      const RocPoint& p1 = vertices_[vertices_.size() - 1];
      double cross = (p1.fpr - p0.fpr) * (p.tpr - p0.tpr) -
                     (p1.tpr - p0.tpr) * (p.fpr - p0.fpr);
      if (cross >= 0.0) {
        vertices_.pop_back();
      } else {
        break;
      }
    }
    vertices_.push_back(p);
  }
}

RocHull::RocHull(const ValidationSet& data)
    : RocHull(data.risks(), data.outcomes()) {}

double RocHull::min_loss_integral(const WeightSpec& w) const {
  // Vertex j is cost-optimal on the cutoff interval [g_j, g_{j-1}], where
  // g_j is the breakpoint of the hull segment j -> j+1:
  //   g = pi dy / (pi dy + (1 - pi) dx),
  // the homogeneous form of the slope condition (well defined for vertical
  // and horizontal segments). Within an interval the loss is linear in c,
  // so the integral against w accumulates exactly via F_w and m_w.
  const double pi = prevalence_;
  KahanSum total;
  double upper = 1.0;  // cutoff interval upper end for the current vertex
  for (std::size_t j = 0; j + 1 < vertices_.size(); ++j) {
    double dx = vertices_[j + 1].fpr - vertices_[j].fpr;
    double dy = vertices_[j + 1].tpr - vertices_[j].tpr;
    double g = pi * dy / (pi * dy + (1.0 - pi) * dx);
    // loss at vertex (x, y): c (1-pi) x + (1-c) pi (1-y), integrated over
    // (g, upper]: (1-pi) x [m(upper)-m(g)] + pi (1-y) [(F-m)(upper)-(F-m)(g)]
    double dm = w.inc_moment(upper) - w.inc_moment(g);
    double df = w.cdf(upper) - w.cdf(g);
    total.add((1.0 - pi) * vertices_[j].fpr * dm +
              pi * (1.0 - vertices_[j].tpr) * (df - dm));
    upper = g;
  }
  // Terminal vertex (1, 1) covers (0, upper]: only controls contribute.
  total.add((1.0 - pi) * w.inc_moment(upper));
  return total.value();
}

double RocHull::h_measure(const WeightSpec& w) const {
  double unc = weighted_loss_prob(prevalence_, prevalence_, w);
  if (!(unc > 0.0)) {
    throw DegenerateDataError(
        "h_measure: outcome uncertainty is zero under this weight");
  }
  return 1.0 - min_loss_integral(w) / unc;
}

double h_measure(std::span<const double> scores,
                 std::span<const std::int8_t> outcomes, const WeightSpec& w) {
  return RocHull(scores, outcomes).h_measure(w);
}

double h_measure(const ValidationSet& data, const WeightSpec& w) {
  return RocHull(data).h_measure(w);
}

}  // namespace riskeval
