#include "riskeval/inference.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iostream>
#include <map>
#include <stdexcept>
#include <thread>

#include "riskeval/binning.hpp"
#include "riskeval/errors.hpp"
#include "riskeval/kahan.hpp"
#include "riskeval/metrics.hpp"
#include "riskeval/rng.hpp"
#include "riskeval/special.hpp"

namespace riskeval {

namespace {

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence level must lie in (0, 1)");
  }
}

}  // namespace

double var_weighted_brier(const ValidationSet& data, const WeightSpec& w) {
  const auto& r = data.risks();
  const auto& y = data.outcomes();
  KahanSum s1, s2;
  for (std::size_t i = 0; i < r.size(); ++i) {
    double loss = y[i] ? w.case_loss(r[i]) : w.control_loss(r[i]);
    s1.add(loss);
    s2.add(loss * loss);
  }
  double n = static_cast<double>(r.size());
  double mean = s1.value() / n;
  return std::max(0.0, s2.value() / n - mean * mean);
}

double var_weighted_brier_null(const ValidationSet& data,
                               const WeightSpec& w) {
  const auto& r = data.risks();
  const double mu = w.mean();
  KahanSum s;
  for (double ri : r) {
    double contrast = 1.0 - w.cdf(ri) - mu;  // A(r) - B(r)
    s.add(ri * (1.0 - ri) * contrast * contrast);
  }
  return s.value() / static_cast<double>(r.size());
}

double var_weighted_brier_calibrated(const ValidationSet& data,
                                     const WeightSpec& w) {
  const auto& r = data.risks();
  KahanSum s1, s2;
  for (double ri : r) {
    double loss = ri * w.case_loss(ri) + (1.0 - ri) * w.control_loss(ri);
    s1.add(loss);
    s2.add(loss * loss);
  }
  double n = static_cast<double>(r.size());
  double mean = s1.value() / n;
  return std::max(0.0, s2.value() / n - mean * mean);
}

double var_weighted_brier_null_marginal(const ValidationSet& data,
                                        const WeightSpec& w) {
  const auto& r = data.risks();
  KahanSum s2, s1;
  for (double ri : r) {
    double a = w.case_loss(ri);
    double b = w.control_loss(ri);
    s2.add(ri * a * a + (1.0 - ri) * b * b);
    s1.add(ri * a + (1.0 - ri) * b);
  }
  double n = static_cast<double>(r.size());
  double mean = s1.value() / n;
  return std::max(0.0, s2.value() / n - mean * mean);
}

namespace {

CiRecord normal_ci(double estimate, double variance, std::size_t n,
                   double level) {
  check_level(level);
  double z = special::normal_quantile(0.5 + level / 2.0);
  double half = z * std::sqrt(variance / static_cast<double>(n));
  CiRecord rec;
  rec.estimate = estimate;
  rec.lower = estimate - half;
  rec.upper = estimate + half;
  rec.level = level;
  rec.method = CiMethod::AsymptoticNormal;
  return rec;
}

}  // namespace

CiRecord weighted_brier_ci(const ValidationSet& data, const WeightSpec& w,
                           double level) {
  return normal_ci(weighted_brier(data, w), var_weighted_brier(data, w),
                   data.size(), level);
}

CiRecord weighted_brier_calibrated_ci(const ValidationSet& data,
                                      const WeightSpec& w, double level) {
  return normal_ci(weighted_brier_calibrated(data, w),
                   var_weighted_brier_calibrated(data, w), data.size(), level);
}

namespace {

// Row groups per cluster, in order of sorted unique cluster id — a fixed,
// platform-independent layout for the resampler.
std::vector<std::vector<std::size_t>> cluster_groups(
    const ValidationSet& data) {
  std::map<std::int64_t, std::vector<std::size_t>> groups;
  const auto& ids = data.clusters();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    groups[ids[i]].push_back(i);
  }
  std::vector<std::vector<std::size_t>> out;
  out.reserve(groups.size());
  for (auto& [id, rows] : groups) out.push_back(std::move(rows));
  return out;
}

// One bootstrap replicate with redraw-on-degenerate. `stat_of_rows` turns a
// row multiset into the statistic vector; returns the redraw count through
// the second member.
template <class DrawRows, class StatOfRows>
std::pair<std::vector<double>, int> run_replicate(
    int replicate, const BootstrapConfig& config, const DrawRows& draw_rows,
    const StatOfRows& stat_of_rows) {
  std::vector<std::size_t> rows;
  for (int attempt = 0;; ++attempt) {
    CounterRng rng(config.seed,
                   static_cast<std::uint64_t>(replicate) * 16 +
                       static_cast<std::uint64_t>(attempt));
    rows.clear();
    draw_rows(rng, rows);
    try {
      return {stat_of_rows(rows), attempt};
    } catch (const DegenerateDataError&) {
      if (attempt >= config.max_redraws) {
        throw DegenerateDataError(
            "bootstrap_ci: replicate " + std::to_string(replicate) +
            " still degenerate after " + std::to_string(config.max_redraws) +
            " redraws");
      }
    }
  }
}

// Runs every replicate and collects a column of values per statistic.
template <class DrawRows, class StatOfRows>
std::pair<std::vector<std::vector<double>>, int> run_replicates(
    std::size_t n_stats, const BootstrapConfig& config,
    const DrawRows& draw_rows, const StatOfRows& stat_of_rows) {
  if (config.replicates < 1) {
    throw std::invalid_argument("bootstrap_ci: at least one replicate");
  }
  if (config.replicates < 100) {
    std::cerr << "bootstrap_ci: warning: " << config.replicates
              << " replicates is too few for stable percentile intervals\n";
  }
  int threads = config.threads;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads == 0) threads = 1;
  }
  threads = std::min<int>(threads, config.replicates);

  std::vector<std::vector<double>> values(
      n_stats, std::vector<double>(static_cast<std::size_t>(config.replicates)));
  std::atomic<int> total_redraws{0};

  auto worker = [&](int lo, int hi) {
    int redraws = 0;
    for (int rep = lo; rep < hi; ++rep) {
      auto [vals, re] = run_replicate(rep, config, draw_rows, stat_of_rows);
      if (vals.size() != n_stats) {
        throw std::logic_error(
            "bootstrap_ci: statistic changed its dimension across resamples");
      }
      for (std::size_t k = 0; k < n_stats; ++k) {
        values[k][static_cast<std::size_t>(rep)] = vals[k];
      }
      redraws += re;
    }
    total_redraws += redraws;
  };

  if (threads <= 1) {
    worker(0, config.replicates);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
      int lo = static_cast<int>(static_cast<long long>(config.replicates) * t /
                                threads);
      int hi = static_cast<int>(
          static_cast<long long>(config.replicates) * (t + 1) / threads);
      pool.emplace_back([&, t, lo, hi] {
        try {
          worker(lo, hi);
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return {std::move(values), total_redraws.load()};
}

CiRecord percentile_ci(std::vector<double> values, double estimate,
                       double level, int redraws) {
  std::sort(values.begin(), values.end());
  double alpha = 1.0 - level;
  CiRecord rec;
  rec.estimate = estimate;
  rec.lower = quantile_sorted(values, alpha / 2.0);
  rec.upper = quantile_sorted(values, 1.0 - alpha / 2.0);
  rec.level = level;
  rec.method = CiMethod::BootstrapPercentile;
  rec.replicates = static_cast<int>(values.size());
  rec.redraws = redraws;
  rec.estimate_outside = estimate < rec.lower || estimate > rec.upper;
  if (rec.estimate_outside) {
    std::cerr << "bootstrap_ci: warning: point estimate " << estimate
              << " lies outside the percentile interval [" << rec.lower
              << ", " << rec.upper << "]\n";
  }
  return rec;
}

// Shared row-drawing logic for plain and paired bootstraps.
struct RowDrawer {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> groups;  // cluster mode only
  bool by_cluster = false;

  RowDrawer(const ValidationSet& data, ResampleUnit unit) : n(data.size()) {
    if (unit == ResampleUnit::Clusters) {
      if (!data.has_clusters()) {
        throw std::invalid_argument(
            "bootstrap_ci: cluster resampling requires cluster ids");
      }
      groups = cluster_groups(data);
      by_cluster = true;
    }
  }

  void operator()(CounterRng& rng, std::vector<std::size_t>& rows) const {
    if (by_cluster) {
      std::size_t m = groups.size();
      rows.reserve(n);
      for (std::size_t j = 0; j < m; ++j) {
        const auto& g = groups[rng.next_below(m)];
        rows.insert(rows.end(), g.begin(), g.end());
      }
    } else {
      rows.resize(n);
      for (std::size_t i = 0; i < n; ++i) rows[i] = rng.next_below(n);
    }
  }
};

}  // namespace

std::vector<CiRecord> bootstrap_ci_multi(const ValidationSet& data,
                                         const MultiStatistic& statistics,
                                         const BootstrapConfig& config,
                                         double level) {
  check_level(level);
  std::vector<double> estimates = statistics(data);
  if (estimates.empty()) {
    throw std::invalid_argument("bootstrap_ci: no statistics requested");
  }
  RowDrawer draw(data, config.unit);
  auto stat_of_rows = [&](const std::vector<std::size_t>& rows) {
    return statistics(data.subset(rows));
  };
  auto [values, redraws] =
      run_replicates(estimates.size(), config, draw, stat_of_rows);
  std::vector<CiRecord> out;
  out.reserve(estimates.size());
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    out.push_back(
        percentile_ci(std::move(values[k]), estimates[k], level, redraws));
  }
  return out;
}

CiRecord bootstrap_ci(const ValidationSet& data, const Statistic& statistic,
                      const BootstrapConfig& config, double level) {
  auto multi = [&](const ValidationSet& d) {
    return std::vector<double>{statistic(d)};
  };
  return bootstrap_ci_multi(data, multi, config, level).front();
}

std::vector<CiRecord> paired_bootstrap_ci_multi(
    const ValidationSet& a, const ValidationSet& b,
    const MultiStatistic& statistics, const BootstrapConfig& config,
    double level) {
  check_level(level);
  if (a.size() != b.size()) {
    throw AlignmentError(
        "paired_bootstrap_ci: datasets must score the same rows");
  }
  if (config.unit == ResampleUnit::Clusters) {
    if (!a.has_clusters() || !b.has_clusters() ||
        a.clusters() != b.clusters()) {
      throw AlignmentError(
          "paired_bootstrap_ci: cluster resampling needs identical cluster "
          "ids on both datasets");
    }
  }
  auto difference = [&](const ValidationSet& xa, const ValidationSet& xb) {
    std::vector<double> va = statistics(xa);
    std::vector<double> vb = statistics(xb);
    if (va.size() != vb.size()) {
      throw std::logic_error(
          "paired_bootstrap_ci: statistic dimension differs between models");
    }
    for (std::size_t k = 0; k < va.size(); ++k) va[k] -= vb[k];
    return va;
  };
  std::vector<double> estimates = difference(a, b);
  if (estimates.empty()) {
    throw std::invalid_argument("paired_bootstrap_ci: no statistics requested");
  }
  RowDrawer draw(a, config.unit);
  auto stat_of_rows = [&](const std::vector<std::size_t>& rows) {
    return difference(a.subset(rows), b.subset(rows));
  };
  auto [values, redraws] =
      run_replicates(estimates.size(), config, draw, stat_of_rows);
  std::vector<CiRecord> out;
  out.reserve(estimates.size());
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    out.push_back(
        percentile_ci(std::move(values[k]), estimates[k], level, redraws));
  }
  return out;
}

CiRecord paired_bootstrap_ci(const ValidationSet& a, const ValidationSet& b,
                             const Statistic& statistic,
                             const BootstrapConfig& config, double level) {
  auto multi = [&](const ValidationSet& d) {
    return std::vector<double>{statistic(d)};
  };
  return paired_bootstrap_ci_multi(a, b, multi, config, level).front();
}

}  // namespace riskeval
