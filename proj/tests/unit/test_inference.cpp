#include <algorithm>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <doctest.h>

#include "riskeval/dataset.hpp"
#include "riskeval/decompose.hpp"
#include "riskeval/errors.hpp"
#include "riskeval/inference.hpp"
#include "riskeval/metrics.hpp"
#include "riskeval/rng.hpp"

using namespace riskeval;

namespace {

ValidationSet calibrated_data(std::uint64_t seed, std::size_t n) {
  CounterRng rng(seed);
  std::vector<double> risks(n);
  std::vector<std::int8_t> outcomes(n);
  for (std::size_t i = 0; i < n; ++i) {
    risks[i] = 0.02 + 0.96 * rng.next_double();
    outcomes[i] = rng.next_double() < risks[i] ? 1 : 0;
  }
  outcomes[0] = 0;
  outcomes[n - 1] = 1;
  return ValidationSet(std::move(risks), std::move(outcomes));
}

ValidationSet clustered_data(std::uint64_t seed, std::size_t n_clusters,
                             std::size_t per_cluster) {
  CounterRng rng(seed);
  std::vector<double> risks;
  std::vector<std::int8_t> outcomes;
  std::vector<std::int64_t> clusters;
  for (std::size_t g = 0; g < n_clusters; ++g) {
    double base = 0.05 + 0.9 * rng.next_double();
    for (std::size_t j = 0; j < per_cluster; ++j) {
      double r = std::min(0.99, std::max(0.01, base + 0.05 * rng.next_normal()));
      risks.push_back(r);
      outcomes.push_back(rng.next_double() < r ? 1 : 0);
      clusters.push_back(static_cast<std::int64_t>(g));
    }
  }
  outcomes.front() = 0;
  outcomes.back() = 1;
  return ValidationSet(std::move(risks), std::move(outcomes),
                       std::move(clusters));
}

}  // namespace

TEST_SUITE("inference") {

TEST_CASE("null variance of the 5-level toy matches the exact reference") {
  ValidationSet data({0.05, 0.2, 0.35, 0.5, 0.8}, {0, 0, 1, 0, 1});
  CHECK(var_weighted_brier_null(data, WeightSpec::beta(2, 8)) ==
        doctest::Approx(0.010022731658065305).epsilon(1e-14));
}

TEST_CASE("variance identities hold to near machine precision") {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    ValidationSet data = calibrated_data(seed, 400);
    for (const WeightSpec& w :
         {WeightSpec::uniform(), WeightSpec::beta(2, 8),
          WeightSpec::beta(3, 15), WeightSpec::point_mass(0.3)}) {
      double v_marginal = var_weighted_brier_null_marginal(data, w);
      double v_calibrated = var_weighted_brier_calibrated(data, w);
      double v_null = var_weighted_brier_null(data, w);
      // Marginal null variance = calibrated-score variance + conditional
      // null variance (law of total variance at Y ~ Bern(r)).
      CHECK(std::fabs(v_marginal - v_calibrated - v_null) <= 1e-12);
      CHECK(v_marginal >= v_calibrated - 1e-15);
      CHECK(v_null >= 0.0);
      CHECK(var_weighted_brier(data, w) >= 0.0);
    }
  }
}

TEST_CASE("observed variance from first principles") {
  ValidationSet data = calibrated_data(6, 250);
  WeightSpec w = WeightSpec::beta(2, 5);
  double mean = 0.0, sq = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double l = weighted_loss(data.risks()[i], data.outcomes()[i], w);
    mean += l;
    sq += l * l;
  }
  mean /= static_cast<double>(data.size());
  sq /= static_cast<double>(data.size());
  CHECK(var_weighted_brier(data, w) ==
        doctest::Approx(sq - mean * mean).epsilon(1e-12));
}

TEST_CASE("asymptotic intervals are symmetric and shrink with n") {
  ValidationSet small = calibrated_data(7, 200);
  ValidationSet large = calibrated_data(7, 20000);
  WeightSpec w = WeightSpec::beta(2, 8);
  CiRecord ci_small = weighted_brier_ci(small, w);
  CiRecord ci_large = weighted_brier_ci(large, w);
  CHECK(ci_small.method == CiMethod::AsymptoticNormal);
  CHECK(ci_small.estimate == doctest::Approx(weighted_brier(small, w)));
  CHECK(ci_small.upper - ci_small.estimate ==
        doctest::Approx(ci_small.estimate - ci_small.lower).epsilon(1e-12));
  CHECK(ci_large.upper - ci_large.lower < ci_small.upper - ci_small.lower);
  // Half-width = z * sqrt(var/n).
  double half = std::sqrt(var_weighted_brier(small, w) /
                          static_cast<double>(small.size())) *
                1.959963984540054;
  CHECK(ci_small.upper - ci_small.estimate ==
        doctest::Approx(half).epsilon(1e-12));
}

TEST_CASE("bootstrap is deterministic and thread-count invariant") {
  ValidationSet data = calibrated_data(9, 500);
  WeightSpec w = WeightSpec::beta(2, 8);
  Statistic stat = [&w](const ValidationSet& d) {
    return weighted_brier(d, w);
  };
  BootstrapConfig config;
  config.replicates = 400;
  config.seed = 123;
  CiRecord a = bootstrap_ci(data, stat, config);
  CiRecord b = bootstrap_ci(data, stat, config);
  config.threads = 4;
  CiRecord c = bootstrap_ci(data, stat, config);
  CHECK(a.lower == b.lower);
  CHECK(a.upper == b.upper);
  CHECK(a.lower == c.lower);  // bitwise equal across thread counts
  CHECK(a.upper == c.upper);
  CHECK(a.method == CiMethod::BootstrapPercentile);
  CHECK(a.replicates == 400);
  CHECK(a.lower < a.estimate);
  CHECK(a.upper > a.estimate);

  config.seed = 124;
  CiRecord d = bootstrap_ci(data, stat, config);
  CHECK(d.lower != a.lower);  // the seed actually matters
}

TEST_CASE("bootstrap interval is consistent with the asymptotic one") {
  ValidationSet data = calibrated_data(10, 2000);
  WeightSpec w = WeightSpec::uniform();
  BootstrapConfig config;
  config.replicates = 1500;
  config.seed = 77;
  config.threads = 4;
  CiRecord boot = bootstrap_ci(
      data, [&w](const ValidationSet& d) { return weighted_brier(d, w); },
      config);
  CiRecord asym = weighted_brier_ci(data, w);
  // Same order of magnitude and strongly overlapping.
  CHECK(boot.lower == doctest::Approx(asym.lower).epsilon(0.15));
  CHECK(boot.upper == doctest::Approx(asym.upper).epsilon(0.15));
}

TEST_CASE("multi-statistic bootstrap shares resamples with the scalar form") {
  ValidationSet data = calibrated_data(11, 600);
  WeightSpec w = WeightSpec::beta(2, 8);
  BootstrapConfig config;
  config.replicates = 300;
  config.seed = 5;
  MultiStatistic multi = [&w](const ValidationSet& d) {
    return std::vector<double>{weighted_brier(d, w), cost_loss(d, 0.3)};
  };
  std::vector<CiRecord> both = bootstrap_ci_multi(data, multi, config);
  REQUIRE(both.size() == 2);
  CiRecord alone = bootstrap_ci(
      data, [&w](const ValidationSet& d) { return weighted_brier(d, w); },
      config);
  CHECK(both[0].lower == alone.lower);  // identical resample stream
  CHECK(both[0].upper == alone.upper);
  CHECK(both[1].estimate == doctest::Approx(cost_loss(data, 0.3)));
}

TEST_CASE("cluster bootstrap requires clusters and differs from row bootstrap") {
  ValidationSet data = clustered_data(13, 40, 8);
  WeightSpec w = WeightSpec::uniform();
  Statistic stat = [&w](const ValidationSet& d) {
    return weighted_brier(d, w);
  };
  BootstrapConfig config;
  config.replicates = 300;
  config.seed = 9;
  config.unit = ResampleUnit::Clusters;
  CiRecord by_cluster = bootstrap_ci(data, stat, config);
  config.unit = ResampleUnit::Rows;
  CiRecord by_row = bootstrap_ci(data, stat, config);
  CHECK(by_cluster.lower != by_row.lower);

  ValidationSet flat = calibrated_data(14, 200);
  config.unit = ResampleUnit::Clusters;
  CHECK_THROWS_AS(bootstrap_ci(flat, stat, config), std::invalid_argument);
}

TEST_CASE("degenerate resamples are redrawn and counted") {
  // 6 rows, one case: single-class resamples are common, and the statistic
  // rejects them, forcing redraws.
  ValidationSet data({0.1, 0.2, 0.3, 0.4, 0.5, 0.9}, {0, 0, 0, 0, 0, 1});
  Statistic stat = [](const ValidationSet& d) {
    if (d.case_count() == 0 || d.case_count() == d.size()) {
      throw DegenerateDataError("single-class resample");
    }
    return weighted_brier(d, WeightSpec::uniform());
  };
  BootstrapConfig config;
  config.replicates = 200;
  config.seed = 3;
  CiRecord ci = bootstrap_ci(data, stat, config);
  CHECK(ci.redraws > 0);
  CHECK(ci.replicates == 200);
}

TEST_CASE("paired bootstrap aligns models and validates inputs") {
  ValidationSet a = calibrated_data(15, 300);
  std::vector<double> shifted(a.risks());
  for (double& r : shifted) r = std::min(0.99, r * 0.9 + 0.03);
  ValidationSet b(std::move(shifted), std::vector<std::int8_t>(a.outcomes()));

  WeightSpec w = WeightSpec::uniform();
  Statistic stat = [&w](const ValidationSet& d) {
    return weighted_brier(d, w);
  };
  BootstrapConfig config;
  config.replicates = 300;
  config.seed = 21;
  CiRecord diff = paired_bootstrap_ci(a, b, stat, config);
  CHECK(diff.estimate ==
        doctest::Approx(weighted_brier(a, w) - weighted_brier(b, w)));
  // Pairing strips shared sampling noise: the interval for the difference
  // is far narrower than the marginal interval.
  CiRecord marginal = bootstrap_ci(a, stat, config);
  CHECK(diff.upper - diff.lower < marginal.upper - marginal.lower);

  ValidationSet shorter = calibrated_data(16, 100);
  CHECK_THROWS_AS(paired_bootstrap_ci(a, shorter, stat, config),
                  AlignmentError);
}

TEST_CASE("bootstrap validates its configuration") {
  ValidationSet data = calibrated_data(17, 50);
  Statistic stat = [](const ValidationSet& d) {
    return weighted_brier(d, WeightSpec::uniform());
  };
  BootstrapConfig config;
  config.replicates = 0;
  CHECK_THROWS_AS(bootstrap_ci(data, stat, config), std::invalid_argument);
  config.replicates = 100;
  CHECK_NOTHROW(bootstrap_ci(data, stat, config));
  CHECK_THROWS_AS(bootstrap_ci(data, stat, config, 1.5),
                  std::invalid_argument);
}

}  // TEST_SUITE
