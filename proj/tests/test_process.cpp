#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "gmgd/dickman.hpp"
#include "gmgd/process.hpp"
#include "gmgd/stats.hpp"
#include "gmgd/vec.hpp"

using namespace gmgd;

namespace {

SimulationConfig study_config(std::uint64_t seed, double epsilon = 0.1) {
  SimulationConfig cfg;
  cfg.epsilon = epsilon;
  cfg.horizon = 1.0;
  cfg.shot_noise_truncation = 2000;
  cfg.beta = kDefaultBeta;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SimulationConfig cfg = study_config(1);
  CHECK_NOTHROW(cfg.validate());
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = study_config(1);
  cfg.horizon = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = study_config(1);
  cfg.shot_noise_truncation = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = study_config(1);
  cfg.beta = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("jump-size dichotomy: Dickman below eps, compound Poisson above") {
  auto spec = GmgdSpec::paper_study(30);
  spec.gamma = Vec{1.0, -0.5};
  const auto cfg = study_config(42);
  for (std::uint64_t rep = 0; rep < 50; ++rep) {
    const auto path = sample_process_path(spec, cfg, rep);
    path.validate();
    CHECK(path.drift == spec.gamma);
    for (const auto& jump : path.jumps) {
      const double magnitude = norm(jump.value);
      CHECK(magnitude > 0.0);
      CHECK(magnitude != cfg.epsilon);
      // Strictly below or strictly above the threshold, never on it.
      CHECK((magnitude < cfg.epsilon || magnitude > cfg.epsilon));
    }
  }
}

TEST_CASE("component selection isolates the two jump regimes") {
  const auto spec = GmgdSpec::paper_study(30);
  const auto cfg = study_config(43);
  const auto large_only =
      sample_process_path(spec, cfg, 0, PathComponent::kLargeJumps);
  for (const auto& jump : large_only.jumps) {
    CHECK(norm(jump.value) > cfg.epsilon);
  }
  CHECK(large_only.drift == Vec{0.0, 0.0});
  const auto dickman_only =
      sample_process_path(spec, cfg, 0, PathComponent::kDickman);
  for (const auto& jump : dickman_only.jumps) {
    CHECK(norm(jump.value) < cfg.epsilon);
  }
  // The full path merges exactly those two jump lists.
  const auto full = sample_process_path(spec, cfg, 0, PathComponent::kFull);
  CHECK(full.jumps.size() ==
        large_only.jumps.size() + dickman_only.jumps.size());
}

TEST_CASE("paths are deterministic per (seed, replication)") {
  const auto spec = GmgdSpec::paper_study(30);
  const auto cfg = study_config(44);
  const auto a = sample_process_path(spec, cfg, 7);
  const auto b = sample_process_path(spec, cfg, 7);
  REQUIRE(a.jumps.size() == b.jumps.size());
  for (std::size_t i = 0; i < a.jumps.size(); ++i) {
    CHECK(a.jumps[i].time == b.jumps[i].time);
    CHECK(a.jumps[i].value == b.jumps[i].value);
  }
  const auto c = sample_process_path(spec, cfg, 8);
  CHECK(a.jumps.size() != c.jumps.size());  // overwhelmingly likely
}

TEST_CASE("evaluate_path semantics") {
  PathSkeleton path;
  path.horizon = 2.0;
  path.drift = Vec{1.0, 0.0};
  path.jumps = {Jump{0.5, Vec{0.0, 1.0}}, Jump{1.5, Vec{2.0, 0.0}}};
  path.validate();

  CHECK(evaluate_path(path, 0.0) == Vec{0.0, 0.0});
  // Cadlag: a time between jumps includes everything at or before it.
  CHECK(evaluate_path(path, 1.0) == Vec{1.0, 1.0});
  CHECK(evaluate_path(path, 0.5) == Vec{0.5, 1.0});
  CHECK(evaluate_path(path, 2.0) == Vec{4.0, 1.0});
  CHECK_THROWS_AS(evaluate_path(path, 2.5), std::invalid_argument);
  CHECK_THROWS_AS(evaluate_path(path, -0.1), std::invalid_argument);

  const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0};
  const auto values = evaluate_path(path, times);
  REQUIRE(values.size() == 5);
  CHECK(values[0] == Vec{0.0, 0.0});
  CHECK(values[1] == Vec{0.5, 1.0});
  CHECK(values[3] == Vec{3.5, 1.0});
  CHECK(values[4] == Vec{4.0, 1.0});
  const std::vector<double> unsorted{1.0, 0.5};
  CHECK_THROWS_AS(evaluate_path(path, unsorted), std::invalid_argument);
}

TEST_CASE("drift contributes linearly to the evaluated path") {
  auto spec = GmgdSpec::paper_study(30);
  spec.gamma = Vec{2.0, -1.0};
  const auto cfg = study_config(45);
  const auto with_drift = sample_process_path(spec, cfg, 3);
  auto no_drift_spec = spec;
  no_drift_spec.gamma = Vec{0.0, 0.0};
  const auto without_drift = sample_process_path(no_drift_spec, cfg, 3);
  for (double t : {0.25, 0.5, 1.0}) {
    const auto a = evaluate_path(with_drift, t);
    const auto b = evaluate_path(without_drift, t);
    CHECK(a[0] == doctest::Approx(b[0] + 2.0 * t).epsilon(1e-12));
    CHECK(a[1] == doctest::Approx(b[1] - 1.0 * t).epsilon(1e-12));
  }
}

TEST_CASE("moments scale linearly in t" * doctest::timeout(300)) {
  const auto spec = GmgdSpec::paper_study(30);
  const auto cfg = study_config(46);
  const std::size_t n = 200000;
  double sum_half = 0.0, sum_one = 0.0;
  double sq_half = 0.0, sq_one = 0.0;
  for (std::uint64_t rep = 0; rep < n; ++rep) {
    const auto path = sample_process_path(spec, cfg, rep);
    const auto values =
        evaluate_path(path, std::vector<double>{0.5, 1.0});
    sum_half += values[0][0];
    sq_half += values[0][0] * values[0][0];
    sum_one += values[1][0];
    sq_one += values[1][0] * values[1][0];
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double mean_half = sum_half * inv_n;
  const double mean_one = sum_one * inv_n;
  const double var_half = sq_half * inv_n - mean_half * mean_half;
  const double var_one = sq_one * inv_n - mean_one * mean_one;
  // Mean is 0 at both horizons; variances should sit in a 1:2 ratio.  Three
  // Monte Carlo standard errors bound the comparison.
  const double se_mean = std::sqrt(var_one * inv_n);
  CHECK(std::abs(mean_one - 2.0 * mean_half) < 3.0 * 2.0 * se_mean);
  const double se_var = std::sqrt(2.0 * var_one * var_one * inv_n) * 2.0;
  CHECK(std::abs(var_one - 2.0 * var_half) < 3.0 * se_var);
  // Anchors for the approximate process at t = 1: the exact full-process
  // moments are mean 0 and variance 1/2 per coordinate.
  CHECK(std::abs(mean_one) < 0.005);
  CHECK(std::abs(var_one - 0.5) < 0.012);
}

TEST_CASE("scaled small-jump laws approach the Dickman law as eps shrinks" *
          doctest::timeout(300)) {
  // Exact sampler for the true small-jump component: thin the eps-Dickman
  // jumps, keeping a jump of magnitude m with probability e^-m (the
  // tempering factor of the study family's radial density).  The thinned
  // process has Levy density e^-r r^-1 on (0, eps], i.e. the law of the
  // truncated study process.  Scaled by 1/eps, its distribution must close
  // in on MD(sigma) monotonically as eps decreases.
  const auto sigma = SpectralMeasure::uniform_circle(30);
  const std::size_t n = 100000;
  const Vec direction{1.0, 0.0};

  std::vector<double> reference(n);
  for (std::size_t i = 0; i < n; ++i) {
    Rng rng = Rng::substream(4040, 9, i);
    reference[i] =
        dot(sample_dickman_marginal(DickmanSpec(sigma, 1.0), 2000, rng),
            direction);
  }

  double previous_statistic = 1.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    const DickmanSpec spec(sigma, eps);
    std::vector<double> scaled_sample(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng = Rng::substream(4041, 9, i);
      Vec value(2, 0.0);
      for_each_dickman_jump(
          spec, 1.0, 2000, rng,
          [&](double, double magnitude, std::size_t atom) {
            if (rng.uniform01() <= std::exp(-magnitude)) {
              axpy(magnitude, sigma.atom(atom), value);
            }
          });
      scaled_sample[i] = dot(value, direction) / eps;
    }
    const auto result = ks_test_two_sample(scaled_sample, reference);
    CHECK(result.statistic < previous_statistic);
    previous_statistic = result.statistic;
  }
}
