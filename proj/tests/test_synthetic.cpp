#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "shortlist/experiments.hpp"
#include "shortlist/synthetic.hpp"

using namespace shortlist;

TEST_CASE("quality samples stay in range and replay deterministically") {
  RandomStream rng(1);
  const QualityProfile q = sample_quality_profile(30, 0.75, 0.2, rng);
  REQUIRE(q.qualities.size() == 30);
  for (double x : q.qualities) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  CHECK(q.qualities[static_cast<std::size_t>(q.true_winner)] ==
        *std::max_element(q.qualities.begin(), q.qualities.end()));

  RandomStream rng2(1);
  const QualityProfile q2 = sample_quality_profile(30, 0.75, 0.2, rng2);
  CHECK(q.qualities == q2.qualities);
}

TEST_CASE("empirical quality mean matches the truncated-normal mean") {
  // quadrature oracle for the mean of Normal(0.75, 0.2) truncated to [0,1]
  const double oracle = 0.7092297;
  RandomStream rng(98765);
  double sum = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) sum += rng.truncated_normal(0.75, 0.2, 0.0, 1.0);
  CHECK_THAT(sum / draws, Catch::Matchers::WithinAbs(oracle, 0.01));
}

TEST_CASE("noise model endpoints") {
  NoiseConfig cfg;
  cfg.lambda = 0.0;
  const InstanceRecord at0 = gen_noise_instance(cfg, 77);
  cfg.lambda = 1.0;
  const InstanceRecord at1 = gen_noise_instance(cfg, 77);
  // lambda=1: every approval probability is 0.5; empirical score mean near 50
  const ScoreVector sc1 = approval_scores(at1.election);
  double mean = 0;
  for (int s : sc1) mean += s;
  mean /= sc1.size();
  CHECK_THAT(mean, Catch::Matchers::WithinAbs(50.0, 3.0));
  // same seed, same qualities: the lambda=0 instance is the base assumption
  CHECK(at0.election.num_voters() == 100);
  CHECK(at0.true_winner == at1.true_winner);  // qualities shared across lambda
}

TEST_CASE("noise model expected score at lambda=0.5") {
  // a candidate with quality 0.8 is approved with probability 0.65
  NoiseConfig cfg;
  cfg.lambda = 0.5;
  cfg.m_candidates = 1;
  cfg.quality_mean = 0.8;
  cfg.quality_sd = 0.0;  // degenerate distribution: every draw is 0.8
  double total = 0;
  const int instances = 10000;
  for (int i = 0; i < instances; ++i) {
    const InstanceRecord rec = gen_noise_instance(cfg, 1000 + static_cast<std::uint64_t>(i));
    total += approval_scores(rec.election)[0];
  }
  CHECK_THAT(total / instances, Catch::Matchers::WithinAbs(65.0, 1.0));
}

TEST_CASE("binomial score variance at lambda=0") {
  NoiseConfig cfg;
  cfg.lambda = 0.0;
  cfg.m_candidates = 1;
  cfg.quality_mean = 0.6;
  cfg.quality_sd = 0.0;
  const int instances = 10000;
  double sum = 0, sumsq = 0;
  for (int i = 0; i < instances; ++i) {
    const int s = approval_scores(
        gen_noise_instance(cfg, 555000 + static_cast<std::uint64_t>(i)).election)[0];
    sum += s;
    sumsq += static_cast<double>(s) * s;
  }
  const double mean = sum / instances;
  const double var = sumsq / instances - mean * mean;
  // Var = n q (1-q) = 24; allow 3 standard errors of the variance estimate
  CHECK_THAT(var, Catch::Matchers::WithinAbs(24.0, 3 * 24.0 * std::sqrt(2.0 / instances)));
}

TEST_CASE("bias model basics") {
  BiasConfig cfg;
  cfg.gamma = 0.0;
  const InstanceRecord rec0 = gen_bias_instance(cfg, 31);
  NoiseConfig noise0;
  noise0.lambda = 0.0;
  // gamma=0 shares the code path with the base assumption; same seed gives
  // the same true winner (qualities are drawn first in both)
  CHECK(rec0.true_winner == gen_noise_instance(noise0, 31).true_winner);

  // gamma=1: a disadvantaged candidate with quality 0.8 scores about 40
  BiasConfig full;
  full.gamma = 1.0;
  full.m_candidates = 1;  // single candidate: always the true winner, always disadvantaged
  full.quality_mean = 0.8;
  full.quality_sd = 0.0;
  double total = 0;
  const int instances = 10000;
  for (int i = 0; i < instances; ++i)
    total += approval_scores(
        gen_bias_instance(full, 9000 + static_cast<std::uint64_t>(i)).election)[0];
  CHECK_THAT(total / instances, Catch::Matchers::WithinAbs(40.0, 1.0));
}

TEST_CASE("the true winner is always disadvantaged") {
  BiasConfig cfg;
  cfg.gamma = 0.7;
  cfg.m_candidates = 8;
  cfg.n_voters = 20;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const InstanceRecord rec = gen_bias_instance(cfg, seed);
    CHECK(rec.model == "bias");
    CHECK(std::binary_search(rec.disadvantaged.begin(), rec.disadvantaged.end(),
                             rec.true_winner));
    // floor(20 * 0.7) = 14 biased voters approve disadvantaged candidates at
    // half probability; the draw itself is per instance
    CHECK(rec.disadvantaged.size() >= 1);
    CHECK(rec.disadvantaged.size() <= 8);
  }
}

TEST_CASE("instance generation is deterministic in the seed") {
  NoiseConfig cfg;
  cfg.lambda = 0.35;
  const InstanceRecord a = gen_noise_instance(cfg, 424242);
  const InstanceRecord b = gen_noise_instance(cfg, 424242);
  CHECK(a.election.ballots == b.election.ballots);
  CHECK(a.true_winner == b.true_winner);
}

TEST_CASE("experiment runner output is schedule independent") {
  const std::vector<RuleSpec> rules = {RuleSpec::parse("av"), RuleSpec::parse("fgap:k=5")};
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  const auto serial = run_experiment1(rules, SyntheticModel::Noise, grid, 40, 99, 1);
  const auto parallel = run_experiment1(rules, SyntheticModel::Noise, grid, 40, 99, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].precision == parallel[i].precision);
    CHECK(serial[i].avg_size == parallel[i].avg_size);
  }
}

TEST_CASE("zero instances produce empty rows") {
  const auto rows = run_experiment1({RuleSpec::parse("av")}, SyntheticModel::Bias,
                                    {0.0, 1.0}, 0, 1, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].instances == 0);
  CHECK(rows[0].precision == 0.0);
  CHECK(rows[0].avg_size == 0.0);
}

TEST_CASE("parameter validation") {
  NoiseConfig bad;
  bad.lambda = 1.5;
  CHECK_THROWS_AS(gen_noise_instance(bad, 1), std::invalid_argument);
  BiasConfig badb;
  badb.gamma = -0.1;
  CHECK_THROWS_AS(gen_bias_instance(badb, 1), std::invalid_argument);
}
