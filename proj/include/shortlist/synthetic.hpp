#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "shortlist/core.hpp"
#include "shortlist/rng.hpp"

namespace shortlist {

/// Per-candidate objective qualities in [0,1]; the true winner is the
/// maximum-quality candidate (smallest index on the measure-zero tie).
struct QualityProfile {
  std::vector<double> qualities;
  int true_winner = 0;
};

struct NoiseConfig {
  double lambda = 0.0;  // in [0,1]
  int n_voters = 100;
  int m_candidates = 30;
  double quality_mean = 0.75;
  double quality_sd = 0.2;
};

struct BiasConfig {
  double gamma = 0.0;  // in [0,1]
  int n_voters = 100;
  int m_candidates = 30;
  double quality_mean = 0.75;
  double quality_sd = 0.2;
};

/// A generated (or ingested) election paired with its designated true winner.
struct InstanceRecord {
  Election election;
  int true_winner = -1;  // -1: unknown (excluded from precision)
  std::string model;     // provenance tag
  double param = 0.0;    // model parameter the instance was generated at
  std::uint64_t seed = 0;
  std::vector<int> disadvantaged;  // bias model only, ascending
};

inline QualityProfile sample_quality_profile(int m, double mean, double sd,
                                             RandomStream& rng) {
  QualityProfile q;
  q.qualities.reserve(static_cast<std::size_t>(m));
  for (int c = 0; c < m; ++c)
    q.qualities.push_back(rng.truncated_normal(mean, sd, 0.0, 1.0));
  q.true_winner = 0;
  for (int c = 1; c < m; ++c)
    if (q.qualities[static_cast<std::size_t>(c)] >
        q.qualities[static_cast<std::size_t>(q.true_winner)])
      q.true_winner = c;
  return q;
}

namespace detail {

/// floor with a 1e-9 guard: grid parameters arrive as binary doubles, and
/// e.g. 0.35*100 evaluates below 35.
inline int guarded_floor(double x) { return static_cast<int>(std::floor(x + 1e-9)); }

}  // namespace detail

/// Voter v approves candidate c with probability (1-lambda)*q_c + 0.5*lambda.
///
/// The draw sequence (qualities first, then one uniform per (voter,
/// candidate) pair in row order) does not depend on lambda, so two instances
/// generated from the same seed at different lambda share their underlying
/// randomness. The experiment runner relies on this to compare grid points
/// with common random numbers.
inline InstanceRecord gen_noise_instance(const NoiseConfig& cfg, std::uint64_t seed) {
  if (cfg.lambda < 0.0 || cfg.lambda > 1.0)
    throw std::invalid_argument("noise parameter lambda must lie in [0,1]");
  RandomStream rng(seed);
  const QualityProfile q =
      sample_quality_profile(cfg.m_candidates, cfg.quality_mean, cfg.quality_sd, rng);
  std::vector<std::vector<int>> ballots(static_cast<std::size_t>(cfg.n_voters));
  for (auto& ballot : ballots)
    for (int c = 0; c < cfg.m_candidates; ++c) {
      const double p =
          (1.0 - cfg.lambda) * q.qualities[static_cast<std::size_t>(c)] + 0.5 * cfg.lambda;
      if (rng.uniform01() < p) ballot.push_back(c);
    }
  InstanceRecord rec;
  rec.election = Election::make(cfg.m_candidates, std::move(ballots));
  rec.true_winner = q.true_winner;
  rec.model = "noise";
  rec.param = cfg.lambda;
  rec.seed = seed;
  return rec;
}

/// Each candidate is disadvantaged with probability 1/2 (the true winner
/// always is); the first floor(n*gamma) voters approve disadvantaged
/// candidates with probability 0.5*q_c instead of q_c. Draw sequence is
/// gamma-independent, as for the noise model.
inline InstanceRecord gen_bias_instance(const BiasConfig& cfg, std::uint64_t seed) {
  if (cfg.gamma < 0.0 || cfg.gamma > 1.0)
    throw std::invalid_argument("bias parameter gamma must lie in [0,1]");
  RandomStream rng(seed);
  const QualityProfile q =
      sample_quality_profile(cfg.m_candidates, cfg.quality_mean, cfg.quality_sd, rng);
  std::vector<bool> disadvantaged(static_cast<std::size_t>(cfg.m_candidates));
  for (int c = 0; c < cfg.m_candidates; ++c)
    disadvantaged[static_cast<std::size_t>(c)] = rng.bernoulli(0.5);
  disadvantaged[static_cast<std::size_t>(q.true_winner)] = true;
  const int biased_voters = detail::guarded_floor(cfg.n_voters * cfg.gamma);
  std::vector<std::vector<int>> ballots(static_cast<std::size_t>(cfg.n_voters));
  for (int v = 0; v < cfg.n_voters; ++v)
    for (int c = 0; c < cfg.m_candidates; ++c) {
      double p = q.qualities[static_cast<std::size_t>(c)];
      if (v < biased_voters && disadvantaged[static_cast<std::size_t>(c)]) p *= 0.5;
      if (rng.uniform01() < p) ballots[static_cast<std::size_t>(v)].push_back(c);
    }
  InstanceRecord rec;
  rec.election = Election::make(cfg.m_candidates, std::move(ballots));
  rec.true_winner = q.true_winner;
  rec.model = "bias";
  rec.param = cfg.gamma;
  rec.seed = seed;
  for (int c = 0; c < cfg.m_candidates; ++c)
    if (disadvantaged[static_cast<std::size_t>(c)]) rec.disadvantaged.push_back(c);
  return rec;
}

}  // namespace shortlist
