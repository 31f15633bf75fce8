#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shortlist/metrics.hpp"
#include "shortlist/parallel.hpp"
#include "shortlist/rules.hpp"
#include "shortlist/synthetic.hpp"

namespace shortlist {

enum class SyntheticModel { Noise, Bias };

inline std::string model_name(SyntheticModel m) {
  return m == SyntheticModel::Noise ? "noise" : "bias";
}

struct Experiment1Row {
  RuleSpec rule;
  std::string model;
  double param = 0.0;
  long instances = 0;
  double precision = 0.0;
  double avg_size = 0.0;
};

/// The six-plus-two rule slate the noise/bias trend study reports on.
inline std::vector<RuleSpec> experiment1_rules() {
  std::vector<RuleSpec> rules;
  for (const char* text : {"av", "fgap:k=5", "threshold:alpha=0.5", "isp:s=4",
                           "firstmajority", "topfgap:s=10,k=5", "largestgap",
                           "qncsa:q=0.5"})
    rules.push_back(RuleSpec::parse(text));
  return rules;
}

/// Runs every rule over `instances_per_point` instances at each grid value.
///
/// Instance i draws its randomness from the stream (base_seed, i) alone; the
/// grid value enters the generators only as a model parameter. Adjacent grid
/// points therefore compare the same underlying populations (common random
/// numbers), which is what makes the reported trends sharp at moderate
/// instance counts. Aggregation uses integer counters, so results are
/// byte-identical for any worker count.
inline std::vector<Experiment1Row> run_experiment1(
    const std::vector<RuleSpec>& rules, SyntheticModel model,
    const std::vector<double>& grid, long instances_per_point, std::uint64_t base_seed,
    int jobs = 1) {
  struct Acc {
    long hits = 0;
    long size_sum = 0;
  };
  const std::size_t R = rules.size(), G = grid.size();
  std::vector<std::vector<Acc>> per_instance;  // [instance][grid*R + rule]
  per_instance.assign(static_cast<std::size_t>(instances_per_point),
                      std::vector<Acc>(G * R));

  parallel_for(instances_per_point, jobs, [&](long inst) {
    auto& acc = per_instance[static_cast<std::size_t>(inst)];
    RandomStream seed_mix(base_seed, static_cast<std::uint64_t>(inst));
    const std::uint64_t instance_seed = seed_mix.next_u64();
    for (std::size_t g = 0; g < G; ++g) {
      InstanceRecord rec;
      if (model == SyntheticModel::Noise) {
        NoiseConfig cfg;
        cfg.lambda = grid[g];
        rec = gen_noise_instance(cfg, instance_seed);
      } else {
        BiasConfig cfg;
        cfg.gamma = grid[g];
        rec = gen_bias_instance(cfg, instance_seed);
      }
      const SortedScores ss = sorted_scores_of(rec.election);
      const int n = rec.election.num_voters();
      for (std::size_t r = 0; r < R; ++r) {
        const WinnerSet w = evaluate(rules[r], ss, n);
        Acc& a = acc[g * R + r];
        a.size_sum += w.size();
        if (w.contains(rec.true_winner)) ++a.hits;
      }
    }
  });

  std::vector<Experiment1Row> rows;
  rows.reserve(R * G);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t g = 0; g < G; ++g) {
      long hits = 0, size_sum = 0;
      for (long inst = 0; inst < instances_per_point; ++inst) {
        const Acc& a = per_instance[static_cast<std::size_t>(inst)][g * R + r];
        hits += a.hits;
        size_sum += a.size_sum;
      }
      Experiment1Row row;
      row.rule = rules[r];
      row.model = model_name(model);
      row.param = grid[g];
      row.instances = instances_per_point;
      row.precision = instances_per_point == 0
                          ? 0.0
                          : static_cast<double>(hits) /
                                static_cast<double>(instances_per_point);
      row.avg_size = instances_per_point == 0
                         ? 0.0
                         : static_cast<double>(size_sum) /
                               static_cast<double>(instances_per_point);
      rows.push_back(std::move(row));
    }
  return rows;
}

/// Synthetic instance set for the tradeoff experiment: instances_per_point
/// at every grid value, flattened. Same seeding discipline as
/// run_experiment1.
inline std::vector<InstanceRecord> generate_instances(SyntheticModel model,
                                                      const std::vector<double>& grid,
                                                      long instances_per_point,
                                                      std::uint64_t base_seed,
                                                      int jobs = 1) {
  std::vector<InstanceRecord> out(grid.size() *
                                  static_cast<std::size_t>(instances_per_point));
  parallel_for(static_cast<long>(out.size()), jobs, [&](long idx) {
    const std::size_t g = static_cast<std::size_t>(idx) /
                          static_cast<std::size_t>(instances_per_point);
    const long inst = idx % instances_per_point;
    RandomStream seed_mix(base_seed, static_cast<std::uint64_t>(inst));
    const std::uint64_t instance_seed = seed_mix.next_u64();
    if (model == SyntheticModel::Noise) {
      NoiseConfig cfg;
      cfg.lambda = grid[g];
      out[static_cast<std::size_t>(idx)] = gen_noise_instance(cfg, instance_seed);
    } else {
      BiasConfig cfg;
      cfg.gamma = grid[g];
      out[static_cast<std::size_t>(idx)] = gen_bias_instance(cfg, instance_seed);
    }
  });
  return out;
}

}  // namespace shortlist
