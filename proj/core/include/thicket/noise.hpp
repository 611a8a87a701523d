#pragma once

#include <cstdint>
#include <vector>

#include "thicket/concept_class.hpp"

namespace thicket {

/// Label corruption model: the target concept's label is flipped
/// independently each round with probability exactly gamma (< 1/2).
struct noise_model {
    int target = 0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
};

/// Independent noisy labels for the schedule, reproducible from the seed.
std::vector<int> noisy_labels(const concept_class& cls, const noise_model& model,
                              const std::vector<int>& schedule);

/// Reference growth rate d * ln(T) / (1 - 2 sqrt(gamma (1 - gamma))) for the
/// expected disagreement with the clean target over T rounds.
double noise_bound(int ldim, std::int64_t horizon, double gamma);

enum class schedule_kind { round_robin, random_uniform };
std::vector<int> make_schedule(schedule_kind kind, int domain_size, std::int64_t horizon,
                               std::uint64_t seed = 0);

struct noisy_report {
    std::int64_t horizon = 0;
    int trials = 0;
    double gamma = 0.0;
    double mean_disagreement_target = 0; // primary metric: vs the clean target
    double mean_disagreement_labels = 0; // vs the noisy labels actually shown
    double bound = 0;                    // noise_bound at this class/horizon/gamma
    double bound_ratio = 0;              // mean_disagreement_target / bound (0 if bound 0)
    std::vector<std::int64_t> per_trial_disagreements;
};

/// Monte-Carlo run of the noisy online game. The learner is the weighted
/// majority over the horizon's agnostic expert pool with the tuned rate,
/// sampling its predictions; at gamma = 0 it degenerates to the plain SOA,
/// whose disagreement count is at most ldim(class) on every trial. Label
/// noise and learner coins draw from independent per-trial streams derived
/// from (model.seed, trial) and (learner_seed, trial), so trials are
/// order-independent and the two randomness sources can be swapped or varied
/// independently.
noisy_report noisy_run(const concept_class& cls, const noise_model& model,
                       const std::vector<int>& schedule, int trials,
                       std::uint64_t learner_seed, int jobs = 1);

} // namespace thicket
