#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "thicket/concept_class.hpp"
#include "thicket/dimensions.hpp"

namespace thicket {

/// One expert in a prediction-with-expert-advice pool. `predict` is the
/// advice for the current round; `advance` commits the round. Experts never
/// see the true labels: stateful experts evolve on their own advice only,
/// which is what makes the learner's per-round probability a deterministic
/// function of advice and labels.
class expert {
public:
    virtual ~expert() = default;
    virtual int predict(int example) const = 0;
    virtual void advance(int example, int own_advice) = 0;
    virtual void reset() = 0;
    virtual std::unique_ptr<expert> clone() const = 0;
};

/// Weighted-majority state: experts plus their mistake counts. Weights are
/// never stored as running products; weight_i = exp(-eta * wrong_count_i) is
/// recomputed from the integer count, so long runs accumulate no float drift.
struct expert_pool {
    std::vector<std::unique_ptr<expert>> experts;
    std::vector<std::int64_t> wrong_counts;
    double eta = 1.0;

    int size() const { return static_cast<int>(experts.size()); }
    expert_pool clone() const;

    /// Back to round one: zero mistake counts, experts at their initial state.
    void reset();

    /// Current absolute weights exp(-eta * wrong_count).
    std::vector<double> weights() const;
};

/// Pool whose experts are the concepts of the class itself.
expert_pool class_experts(const concept_class& cls, double eta);

/// Probability of predicting 1: the weight fraction of experts advising 1.
double wm_probability(const expert_pool& pool, int example);

/// Reveals the label: experts that advised wrongly have their count bumped
/// (weight multiplied by exp(-eta)), then every expert advances one round.
void wm_update(expert_pool& pool, int example, int label);

struct regret_ledger {
    std::vector<double> round_probability; // p_t
    std::vector<double> round_loss;        // |p_t - y_t|
    double expected_loss = 0;              // sum of round losses
    std::vector<double> expert_loss;       // per-expert loss within this run
    double best_expert_loss = 0;
    double regret = 0; // expected_loss - best_expert_loss
    std::vector<int> realized;             // sampled predictions, if seeded
    double realized_loss = 0;
};

/// Runs the pool over a label sequence with exact expected-loss accounting.
/// Expectations need no sampling: the per-round expected loss is |p_t - y_t|
/// because the weights depend only on advice and labels, never on realized
/// coin flips. Pass a seed to additionally sample a realized prediction path.
regret_ledger wm_run(expert_pool& pool, const std::vector<labeled_example>& sequence,
                     std::optional<std::uint64_t> sample_seed = std::nullopt);

/// Horizon-tuned learning rate sqrt(8 ln(N) / T); the exact expected regret
/// of the weighted majority run then stays within sqrt(ln(N) T / 2) on every
/// advice/label sequence. Returns 1 for a single expert (rate is irrelevant).
double tuned_eta(std::int64_t n_experts, std::int64_t horizon);

struct expert_caps {
    std::int64_t max_experts;
    expert_caps();
};

/// Expert pool realizing every class concept over a fixed horizon: one expert
/// per subset I of {1..T} with |I| <= ldim(class). Expert E_I simulates the
/// SOA on the class, advancing it on its own advice; on rounds in I it plays
/// (and feeds back) the opposite of the SOA prediction, unless the flipped
/// restriction would be empty, in which case the flip is skipped and the
/// expert stays consistent. For every concept h and instance sequence some
/// expert reproduces h exactly. The learning rate defaults to
/// tuned_eta(pool size, horizon).
expert_pool agnostic_experts(const concept_class& cls, int horizon);
expert_pool agnostic_experts(const concept_class& cls, int horizon,
                             std::optional<double> eta_override,
                             const expert_caps& caps);

/// Number of experts agnostic_experts would build: sum of C(T, k) for k <= d.
std::int64_t agnostic_pool_size(int horizon, int ldim);

} // namespace thicket
