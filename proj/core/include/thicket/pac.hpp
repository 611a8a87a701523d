#pragma once

#include <cstdint>
#include <vector>

#include "thicket/concept_class.hpp"
#include "thicket/rng.hpp"

namespace thicket {

/// Explicit probability distribution over the domain. Probabilities must be
/// non-negative and sum to 1 within 1e-12.
class distribution {
public:
    explicit distribution(std::vector<double> probabilities);
    static distribution uniform(int domain_size);

    int size() const { return static_cast<int>(prob_.size()); }
    double mass(int x) const { return prob_[static_cast<std::size_t>(x)]; }
    const std::vector<double>& probabilities() const { return prob_; }

    /// One draw by inverse CDF; i.i.d. draws realize the product measure.
    int sample(rng& gen) const;

private:
    std::vector<double> prob_;
    std::vector<double> cumulative_;
};

/// The lowest-index concept consistent with every labeled example. Throws
/// "no consistent concept" when the sample is not realizable.
int consistent_learner(const concept_class& cls, const std::vector<labeled_example>& sample);

/// Exact mass of the disagreement region between hypothesis and target.
double err(const concept_class& cls, int hypothesis, int target, const distribution& mu);

/// Sample size sufficient for (epsilon, delta)-learning a class of VC
/// dimension d: ceil(max{(4/eps) log2(2/delta), (8d/eps) log2(13/eps)}).
std::int64_t sample_complexity(double epsilon, double delta, int vc_dimension);

struct pac_result {
    double epsilon = 0;
    double delta = 0;
    std::int64_t sample_size = 0;
    int trials = 0;
    double failure_fraction = 0; // fraction of trials with err > epsilon
    double mean_error = 0;
};

/// Repeated draw-train-measure experiment: each trial draws
/// N = sample_complexity(eps, delta, vc_dim(class)) points i.i.d. from mu,
/// labels them by the target, fits the consistent learner and measures the
/// exact error. Per-trial RNG streams derive from (seed, trial), so results
/// do not depend on execution order.
pac_result pac_experiment(const concept_class& cls, int target, const distribution& mu,
                          double epsilon, double delta, int trials, std::uint64_t seed,
                          int jobs = 1);

} // namespace thicket
