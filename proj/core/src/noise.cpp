#include "thicket/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "thicket/dimensions.hpp"
#include "thicket/experts.hpp"
#include "thicket/game.hpp"
#include "thicket/rng.hpp"

namespace thicket {

namespace {

void check_gamma(double gamma) {
    if (!(gamma >= 0.0) || gamma >= 0.5)
        throw std::invalid_argument("noise rate must be below one half");
}

} // namespace

std::vector<int> noisy_labels(const concept_class& cls, const noise_model& model,
                              const std::vector<int>& schedule) {
    check_gamma(model.gamma);
    if (model.target < 0 || model.target >= cls.size())
        throw std::invalid_argument("noisy_labels: target concept index out of range");
    rng gen(model.seed);
    std::vector<int> labels;
    labels.reserve(schedule.size());
    for (int x : schedule) {
        if (x < 0 || x >= cls.domain_size())
            throw std::invalid_argument("noisy_labels: schedule example out of range");
        int clean = cls.member(model.target, x) ? 1 : 0;
        labels.push_back(gen.bernoulli(model.gamma) ? 1 - clean : clean);
    }
    return labels;
}

double noise_bound(int ldim, std::int64_t horizon, double gamma) {
    if (horizon < 2)
        throw std::invalid_argument("noise_bound: horizon must be at least 2");
    check_gamma(gamma);
    double denom = 1.0 - 2.0 * std::sqrt(gamma * (1.0 - gamma));
    return static_cast<double>(ldim) * std::log(static_cast<double>(horizon)) / denom;
}

std::vector<int> make_schedule(schedule_kind kind, int domain_size, std::int64_t horizon,
                               std::uint64_t seed) {
    if (domain_size <= 0)
        throw std::invalid_argument("make_schedule: domain_size must be positive");
    if (horizon < 0)
        throw std::invalid_argument("make_schedule: horizon must be non-negative");
    std::vector<int> schedule;
    schedule.reserve(static_cast<std::size_t>(horizon));
    if (kind == schedule_kind::round_robin) {
        for (std::int64_t t = 0; t < horizon; ++t)
            schedule.push_back(static_cast<int>(t % domain_size));
    } else {
        rng gen(seed);
        for (std::int64_t t = 0; t < horizon; ++t)
            schedule.push_back(gen.below(domain_size));
    }
    return schedule;
}

namespace {

/// One trial: play the schedule against fresh noisy labels, counting
/// disagreements with the clean target and with the shown labels.
struct trial_counts {
    std::int64_t vs_target = 0;
    std::int64_t vs_labels = 0;
};

trial_counts run_trial_soa(const concept_class& cls, const noise_model& model,
                           const std::vector<int>& schedule,
                           const std::vector<int>& labels) {
    trial_counts counts;
    auto l = make_learner(learner_kind::soa, cls);
    for (std::size_t t = 0; t < schedule.size(); ++t) {
        int x = schedule[t];
        int guess = l->predict(x);
        int clean = cls.member(model.target, x) ? 1 : 0;
        counts.vs_target += guess != clean;
        counts.vs_labels += guess != labels[t];
        l->observe(x, labels[t]);
    }
    return counts;
}

trial_counts run_trial_wm(const concept_class& cls, const noise_model& model,
                          const std::vector<int>& schedule,
                          const std::vector<int>& labels, const expert_pool& proto,
                          std::uint64_t coin_seed) {
    trial_counts counts;
    expert_pool pool = proto.clone();
    rng coin(coin_seed);
    for (std::size_t t = 0; t < schedule.size(); ++t) {
        int x = schedule[t];
        double p = wm_probability(pool, x);
        int guess = coin.bernoulli(p) ? 1 : 0;
        int clean = cls.member(model.target, x) ? 1 : 0;
        counts.vs_target += guess != clean;
        counts.vs_labels += guess != labels[t];
        wm_update(pool, x, labels[t]);
    }
    return counts;
}

} // namespace

noisy_report noisy_run(const concept_class& cls, const noise_model& model,
                       const std::vector<int>& schedule, int trials,
                       std::uint64_t learner_seed, int jobs) {
    check_gamma(model.gamma);
    if (trials < 1)
        throw std::invalid_argument("noisy_run: trials must be at least 1");
    if (model.target < 0 || model.target >= cls.size())
        throw std::invalid_argument("noisy_run: target concept index out of range");

    const std::int64_t horizon = static_cast<std::int64_t>(schedule.size());
    const bool use_soa = model.gamma == 0.0;

    expert_pool proto;
    if (!use_soa)
        proto = agnostic_experts(cls, static_cast<int>(horizon));

    std::vector<trial_counts> results(static_cast<std::size_t>(trials));
    auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            noise_model trial_model = model;
            trial_model.seed = mix_seed(model.seed, static_cast<std::uint64_t>(i));
            std::vector<int> labels = noisy_labels(cls, trial_model, schedule);
            results[static_cast<std::size_t>(i)] =
                use_soa ? run_trial_soa(cls, model, schedule, labels)
                        : run_trial_wm(cls, model, schedule, labels, proto,
                                       mix_seed(learner_seed, static_cast<std::uint64_t>(i)));
        }
    };

    jobs = std::max(1, std::min(jobs, trials));
    if (jobs == 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> threads;
        int chunk = (trials + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            int begin = j * chunk;
            int end = std::min(trials, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back(worker, begin, end);
        }
        for (auto& th : threads) th.join();
    }

    noisy_report report;
    report.horizon = horizon;
    report.trials = trials;
    report.gamma = model.gamma;
    double sum_target = 0, sum_labels = 0;
    for (const auto& c : results) {
        sum_target += static_cast<double>(c.vs_target);
        sum_labels += static_cast<double>(c.vs_labels);
        report.per_trial_disagreements.push_back(c.vs_target);
    }
    report.mean_disagreement_target = sum_target / trials;
    report.mean_disagreement_labels = sum_labels / trials;
    if (horizon >= 2) {
        int d = littlestone_dim(cls);
        report.bound = noise_bound(d, horizon, model.gamma);
        report.bound_ratio = report.bound > 0 ? report.mean_disagreement_target / report.bound : 0.0;
    }
    return report;
}

} // namespace thicket
