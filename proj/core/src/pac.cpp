#include "thicket/pac.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "thicket/dimensions.hpp"

namespace thicket {

distribution::distribution(std::vector<double> probabilities)
    : prob_(std::move(probabilities)) {
    if (prob_.empty())
        throw std::invalid_argument("distribution: no probabilities");
    double total = 0;
    for (double p : prob_) {
        if (!(p >= 0))
            throw std::invalid_argument("distribution: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("distribution: probabilities must sum to 1");
    cumulative_.reserve(prob_.size());
    double acc = 0;
    for (double p : prob_) {
        acc += p;
        cumulative_.push_back(acc);
    }
    cumulative_.back() = 1.0;
}

distribution distribution::uniform(int domain_size) {
    if (domain_size <= 0)
        throw std::invalid_argument("distribution: domain_size must be positive");
    return distribution(std::vector<double>(static_cast<std::size_t>(domain_size),
                                            1.0 / domain_size));
}

int distribution::sample(rng& gen) const {
    double u = gen.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
}

int consistent_learner(const concept_class& cls, const std::vector<labeled_example>& sample) {
    std::vector<char> alive(static_cast<std::size_t>(cls.size()), 1);
    for (const auto& [x, y] : sample) {
        if (x < 0 || x >= cls.domain_size())
            throw std::invalid_argument("consistent_learner: example index out of range");
        bool want = y != 0;
        for (int c = 0; c < cls.size(); ++c)
            if (alive[static_cast<std::size_t>(c)] && cls.member(c, x) != want)
                alive[static_cast<std::size_t>(c)] = 0;
    }
    for (int c = 0; c < cls.size(); ++c)
        if (alive[static_cast<std::size_t>(c)]) return c;
    throw std::invalid_argument("consistent_learner: no consistent concept");
}

double err(const concept_class& cls, int hypothesis, int target, const distribution& mu) {
    if (hypothesis < 0 || hypothesis >= cls.size() || target < 0 || target >= cls.size())
        throw std::invalid_argument("err: concept index out of range");
    if (mu.size() != cls.domain_size())
        throw std::invalid_argument("err: distribution size does not match domain");
    double mass = 0;
    for (int x = 0; x < cls.domain_size(); ++x)
        if (cls.member(hypothesis, x) != cls.member(target, x)) mass += mu.mass(x);
    return mass;
}

std::int64_t sample_complexity(double epsilon, double delta, int vc_dimension) {
    if (!(epsilon > 0) || epsilon >= 1)
        throw std::invalid_argument("sample_complexity: epsilon must be in (0, 1)");
    if (!(delta > 0) || delta >= 1)
        throw std::invalid_argument("sample_complexity: delta must be in (0, 1)");
    if (vc_dimension < 1)
        throw std::invalid_argument("sample_complexity: dimension must be at least 1");
    double first = 4.0 / epsilon * std::log2(2.0 / delta);
    double second = 8.0 * vc_dimension / epsilon * std::log2(13.0 / epsilon);
    return static_cast<std::int64_t>(std::ceil(std::max(first, second)));
}

pac_result pac_experiment(const concept_class& cls, int target, const distribution& mu,
                          double epsilon, double delta, int trials, std::uint64_t seed,
                          int jobs) {
    if (target < 0 || target >= cls.size())
        throw std::invalid_argument("pac_experiment: target concept index out of range");
    if (mu.size() != cls.domain_size())
        throw std::invalid_argument("pac_experiment: distribution size does not match domain");
    if (trials < 100)
        throw std::invalid_argument("pac_experiment: trials must be >= 100");

    const int d = vc_dim(cls);
    if (d < 1)
        throw std::invalid_argument("pac_experiment: class must have VC dimension >= 1");
    const std::int64_t n = sample_complexity(epsilon, delta, d);

    std::vector<double> errors(static_cast<std::size_t>(trials), 0.0);
    auto worker = [&](int begin, int end) {
        std::vector<labeled_example> sample(static_cast<std::size_t>(n));
        for (int i = begin; i < end; ++i) {
            rng gen(mix_seed(seed, static_cast<std::uint64_t>(i)));
            for (auto& le : sample) {
                le.example = mu.sample(gen);
                le.label = cls.member(target, le.example) ? 1 : 0;
            }
            int hyp = consistent_learner(cls, sample);
            errors[static_cast<std::size_t>(i)] = err(cls, hyp, target, mu);
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

    pac_result result;
    result.epsilon = epsilon;
    result.delta = delta;
    result.sample_size = n;
    result.trials = trials;
    int failures = 0;
    double total = 0;
    for (double e : errors) {
        if (e > epsilon) ++failures;
        total += e;
    }
    result.failure_fraction = static_cast<double>(failures) / trials;
    result.mean_error = total / trials;
    return result;
}

} // namespace thicket
