#include "thicket/experts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "thicket/errors.hpp"
#include "thicket/rng.hpp"

namespace thicket {

namespace {

class table_expert final : public expert {
public:
    explicit table_expert(bitvec truth) : truth_(std::move(truth)) {}
    int predict(int example) const override { return truth_.test(example) ? 1 : 0; }
    void advance(int, int) override {}
    void reset() override {}
    std::unique_ptr<expert> clone() const override {
        return std::make_unique<table_expert>(truth_);
    }

private:
    bitvec truth_;
};

class soa_flip_expert final : public expert {
public:
    soa_flip_expert(std::shared_ptr<subclass_ldim> ctx, std::vector<int> flip_rounds)
        : ctx_(std::move(ctx)), flip_rounds_(std::move(flip_rounds)),
          alive_(ctx_->full_mask()) {}

    int predict(int example) const override {
        int advice = ctx_->soa_predict(alive_, example);
        if (flip_pos_ < flip_rounds_.size() && flip_rounds_[flip_pos_] == round_) {
            int flipped = 1 - advice;
            // skip the flip rather than walk into an empty version space
            if (ctx_->restrict_mask(alive_, example, flipped) != 0) return flipped;
        }
        return advice;
    }

    void advance(int example, int own_advice) override {
        alive_ = ctx_->restrict_mask(alive_, example, own_advice);
        if (flip_pos_ < flip_rounds_.size() && flip_rounds_[flip_pos_] == round_) ++flip_pos_;
        ++round_;
    }

    void reset() override {
        alive_ = ctx_->full_mask();
        round_ = 1;
        flip_pos_ = 0;
    }

    std::unique_ptr<expert> clone() const override {
        auto copy = std::make_unique<soa_flip_expert>(ctx_, flip_rounds_);
        copy->alive_ = alive_;
        copy->round_ = round_;
        copy->flip_pos_ = flip_pos_;
        return copy;
    }

private:
    std::shared_ptr<subclass_ldim> ctx_;
    std::vector<int> flip_rounds_; // 1-based, ascending
    std::uint64_t alive_;
    int round_ = 1;
    std::size_t flip_pos_ = 0;
};

} // namespace

expert_pool expert_pool::clone() const {
    expert_pool out;
    out.experts.reserve(experts.size());
    for (const auto& e : experts) out.experts.push_back(e->clone());
    out.wrong_counts = wrong_counts;
    out.eta = eta;
    return out;
}

void expert_pool::reset() {
    for (auto& e : experts) e->reset();
    std::fill(wrong_counts.begin(), wrong_counts.end(), 0);
}

std::vector<double> expert_pool::weights() const {
    std::vector<double> w(wrong_counts.size());
    for (std::size_t i = 0; i < wrong_counts.size(); ++i)
        w[i] = std::exp(-eta * static_cast<double>(wrong_counts[i]));
    return w;
}

expert_pool class_experts(const concept_class& cls, double eta) {
    if (eta < 0)
        throw std::invalid_argument("class_experts: learning rate must be non-negative");
    expert_pool pool;
    pool.eta = eta;
    for (const auto& b : cls.concepts())
        pool.experts.push_back(std::make_unique<table_expert>(b));
    pool.wrong_counts.assign(cls.concepts().size(), 0);
    return pool;
}

namespace {

/// Weight fraction on advice 1, computed with the mistake counts shifted by
/// their minimum so exp never underflows to 0/0.
double probability_from_advice(const expert_pool& pool, const std::vector<int>& advice) {
    std::int64_t min_count = *std::min_element(pool.wrong_counts.begin(),
                                               pool.wrong_counts.end());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < advice.size(); ++i) {
        double w = std::exp(-pool.eta *
                            static_cast<double>(pool.wrong_counts[i] - min_count));
        den += w;
        if (advice[i]) num += w;
    }
    return num / den;
}

std::vector<int> collect_advice(const expert_pool& pool, int example) {
    std::vector<int> advice(static_cast<std::size_t>(pool.size()));
    for (std::size_t i = 0; i < advice.size(); ++i)
        advice[i] = pool.experts[i]->predict(example);
    return advice;
}

} // namespace

double wm_probability(const expert_pool& pool, int example) {
    if (pool.size() == 0)
        throw std::invalid_argument("wm_probability: empty expert pool");
    return probability_from_advice(pool, collect_advice(pool, example));
}

void wm_update(expert_pool& pool, int example, int label) {
    std::vector<int> advice = collect_advice(pool, example);
    for (std::size_t i = 0; i < advice.size(); ++i) {
        if (advice[i] != label) ++pool.wrong_counts[i];
        pool.experts[i]->advance(example, advice[i]);
    }
}

regret_ledger wm_run(expert_pool& pool, const std::vector<labeled_example>& sequence,
                     std::optional<std::uint64_t> sample_seed) {
    if (pool.size() == 0)
        throw std::invalid_argument("wm_run: empty expert pool");

    regret_ledger ledger;
    ledger.expert_loss.assign(static_cast<std::size_t>(pool.size()), 0.0);
    std::optional<rng> coin;
    if (sample_seed) coin.emplace(*sample_seed);

    for (const auto& [x, y] : sequence) {
        std::vector<int> advice = collect_advice(pool, x);
        double p = probability_from_advice(pool, advice);
        double loss = std::abs(p - static_cast<double>(y));
        ledger.round_probability.push_back(p);
        ledger.round_loss.push_back(loss);
        ledger.expected_loss += loss;
        if (coin) {
            int sampled = coin->bernoulli(p) ? 1 : 0;
            ledger.realized.push_back(sampled);
            ledger.realized_loss += sampled == y ? 0.0 : 1.0;
        }
        for (std::size_t i = 0; i < advice.size(); ++i) {
            if (advice[i] != y) {
                ++pool.wrong_counts[i];
                ledger.expert_loss[i] += 1.0;
            }
            pool.experts[i]->advance(x, advice[i]);
        }
    }

    ledger.best_expert_loss =
        *std::min_element(ledger.expert_loss.begin(), ledger.expert_loss.end());
    ledger.regret = ledger.expected_loss - ledger.best_expert_loss;
    return ledger;
}

double tuned_eta(std::int64_t n_experts, std::int64_t horizon) {
    if (n_experts <= 0)
        throw std::invalid_argument("tuned_eta: expert count must be positive");
    if (horizon <= 0)
        throw std::invalid_argument("tuned_eta: horizon must be positive");
    if (n_experts == 1) return 1.0;
    return std::sqrt(8.0 * std::log(static_cast<double>(n_experts)) /
                     static_cast<double>(horizon));
}

expert_caps::expert_caps()
    : max_experts(cap_from_env("THICKET_MAX_EXPERTS", 200000)) {}

std::int64_t agnostic_pool_size(int horizon, int ldim) {
    if (horizon < 0 || ldim < 0)
        throw std::invalid_argument("agnostic_pool_size: negative argument");
    const std::int64_t saturate = std::numeric_limits<std::int64_t>::max() / 4;
    std::int64_t total = 0;
    std::int64_t binom = 1; // C(T, 0)
    for (int k = 0; k <= std::min(ldim, horizon); ++k) {
        if (k > 0) {
            if (binom > saturate / horizon) return saturate;
            binom = binom * (horizon - k + 1) / k;
        }
        total += binom;
        if (total > saturate) return saturate;
    }
    return total;
}

expert_pool agnostic_experts(const concept_class& cls, int horizon) {
    return agnostic_experts(cls, horizon, std::nullopt, expert_caps{});
}

expert_pool agnostic_experts(const concept_class& cls, int horizon,
                             std::optional<double> eta_override,
                             const expert_caps& caps) {
    if (horizon < 0)
        throw std::invalid_argument("agnostic_experts: horizon must be non-negative");
    auto ctx = std::make_shared<subclass_ldim>(cls);
    const int d = ctx->ldim(ctx->full_mask());

    std::int64_t n = agnostic_pool_size(horizon, d);
    if (n > caps.max_experts)
        throw cap_exceeded("agnostic_experts: expert pool too large (" +
                           std::to_string(n) + " experts > cap " +
                           std::to_string(caps.max_experts) + ")");

    expert_pool pool;
    pool.eta = eta_override ? *eta_override : tuned_eta(n, std::max(horizon, 1));
    pool.experts.reserve(static_cast<std::size_t>(n));

    // subsets of {1..T} by size, then lexicographically
    std::vector<int> comb;
    for (int k = 0; k <= std::min(d, horizon); ++k) {
        comb.resize(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
        while (true) {
            pool.experts.push_back(std::make_unique<soa_flip_expert>(ctx, comb));
            if (k == 0) break;
            int i = k - 1;
            while (i >= 0 && comb[static_cast<std::size_t>(i)] == horizon - k + i + 1) --i;
            if (i < 0) break;
            ++comb[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    pool.wrong_counts.assign(pool.experts.size(), 0);
    return pool;
}

} // namespace thicket
