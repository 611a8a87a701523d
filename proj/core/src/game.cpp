#include "thicket/game.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "thicket/errors.hpp"
#include "thicket/rng.hpp"

namespace thicket {

std::string transcript_to_csv(const transcript& t) {
    std::ostringstream out;
    out << "round,example,prediction,label,loss,ldim_after\n";
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const auto& r = t.rounds[i];
        out << (i + 1) << ',' << r.example << ',' << r.prediction << ',' << r.label
            << ',' << r.loss << ',' << r.ldim_after << '\n';
    }
    return out.str();
}

soa_step soa_predict(const concept_class& version_space, int example) {
    ldim_cache cache;
    return soa_predict(version_space, example, cache);
}

soa_step soa_predict(const concept_class& version_space, int example, ldim_cache& cache) {
    if (version_space.empty())
        throw std::invalid_argument("soa_predict: realizability violated (empty version space)");
    soa_step step;
    step.if_zero = version_space.restrict(example, 0);
    step.if_one = version_space.restrict(example, 1);
    int ld0 = littlestone_dim(step.if_zero, cache);
    int ld1 = littlestone_dim(step.if_one, cache);
    step.prediction = ld1 > ld0 ? 1 : 0;
    return step;
}

namespace {

class soa_learner final : public learner {
public:
    explicit soa_learner(const concept_class& cls) : state_(cls) {}

    int predict(int example) override {
        return soa_predict(state_, example, cache_).prediction;
    }

    void observe(int example, int label) override {
        state_ = state_.restrict(example, label);
        if (state_.empty())
            throw std::invalid_argument("soa learner: realizability violated");
    }

private:
    concept_class state_;
    ldim_cache cache_;
};

class constant_learner final : public learner {
public:
    explicit constant_learner(int bit) : bit_(bit) {}
    int predict(int) override { return bit_; }
    void observe(int, int) override {}

private:
    int bit_;
};

class majority_learner final : public learner {
public:
    explicit majority_learner(const concept_class& cls) : state_(cls) {}

    int predict(int example) override {
        if (state_.empty())
            throw std::invalid_argument("majority learner: realizability violated");
        int ones = 0;
        for (int c = 0; c < state_.size(); ++c)
            if (state_.member(c, example)) ++ones;
        return 2 * ones > state_.size() ? 1 : 0;
    }

    void observe(int example, int label) override {
        state_ = state_.restrict(example, label);
        if (state_.empty())
            throw std::invalid_argument("majority learner: realizability violated");
    }

private:
    concept_class state_;
};

class coin_learner final : public learner {
public:
    explicit coin_learner(std::uint64_t seed) : gen_(seed) {}
    int predict(int) override { return gen_.bernoulli(0.5) ? 1 : 0; }
    void observe(int, int) override {}

private:
    rng gen_;
};

} // namespace

std::unique_ptr<learner> make_learner(learner_kind kind, const concept_class& cls,
                                      std::uint64_t seed) {
    switch (kind) {
        case learner_kind::soa: return std::make_unique<soa_learner>(cls);
        case learner_kind::always0: return std::make_unique<constant_learner>(0);
        case learner_kind::always1: return std::make_unique<constant_learner>(1);
        case learner_kind::majority: return std::make_unique<majority_learner>(cls);
        case learner_kind::random_coin: return std::make_unique<coin_learner>(seed);
    }
    throw std::invalid_argument("make_learner: unknown learner kind");
}

learner_kind learner_kind_from_name(const std::string& name) {
    if (name == "soa") return learner_kind::soa;
    if (name == "always0") return learner_kind::always0;
    if (name == "always1") return learner_kind::always1;
    if (name == "majority") return learner_kind::majority;
    if (name == "random") return learner_kind::random_coin;
    throw std::invalid_argument("unknown learner: " + name);
}

transcript run_game(const concept_class& cls, int target,
                    const std::vector<int>& schedule, learner& l) {
    if (target < 0 || target >= cls.size())
        throw std::invalid_argument("run_game: target concept index out of range");

    ldim_cache cache;
    concept_class revealed = cls; // concepts consistent with the labels so far
    transcript t;
    for (int x : schedule) {
        if (x < 0 || x >= cls.domain_size())
            throw std::invalid_argument("run_game: schedule example out of range");
        round_record r;
        r.example = x;
        r.prediction = l.predict(x);
        r.label = cls.member(target, x) ? 1 : 0;
        r.loss = r.prediction == r.label ? 0 : 1;
        l.observe(x, r.label);
        revealed = revealed.restrict(x, r.label);
        r.ldim_after = littlestone_dim(revealed, cache);
        t.total_mistakes += r.loss;
        t.rounds.push_back(r);
    }
    return t;
}

adversary_step optimal_adversary_step(const concept_class& version_space,
                                      const std::function<int(int)>& predict,
                                      ldim_cache& cache) {
    if (version_space.empty())
        throw std::invalid_argument("optimal_adversary_step: empty version space");

    const int dim = littlestone_dim(version_space, cache);
    int best_x = 0;
    int best_min = -2;
    for (int x = 0; x < version_space.domain_size(); ++x) {
        int ld0 = littlestone_dim(version_space.restrict(x, 0), cache);
        int ld1 = littlestone_dim(version_space.restrict(x, 1), cache);
        int lo = std::min(ld0, ld1);
        if (lo > best_min) {
            best_min = lo;
            best_x = x;
        }
    }

    adversary_step step;
    step.example = best_x;
    int guess = predict(best_x);
    int flip = 1 - guess;
    concept_class flipped = version_space.restrict(best_x, flip);
    if (!flipped.empty() && littlestone_dim(flipped, cache) >= dim - 1) {
        step.label = flip; // punish the prediction without giving up the game
    } else {
        concept_class kept = version_space.restrict(best_x, guess);
        int ld_keep = littlestone_dim(kept, cache);
        int ld_flip = littlestone_dim(flipped, cache);
        step.label = ld_flip > ld_keep ? flip : guess;
    }
    return step;
}

transcript run_adversarial_game(const concept_class& cls, learner& l, int rounds) {
    ldim_cache cache;
    concept_class space = cls;
    transcript t;
    for (int i = 0; i < rounds; ++i) {
        int seen = -1;
        adversary_step step = optimal_adversary_step(
            space, [&l, &seen](int x) { seen = l.predict(x); return seen; }, cache);
        l.observe(step.example, step.label);
        space = space.restrict(step.example, step.label);
        round_record r;
        r.example = step.example;
        r.prediction = seen;
        r.label = step.label;
        r.loss = seen == step.label ? 0 : 1;
        r.ldim_after = littlestone_dim(space, cache);
        t.total_mistakes += r.loss;
        t.rounds.push_back(r);
    }
    return t;
}

game_caps::game_caps()
    : max_concepts(static_cast<int>(cap_from_env("THICKET_MAX_GAME_CONCEPTS", 24))),
      max_domain(static_cast<int>(cap_from_env("THICKET_MAX_GAME_DOMAIN", 16))) {}

namespace {

struct value_search {
    const subclass_ldim& ctx;
    std::unordered_map<std::uint64_t, int> memo;

    int value(std::uint64_t mask) {
        if (std::popcount(mask) <= 1) return 0;
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        int best = 0;
        for (int x = 0; x < ctx.base().domain_size(); ++x) {
            std::uint64_t m1 = mask & ctx.member_mask(x);
            if (m1 == 0 || m1 == mask) continue; // x forces the label; no progress
            std::uint64_t m0 = mask ^ m1;
            int v0 = value(m0);
            int v1 = value(m1);
            // learner picks the prediction; adversary then answers either
            // consistent label, charging one mistake for the opposite one
            int if_pred0 = std::max(v0, 1 + v1);
            int if_pred1 = std::max(v1, 1 + v0);
            best = std::max(best, std::min(if_pred0, if_pred1));
        }
        memo.emplace(mask, best);
        return best;
    }
};

} // namespace

int game_value(const concept_class& cls) { return game_value(cls, game_caps{}); }

int game_value(const concept_class& cls, const game_caps& caps) {
    if (cls.empty())
        throw std::invalid_argument("game_value: empty class");
    if (cls.size() > caps.max_concepts)
        throw cap_exceeded("game_value: class too large for exhaustive search (" +
                           std::to_string(cls.size()) + " concepts > cap " +
                           std::to_string(caps.max_concepts) + ")");
    if (cls.domain_size() > caps.max_domain)
        throw cap_exceeded("game_value: domain too large for exhaustive search (" +
                           std::to_string(cls.domain_size()) + " > cap " +
                           std::to_string(caps.max_domain) + ")");
    subclass_ldim ctx(cls);
    value_search search{ctx, {}};
    return search.value(ctx.full_mask());
}

} // namespace thicket
