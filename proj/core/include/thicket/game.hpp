#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "thicket/concept_class.hpp"
#include "thicket/dimensions.hpp"

namespace thicket {

struct round_record {
    int example = 0;
    int prediction = 0;
    int label = 0;
    int loss = 0;
    int ldim_after = 0; // dimension of the class consistent with all labels so far
};

struct transcript {
    std::vector<round_record> rounds;
    int total_mistakes = 0;
};

/// Serializes a transcript as CSV with a header row.
std::string transcript_to_csv(const transcript& t);

/// Online learner protocol: receive an example, emit a prediction, then see
/// the true label. Deterministic learners replay identically from identical
/// interaction sequences (and seed, for the coin-flip baseline).
class learner {
public:
    virtual ~learner() = default;
    virtual int predict(int example) = 0;
    virtual void observe(int example, int label) = 0;
};

enum class learner_kind { soa, always0, always1, majority, random_coin };

std::unique_ptr<learner> make_learner(learner_kind kind, const concept_class& cls,
                                      std::uint64_t seed = 0);
learner_kind learner_kind_from_name(const std::string& name);

/// One SOA step on an explicit version space: restrict both ways, predict the
/// label whose restriction has the larger Littlestone dimension (ties -> 0).
struct soa_step {
    int prediction = 0;
    concept_class if_zero;
    concept_class if_one;
};
soa_step soa_predict(const concept_class& version_space, int example);
soa_step soa_predict(const concept_class& version_space, int example, ldim_cache& cache);

/// Plays a fixed schedule against the target concept and records the
/// transcript. Labels are the target's; losses are 0/1.
transcript run_game(const concept_class& cls, int target,
                    const std::vector<int>& schedule, learner& l);

struct adversary_step {
    int example = 0;
    int label = 0;
};

/// One move of the dimension-greedy adversary: present the example whose
/// restrictions have the largest min-dimension (smallest index on ties),
/// then answer opposite to the learner whenever a consistent answer keeps
/// the version-space dimension from dropping below dim - 1.
adversary_step optimal_adversary_step(const concept_class& version_space,
                                      const std::function<int(int)>& predict,
                                      ldim_cache& cache);

/// Adversary-driven game for a fixed number of rounds. The version space
/// always stays non-empty, so every answered label is consistent with some
/// concept; once its dimension hits zero the labels are forced.
transcript run_adversarial_game(const concept_class& cls, learner& l, int rounds);

struct game_caps {
    int max_concepts;
    int max_domain;
    game_caps();
};

/// Exact minimax value of the mistake game: the adversary picks examples and
/// consistent labels, the learner minimizes mistakes; play ends when no
/// mistake can ever be forced. Full game-tree search memoized on version
/// spaces.
int game_value(const concept_class& cls);
int game_value(const concept_class& cls, const game_caps& caps);

} // namespace thicket
