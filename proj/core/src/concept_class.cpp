#include "thicket/concept_class.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace thicket {

namespace {

struct bitvec_hash {
    std::size_t operator()(const bitvec& b) const { return b.hash(); }
};

} // namespace

concept_class concept_class::from_sets(int domain_size,
                                       const std::vector<std::vector<int>>& sets) {
    if (domain_size <= 0)
        throw std::invalid_argument("concept_class: domain_size must be positive");
    if (sets.empty())
        throw std::invalid_argument("concept_class: empty class");

    std::vector<bitvec> concepts;
    concepts.reserve(sets.size());
    for (std::size_t s = 0; s < sets.size(); ++s) {
        bitvec b(domain_size);
        for (int x : sets[s]) {
            if (x < 0 || x >= domain_size)
                throw std::invalid_argument(
                    "concept_class: index out of range in set " + std::to_string(s) +
                    " (index " + std::to_string(x) + ", domain_size " +
                    std::to_string(domain_size) + ")");
            b.set(x);
        }
        concepts.push_back(std::move(b));
    }
    return from_bitvecs(domain_size, std::move(concepts));
}

concept_class concept_class::from_bitvecs(int domain_size, std::vector<bitvec> concepts) {
    if (domain_size <= 0)
        throw std::invalid_argument("concept_class: domain_size must be positive");
    if (concepts.empty())
        throw std::invalid_argument("concept_class: empty class");

    concept_class out;
    out.domain_size_ = domain_size;
    std::unordered_set<bitvec, bitvec_hash> seen;
    for (auto& b : concepts) {
        if (b.size() != domain_size)
            throw std::invalid_argument("concept_class: concept has wrong length");
        if (seen.insert(b).second)
            out.concepts_.push_back(std::move(b));
        else
            ++out.dedup_count_;
    }
    return out;
}

concept_class concept_class::restrict(int example, int label) const {
    if (example < 0 || example >= domain_size_)
        throw std::invalid_argument("concept_class: example index out of range");
    concept_class out;
    out.domain_size_ = domain_size_;
    bool want = label != 0;
    for (const auto& b : concepts_) {
        if (b.test(example) == want) out.concepts_.push_back(b);
    }
    return out;
}

concept_class concept_class::subclass(const std::vector<int>& indices) const {
    concept_class out;
    out.domain_size_ = domain_size_;
    out.concepts_.reserve(indices.size());
    for (int i : indices) {
        if (i < 0 || i >= size())
            throw std::invalid_argument("concept_class: concept index out of range");
        out.concepts_.push_back(concepts_[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<std::vector<int>> concept_class::to_sets() const {
    std::vector<std::vector<int>> sets;
    sets.reserve(concepts_.size());
    for (const auto& b : concepts_) {
        std::vector<int> s;
        for (int x = 0; x < domain_size_; ++x)
            if (b.test(x)) s.push_back(x);
        sets.push_back(std::move(s));
    }
    return sets;
}

} // namespace thicket
