#pragma once

#include <string>
#include <vector>

#include "thicket/bitvec.hpp"

namespace thicket {

/// One labeled domain point.
struct labeled_example {
    int example = 0;
    int label = 0;
};

/// A finite concept class: a domain {0, ..., n-1} together with a non-empty
/// list of pairwise distinct subsets of it, stored as packed bit-vectors.
///
/// The only way to obtain an instance with zero concepts is `restrict`, whose
/// result is deliberately allowed to be empty; every constructor rejects the
/// empty class. Instances are immutable after construction and safe to share
/// across threads.
class concept_class {
public:
    /// The distinguished empty value. It arises as a restriction result (and
    /// as a placeholder before assignment); the named constructors below all
    /// reject empty concept lists.
    concept_class() = default;

    /// Builds a class from explicit index sets. Duplicate sets are removed
    /// (first occurrence wins) and the number of removed duplicates is
    /// recorded. Throws on an empty set list or an out-of-range index, naming
    /// the offending set.
    static concept_class from_sets(int domain_size,
                                   const std::vector<std::vector<int>>& sets);

    /// Builds a class from ready-made bit-vectors, deduplicating in order.
    static concept_class from_bitvecs(int domain_size, std::vector<bitvec> concepts);

    int domain_size() const { return domain_size_; }
    int size() const { return static_cast<int>(concepts_.size()); }
    bool empty() const { return concepts_.empty(); }

    /// Number of duplicate sets dropped when this class was constructed.
    int dedup_count() const { return dedup_count_; }

    const bitvec& concept_at(int i) const { return concepts_[static_cast<std::size_t>(i)]; }
    const std::vector<bitvec>& concepts() const { return concepts_; }

    /// Whether example x belongs to concept c.
    bool member(int c, int x) const { return concepts_[static_cast<std::size_t>(c)].test(x); }

    /// The subclass of concepts assigning `label` to `example`. May be empty;
    /// callers must handle the empty result.
    concept_class restrict(int example, int label) const;

    /// Subclass given by concept indices (order preserved). May be empty.
    concept_class subclass(const std::vector<int>& indices) const;

    /// Export back to index sets (inverse of from_sets up to concept order).
    std::vector<std::vector<int>> to_sets() const;

    bool operator==(const concept_class&) const = default;

private:
    int domain_size_ = 0;
    std::vector<bitvec> concepts_;
    int dedup_count_ = 0;
};

} // namespace thicket
