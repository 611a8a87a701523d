#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "thicket/concept_class.hpp"
#include "thicket/element_tree.hpp"
#include "thicket/errors.hpp"

namespace thicket {

/// Memo table for the Littlestone-dimension recursion, keyed by the
/// canonical (sorted) concept content of a class. The restriction lattice
/// shares subclasses heavily, so exhaustive sweeps want one cache reused
/// across calls. Guarded by a mutex; concurrent use is fine.
class ldim_cache {
public:
    std::optional<int> lookup(const std::vector<std::uint64_t>& key) const;
    void store(const std::vector<std::uint64_t>& key, int value);
    std::size_t entry_count() const;

private:
    struct key_hash {
        std::size_t operator()(const std::vector<std::uint64_t>& k) const;
    };
    mutable std::mutex mu_;
    std::unordered_map<std::vector<std::uint64_t>, int, key_hash> table_;
};

/// Canonical cache key for a class: domain size followed by the sorted
/// concept words. Two classes with the same concept sets share a key.
std::vector<std::uint64_t> canonical_key(const concept_class& cls);

/// Largest d such that some d-subset of the domain is shattered (all 2^d
/// label patterns realized). Zero for a single-concept class.
int vc_dim(const concept_class& cls);

/// Littlestone (thicket) dimension via the version-space recursion:
/// ld(C) >= d+1 iff some example splits C into two parts of dimension >= d.
/// Empty classes carry the sentinel -1, singletons 0.
int littlestone_dim(const concept_class& cls);
int littlestone_dim(const concept_class& cls, ldim_cache& cache);

struct shatter_caps {
    int max_height;
    int max_concepts;
    shatter_caps();
};

/// Result of an exact thicket-shatter computation: the maximum number of
/// well-labeled leaves over all element trees of the given height, plus a
/// witness tree attaining it. Ties in the witness break toward the smallest
/// example index, then the smallest concept index.
struct shatter_report {
    int height = 0;
    std::int64_t max_well_labeled = 0;
    std::optional<element_tree> witness;
};

shatter_report thicket_shatter(const concept_class& cls, int height);
shatter_report thicket_shatter(const concept_class& cls, int height, const shatter_caps& caps);

/// Littlestone dimensions of subclasses of one fixed base class with at most
/// 64 concepts, keyed by concept-index masks. Restriction chains revisit the
/// same subclasses constantly (games, expert simulations, exhaustive sweeps),
/// and a mask is a canonical name for a subclass once the base is fixed.
/// Thread-safe; one instance may serve concurrent games over the same class.
class subclass_ldim {
public:
    explicit subclass_ldim(const concept_class& base);

    const concept_class& base() const { return *base_; }
    std::uint64_t full_mask() const { return full_; }

    /// Mask of base concepts containing `example`.
    std::uint64_t member_mask(int example) const {
        return member_[static_cast<std::size_t>(example)];
    }

    std::uint64_t restrict_mask(std::uint64_t mask, int example, int label) const {
        std::uint64_t in = mask & member_mask(example);
        return label ? in : mask ^ in;
    }

    /// Littlestone dimension of the subclass selected by `mask` (-1 if empty).
    int ldim(std::uint64_t mask);

    /// SOA prediction on the subclass: the label whose restriction has the
    /// larger dimension, ties predicted as 0.
    int soa_predict(std::uint64_t mask, int example);

private:
    int ldim_rec(std::uint64_t mask);

    const concept_class* base_;
    std::uint64_t full_ = 0;
    std::vector<std::uint64_t> member_;
    mutable std::mutex mu_;
    // dense table for small bases, hash map beyond
    std::vector<signed char> flat_;
    std::unordered_map<std::uint64_t, int> memo_;
};

/// A finite relation (rows x columns membership matrix) together with a
/// region of rows the rank recursion starts from.
struct rank_region {
    int num_cols = 0;
    std::vector<bitvec> rows; // each row has num_cols bits
    std::vector<int> region;  // row indices

    static rank_region from_matrix(const std::vector<std::vector<int>>& matrix);
    /// Membership matrix of a class: rows = concepts, columns = examples.
    static rank_region from_class(const concept_class& cls);
};

/// 2-rank of the region: rank(P) >= d+1 iff some column splits P into two
/// non-empty parts both of rank >= d. Strictly decreasing region sizes make
/// it finite; empty regions are an error.
int shelah_rank(const rank_region& rr);

} // namespace thicket
