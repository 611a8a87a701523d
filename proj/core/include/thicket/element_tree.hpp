#pragma once

#include <vector>

#include "thicket/concept_class.hpp"

namespace thicket {

/// A complete binary tree of height h whose 2^h - 1 internal nodes are
/// labeled by example indices (heap order, root at index 0) and whose 2^h
/// leaves are labeled by concept indices. Leaves are numbered left to right;
/// bit k of a leaf index (counting from the most significant of h bits) is 0
/// for a left descent and 1 for a right descent.
struct element_tree {
    int height = 0;
    std::vector<int> internal_labels;
    std::vector<int> leaf_labels;

    static element_tree make(int height,
                             std::vector<int> internal_labels,
                             std::vector<int> leaf_labels);

    int internal_count() const { return (1 << height) - 1; }
    int leaf_count() const { return 1 << height; }

    /// Checks label ranges against a concrete class.
    void validate_for(const concept_class& cls) const;
};

/// Whether the given leaf is well-labeled: for every internal node on its
/// root-to-leaf path, the leaf's concept contains the node's example exactly
/// when the path descends left there. Off-path nodes impose no constraint.
bool is_well_labeled(const concept_class& cls, const element_tree& tree, int leaf);

} // namespace thicket
