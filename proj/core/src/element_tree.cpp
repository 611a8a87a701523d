#include "thicket/element_tree.hpp"

#include <stdexcept>

namespace thicket {

element_tree element_tree::make(int height,
                                std::vector<int> internal_labels,
                                std::vector<int> leaf_labels) {
    if (height < 0)
        throw std::invalid_argument("element_tree: height must be non-negative");
    element_tree t;
    t.height = height;
    t.internal_labels = std::move(internal_labels);
    t.leaf_labels = std::move(leaf_labels);
    if (static_cast<int>(t.internal_labels.size()) != t.internal_count())
        throw std::invalid_argument("element_tree: internal label count must be 2^h - 1");
    if (static_cast<int>(t.leaf_labels.size()) != t.leaf_count())
        throw std::invalid_argument("element_tree: leaf label count must be 2^h");
    return t;
}

void element_tree::validate_for(const concept_class& cls) const {
    for (int a : internal_labels)
        if (a < 0 || a >= cls.domain_size())
            throw std::invalid_argument("element_tree: internal label is not a valid example index");
    for (int c : leaf_labels)
        if (c < 0 || c >= cls.size())
            throw std::invalid_argument("element_tree: leaf label is not a valid concept index");
}

bool is_well_labeled(const concept_class& cls, const element_tree& tree, int leaf) {
    if (leaf < 0 || leaf >= tree.leaf_count())
        throw std::invalid_argument("is_well_labeled: leaf index out of range");
    tree.validate_for(cls);

    const bitvec& y = cls.concept_at(tree.leaf_labels[static_cast<std::size_t>(leaf)]);
    int node = 0;
    for (int depth = 0; depth < tree.height; ++depth) {
        bool right = (leaf >> (tree.height - 1 - depth)) & 1;
        int a = tree.internal_labels[static_cast<std::size_t>(node)];
        // Membership must coincide with a left descent.
        if (y.test(a) == right) return false;
        node = 2 * node + (right ? 2 : 1);
    }
    return true;
}

} // namespace thicket
