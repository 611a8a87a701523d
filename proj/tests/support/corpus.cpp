#include "support/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "thicket/zoo.hpp"

namespace thicket::corpus {

namespace {

concept_class class_from_masks(int domain_size, const std::vector<std::uint32_t>& masks) {
    std::vector<bitvec> concepts;
    concepts.reserve(masks.size());
    for (std::uint32_t mask : masks) {
        bitvec b(domain_size);
        for (int x = 0; x < domain_size; ++x)
            if ((mask >> x) & 1) b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(domain_size, std::move(concepts));
}

std::uint32_t permute_mask(std::uint32_t mask, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (std::size_t x = 0; x < perm.size(); ++x)
        if ((mask >> x) & 1) out |= std::uint32_t{1} << perm[x];
    return out;
}

bool is_canonical(const std::vector<std::uint32_t>& sorted_masks,
                  const std::vector<std::vector<int>>& perms) {
    std::vector<std::uint32_t> image(sorted_masks.size());
    for (const auto& perm : perms) {
        for (std::size_t i = 0; i < sorted_masks.size(); ++i)
            image[i] = permute_mask(sorted_masks[i], perm);
        std::sort(image.begin(), image.end());
        if (std::lexicographical_compare(image.begin(), image.end(),
                                         sorted_masks.begin(), sorted_masks.end()))
            return false;
    }
    return true;
}

void enumerate_subsets(int universe, int k, std::uint32_t start,
                       std::vector<std::uint32_t>& current,
                       const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
    if (static_cast<int>(current.size()) == k) {
        fn(current);
        return;
    }
    for (std::uint32_t m = start; m < static_cast<std::uint32_t>(universe); ++m) {
        current.push_back(m);
        enumerate_subsets(universe, k, m + 1, current, fn);
        current.pop_back();
    }
}

} // namespace

void for_each_canonical_class(int domain_size, int max_concepts,
                              const std::function<void(const concept_class&)>& fn) {
    std::vector<int> identity(static_cast<std::size_t>(domain_size));
    std::iota(identity.begin(), identity.end(), 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> perm = identity;
    do {
        perms.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const int universe = 1 << domain_size;
    const int cap = std::min(max_concepts, universe);
    std::vector<std::uint32_t> current;
    for (int k = 1; k <= cap; ++k) {
        enumerate_subsets(universe, k, 0, current,
                          [&](const std::vector<std::uint32_t>& masks) {
                              // masks are generated in ascending order already
                              if (is_canonical(masks, perms))
                                  fn(class_from_masks(domain_size, masks));
                          });
    }
}

void for_each_canonical_class_up_to(int max_domain, int max_concepts,
                                    const std::function<void(const concept_class&)>& fn) {
    for (int n = 1; n <= max_domain; ++n)
        for_each_canonical_class(n, max_concepts, fn);
}

std::vector<concept_class> random_classes(int domain_size, int max_concepts, int count,
                                          std::uint64_t seed) {
    std::vector<concept_class> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        int m = 2 + i % (max_concepts - 1);
        out.push_back(make_random_class(domain_size, m, seed + static_cast<std::uint64_t>(i)));
    }
    return out;
}

} // namespace thicket::corpus
