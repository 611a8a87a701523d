#include <doctest.h>

#include <cmath>
#include <string>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "thicket/dimensions.hpp"
#include "thicket/element_tree.hpp"
#include "thicket/errors.hpp"
#include "thicket/zoo.hpp"

using namespace thicket;

namespace {

int floor_log2(int m) {
    int d = 0;
    while ((2 << d) <= m) ++d;
    return d;
}

/// Count well-labeled leaves of a concrete tree; validates witnesses.
int well_labeled_count(const concept_class& cls, const element_tree& tree) {
    int count = 0;
    for (int leaf = 0; leaf < tree.leaf_count(); ++leaf)
        if (is_well_labeled(cls, tree, leaf)) ++count;
    return count;
}

} // namespace

TEST_CASE("vc_dim on the named classes") {
    CHECK(vc_dim(make_powerset(3)) == 3);
    CHECK(vc_dim(make_singletons(4)) == 1);
    CHECK(vc_dim(concept_class::from_sets(3, {{0, 1}})) == 0);
    CHECK(vc_dim(make_thresholds(7)) == 1);
}

TEST_CASE("littlestone_dim on the named classes") {
    CHECK(littlestone_dim(make_powerset(3)) == 3);
    CHECK(littlestone_dim(make_thresholds(3)) == 2);
    CHECK(littlestone_dim(make_cosets(4)) == 2);
    CHECK(make_cosets(4).size() == 7);
}

TEST_CASE("littlestone_dim agrees with the tree-search oracle on small classes") {
    corpus::for_each_canonical_class_up_to(3, 6, [](const concept_class& cls) {
        CHECK(littlestone_dim(cls) == oracle::ldim(cls));
    });
    for (const auto& cls : corpus::random_classes(4, 8, 40, 91)) {
        CHECK(littlestone_dim(cls) == oracle::ldim(cls));
    }
}

TEST_CASE("thicket_shatter exact values and witnesses") {
    auto ps2 = make_powerset(2);
    auto report = thicket_shatter(ps2, 2);
    CHECK(report.max_well_labeled == 4);
    REQUIRE(report.witness.has_value());
    CHECK(well_labeled_count(ps2, *report.witness) == 4);

    auto single = concept_class::from_sets(2, {{0}});
    CHECK(thicket_shatter(single, 0).max_well_labeled == 1);
    CHECK(thicket_shatter(single, 1).max_well_labeled == 1);

    auto th = make_thresholds(3);
    for (int h = 0; h <= 3; ++h) {
        auto r = thicket_shatter(th, h);
        CHECK(r.max_well_labeled == oracle::shatter(th, h));
        REQUIRE(r.witness.has_value());
        CHECK(well_labeled_count(th, *r.witness) == r.max_well_labeled);
    }
}

TEST_CASE("shatter caps guard the exponential search") {
    auto cls = make_powerset(2);
    shatter_caps caps;
    caps.max_height = 3;
    std::string msg;
    try {
        thicket_shatter(cls, 4, caps);
    } catch (const cap_exceeded& e) {
        msg = e.what();
    }
    CHECK(msg.find("search bound exceeded") != std::string::npos);
    CHECK_THROWS_AS(thicket_shatter(cls, -1), std::invalid_argument);
}

TEST_CASE("shatter function is monotone and at most doubles") {
    auto check_class = [](const concept_class& cls) {
        std::int64_t prev = 1; // height 0
        for (int h = 1; h <= 4; ++h) {
            std::int64_t cur = thicket_shatter(cls, h).max_well_labeled;
            CHECK(cur >= prev);
            CHECK(cur <= 2 * prev);
            prev = cur;
        }
    };
    check_class(make_thresholds(5));
    check_class(make_cosets(6));
    check_class(make_singletons(5));
    for (const auto& cls : corpus::random_classes(6, 16, 12, 17)) check_class(cls);
}

TEST_CASE("dimension consistency: ldim = max height fully shattered") {
    corpus::for_each_canonical_class_up_to(3, 8, [](const concept_class& cls) {
        int ld = littlestone_dim(cls);
        int by_shatter = 0;
        while (thicket_shatter(cls, by_shatter + 1).max_well_labeled ==
               (std::int64_t{1} << (by_shatter + 1)))
            ++by_shatter;
        CHECK(ld == by_shatter);
    });
}

TEST_CASE("vc <= ldim <= log2 of the concept count") {
    corpus::for_each_canonical_class_up_to(3, 8, [](const concept_class& cls) {
        int ld = littlestone_dim(cls);
        CHECK(vc_dim(cls) <= ld);
        CHECK(ld <= floor_log2(cls.size()));
    });
}

TEST_CASE("restriction makes one side drop") {
    corpus::for_each_canonical_class_up_to(3, 8, [](const concept_class& cls) {
        ldim_cache cache;
        int d = littlestone_dim(cls, cache);
        if (d < 1) return;
        for (int x = 0; x < cls.domain_size(); ++x) {
            int lo = std::min(littlestone_dim(cls.restrict(x, 0), cache),
                              littlestone_dim(cls.restrict(x, 1), cache));
            CHECK(lo <= d - 1);
        }
    });
}

TEST_CASE("shelah_rank base cases and the powerset relation") {
    // one column splitting two rows that nothing splits further
    auto two = rank_region::from_matrix({{1}, {0}});
    CHECK(shelah_rank(two) == 1);

    auto one_row = rank_region::from_matrix({{1, 0, 1}});
    CHECK(shelah_rank(one_row) == 0);

    // all 8 subsets of 3 columns as rows
    std::vector<std::vector<int>> rows;
    for (int mask = 0; mask < 8; ++mask)
        rows.push_back({mask & 1, (mask >> 1) & 1, (mask >> 2) & 1});
    CHECK(shelah_rank(rank_region::from_matrix(rows)) == 3);

    rank_region empty_region = rank_region::from_matrix({{1}});
    empty_region.region.clear();
    CHECK_THROWS_AS(shelah_rank(empty_region), std::invalid_argument);
}

TEST_CASE("rank equals the dimension of the transpose class") {
    // exhaustive over all 3x3 relations, random larger ones in the acceptance run
    for (int bits = 0; bits < (1 << 9); ++bits) {
        std::vector<std::vector<int>> matrix(3, std::vector<int>(3));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
                    (bits >> (3 * r + c)) & 1;
        int rank = shelah_rank(rank_region::from_matrix(matrix));
        std::vector<bitvec> concepts;
        for (const auto& row : matrix) {
            bitvec b(3);
            for (int c = 0; c < 3; ++c)
                if (row[static_cast<std::size_t>(c)]) b.set(c);
            concepts.push_back(b);
        }
        auto cls = concept_class::from_bitvecs(3, std::move(concepts));
        CHECK(rank == littlestone_dim(cls));
        CHECK(rank == oracle::rank(matrix));
    }
}

TEST_CASE("subclass_ldim matches littlestone_dim on subclasses") {
    for (const auto& cls : corpus::random_classes(5, 10, 20, 4242)) {
        subclass_ldim ctx(cls);
        CHECK(ctx.ldim(ctx.full_mask()) == littlestone_dim(cls));
        // spot-check restriction masks against explicit restrictions
        for (int x = 0; x < cls.domain_size(); ++x) {
            auto m1 = ctx.restrict_mask(ctx.full_mask(), x, 1);
            CHECK(ctx.ldim(m1) == littlestone_dim(cls.restrict(x, 1)));
        }
    }
}
