#include <doctest.h>

#include <string>

#include "thicket/concept_class.hpp"
#include "thicket/element_tree.hpp"
#include "thicket/rng.hpp"

using namespace thicket;

namespace {

template <typename F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

concept_class powerset2() {
    return concept_class::from_sets(2, {{}, {0}, {1}, {0, 1}});
}

concept_class thresholds3() {
    return concept_class::from_sets(3, {{}, {0}, {0, 1}, {0, 1, 2}});
}

} // namespace

TEST_CASE("from_sets builds classes and deduplicates") {
    auto cls = concept_class::from_sets(3, {{}, {0}, {0, 1}, {0, 1, 2}});
    CHECK(cls.size() == 4);
    CHECK(cls.domain_size() == 3);
    CHECK(cls.dedup_count() == 0);

    auto deduped = concept_class::from_sets(2, {{0}, {0}});
    CHECK(deduped.size() == 1);
    CHECK(deduped.dedup_count() == 1);
}

TEST_CASE("from_sets rejects bad input") {
    CHECK(thrown_message([] { concept_class::from_sets(3, {}); })
              .find("empty class") != std::string::npos);
    std::string msg = thrown_message([] { concept_class::from_sets(4, {{5}}); });
    CHECK(msg.find("index out of range") != std::string::npos);
    CHECK(msg.find("set 0") != std::string::npos); // names the offending set
}

TEST_CASE("restrict filters by membership") {
    auto ps = powerset2();
    auto ones = ps.restrict(0, 1);
    CHECK(ones.size() == 2); // {0} and {0,1}
    for (int c = 0; c < ones.size(); ++c) CHECK(ones.member(c, 0));

    auto singles = concept_class::from_sets(3, {{0}, {1}, {2}});
    auto first = singles.restrict(0, 1);
    CHECK(first.size() == 1);
    auto none = first.restrict(1, 1);
    CHECK(none.empty()); // no singleton contains two points

    CHECK(thrown_message([&] { ps.restrict(7, 1); })
              .find("example index out of range") != std::string::npos);
}

TEST_CASE("restrict partitions the class") {
    rng gen(2024);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + gen.below(5);
        std::vector<std::vector<int>> sets;
        int m = 1 + gen.below(10);
        for (int i = 0; i < m; ++i) {
            std::vector<int> s;
            for (int x = 0; x < n; ++x)
                if (gen.bernoulli(0.5)) s.push_back(x);
            sets.push_back(s);
        }
        auto cls = concept_class::from_sets(n, sets);
        for (int x = 0; x < n; ++x)
            CHECK(cls.restrict(x, 0).size() + cls.restrict(x, 1).size() == cls.size());
    }
}

TEST_CASE("to_sets round-trips through from_sets") {
    auto cls = thresholds3();
    auto rebuilt = concept_class::from_sets(cls.domain_size(), cls.to_sets());
    CHECK(rebuilt == cls);
}

TEST_CASE("height-0 tree is vacuously well-labeled") {
    auto cls = powerset2();
    for (int leaf_label = 0; leaf_label < cls.size(); ++leaf_label) {
        auto tree = element_tree::make(0, {}, {leaf_label});
        CHECK(is_well_labeled(cls, tree, 0));
    }
}

TEST_CASE("well-labeling follows the membership-iff-left rule on a height-3 tree") {
    // Height-3 tree over a 7-point domain; the fourth leaf's path descends
    // left at the root, then right twice, so its concept must contain the
    // root label and omit the two right-descent labels. Off-path labels are
    // unconstrained.
    auto cls = concept_class::from_sets(
        7, {{0}, {0, 1}, {0, 3}, {0, 5, 6}, {1, 3}, {}});
    std::vector<int> internals = {0, 1, 4, 2, 3, 5, 6};
    auto make_tree = [&](int leaf3_concept) {
        std::vector<int> leaves = {0, 0, 0, leaf3_concept, 0, 0, 0, 0};
        return element_tree::make(3, internals, leaves);
    };

    CHECK(is_well_labeled(cls, make_tree(0), 3));       // {0}: contains 0, omits 1 and 3
    CHECK(is_well_labeled(cls, make_tree(3), 3));       // {0,5,6}: off-path members only
    CHECK_FALSE(is_well_labeled(cls, make_tree(1), 3)); // contains 1, a right-descent label
    CHECK_FALSE(is_well_labeled(cls, make_tree(2), 3)); // contains 3, a right-descent label
    CHECK_FALSE(is_well_labeled(cls, make_tree(5), 3)); // omits the root label 0

    // changing labels off the leaf-3 path never changes the verdict
    std::vector<int> tweaked = internals;
    for (int off_path : {2, 5, 6}) {
        for (int a = 0; a < 7; ++a) {
            tweaked[static_cast<std::size_t>(off_path)] = a;
            auto tree = element_tree::make(3, tweaked, {0, 0, 0, 0, 0, 0, 0, 0});
            CHECK(is_well_labeled(cls, tree, 3) == is_well_labeled(cls, make_tree(0), 3));
        }
        tweaked = internals;
    }
}

TEST_CASE("all four leaves of the threshold tree are well-labeled") {
    auto cls = thresholds3(); // concepts 0:{}, 1:{0}, 2:{0,1}, 3:{0,1,2}
    auto tree = element_tree::make(2, {1, 2, 0}, {3, 2, 1, 0});
    for (int leaf = 0; leaf < 4; ++leaf) CHECK(is_well_labeled(cls, tree, leaf));
}

TEST_CASE("is_well_labeled rejects bad leaves and bad trees") {
    auto cls = powerset2();
    auto tree = element_tree::make(1, {0}, {0, 1});
    CHECK(thrown_message([&] { is_well_labeled(cls, tree, 5); })
              .find("leaf index out of range") != std::string::npos);

    auto bad_internal = element_tree::make(1, {9}, {0, 1});
    CHECK(thrown_message([&] { is_well_labeled(cls, bad_internal, 0); })
              .find("internal label") != std::string::npos);

    CHECK(thrown_message([] { element_tree::make(1, {0, 1}, {0, 1}); })
              .find("2^h - 1") != std::string::npos);
}
