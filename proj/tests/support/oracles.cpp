#include "support/oracles.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace thicket::oracle {

namespace {

bool subset_shattered(const concept_class& cls, const std::vector<int>& points) {
    std::set<std::string> patterns;
    for (int c = 0; c < cls.size(); ++c) {
        std::string pat;
        for (int x : points) pat += cls.member(c, x) ? '1' : '0';
        patterns.insert(pat);
    }
    return patterns.size() == (std::size_t{1} << points.size());
}

void all_subsets(int n, int k, int start, std::vector<int>& current,
                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == k) {
        out.push_back(current);
        return;
    }
    for (int x = start; x < n; ++x) {
        current.push_back(x);
        all_subsets(n, k, x + 1, current, out);
        current.pop_back();
    }
}

} // namespace

int vc(const concept_class& cls) {
    int best = 0;
    for (int d = 1; d <= cls.domain_size(); ++d) {
        std::vector<std::vector<int>> subsets;
        std::vector<int> current;
        all_subsets(cls.domain_size(), d, 0, current, subsets);
        bool found = false;
        for (const auto& s : subsets)
            if (subset_shattered(cls, s)) {
                found = true;
                break;
            }
        if (!found) break;
        best = d;
    }
    return best;
}

namespace {

std::int64_t shatter_rec(const concept_class& cls, const std::vector<int>& region, int h) {
    if (region.empty()) return 0;
    if (h == 0) return 1;
    std::int64_t best = 0;
    for (int x = 0; x < cls.domain_size(); ++x) {
        std::vector<int> in, out;
        for (int c : region)
            (cls.member(c, x) ? in : out).push_back(c);
        best = std::max(best, shatter_rec(cls, in, h - 1) + shatter_rec(cls, out, h - 1));
    }
    return best;
}

} // namespace

std::int64_t shatter(const concept_class& cls, int height) {
    std::vector<int> all(static_cast<std::size_t>(cls.size()));
    for (int c = 0; c < cls.size(); ++c) all[static_cast<std::size_t>(c)] = c;
    return shatter_rec(cls, all, height);
}

int ldim(const concept_class& cls) {
    int n = 0;
    while (shatter(cls, n + 1) == (std::int64_t{1} << (n + 1))) ++n;
    return n;
}

namespace {

int value_rec(const concept_class& cls, const std::vector<int>& space) {
    if (space.size() <= 1) return 0;
    int best = 0;
    for (int x = 0; x < cls.domain_size(); ++x) {
        std::vector<int> in, out;
        for (int c : space)
            (cls.member(c, x) ? in : out).push_back(c);
        if (in.empty() || out.empty()) continue;
        int v1 = value_rec(cls, in);
        int v0 = value_rec(cls, out);
        int if_pred0 = std::max(v0, 1 + v1);
        int if_pred1 = std::max(v1, 1 + v0);
        best = std::max(best, std::min(if_pred0, if_pred1));
    }
    return best;
}

int rank_rec(const std::vector<std::vector<int>>& matrix, const std::vector<int>& region) {
    if (region.size() <= 1) return 0;
    int best = 0;
    const int cols = static_cast<int>(matrix.front().size());
    for (int a = 0; a < cols; ++a) {
        std::vector<int> in, out;
        for (int r : region)
            (matrix[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)] ? in : out)
                .push_back(r);
        if (in.empty() || out.empty()) continue;
        best = std::max(best, 1 + std::min(rank_rec(matrix, in), rank_rec(matrix, out)));
    }
    return best;
}

} // namespace

int game_value(const concept_class& cls) {
    std::vector<int> all(static_cast<std::size_t>(cls.size()));
    for (int c = 0; c < cls.size(); ++c) all[static_cast<std::size_t>(c)] = c;
    return value_rec(cls, all);
}

int rank(const std::vector<std::vector<int>>& matrix) {
    std::vector<int> all(matrix.size());
    for (std::size_t r = 0; r < matrix.size(); ++r) all[r] = static_cast<int>(r);
    return rank_rec(matrix, all);
}

} // namespace thicket::oracle
