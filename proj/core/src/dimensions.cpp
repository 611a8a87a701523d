#include "thicket/dimensions.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace thicket {

std::int64_t cap_from_env(const char* name, std::int64_t fallback) {
    const char* raw = std::getenv(name);
    if (raw == nullptr) return fallback;
    char* end = nullptr;
    long long v = std::strtoll(raw, &end, 10);
    if (end == raw || v <= 0) return fallback;
    return v;
}

std::size_t ldim_cache::key_hash::operator()(const std::vector<std::uint64_t>& k) const {
    std::uint64_t h = 0x2545f4914f6cdd1dull;
    for (std::uint64_t w : k) h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
}

std::optional<int> ldim_cache::lookup(const std::vector<std::uint64_t>& key) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(key);
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

void ldim_cache::store(const std::vector<std::uint64_t>& key, int value) {
    std::lock_guard<std::mutex> lock(mu_);
    table_.emplace(key, value);
}

std::size_t ldim_cache::entry_count() const {
    std::lock_guard<std::mutex> lock(mu_);
    return table_.size();
}

std::vector<std::uint64_t> canonical_key(const concept_class& cls) {
    std::vector<const bitvec*> sorted;
    sorted.reserve(cls.size());
    for (const auto& b : cls.concepts()) sorted.push_back(&b);
    std::sort(sorted.begin(), sorted.end(),
              [](const bitvec* a, const bitvec* b) { return *a < *b; });

    std::vector<std::uint64_t> key;
    key.reserve(1 + static_cast<std::size_t>(cls.size()) *
                        (static_cast<std::size_t>(cls.domain_size()) / 64 + 1));
    key.push_back(static_cast<std::uint64_t>(cls.domain_size()));
    for (const bitvec* b : sorted)
        key.insert(key.end(), b->words().begin(), b->words().end());
    return key;
}

namespace {

int floor_log2(int m) { return std::bit_width(static_cast<unsigned>(m)) - 1; }

/// True iff the subset of the domain given by `points` is shattered.
bool shattered(const concept_class& cls, const std::vector<int>& points) {
    const int d = static_cast<int>(points.size());
    const std::uint32_t want = 1u << d;
    std::vector<bool> seen(want, false);
    std::uint32_t found = 0;
    for (int c = 0; c < cls.size(); ++c) {
        std::uint32_t pattern = 0;
        for (int i = 0; i < d; ++i)
            if (cls.member(c, points[static_cast<std::size_t>(i)])) pattern |= 1u << i;
        if (!seen[pattern]) {
            seen[pattern] = true;
            if (++found == want) return true;
        }
    }
    return false;
}

bool any_subset_shattered(const concept_class& cls, int d) {
    const int n = cls.domain_size();
    std::vector<int> comb(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) comb[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (shattered(cls, comb)) return true;
        // next lexicographic combination
        int i = d - 1;
        while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - d + i) --i;
        if (i < 0) return false;
        ++comb[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
}

} // namespace

int vc_dim(const concept_class& cls) {
    if (cls.empty())
        throw std::invalid_argument("vc_dim: empty class");
    const int d_max = std::min(cls.domain_size(), floor_log2(cls.size()));
    int best = 0;
    for (int d = 1; d <= d_max; ++d) {
        if (!any_subset_shattered(cls, d)) break; // subsets of shattered sets are shattered
        best = d;
    }
    return best;
}

namespace {

int ldim_rec(const concept_class& cls, ldim_cache& cache) {
    const int m = cls.size();
    if (m == 0) return -1;
    if (m == 1) return 0;

    auto key = canonical_key(cls);
    if (auto hit = cache.lookup(key)) return *hit;

    const int ub = floor_log2(m);
    int best = 0;
    for (int x = 0; x < cls.domain_size(); ++x) {
        concept_class c1 = cls.restrict(x, 1);
        if (c1.size() == 0 || c1.size() == m) continue; // x does not split
        concept_class c0 = cls.restrict(x, 0);
        int v = 1 + std::min(ldim_rec(c0, cache), ldim_rec(c1, cache));
        if (v > best) {
            best = v;
            if (best == ub) break;
        }
    }
    cache.store(key, best);
    return best;
}

} // namespace

int littlestone_dim(const concept_class& cls) {
    ldim_cache cache;
    return littlestone_dim(cls, cache);
}

int littlestone_dim(const concept_class& cls, ldim_cache& cache) {
    if (cls.empty()) return -1;
    return ldim_rec(cls, cache);
}

shatter_caps::shatter_caps()
    : max_height(static_cast<int>(cap_from_env("THICKET_MAX_SHATTER_HEIGHT", 12))),
      max_concepts(static_cast<int>(cap_from_env("THICKET_MAX_CONCEPTS", 1 << 16))) {}

namespace {

struct region_key_hash {
    std::size_t operator()(const std::vector<int>& k) const {
        std::uint64_t h = 0x853c49e6748fea9bull;
        for (int v : k)
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

struct shatter_memo_entry {
    std::int64_t rho = 0;
    int best_x = 0;
};

struct shatter_search {
    const concept_class& cls;
    // memo per height; regions are ascending concept-index vectors, which is
    // already a canonical form relative to the base class
    std::vector<std::unordered_map<std::vector<int>, shatter_memo_entry, region_key_hash>> memo;

    explicit shatter_search(const concept_class& c, int height) : cls(c) {
        memo.resize(static_cast<std::size_t>(height) + 1);
    }

    void split(const std::vector<int>& region, int x,
               std::vector<int>& r1, std::vector<int>& r0) const {
        r1.clear();
        r0.clear();
        for (int c : region)
            (cls.member(c, x) ? r1 : r0).push_back(c);
    }

    std::int64_t rho(const std::vector<int>& region, int h) {
        if (region.empty()) return 0;
        if (h == 0) return 1;
        auto& level = memo[static_cast<std::size_t>(h)];
        if (auto it = level.find(region); it != level.end()) return it->second.rho;

        const std::int64_t bound =
            std::min<std::int64_t>(std::int64_t{1} << h,
                                   static_cast<std::int64_t>(region.size()));
        shatter_memo_entry entry;
        std::vector<int> r1, r0;
        for (int x = 0; x < cls.domain_size(); ++x) {
            split(region, x, r1, r0);
            // left subtree carries the "x in Y" constraint
            std::int64_t v = rho(r1, h - 1) + rho(r0, h - 1);
            if (v > entry.rho) {
                entry.rho = v;
                entry.best_x = x;
                if (entry.rho == bound) break;
            }
        }
        level.emplace(region, entry);
        return entry.rho;
    }

    void build_witness(const std::vector<int>& region, int h, int node,
                       element_tree& tree) const {
        if (h == 0) {
            int leaf = node - tree.internal_count();
            tree.leaf_labels[static_cast<std::size_t>(leaf)] = region.empty() ? 0 : region.front();
            return;
        }
        int x = 0;
        if (!region.empty()) {
            const auto& level = memo[static_cast<std::size_t>(h)];
            x = level.at(region).best_x;
        }
        tree.internal_labels[static_cast<std::size_t>(node)] = x;
        std::vector<int> r1, r0;
        split(region, x, r1, r0);
        build_witness(r1, h - 1, 2 * node + 1, tree);
        build_witness(r0, h - 1, 2 * node + 2, tree);
    }
};

} // namespace

shatter_report thicket_shatter(const concept_class& cls, int height) {
    return thicket_shatter(cls, height, shatter_caps{});
}

shatter_report thicket_shatter(const concept_class& cls, int height, const shatter_caps& caps) {
    if (cls.empty())
        throw std::invalid_argument("thicket_shatter: empty class");
    if (height < 0)
        throw std::invalid_argument("thicket_shatter: height must be non-negative");
    if (height > caps.max_height)
        throw cap_exceeded("thicket_shatter: search bound exceeded (height " +
                           std::to_string(height) + " > cap " +
                           std::to_string(caps.max_height) + ")");
    if (cls.size() > caps.max_concepts)
        throw cap_exceeded("thicket_shatter: search bound exceeded (" +
                           std::to_string(cls.size()) + " concepts > cap " +
                           std::to_string(caps.max_concepts) + ")");

    std::vector<int> all(static_cast<std::size_t>(cls.size()));
    for (int i = 0; i < cls.size(); ++i) all[static_cast<std::size_t>(i)] = i;

    shatter_search search(cls, height);
    shatter_report report;
    report.height = height;
    report.max_well_labeled = search.rho(all, height);

    element_tree tree;
    tree.height = height;
    tree.internal_labels.assign(static_cast<std::size_t>((1 << height) - 1), 0);
    tree.leaf_labels.assign(static_cast<std::size_t>(1 << height), 0);
    search.build_witness(all, height, 0, tree);
    report.witness = std::move(tree);
    return report;
}

subclass_ldim::subclass_ldim(const concept_class& base) : base_(&base) {
    if (base.size() > 64)
        throw cap_exceeded("subclass_ldim: base class has more than 64 concepts");
    full_ = base.size() == 64 ? ~std::uint64_t{0}
                              : (std::uint64_t{1} << base.size()) - 1;
    member_.assign(static_cast<std::size_t>(base.domain_size()), 0);
    for (int x = 0; x < base.domain_size(); ++x)
        for (int c = 0; c < base.size(); ++c)
            if (base.member(c, x)) member_[static_cast<std::size_t>(x)] |= std::uint64_t{1} << c;
    if (base.size() <= 16)
        flat_.assign(std::size_t{1} << base.size(), -2); // -2 marks "unknown"
}

int subclass_ldim::ldim(std::uint64_t mask) {
    if (mask == 0) return -1;
    return ldim_rec(mask);
}

int subclass_ldim::ldim_rec(std::uint64_t mask) {
    const int m = std::popcount(mask);
    if (m <= 1) return m - 1;
    {
        std::lock_guard<std::mutex> lock(mu_);
        if (!flat_.empty()) {
            signed char v = flat_[static_cast<std::size_t>(mask)];
            if (v != -2) return v;
        } else if (auto it = memo_.find(mask); it != memo_.end()) {
            return it->second;
        }
    }
    const int ub = floor_log2(m);
    int best = 0;
    for (int x = 0; x < base_->domain_size(); ++x) {
        std::uint64_t m1 = mask & member_[static_cast<std::size_t>(x)];
        if (m1 == 0 || m1 == mask) continue;
        int v = 1 + std::min(ldim_rec(m1), ldim_rec(mask ^ m1));
        if (v > best) {
            best = v;
            if (best == ub) break;
        }
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (!flat_.empty())
        flat_[static_cast<std::size_t>(mask)] = static_cast<signed char>(best);
    else
        memo_.emplace(mask, best);
    return best;
}

int subclass_ldim::soa_predict(std::uint64_t mask, int example) {
    if (mask == 0)
        throw std::invalid_argument("soa_predict: realizability violated (empty version space)");
    std::uint64_t m1 = mask & member_mask(example);
    return ldim(m1) > ldim(mask ^ m1) ? 1 : 0;
}

rank_region rank_region::from_matrix(const std::vector<std::vector<int>>& matrix) {
    if (matrix.empty())
        throw std::invalid_argument("rank_region: matrix has no rows");
    rank_region rr;
    rr.num_cols = static_cast<int>(matrix.front().size());
    if (rr.num_cols == 0)
        throw std::invalid_argument("rank_region: matrix has no columns");
    for (const auto& row : matrix) {
        if (static_cast<int>(row.size()) != rr.num_cols)
            throw std::invalid_argument("rank_region: ragged matrix");
        bitvec b(rr.num_cols);
        for (int a = 0; a < rr.num_cols; ++a) {
            int v = row[static_cast<std::size_t>(a)];
            if (v != 0 && v != 1)
                throw std::invalid_argument("rank_region: entries must be 0 or 1");
            if (v) b.set(a);
        }
        rr.rows.push_back(std::move(b));
    }
    rr.region.resize(rr.rows.size());
    for (std::size_t r = 0; r < rr.rows.size(); ++r) rr.region[r] = static_cast<int>(r);
    return rr;
}

rank_region rank_region::from_class(const concept_class& cls) {
    rank_region rr;
    rr.num_cols = cls.domain_size();
    rr.rows = cls.concepts();
    rr.region.resize(rr.rows.size());
    for (std::size_t r = 0; r < rr.rows.size(); ++r) rr.region[r] = static_cast<int>(r);
    return rr;
}

namespace {

struct rank_search {
    const rank_region& rr;
    std::unordered_map<std::vector<int>, int, region_key_hash> memo;

    int rank(const std::vector<int>& region) {
        if (region.size() <= 1) return 0;
        if (auto it = memo.find(region); it != memo.end()) return it->second;

        // a region of rank d contains 2^d rows split apart along the way
        const int ub = floor_log2(static_cast<int>(region.size()));
        int best = 0;
        std::vector<int> in, out;
        for (int a = 0; a < rr.num_cols; ++a) {
            in.clear();
            out.clear();
            for (int r : region)
                (rr.rows[static_cast<std::size_t>(r)].test(a) ? in : out).push_back(r);
            if (in.empty() || out.empty()) continue;
            int v = 1 + std::min(rank(in), rank(out));
            if (v > best) {
                best = v;
                if (best == ub) break;
            }
        }
        memo.emplace(region, best);
        return best;
    }
};

} // namespace

int shelah_rank(const rank_region& rr) {
    if (rr.region.empty())
        throw std::invalid_argument("shelah_rank: empty region");
    std::vector<int> region = rr.region;
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    for (int r : region)
        if (r < 0 || r >= static_cast<int>(rr.rows.size()))
            throw std::invalid_argument("shelah_rank: region row index out of range");
    rank_search search{rr, {}};
    return search.rank(region);
}

} // namespace thicket
