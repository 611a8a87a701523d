#include "thicket/zoo.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "thicket/errors.hpp"
#include "thicket/rng.hpp"

namespace thicket {

namespace {

int max_powerset_points() {
    return static_cast<int>(cap_from_env("THICKET_MAX_POWERSET_POINTS", 16));
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

} // namespace

poly2 poly2::parse(std::string_view text) {
    poly2 out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size())
        throw std::invalid_argument("poly2: empty polynomial");

    bool first = true;
    while (true) {
        skip_ws();
        if (i >= text.size()) break;

        long long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("poly2: expected '+' or '-' between terms");
        }
        first = false;
        skip_ws();

        term t;
        t.coef = sign;
        bool saw_factor = false;
        bool explicit_coef = false;

        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            long long value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                value = value * 10 + (text[i] - '0');
                ++i;
            }
            t.coef = sign * value;
            saw_factor = true;
            explicit_coef = true;
        }

        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
            if (i >= text.size() || (text[i] != 'x' && text[i] != 'a')) break;
            char var = text[i];
            ++i;
            int deg = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
                    throw std::invalid_argument("poly2: exponent must be an integer");
                deg = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    deg = deg * 10 + (text[i] - '0');
                    ++i;
                }
            }
            if (var == 'x')
                t.xdeg += deg;
            else
                t.adeg += deg;
            saw_factor = true;
        }

        if (!saw_factor)
            throw std::invalid_argument("poly2: expected a coefficient, 'x' or 'a'");
        (void)explicit_coef;
        out.terms.push_back(t);
    }
    if (out.terms.empty())
        throw std::invalid_argument("poly2: empty polynomial");
    return out;
}

long long poly2::eval_mod(long long x, long long a, long long p) const {
    auto pow_mod = [p](long long base, int exp) {
        long long result = 1 % p;
        base %= p;
        if (base < 0) base += p;
        while (exp > 0) {
            if (exp & 1) result = result * base % p;
            base = base * base % p;
            exp >>= 1;
        }
        return result;
    };
    long long total = 0;
    for (const auto& t : terms) {
        long long c = t.coef % p;
        if (c < 0) c += p;
        total = (total + c * pow_mod(x, t.xdeg) % p * pow_mod(a, t.adeg)) % p;
    }
    return total;
}

std::string poly2::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (i > 0) out << (t.coef < 0 ? " - " : " + ");
        else if (t.coef < 0) out << "-";
        long long mag = t.coef < 0 ? -t.coef : t.coef;
        bool has_var = t.xdeg > 0 || t.adeg > 0;
        if (mag != 1 || !has_var) out << mag;
        if (t.xdeg > 0) {
            out << "x";
            if (t.xdeg > 1) out << "^" << t.xdeg;
        }
        if (t.adeg > 0) {
            out << "a";
            if (t.adeg > 1) out << "^" << t.adeg;
        }
    }
    return out.str();
}

concept_class make_powerset(int n) {
    if (n <= 0)
        throw std::invalid_argument("make_powerset: n must be positive");
    if (n > max_powerset_points())
        throw cap_exceeded("make_powerset: 2^" + std::to_string(n) +
                           " concepts exceeds the cap; raise THICKET_MAX_POWERSET_POINTS");
    std::vector<bitvec> concepts;
    concepts.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bitvec b(n);
        for (int x = 0; x < n; ++x)
            if ((mask >> x) & 1) b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(n, std::move(concepts));
}

concept_class make_singletons(int n) {
    if (n <= 0)
        throw std::invalid_argument("make_singletons: n must be positive");
    std::vector<bitvec> concepts;
    for (int x = 0; x < n; ++x) {
        bitvec b(n);
        b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(n, std::move(concepts));
}

concept_class make_thresholds(int n) {
    if (n <= 0)
        throw std::invalid_argument("make_thresholds: n must be positive");
    std::vector<bitvec> concepts;
    for (int k = 0; k <= n; ++k) {
        bitvec b(n);
        for (int x = 0; x < k; ++x) b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(n, std::move(concepts));
}

concept_class make_cosets(int m) {
    if (m <= 0)
        throw std::invalid_argument("make_cosets: m must be positive");
    // subgroups of Z_m are dZ_m for each divisor d; the subgroup generated by
    // d has the d classes r + <d> as its cosets
    std::vector<bitvec> concepts;
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        for (int r = 0; r < d; ++r) {
            bitvec b(m);
            for (int x = r; x < m; x += d) b.set(x);
            concepts.push_back(std::move(b));
        }
    }
    return concept_class::from_bitvecs(m, std::move(concepts));
}

concept_class make_variety_fibers(int p, const poly2& f) {
    if (!is_prime(p))
        throw std::invalid_argument("make_variety_fibers: p must be prime");
    std::vector<bitvec> concepts;
    for (int a = 0; a < p; ++a) {
        bitvec b(p);
        for (int x = 0; x < p; ++x)
            if (f.eval_mod(x, a, p) == 0) b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(p, std::move(concepts));
}

concept_class make_random_class(int n, int m, std::uint64_t seed) {
    if (n <= 0 || n > 63)
        throw std::invalid_argument("make_random_class: n must be in 1..63");
    if (m <= 0)
        throw std::invalid_argument("make_random_class: m must be positive");
    if (static_cast<std::uint64_t>(m) > (std::uint64_t{1} << n))
        throw std::invalid_argument("make_random_class: more concepts than subsets");
    rng gen(seed);
    std::vector<std::uint64_t> chosen;
    while (static_cast<int>(chosen.size()) < m) {
        std::uint64_t mask = gen.next_u64() & ((std::uint64_t{1} << n) - 1);
        if (std::find(chosen.begin(), chosen.end(), mask) == chosen.end())
            chosen.push_back(mask);
    }
    std::vector<bitvec> concepts;
    for (std::uint64_t mask : chosen) {
        bitvec b(n);
        for (int x = 0; x < n; ++x)
            if ((mask >> x) & 1) b.set(x);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(n, std::move(concepts));
}

namespace {

int param_int(const std::map<std::string, std::string>& params, const std::string& key) {
    auto it = params.find(key);
    if (it == params.end())
        throw std::invalid_argument("zoo_generate: missing parameter '" + key + "'");
    return std::stoi(it->second);
}

std::uint64_t param_u64(const std::map<std::string, std::string>& params,
                        const std::string& key, std::uint64_t fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stoull(it->second);
}

} // namespace

concept_class zoo_generate(const std::string& family,
                           const std::map<std::string, std::string>& params) {
    if (family == "powerset") return make_powerset(param_int(params, "n"));
    if (family == "singletons") return make_singletons(param_int(params, "n"));
    if (family == "thresholds") return make_thresholds(param_int(params, "n"));
    if (family == "cosets") return make_cosets(param_int(params, "m"));
    if (family == "variety_fibers") {
        auto it = params.find("poly");
        if (it == params.end())
            throw std::invalid_argument("zoo_generate: missing parameter 'poly'");
        return make_variety_fibers(param_int(params, "p"), poly2::parse(it->second));
    }
    if (family == "random")
        return make_random_class(param_int(params, "n"), param_int(params, "m"),
                                 param_u64(params, "seed", 0));
    throw std::invalid_argument("zoo_generate: unknown family '" + family + "'");
}

half_graph_options::half_graph_options()
    : state_budget(cap_from_env("THICKET_MAX_HALF_GRAPH_STATES", 4'000'000)) {}

namespace {

struct pair_hash {
    std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
        std::uint64_t h = k.first * 0x9e3779b97f4a7c15ull;
        h ^= k.second + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

/// Exact search over (candidate rows R, candidate columns C): picking the
/// first staircase pair (a, b) with a in b leaves rows outside b and columns
/// containing a, and the subproblem is independent of earlier picks.
struct half_graph_search {
    const concept_class& cls;
    std::int64_t budget;
    std::vector<std::uint64_t> containers;  // per example: mask of concepts containing it
    std::vector<std::uint64_t> nonmembers;  // per concept: mask of examples outside it
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, std::pair<int, int>,
                       pair_hash> memo; // value, packed best pair (a * size + b), -1 if none

    half_graph_search(const concept_class& c, std::int64_t state_budget)
        : cls(c), budget(state_budget) {
        containers.assign(static_cast<std::size_t>(cls.domain_size()), 0);
        nonmembers.assign(static_cast<std::size_t>(cls.size()), 0);
        for (int x = 0; x < cls.domain_size(); ++x)
            for (int c2 = 0; c2 < cls.size(); ++c2)
                if (cls.member(c2, x))
                    containers[static_cast<std::size_t>(x)] |= std::uint64_t{1} << c2;
        for (int c2 = 0; c2 < cls.size(); ++c2)
            for (int x = 0; x < cls.domain_size(); ++x)
                if (!cls.member(c2, x))
                    nonmembers[static_cast<std::size_t>(c2)] |= std::uint64_t{1} << x;
    }

    int best(std::uint64_t rows, std::uint64_t cols) {
        if (rows == 0 || cols == 0) return 0;
        auto key = std::make_pair(rows, cols);
        if (auto it = memo.find(key); it != memo.end()) return it->second.first;
        if (static_cast<std::int64_t>(memo.size()) >= budget)
            throw cap_exceeded("max_half_graph: search bound exceeded (state budget " +
                               std::to_string(budget) + ")");

        int value = 0;
        int best_pair = -1;
        const int bound = std::min(std::popcount(rows), std::popcount(cols));
        for (std::uint64_t rbits = rows; rbits != 0 && value < bound;
             rbits &= rbits - 1) {
            int a = std::countr_zero(rbits);
            std::uint64_t usable = cols & containers[static_cast<std::size_t>(a)];
            for (std::uint64_t cbits = usable; cbits != 0 && value < bound;
                 cbits &= cbits - 1) {
                int b = std::countr_zero(cbits);
                int v = 1 + best(rows & nonmembers[static_cast<std::size_t>(b)],
                                 cols & containers[static_cast<std::size_t>(a)]);
                if (v > value) {
                    value = v;
                    best_pair = a * cls.size() + b;
                }
            }
        }
        memo.emplace(key, std::make_pair(value, best_pair));
        return value;
    }

    void reconstruct(std::uint64_t rows, std::uint64_t cols, half_graph_witness& w) {
        while (rows != 0 && cols != 0) {
            auto it = memo.find(std::make_pair(rows, cols));
            if (it == memo.end() || it->second.second < 0) break;
            int a = it->second.second / cls.size();
            int b = it->second.second % cls.size();
            w.rows.push_back(a);
            w.cols.push_back(b);
            rows &= nonmembers[static_cast<std::size_t>(b)];
            cols &= containers[static_cast<std::size_t>(a)];
        }
    }
};

half_graph_witness greedy_half_graph(const concept_class& cls) {
    half_graph_witness w;
    std::vector<int> rows(static_cast<std::size_t>(cls.domain_size()));
    std::vector<int> cols(static_cast<std::size_t>(cls.size()));
    for (int x = 0; x < cls.domain_size(); ++x) rows[static_cast<std::size_t>(x)] = x;
    for (int c = 0; c < cls.size(); ++c) cols[static_cast<std::size_t>(c)] = c;

    while (!rows.empty() && !cols.empty()) {
        // extend by the member pair that keeps the most future material
        int best_a = -1, best_b = -1, best_score = -1;
        for (int a : rows) {
            for (int b : cols) {
                if (!cls.member(b, a)) continue;
                int keep_rows = 0, keep_cols = 0;
                for (int r : rows)
                    if (!cls.member(b, r)) ++keep_rows;
                for (int c : cols)
                    if (cls.member(c, a)) ++keep_cols;
                int score = std::min(keep_rows, keep_cols);
                if (score > best_score) {
                    best_score = score;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        if (best_a < 0) break;
        w.rows.push_back(best_a);
        w.cols.push_back(best_b);
        std::vector<int> next_rows, next_cols;
        for (int r : rows)
            if (!cls.member(best_b, r)) next_rows.push_back(r);
        for (int c : cols)
            if (cls.member(c, best_a)) next_cols.push_back(c);
        rows = std::move(next_rows);
        cols = std::move(next_cols);
    }
    w.size = static_cast<int>(w.rows.size());
    return w;
}

} // namespace

half_graph_witness max_half_graph(const concept_class& cls) {
    return max_half_graph(cls, half_graph_options{});
}

half_graph_witness max_half_graph(const concept_class& cls, const half_graph_options& opts) {
    if (cls.domain_size() > 64 || cls.size() > 64) {
        if (opts.greedy) return greedy_half_graph(cls);
        throw cap_exceeded("max_half_graph: exact search supports at most 64 examples and "
                           "64 concepts; pass greedy for a lower bound");
    }
    try {
        half_graph_search search(cls, opts.state_budget);
        std::uint64_t rows = cls.domain_size() == 64 ? ~std::uint64_t{0}
                                                     : (std::uint64_t{1} << cls.domain_size()) - 1;
        std::uint64_t cols = cls.size() == 64 ? ~std::uint64_t{0}
                                              : (std::uint64_t{1} << cls.size()) - 1;
        half_graph_witness w;
        w.size = search.best(rows, cols);
        search.reconstruct(rows, cols, w);
        return w;
    } catch (const cap_exceeded&) {
        if (opts.greedy) return greedy_half_graph(cls);
        throw;
    }
}

concept_class dual_class(const concept_class& cls) {
    std::vector<bitvec> concepts;
    concepts.reserve(static_cast<std::size_t>(cls.domain_size()));
    for (int x = 0; x < cls.domain_size(); ++x) {
        bitvec b(cls.size());
        for (int c = 0; c < cls.size(); ++c)
            if (cls.member(c, x)) b.set(c);
        concepts.push_back(std::move(b));
    }
    return concept_class::from_bitvecs(cls.size(), std::move(concepts));
}

} // namespace thicket
