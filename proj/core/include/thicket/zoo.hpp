#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "thicket/concept_class.hpp"

namespace thicket {

/// Sparse bivariate integer polynomial f(x, a), used to cut fibers over a
/// prime field: concept_a = { x : f(x, a) = 0 mod p }.
struct poly2 {
    struct term {
        long long coef = 0;
        int xdeg = 0;
        int adeg = 0;
    };
    std::vector<term> terms;

    /// Parses e.g. "x - a", "x^2 + 3*x*a - a^2 + 1", "-2x^3+a".
    static poly2 parse(std::string_view text);

    long long eval_mod(long long x, long long a, long long p) const;
    std::string to_string() const;
};

concept_class make_powerset(int n);
concept_class make_singletons(int n);
/// Initial segments {x : x < k} for k = 0..n: the canonical linear-order family.
concept_class make_thresholds(int n);
/// All cosets of all subgroups of Z_m.
concept_class make_cosets(int m);
/// Solution sets of f(x, a) = 0 over the prime field F_p, one per parameter a.
concept_class make_variety_fibers(int p, const poly2& f);
concept_class make_random_class(int n, int m, std::uint64_t seed);

/// Name-based dispatcher for the CLI. Families: powerset, singletons,
/// thresholds, cosets, variety_fibers, random. Parameters by name: n, m, p,
/// poly, seed.
concept_class zoo_generate(const std::string& family,
                           const std::map<std::string, std::string>& params);

/// A staircase witness: examples a_1..a_k and concepts b_1..b_k with
/// a_i in b_j exactly when i <= j. Rows and columns are automatically
/// distinct; k is bounded by min(|X|, |C|).
struct half_graph_witness {
    int size = 0;
    std::vector<int> rows;
    std::vector<int> cols;
};

struct half_graph_options {
    bool greedy = false;          // fall back to a greedy lower bound
    std::int64_t state_budget;    // memoized states before the exact search gives up
    half_graph_options();
};

/// Maximum half-graph size with a witness. Exact search is branch-and-bound
/// with memoization on (candidate rows, candidate columns); past the state
/// budget it throws unless greedy fallback was requested.
half_graph_witness max_half_graph(const concept_class& cls);
half_graph_witness max_half_graph(const concept_class& cls, const half_graph_options& opts);

/// Transpose class: domain = concept indices, one concept per example x
/// collecting {c : x in c}, deduplicated.
concept_class dual_class(const concept_class& cls);

} // namespace thicket
