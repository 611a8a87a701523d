#pragma once

// Independent brute-force oracles for cross-validating the library. These
// deliberately avoid the production code paths: no memoization, no pruning,
// no shared caches. They are exponential and meant for small inputs only.

#include <cstdint>
#include <vector>

#include "thicket/concept_class.hpp"
#include "thicket/dimensions.hpp"

namespace thicket::oracle {

/// VC dimension by checking every subset of every size for shattering,
/// collecting realized label patterns as strings.
int vc(const concept_class& cls);

/// Maximum number of well-labeled leaves over all height-h element trees,
/// by plain recursion over root labels and concept regions.
std::int64_t shatter(const concept_class& cls, int height);

/// Littlestone dimension as the largest n with shatter(cls, n) == 2^n.
int ldim(const concept_class& cls);

/// Exact minimax mistake-game value by plain recursion on explicit
/// concept-index lists.
int game_value(const concept_class& cls);

/// 2-rank of a full-region relation by plain recursion.
int rank(const std::vector<std::vector<int>>& matrix);

} // namespace thicket::oracle
