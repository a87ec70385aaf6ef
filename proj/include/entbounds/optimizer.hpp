#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "entbounds/bounds.hpp"
#include "entbounds/execution.hpp"

namespace entb {

enum class Strategy { Exhaustive, Greedy };

struct OptimizationResult {
    BoundParams best_params;
    Grouping best_grouping;
    double best_value = 0.0;
    std::size_t evaluations = 0;
    Strategy strategy = Strategy::Exhaustive;
};

// Exhaustive search refuses more partners than this.
inline constexpr std::size_t kMaxExhaustivePartners = 5;

// Values closer than this are treated as ties.
inline constexpr double kTieTol = 1e-12;

/// p_l = clamp(t_l, 1e-6, 1); levels with t_l > 1 are flagged infeasible.
BoundParams minimal_admissible_p(std::span<const double> group_coa_sq, double exponent = 2.0);

/// Every ordered set partition of `items`, each group sorted ascending.
/// Five items give 541 partitions.
std::vector<Grouping> ordered_set_partitions(std::span<const std::size_t> items);

/// Smallest theta over groupings for one focus, always at the minimal admissible p.
OptimizationResult optimize(const BoundContext& ctx, const std::string& focus, double exponent,
                            Strategy strategy, Execution exec = Execution::Parallel);

}  // namespace entb
