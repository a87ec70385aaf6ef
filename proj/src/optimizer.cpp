#include "entbounds/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace entb {

BoundParams minimal_admissible_p(std::span<const double> group_coa_sq, double exponent)
{
    return resolve_params(group_coa_sq, exponent, PChoice{PMode::Auto, {}});
}

namespace {

void collect_set_partitions(std::span<const std::size_t> items, std::size_t next,
                            std::vector<std::vector<std::size_t>>& blocks,
                            std::vector<std::vector<std::vector<std::size_t>>>& out)
{
    if (next == items.size()) {
        out.push_back(blocks);
        return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        blocks[b].push_back(items[next]);
        collect_set_partitions(items, next + 1, blocks, out);
        blocks[b].pop_back();
    }
    blocks.push_back({items[next]});
    collect_set_partitions(items, next + 1, blocks, out);
    blocks.pop_back();
}

struct Candidate {
    Grouping grouping;
    BoundParams params;
    double value = std::numeric_limits<double>::infinity();
    bool feasible = false;
};

// a is preferred over b: smaller value, then smaller grouping, then smaller k.
bool preferred(const Candidate& a, const Candidate& b)
{
    if (!b.feasible)
        return a.feasible;
    if (!a.feasible)
        return false;
    if (a.value < b.value - kTieTol)
        return true;
    if (b.value < a.value - kTieTol)
        return false;
    if (a.grouping.groups != b.grouping.groups)
        return a.grouping.groups < b.grouping.groups;
    return a.grouping.k() < b.grouping.k();
}

std::vector<double> sums_for(const PairTable& pairs, std::size_t focus, const Grouping& g)
{
    std::vector<double> s;
    s.reserve(g.k());
    for (const auto& grp : g.groups) {
        double v = 0.0;
        for (auto j : grp)
            v += pairs.coa(focus, j) * pairs.coa(focus, j);
        s.push_back(v);
    }
    return s;
}

void evaluate(Candidate& c, const PairTable& pairs, std::size_t focus, double exponent)
{
    const auto sums = sums_for(pairs, focus, c.grouping);
    c.params = minimal_admissible_p(sums, exponent);
    c.feasible = c.params.all_feasible();
    if (c.feasible)
        c.value = theta(sums, c.params).value;
}

void evaluate_all(std::vector<Candidate>& cands, const PairTable& pairs, std::size_t focus, double exponent,
                  Execution exec)
{
    const auto n = static_cast<std::ptrdiff_t>(cands.size());
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            evaluate(cands[static_cast<std::size_t>(i)], pairs, focus, exponent);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            evaluate(cands[static_cast<std::size_t>(i)], pairs, focus, exponent);
    }
}

OptimizationResult reduce(std::vector<Candidate>& cands, Strategy strategy)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < cands.size(); ++i)
        if (preferred(cands[i], cands[best]))
            best = i;
    if (cands.empty() || !cands[best].feasible)
        throw std::logic_error("no feasible grouping found");
    return {std::move(cands[best].params), std::move(cands[best].grouping), cands[best].value, cands.size(),
            strategy};
}

}  // namespace

std::vector<Grouping> ordered_set_partitions(std::span<const std::size_t> items)
{
    std::vector<std::vector<std::vector<std::size_t>>> unordered;
    std::vector<std::vector<std::size_t>> blocks;
    if (!items.empty())
        collect_set_partitions(items, 0, blocks, unordered);

    std::vector<Grouping> out;
    for (auto& part : unordered) {
        for (auto& b : part)
            std::sort(b.begin(), b.end());
        std::sort(part.begin(), part.end());
        do {
            out.push_back(Grouping{part});
        } while (std::next_permutation(part.begin(), part.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

OptimizationResult optimize(const BoundContext& ctx, const std::string& focus, double exponent, Strategy strategy,
                            Execution exec)
{
    if (!(exponent >= 0.0 && exponent <= 2.0))
        throw std::invalid_argument("exponent must lie in [0, 2]");
    const std::size_t fpos = ctx.shape().index_of(focus);
    const auto order = ctx.partners_by_coa(fpos);
    const auto& pairs = ctx.pairs();

    std::vector<Candidate> cands;
    if (strategy == Strategy::Exhaustive) {
        if (order.size() > kMaxExhaustivePartners)
            throw std::invalid_argument("exhaustive search supports at most " +
                                        std::to_string(kMaxExhaustivePartners) + " partners, got " +
                                        std::to_string(order.size()));
        std::vector<std::size_t> sorted(order);
        std::sort(sorted.begin(), sorted.end());
        for (auto& g : ordered_set_partitions(sorted))
            cands.push_back({std::move(g), {}, 0.0, false});
        evaluate_all(cands, pairs, fpos, exponent, exec);
        return reduce(cands, strategy);
    }

    // Greedy: start from descending singletons and merge the first infeasible head into its
    // successor until every level is admissible. The single group is always a candidate.
    Candidate cur{Grouping::singletons(order), {}, 0.0, false};
    evaluate(cur, pairs, fpos, exponent);
    cands.push_back(cur);
    while (!cur.feasible && cur.grouping.k() > 1) {
        std::size_t level = 0;
        while (level < cur.params.feasible.size() && cur.params.feasible[level])
            ++level;
        auto& gs = cur.grouping.groups;
        gs[level].insert(gs[level].end(), gs[level + 1].begin(), gs[level + 1].end());
        std::sort(gs[level].begin(), gs[level].end());
        gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(level) + 1);
        evaluate(cur, pairs, fpos, exponent);
        cands.push_back(cur);
    }
    Candidate whole{Grouping::single_group(order), {}, 0.0, false};
    evaluate(whole, pairs, fpos, exponent);
    cands.push_back(whole);
    return reduce(cands, strategy);
}

}  // namespace entb
