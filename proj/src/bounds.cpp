#include "entbounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace entb {

double pow0(double base, double exponent)
{
    if (exponent == 0.0)
        return 1.0;
    return std::pow(base, exponent);
}

namespace {

constexpr double kLemmaSlack = 1e-12;

void check_exponent(double exponent)
{
    if (!(exponent >= 0.0 && exponent <= 2.0))
        throw std::invalid_argument("exponent must lie in [0, 2], got " + std::to_string(exponent));
}

double upsilon_of(double p, double x)
{
    const double px = pow0(p, x);
    const double q = (1.0 + p) * (1.0 + p);
    return (pow0(1.0 + p, x) - 1.0) / px - x * p / (q * px);
}

double phi_of(double p, double x)
{
    return (pow0(1.0 + p, x) - 1.0) / pow0(p, x);
}

// Groups that stay in the lemma recursion, in their original order.
struct Compacted {
    std::vector<double> a;
    std::vector<std::size_t> origin;  // original group index of a[l]
    double total = 0.0;
};

Compacted compact(std::span<const double> sums)
{
    Compacted c;
    double tiny = 0.0;
    for (std::size_t g = 0; g < sums.size(); ++g) {
        const double v = sums[g];
        if (!(v >= -kTolNum) || !std::isfinite(v))
            throw std::invalid_argument("group CoA^2 values must be finite and non-negative");
        c.total += std::max(v, 0.0);
        if (v < kTolNum) {
            tiny += std::max(v, 0.0);
        } else {
            c.a.push_back(v);
            c.origin.push_back(g);
        }
    }
    if (!c.a.empty())
        c.a.back() += tiny;
    return c;
}

std::vector<double> ratios(const std::vector<double>& a)
{
    std::vector<double> t;
    if (a.size() < 2)
        return t;
    double tail = 0.0;
    t.assign(a.size() - 1, 0.0);
    for (std::size_t l = a.size() - 1; l-- > 0;) {
        tail += a[l + 1];
        t[l] = a[l] > 0.0 ? tail / a[l] : (tail > 0.0 ? INFINITY : 0.0);
    }
    return t;
}

double chain_sum(const std::vector<double>& a, double x, double weight)
{
    double s = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l)
        s += pow0(weight, static_cast<double>(l)) * pow0(a[l], x);
    return s;
}

}  // namespace

LemmaCoefficients lemma_rhs(double t, double p, double x)
{
    if (!(p > 0.0 && p <= 1.0))
        throw std::domain_error("lemma requires 0 < p <= 1, got p = " + std::to_string(p));
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("lemma requires 0 <= x <= 1, got x = " + std::to_string(x));
    if (!(t >= 0.0) || t > p + kLemmaSlack)
        throw std::domain_error("lemma requires 0 <= t <= p, got t = " + std::to_string(t) +
                                ", p = " + std::to_string(p));
    const double q = (1.0 + p) * (1.0 + p);
    return {1.0 + x * t / q, upsilon_of(p, x), t, p, x};
}

std::array<double, 6> chain_values(double t, double p, double x)
{
    const auto lc = lemma_rhs(t, p, x);
    const double tx = pow0(t, x);
    return {pow0(1.0 + t, x),
            lc.rhs(),
            1.0 + phi_of(p, x) * tx,
            1.0 + (pow0(2.0, x) - 1.0) * tx,
            1.0 + x * tx,
            1.0 + tx};
}

// ---------------------------------------------------------------------------

void Grouping::validate(std::span<const std::size_t> partners) const
{
    std::vector<std::size_t> seen;
    for (const auto& g : groups) {
        if (g.empty())
            throw std::invalid_argument("grouping contains an empty group");
        seen.insert(seen.end(), g.begin(), g.end());
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("grouping assigns a partner to more than one group");
    std::vector<std::size_t> want(partners.begin(), partners.end());
    std::sort(want.begin(), want.end());
    if (seen != want)
        throw std::invalid_argument("grouping must cover exactly the partner subsystems");
}

Grouping Grouping::singletons(std::span<const std::size_t> order)
{
    Grouping g;
    for (auto i : order)
        g.groups.push_back({i});
    return g;
}

Grouping Grouping::single_group(std::span<const std::size_t> partners)
{
    std::vector<std::size_t> all(partners.begin(), partners.end());
    std::sort(all.begin(), all.end());
    return Grouping{{all}};
}

bool BoundParams::all_feasible() const
{
    return std::all_of(feasible.begin(), feasible.end(), [](bool f) { return f; });
}

InfeasibleParams::InfeasibleParams(std::size_t level, double minimal_p)
    : std::domain_error("parameter infeasible at level " + std::to_string(level) +
                        ": needs p >= " + std::to_string(minimal_p) +
                        (minimal_p > 1.0 ? " (exceeds 1, regroup)" : "")),
      level_(level), minimal_p_(minimal_p)
{
}

std::vector<double> level_ratios(std::span<const double> group_coa_sq)
{
    return ratios(std::vector<double>(group_coa_sq.begin(), group_coa_sq.end()));
}

BoundParams resolve_params(std::span<const double> group_coa_sq, double exponent, const PChoice& choice)
{
    check_exponent(exponent);
    const std::size_t levels = group_coa_sq.empty() ? 0 : group_coa_sq.size() - 1;
    BoundParams out{exponent, std::vector<double>(levels, 1.0), std::vector<bool>(levels, true)};

    if (choice.mode == PMode::Explicit) {
        if (choice.values.size() < levels)
            throw std::invalid_argument("expected " + std::to_string(levels) + " p value(s), got " +
                                        std::to_string(choice.values.size()));
        for (std::size_t l = 0; l < levels; ++l) {
            if (!(choice.values[l] > 0.0 && choice.values[l] <= 1.0))
                throw std::invalid_argument("p values must lie in (0, 1]");
            out.p[l] = choice.values[l];
        }
    }

    const auto c = compact(group_coa_sq);
    const auto t = ratios(c.a);
    for (std::size_t l = 0; l < t.size(); ++l) {
        const std::size_t level = c.origin[l];
        switch (choice.mode) {
        case PMode::Auto:
            out.p[level] = std::clamp(t[l], kMinP, 1.0);
            break;
        case PMode::One:
            out.p[level] = 1.0;
            break;
        case PMode::Explicit:
            break;
        }
        out.feasible[level] = t[l] <= out.p[level] + kTolNum;
    }
    return out;
}

ThetaResult theta(std::span<const double> group_coa_sq, const BoundParams& params, std::string focus)
{
    check_exponent(params.exponent);
    const double x = params.exponent / 2.0;
    const auto c = compact(group_coa_sq);

    ThetaResult out;
    out.focus = std::move(focus);
    if (c.a.empty()) {
        out.value = pow0(c.total, x);
        return out;
    }

    const auto t = ratios(c.a);
    double carried = 1.0;  // prod of upsilon over completed levels
    for (std::size_t l = 0; l < t.size(); ++l) {
        const std::size_t level = c.origin[l];
        if (level >= params.p.size())
            throw std::invalid_argument("missing p for level " + std::to_string(level + 1));
        const double p = params.p[level];
        if (t[l] > p + kTolNum)
            throw InfeasibleParams(level + 1, t[l]);
        const auto lc = lemma_rhs(std::min(t[l], p), p, x);
        const double w = carried * lc.omega;
        out.per_level.push_back({c.a[l], lc.omega, lc.upsilon, w});
        out.value += w * pow0(c.a[l], x);
        carried *= lc.upsilon;
    }
    out.per_level.push_back({c.a.back(), 1.0, 1.0, carried});
    out.value += carried * pow0(c.a.back(), x);
    return out;
}

double theta_variant(std::span<const double> group_coa_sq, const BoundParams& params, ThetaVariant variant)
{
    check_exponent(params.exponent);
    const double x = params.exponent / 2.0;
    switch (variant) {
    case ThetaVariant::Parametrized:
        return theta(group_coa_sq, params).value;
    case ThetaVariant::PEqualsOne: {
        BoundParams ones = params;
        std::fill(ones.p.begin(), ones.p.end(), 1.0);
        return theta(group_coa_sq, ones).value;
    }
    default:
        break;
    }

    const auto c = compact(group_coa_sq);
    if (c.a.empty())
        return pow0(c.total, x);
    switch (variant) {
    case ThetaVariant::PhiChain: {
        double s = 0.0, w = 1.0;
        for (std::size_t l = 0; l < c.a.size(); ++l) {
            s += w * pow0(c.a[l], x);
            if (l + 1 < c.a.size()) {
                const std::size_t level = c.origin[l];
                if (level >= params.p.size())
                    throw std::invalid_argument("missing p for level " + std::to_string(level + 1));
                w *= phi_of(params.p[level], x);
            }
        }
        return s;
    }
    case ThetaVariant::Pow2Chain:
        return chain_sum(c.a, x, pow0(2.0, x) - 1.0);
    case ThetaVariant::HalfExponentChain:
        return chain_sum(c.a, x, x);
    case ThetaVariant::TrivialSum:
        return chain_sum(c.a, x, 1.0);
    default:
        throw std::logic_error("unhandled theta variant");
    }
}

// ---------------------------------------------------------------------------

bool BoundReport::fell_back() const
{
    return std::any_of(terms.begin(), terms.end(), [](const FocusTerm& t) { return t.fell_back; });
}

BoundContext::BoundContext(PureState psi) : psi_(std::move(psi)), pairs_(psi_) {}

double BoundContext::concurrence(const std::vector<std::string>& left) const
{
    return pure_concurrence(psi_, Bipartition::complement_of(left, shape()));
}

std::vector<std::size_t> BoundContext::partners_by_coa(std::size_t focus) const
{
    std::vector<std::size_t> partners;
    for (std::size_t j = 0; j < shape().size(); ++j)
        if (j != focus)
            partners.push_back(j);
    std::stable_sort(partners.begin(), partners.end(), [&](std::size_t i, std::size_t j) {
        return pairs_.coa(focus, i) > pairs_.coa(focus, j);
    });
    return partners;
}

namespace {

std::vector<double> group_sums(const PairTable& pairs, std::size_t focus, const Grouping& g)
{
    std::vector<double> sums;
    for (const auto& grp : g.groups) {
        double s = 0.0;
        for (auto j : grp)
            s += pairs.coa(focus, j) * pairs.coa(focus, j);
        sums.push_back(s);
    }
    return sums;
}

void fill_variants(FocusTerm& term, const std::vector<double>& sums)
{
    term.theta = theta(sums, term.params, term.focus);
    term.variants["ours"] = term.theta.value;
    term.variants["p1_specialization"] = theta_variant(sums, term.params, ThetaVariant::PEqualsOne);
    term.variants["phi_chain"] = theta_variant(sums, term.params, ThetaVariant::PhiChain);
    term.variants["pow2_chain"] = theta_variant(sums, term.params, ThetaVariant::Pow2Chain);
    term.variants["beta_half_chain"] = theta_variant(sums, term.params, ThetaVariant::HalfExponentChain);
    term.variants["trivial_sum"] = theta_variant(sums, term.params, ThetaVariant::TrivialSum);
}

const FocusOptions& options_for(const FocusOptionMap& m, const std::string& label)
{
    static const FocusOptions defaults{};
    auto it = m.find(label);
    return it == m.end() ? defaults : it->second;
}

std::vector<std::string> variant_names()
{
    std::vector<std::string> v{"ours"};
    v.insert(v.end(), kComparatorNames.begin(), kComparatorNames.end());
    return v;
}

// Evaluates `combine` for "ours" and every comparator.
template <class F>
BoundReport make_report(std::string name, BoundDirection dir, double exponent, double lhs,
                        std::vector<FocusTerm> terms, F combine)
{
    BoundReport r;
    r.name = std::move(name);
    r.direction = dir;
    r.exponent = exponent;
    r.lhs = lhs;
    r.terms = std::move(terms);
    for (const auto& v : variant_names()) {
        const double value = combine(v);
        if (v == "ours")
            r.ours = value;
        else
            r.comparators[v] = value;
    }
    r.gap = dir == BoundDirection::Upper ? r.ours - r.lhs : r.lhs - r.ours;
    return r;
}

void require_qubits(const BoundContext& ctx, std::size_t min_n, const char* what)
{
    if (ctx.shape().size() < min_n)
        throw std::invalid_argument(std::string(what) + " needs at least " + std::to_string(min_n) +
                                    " subsystems, got " + std::to_string(ctx.shape().size()));
}

}  // namespace

FocusTerm BoundContext::focus_term(const std::string& focus, double exponent, const FocusOptions& options) const
{
    check_exponent(exponent);
    const std::size_t fpos = shape().index_of(focus);
    std::vector<std::size_t> partners;
    for (std::size_t j = 0; j < shape().size(); ++j)
        if (j != fpos)
            partners.push_back(j);

    FocusTerm term;
    term.focus = focus;
    if (options.grouping) {
        options.grouping->validate(partners);
        term.grouping = *options.grouping;
    } else {
        const auto order = partners_by_coa(fpos);
        term.grouping = Grouping::singletons(order);
    }

    auto sums = group_sums(pairs_, fpos, term.grouping);
    term.params = resolve_params(sums, exponent, options.p);
    if (!term.params.all_feasible()) {
        const auto t = level_ratios(sums);
        for (std::size_t l = 0; l < term.params.feasible.size(); ++l)
            if (!term.params.feasible[l]) {
                term.infeasible_level = l + 1;
                term.infeasible_minimal_p = l < t.size() ? t[l] : INFINITY;
                break;
            }
        term.fell_back = true;
        term.grouping = Grouping::single_group(partners);
        sums = group_sums(pairs_, fpos, term.grouping);
        term.params = resolve_params(sums, exponent, PChoice{PMode::Auto, {}});
    }
    fill_variants(term, sums);
    return term;
}

BoundReport polygamy_bound_coa(const BoundContext& ctx, const std::string& focus, double exponent,
                               const FocusOptions& options)
{
    check_exponent(exponent);
    auto term = ctx.focus_term(focus, exponent, options);
    const double lhs = pow0(ctx.concurrence({focus}), exponent);
    return make_report("polygamy_coa", BoundDirection::Upper, exponent, lhs, {term},
                       [&](const std::string& v) { return term.variants.at(v); });
}

namespace {

struct ABTerms {
    FocusTerm a, b;
    double sum_a, sum_b;  // sum over partners of C^2 with focus A (resp. B)
};

ABTerms ab_terms(const BoundContext& ctx, double exponent, const FocusOptionMap& options)
{
    const auto pa = ctx.shape().index_of("A");
    const auto pb = ctx.shape().index_of("B");
    return {ctx.focus_term("A", exponent, options_for(options, "A")),
            ctx.focus_term("B", exponent, options_for(options, "B")),
            ctx.pairs().concurrence_sq_sum(pa), ctx.pairs().concurrence_sq_sum(pb)};
}

double ab_lower(const ABTerms& t, double x, const std::string& v)
{
    return std::max(pow0(t.sum_a, x) - t.b.variants.at(v), pow0(t.sum_b, x) - t.a.variants.at(v));
}

}  // namespace

BoundReport monogamy_lower_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options)
{
    check_exponent(exponent);
    require_qubits(ctx, 4, "AB-cut monogamy bound");
    const auto t = ab_terms(ctx, exponent, options);
    const double x = exponent / 2.0;
    const double lhs = pow0(ctx.concurrence({"A", "B"}), exponent);
    return make_report("monogamy_lower_AB", BoundDirection::Lower, exponent, lhs, {t.a, t.b},
                       [&](const std::string& v) { return ab_lower(t, x, v); });
}

BoundReport polygamy_upper_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options)
{
    check_exponent(exponent);
    require_qubits(ctx, 4, "AB-cut polygamy bound");
    const auto t = ab_terms(ctx, exponent, options);
    const double lhs = pow0(ctx.concurrence({"A", "B"}), exponent);
    return make_report("polygamy_upper_AB", BoundDirection::Upper, exponent, lhs, {t.a, t.b},
                       [&](const std::string& v) { return t.a.variants.at(v) + t.b.variants.at(v); });
}

Sandwich negativity_bounds_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options)
{
    check_exponent(exponent);
    require_qubits(ctx, 4, "AB-cut negativity bounds");
    const auto t = ab_terms(ctx, exponent, options);
    const double x = exponent / 2.0;
    const auto cut = Bipartition::complement_of({"A", "B"}, ctx.shape());
    const double lhs = pow0(negativity(ctx.state(), cut), exponent);
    const auto r = static_cast<double>(schmidt_rank(ctx.state(), cut));
    const double factor = pow0(r * (r - 1.0) / 2.0, x);

    Sandwich s;
    s.lower = make_report("negativity_lower_AB", BoundDirection::Lower, exponent, lhs, {t.a, t.b},
                          [&](const std::string& v) { return ab_lower(t, x, v); });
    s.upper = make_report("negativity_upper_AB", BoundDirection::Upper, exponent, lhs, {t.a, t.b},
                          [&](const std::string& v) {
                              return factor * (t.a.variants.at(v) + t.b.variants.at(v));
                          });
    return s;
}

Sandwich tripartite_bounds(const BoundContext& ctx, double exponent, const FocusOptionMap& options)
{
    check_exponent(exponent);
    require_qubits(ctx, 5, "tripartite bounds");
    const auto t = ab_terms(ctx, exponent, options);
    const std::string c1 = ctx.shape().labels()[2];
    const auto tc = ctx.focus_term(c1, exponent, options_for(options, c1));
    const double sum_c = ctx.pairs().concurrence_sq_sum(2);
    const double x = exponent / 2.0;
    const double lhs = pow0(ctx.concurrence({"A", "B", c1}), exponent);

    Sandwich s;
    s.lower = make_report("tripartite_lower", BoundDirection::Lower, exponent, lhs, {t.a, t.b, tc},
                          [&](const std::string& v) {
                              const double via_ab = ab_lower(t, x, v) - tc.variants.at(v);
                              const double via_c = pow0(sum_c, x) - t.a.variants.at(v) - t.b.variants.at(v);
                              return std::max(via_ab, via_c);
                          });
    s.upper = make_report("tripartite_upper", BoundDirection::Upper, exponent, lhs, {t.a, t.b, tc},
                          [&](const std::string& v) {
                              return t.a.variants.at(v) + t.b.variants.at(v) + tc.variants.at(v);
                          });
    return s;
}

BoundReport multi_partition_polygamy(const BoundContext& ctx, const std::vector<std::string>& left,
                                     double exponent, const FocusOptionMap& options)
{
    check_exponent(exponent);
    const auto cut = Bipartition::complement_of(left, ctx.shape());
    std::vector<FocusTerm> terms;
    for (const auto& focus : cut.left)
        terms.push_back(ctx.focus_term(focus, exponent, options_for(options, focus)));
    const double lhs = pow0(pure_concurrence(ctx.state(), cut), exponent);
    return make_report("multi_partition_polygamy", BoundDirection::Upper, exponent, lhs, terms,
                       [&](const std::string& v) {
                           double s = 0.0;
                           for (const auto& term : terms)
                               s += term.variants.at(v);
                           return s;
                       });
}

}  // namespace entb
