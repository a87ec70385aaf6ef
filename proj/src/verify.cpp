#include "entbounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "entbounds/bounds.hpp"
#include "entbounds/format.hpp"

namespace entb {

void VerifyConfig::validate() const
{
    if (qubits < 4 || qubits > 6)
        throw std::invalid_argument("verification needs 4..6 qubits, got " + std::to_string(qubits));
    if (trials < 1)
        throw std::invalid_argument("verification needs at least one trial");
    if (exponents.empty())
        throw std::invalid_argument("verification needs at least one exponent");
    for (double e : exponents)
        if (!(e >= 0.0 && e <= 2.0))
            throw std::invalid_argument("exponents must lie in [0, 2], got " + format_decimal(e));
    if (!std::isfinite(tol))
        throw std::invalid_argument("tolerance must be finite");
}

std::size_t VerifyReport::total_violations() const
{
    std::size_t n = 0;
    for (const auto& c : checks)
        n += c.violations;
    return n;
}

std::vector<std::string> check_names(std::size_t qubits)
{
    std::vector<std::string> names{"lemma_grid",           "gour_polygamy",        "ckw_monogamy",
                                   "theta_polygamy",       "concurrence_lower_AB", "concurrence_upper_AB",
                                   "negativity_lower_AB",  "negativity_upper_AB"};
    if (qubits >= 5) {
        names.push_back("tripartite_lower");
        names.push_back("tripartite_upper");
    }
    return names;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Index of each check inside check_names().
enum CheckIndex : std::size_t {
    kLemma,
    kGour,
    kCkw,
    kTheta,
    kConcLower,
    kConcUpper,
    kNegLower,
    kNegUpper,
    kTriLower,
    kTriUpper,
};

struct Tally {
    std::size_t evaluations = 0;
    std::size_t violations = 0;
    double worst_slack = kInf;
    std::size_t worst_trial = 0;
    double worst_exponent = 0.0;

    void add(double slack, double exponent, std::size_t trial, double tol)
    {
        ++evaluations;
        if (slack < -tol)
            ++violations;
        if (slack < worst_slack) {
            worst_slack = slack;
            worst_trial = trial;
            worst_exponent = exponent;
        }
    }

    void merge(const Tally& o)
    {
        evaluations += o.evaluations;
        violations += o.violations;
        if (o.worst_slack < worst_slack) {
            worst_slack = o.worst_slack;
            worst_trial = o.worst_trial;
            worst_exponent = o.worst_exponent;
        }
    }
};

struct TrialOutcome {
    std::vector<Tally> tallies;
    std::size_t fallbacks = 0;
};

std::size_t count_fallbacks(const BoundReport& r)
{
    return static_cast<std::size_t>(
        std::count_if(r.terms.begin(), r.terms.end(), [](const FocusTerm& t) { return t.fell_back; }));
}

TrialOutcome check_state(const PureState& psi, std::size_t trial, const std::vector<double>& exponents, double tol)
{
    const std::size_t n = psi.shape().size();
    TrialOutcome out;
    out.tallies.resize(check_names(n).size());
    const BoundContext ctx(psi);
    const auto& pairs = ctx.pairs();
    const auto& labels = ctx.shape().labels();

    std::vector<double> one_vs_rest(n);
    for (std::size_t f = 0; f < n; ++f) {
        one_vs_rest[f] = ctx.concurrence({labels[f]});
        const double c2 = one_vs_rest[f] * one_vs_rest[f];
        out.tallies[kGour].add(pairs.coa_sq_sum(f) - c2, 2.0, trial, tol);
        out.tallies[kCkw].add(c2 - pairs.concurrence_sq_sum(f), 2.0, trial, tol);
    }

    for (double a : exponents) {
        for (std::size_t f = 0; f < n; ++f) {
            const auto term = ctx.focus_term(labels[f], a, FocusOptions{});
            out.fallbacks += term.fell_back ? 1 : 0;
            out.tallies[kTheta].add(term.theta.value - pow0(one_vs_rest[f], a), a, trial, tol);
        }
        const auto lower = monogamy_lower_AB(ctx, a);
        const auto upper = polygamy_upper_AB(ctx, a);
        out.tallies[kConcLower].add(lower.gap, a, trial, tol);
        out.tallies[kConcUpper].add(upper.gap, a, trial, tol);
        const auto neg = negativity_bounds_AB(ctx, a);
        out.tallies[kNegLower].add(neg.lower.gap, a, trial, tol);
        out.tallies[kNegUpper].add(neg.upper.gap, a, trial, tol);
        if (n >= 5) {
            const auto tri = tripartite_bounds(ctx, a);
            out.tallies[kTriLower].add(tri.lower.gap, a, trial, tol);
            out.tallies[kTriUpper].add(tri.upper.gap, a, trial, tol);
            out.fallbacks += count_fallbacks(tri.upper);
        } else {
            out.fallbacks += count_fallbacks(upper);
        }
    }
    return out;
}

double lemma_slack(double x, double p, double t)
{
    const auto v = chain_values(t, p, x);
    double slack = kInf;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        slack = std::min(slack, v[i + 1] - v[i]);
    return slack;
}

std::array<double, 3> lemma_sample(std::uint64_t seed, std::size_t i)
{
    // Corners first, then uniform draws.
    static constexpr std::array<std::array<double, 3>, 6> kCorners{{
        {0.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}, {0.5, 1e-6, 1e-6}, {1.0, 1e-6, 0.0},
    }};
    if (i < kCorners.size())
        return kCorners[i];
    SplitMix64 rng(stream_seed(seed ^ 0x6C656D6D61ULL, i));
    const double x = rng.uniform();
    const double p = 1.0 - rng.uniform();
    const double t = p * rng.uniform();
    return {x, p, t};
}

CheckSummary summarize(const std::string& name, const Tally& t)
{
    return {name, t.evaluations, t.violations, t.evaluations ? t.worst_slack : 0.0, t.worst_trial, t.worst_exponent};
}

VerifyReport assemble(const VerifyConfig& cfg, const std::vector<TrialOutcome>& trials, const CheckSummary& lemma)
{
    VerifyReport rep;
    rep.config = cfg;
    const auto names = check_names(cfg.qubits);
    std::vector<Tally> total(names.size());
    for (const auto& tr : trials) {
        for (std::size_t c = 0; c < names.size(); ++c)
            total[c].merge(tr.tallies[c]);
        rep.fallbacks += tr.fallbacks;
    }
    rep.checks.push_back(lemma);
    for (std::size_t c = 1; c < names.size(); ++c)
        rep.checks.push_back(summarize(names[c], total[c]));
    return rep;
}

}  // namespace

CheckSummary lemma_grid_check(std::size_t samples, std::uint64_t seed, double tol, Execution exec)
{
    std::vector<double> slack(samples), xs(samples);
    const auto n = static_cast<std::ptrdiff_t>(samples);
    auto body = [&](std::ptrdiff_t i) {
        const auto [x, p, t] = lemma_sample(seed, static_cast<std::size_t>(i));
        slack[static_cast<std::size_t>(i)] = lemma_slack(x, p, t);
        xs[static_cast<std::size_t>(i)] = x;
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    }
    Tally tally;
    for (std::size_t i = 0; i < samples; ++i)
        tally.add(slack[i], 2.0 * xs[i], i, tol);
    return summarize("lemma_grid", tally);
}

VerifyReport run_verification(const VerifyConfig& cfg, Execution exec)
{
    cfg.validate();
    std::vector<TrialOutcome> outcomes(cfg.trials);
    const auto n = static_cast<std::ptrdiff_t>(cfg.trials);
    auto body = [&](std::ptrdiff_t i) {
        const auto trial = static_cast<std::size_t>(i);
        const auto psi = haar_random_pure(cfg.qubits, stream_seed(cfg.seed, trial));
        outcomes[trial] = check_state(psi, trial, cfg.exponents, cfg.tol);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    }
    return assemble(cfg, outcomes, lemma_grid_check(cfg.lemma_samples, cfg.seed, cfg.tol, exec));
}

VerifyReport verify_state(const PureState& psi, const std::vector<double>& exponents, double tol,
                          std::size_t lemma_samples, std::uint64_t seed)
{
    VerifyConfig cfg;
    cfg.qubits = psi.shape().size();
    cfg.trials = 1;
    cfg.exponents = exponents;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.lemma_samples = lemma_samples;
    cfg.validate();
    if (!psi.shape().all_qubits())
        throw std::invalid_argument("verification needs qubit subsystems");
    std::vector<TrialOutcome> outcomes{check_state(psi, 0, exponents, tol)};
    return assemble(cfg, outcomes, lemma_grid_check(lemma_samples, seed, tol, Execution::Serial));
}

std::string VerifyReport::text() const
{
    std::ostringstream os;
    os << "qubits " << config.qubits << ", trials " << config.trials << ", seed " << config.seed << ", tol "
       << format_decimal(config.tol) << ", exponents";
    for (double e : config.exponents)
        os << ' ' << format_decimal(e);
    os << '\n';
    os << "check                 evaluations  violations  worst_slack      trial  exponent\n";
    for (const auto& c : checks) {
        std::string name = c.name;
        name.resize(std::max<std::size_t>(name.size(), 22), ' ');
        std::string evals = std::to_string(c.evaluations);
        std::string viol = std::to_string(c.violations);
        std::string slack = format_decimal(c.worst_slack, 6);
        os << name << std::string(11 - std::min<std::size_t>(11, evals.size()), ' ') << evals << "  "
           << std::string(10 - std::min<std::size_t>(10, viol.size()), ' ') << viol << "  " << slack
           << std::string(15 - std::min<std::size_t>(15, slack.size()), ' ') << "  " << c.worst_trial << "  "
           << format_decimal(c.worst_exponent, 6) << '\n';
    }
    os << "fallbacks to single group: " << fallbacks << '\n';
    os << (total_violations() == 0 ? "PASS" : "FAIL") << ": " << total_violations() << " violation(s)\n";
    return os.str();
}

std::string VerifyReport::csv() const
{
    std::string out = "check,evaluations,violations,worst_slack,worst_trial,worst_exponent\n";
    for (const auto& c : checks)
        out += c.name + ',' + std::to_string(c.evaluations) + ',' + std::to_string(c.violations) + ',' +
               format_decimal(c.worst_slack) + ',' + std::to_string(c.worst_trial) + ',' +
               format_decimal(c.worst_exponent) + '\n';
    return out;
}

}  // namespace entb
