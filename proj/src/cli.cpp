#include "entbounds/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "entbounds/figures.hpp"
#include "entbounds/format.hpp"
#include "entbounds/measures.hpp"
#include "entbounds/verify.hpp"

namespace entb {

PChoice parse_p_choice(const std::string& text)
{
    if (text == "auto")
        return {PMode::Auto, {}};
    if (text == "1")
        return {PMode::One, {}};
    const auto values = parse_double_list(text);
    for (double v : values)
        if (!(v > 0.0 && v <= 1.0))
            throw std::invalid_argument("p values must lie in (0, 1], got " + format_decimal(v));
    return {PMode::Explicit, values};
}

namespace {

std::string grouping_text(const Grouping& g, const SubsystemShape& shape)
{
    std::string s;
    for (const auto& grp : g.groups) {
        s += '(';
        for (auto j : grp)
            s += shape.labels()[j];
        s += ')';
    }
    return s;
}

std::string list_text(const std::vector<double>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + format_decimal(v[i]);
    return s + ")";
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err)
{
    std::ofstream f(path, std::ios::binary);
    if (f)
        f << content;
    if (!f) {
        err << "error: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

}  // namespace

std::string report_csv_header()
{
    std::string h = "bound,exponent,lhs,ours";
    for (const auto& c : kComparatorNames)
        h += ',' + c;
    return h + ",gap,fell_back\n";
}

std::string report_csv_row(const BoundReport& r)
{
    std::string row = r.name + ',' + format_decimal(r.exponent) + ',' + format_decimal(r.lhs) + ',' +
                      format_decimal(r.ours);
    for (const auto& c : kComparatorNames)
        row += ',' + format_decimal(r.comparators.at(c));
    return row + ',' + format_decimal(r.gap) + ',' + (r.fell_back() ? "1" : "0") + '\n';
}

std::string report_text(const BoundReport& r)
{
    std::ostringstream os;
    os << r.name << " (" << (r.direction == BoundDirection::Upper ? "upper" : "lower") << " bound, exponent "
       << format_decimal(r.exponent) << ")\n";
    os << "  lhs                " << format_decimal(r.lhs) << '\n';
    os << "  ours               " << format_decimal(r.ours) << '\n';
    for (const auto& c : kComparatorNames) {
        std::string name = c;
        name.resize(19, ' ');
        os << "  " << name << format_decimal(r.comparators.at(c)) << '\n';
    }
    os << "  gap                " << format_decimal(r.gap) << (r.gap < -kTolNum ? "  VIOLATED" : "") << '\n';
    return os.str();
}

namespace {

struct FigureArgs {
    int id = 0;
    std::string out;
    std::string svg;
    std::size_t samples = 201;
};

struct VerifyArgs {
    std::size_t qubits = 4;
    std::size_t trials = 1000;
    std::string exponents = "0.5,1,1.5,2";
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::string csv;
    std::string state;
    std::size_t lemma_samples = 100000;
    bool serial = false;
    bool renormalize = false;
};

struct BoundsArgs {
    std::string state;
    std::string cut;
    double exponent = 0.0;
    std::string p = "auto";
    std::string csv;
    bool renormalize = false;
};

int cmd_figure(const FigureArgs& a, std::ostream& out, std::ostream& err)
{
    const FigureSpec spec{a.id, a.samples};
    spec.validate();
    const auto fig = compute_figure(spec);
    if (!write_file(a.out, figure_csv(fig), err))
        return kExitUsage;
    if (!a.svg.empty() && !write_file(a.svg, figure_svg(fig), err))
        return kExitUsage;
    const double slack = figure_ordering_slack(fig);
    out << "figure " << a.id << ": " << fig.rows.size() << " rows written to " << a.out << '\n';
    out << "ordering slack " << format_decimal(slack) << '\n';
    if (slack < -kTolNum) {
        err << "figure " << a.id << ": series ordering violated\n";
        return kExitViolation;
    }
    return kExitOk;
}

PureState load_state(const std::string& path, bool renormalize)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open state file '" + path + "'");
    try {
        return parse_state_spec(in, renormalize ? Normalization::Renormalize : Normalization::Strict);
    } catch (const ParseError& e) {
        throw std::runtime_error(path + ":" + e.what());
    }
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err)
{
    const auto exponents = parse_double_list(a.exponents);
    VerifyReport rep;
    if (!a.state.empty()) {
        rep = verify_state(load_state(a.state, a.renormalize), exponents, a.tol, a.lemma_samples, a.seed);
    } else {
        VerifyConfig cfg;
        cfg.qubits = a.qubits;
        cfg.trials = a.trials;
        cfg.exponents = exponents;
        cfg.seed = a.seed;
        cfg.tol = a.tol;
        cfg.lemma_samples = a.lemma_samples;
        rep = run_verification(cfg, a.serial ? Execution::Serial : Execution::Parallel);
    }
    out << rep.text();
    if (!a.csv.empty() && !write_file(a.csv, rep.csv(), err))
        return kExitUsage;
    return rep.total_violations() == 0 ? kExitOk : kExitViolation;
}

bool same_labels(std::vector<std::string> a, std::vector<std::string> b)
{
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

// Explicit p values must be admissible for every focus; reports the minimal values otherwise.
bool check_explicit_p(const BoundContext& ctx, const std::vector<std::string>& foci, const PChoice& choice,
                      double exponent, std::ostream& err)
{
    bool ok = true;
    for (const auto& focus : foci) {
        const auto pos = ctx.shape().index_of(focus);
        const auto order = ctx.partners_by_coa(pos);
        std::vector<double> sums;
        for (auto j : order)
            sums.push_back(ctx.pairs().coa(pos, j) * ctx.pairs().coa(pos, j));
        const auto params = resolve_params(sums, exponent, choice);
        if (params.all_feasible())
            continue;
        ok = false;
        const auto minimal = resolve_params(sums, exponent, PChoice{PMode::Auto, {}});
        const auto t = level_ratios(sums);
        err << "error: explicit p infeasible for focus " << focus << ":";
        for (std::size_t l = 0; l < params.feasible.size(); ++l)
            if (!params.feasible[l])
                err << " level " << l + 1 << " needs p >= " << format_decimal(t[l]);
        err << "; minimal admissible p = " << list_text(minimal.p) << '\n';
    }
    return ok;
}

int cmd_bounds(const BoundsArgs& a, std::ostream& out, std::ostream& err)
{
    const auto psi = load_state(a.state, a.renormalize);
    const auto cut = Bipartition::parse(a.cut, psi.shape());
    const auto choice = parse_p_choice(a.p);
    if (!(a.exponent >= 0.0 && a.exponent <= 2.0))
        throw std::invalid_argument("exponent must lie in [0, 2]");
    const BoundContext ctx(psi);
    if (choice.mode == PMode::Explicit && !check_explicit_p(ctx, cut.left, choice, a.exponent, err))
        return kExitUsage;

    FocusOptionMap opts;
    for (const auto& f : cut.left)
        opts[f] = FocusOptions{std::nullopt, choice};

    std::vector<BoundReport> reports;
    const auto n = psi.shape().size();
    const auto& labels = psi.shape().labels();
    const bool ab_cut = n >= 4 && same_labels(cut.left, {"A", "B"});
    if (cut.left.size() == 1)
        reports.push_back(polygamy_bound_coa(ctx, cut.left[0], a.exponent, opts[cut.left[0]]));
    else if (ab_cut)
        reports.push_back(polygamy_upper_AB(ctx, a.exponent, opts));
    else
        reports.push_back(multi_partition_polygamy(ctx, cut.left, a.exponent, opts));
    if (ab_cut) {
        reports.push_back(monogamy_lower_AB(ctx, a.exponent, opts));
        auto neg = negativity_bounds_AB(ctx, a.exponent, opts);
        reports.push_back(std::move(neg.lower));
        reports.push_back(std::move(neg.upper));
    }
    if (n >= 5 && same_labels(cut.left, {"A", "B", labels[2]})) {
        auto tri = tripartite_bounds(ctx, a.exponent, opts);
        reports.push_back(std::move(tri.lower));
        reports.push_back(std::move(tri.upper));
    }

    out << "state " << a.state << " (" << n << " qubits), cut " << a.cut << ", exponent "
        << format_decimal(a.exponent) << ", p " << a.p << '\n';
    for (const auto& term : reports.front().terms) {
        out << "focus " << term.focus << ": grouping " << grouping_text(term.grouping, psi.shape()) << ", p "
            << list_text(term.params.p) << ", theta " << format_decimal(term.theta.value);
        if (term.fell_back)
            out << " (level " << term.infeasible_level << " infeasible, needs p >= "
                << format_decimal(term.infeasible_minimal_p) << "; single group used)";
        out << '\n';
    }
    bool violated = false;
    std::string csv = report_csv_header();
    for (const auto& r : reports) {
        out << report_text(r);
        csv += report_csv_row(r);
        violated = violated || r.gap < -kTolNum;
    }
    out << '\n' << csv;
    if (!a.csv.empty() && !write_file(a.csv, csv, err))
        return kExitUsage;
    return violated ? kExitViolation : kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Monogamy and polygamy bounds for multiqubit entanglement", "entbounds"};
    app.require_subcommand(1);

    FigureArgs fa;
    auto* figure = app.add_subcommand("figure", "Reproduce a bound comparison figure as CSV (and SVG)");
    figure->add_option("--id", fa.id, "Figure id")->required()->check(CLI::Range(1, 3));
    figure->add_option("--out", fa.out, "CSV output path")->required();
    figure->add_option("--svg", fa.svg, "Optional SVG output path");
    figure->add_option("--samples", fa.samples, "Number of exponent samples")->check(CLI::Range(2, 1000000));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Randomized verification of every inequality");
    verify->add_option("--qubits", va.qubits, "Qubit count (4..6)")->check(CLI::Range(4, 6));
    verify->add_option("--trials", va.trials, "Number of Haar-random states")->check(CLI::Range(1, 100000000));
    verify->add_option("--exponents", va.exponents, "Comma-separated exponents in [0, 2]");
    verify->add_option("--seed", va.seed, "RNG seed");
    verify->add_option("--tol", va.tol, "Violation tolerance");
    verify->add_option("--csv", va.csv, "Optional CSV report path");
    verify->add_option("--state", va.state, "Check a given state file instead of random states");
    verify->add_option("--lemma-samples", va.lemma_samples, "Size of the lemma grid");
    verify->add_flag("--serial", va.serial, "Use the serial reference kernels");
    verify->add_flag("--renormalize", va.renormalize, "Normalize the --state amplitudes instead of rejecting them");

    BoundsArgs ba;
    auto* bounds = app.add_subcommand("bounds", "Bounds for one state across one cut");
    bounds->add_option("--state", ba.state, "State file")->required();
    bounds->add_option("--cut", ba.cut, "Cut such as A|BC or AB|C1C2")->required();
    bounds->add_option("--exponent", ba.exponent, "Exponent in [0, 2]")->required();
    bounds->add_option("--p", ba.p, "auto, 1, or comma-separated explicit values");
    bounds->add_option("--csv", ba.csv, "Optional CSV output path");
    bounds->add_flag("--renormalize", ba.renormalize, "Normalize the state amplitudes instead of rejecting them");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*figure)
            return cmd_figure(fa, out, err);
        if (*verify)
            return cmd_verify(va, out, err);
        return cmd_bounds(ba, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    std::vector<const char*> argv{"entbounds"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace entb
