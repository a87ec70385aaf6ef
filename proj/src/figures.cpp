#include "entbounds/figures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "entbounds/format.hpp"

namespace entb {

void FigureSpec::validate() const
{
    if (id < 1 || id > 3)
        throw std::invalid_argument("figure id must be 1, 2 or 3, got " + std::to_string(id));
    if (samples < 2)
        throw std::invalid_argument("figure needs at least 2 samples");
}

PureState figure_state(int id)
{
    if (id == 1)
        return acin_state({.lambda0 = 0.5, .lambda1 = 0.0, .lambda2 = std::sqrt(0.5), .lambda3 = 0.5,
                           .lambda4 = 0.0, .phi = 0.0});
    if (id == 2 || id == 3)
        return wclass4_state({.lambda1 = 0.75, .lambda2 = 0.5, .lambda3 = std::sqrt(2.0) / 4.0, .lambda4 = 0.25});
    throw std::invalid_argument("figure id must be 1, 2 or 3, got " + std::to_string(id));
}

FocusOptionMap figure_options(int id)
{
    if (id == 1)
        return {{"A", FocusOptions{std::nullopt, PChoice{PMode::Explicit, {0.6}}}}};
    return {{"A", FocusOptions{std::nullopt, PChoice{PMode::Explicit, {0.8, 0.6}}}},
            {"B", FocusOptions{std::nullopt, PChoice{PMode::Explicit, {0.4, 0.6}}}}};
}

namespace {

std::vector<double> figure_row(int id, const BoundContext& ctx, const FocusOptionMap& opts, double e)
{
    BoundReport r;
    if (id == 1)
        r = polygamy_bound_coa(ctx, "A", e, opts.at("A"));
    else if (id == 2)
        r = monogamy_lower_AB(ctx, e, opts);
    else
        r = polygamy_upper_AB(ctx, e, opts);
    return {e, r.lhs, r.ours, r.comparators.at("p1_specialization"), r.comparators.at("pow2_chain"),
            r.comparators.at("beta_half_chain")};
}

}  // namespace

FigureData compute_figure(const FigureSpec& spec, Execution exec)
{
    spec.validate();
    FigureData fig;
    fig.id = spec.id;
    const char* series = spec.id == 1 ? "Z" : (spec.id == 2 ? "T" : "X");
    fig.columns = {spec.id == 1 ? "beta" : "alpha", "lhs"};
    for (int k = 1; k <= 4; ++k)
        fig.columns.push_back(series + std::to_string(k));

    const BoundContext ctx(figure_state(spec.id));
    const auto opts = figure_options(spec.id);
    fig.rows.resize(spec.samples);
    const auto n = static_cast<std::ptrdiff_t>(spec.samples);
    const double step = 2.0 / static_cast<double>(spec.samples - 1);
    auto body = [&](std::ptrdiff_t i) {
        const double e = i + 1 == n ? 2.0 : step * static_cast<double>(i);
        fig.rows[static_cast<std::size_t>(i)] = figure_row(spec.id, ctx, opts, e);
    };
    if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    } else {
        for (std::ptrdiff_t i = 0; i < n; ++i)
            body(i);
    }
    return fig;
}

std::string figure_csv(const FigureData& fig)
{
    std::string out;
    for (std::size_t c = 0; c < fig.columns.size(); ++c)
        out += (c ? "," : "") + fig.columns[c];
    out += '\n';
    for (const auto& row : fig.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out += (c ? "," : "") + format_decimal(row[c]);
        out += '\n';
    }
    return out;
}

std::string figure_svg(const FigureData& fig)
{
    constexpr double W = 720, H = 480, L = 70, R = 150, T = 30, B = 60;
    static const char* colors[] = {"#1f77b4", "#d62728", "#c020c0", "#2ca02c", "#17becf"};
    static const char* dashes[] = {"", "8,4", "8,3,2,3", "2,3", "6,4"};

    double ymin = 0.0, ymax = 0.0;
    bool first = true;
    for (const auto& row : fig.rows)
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (!std::isfinite(row[c]))
                continue;
            ymin = first ? row[c] : std::min(ymin, row[c]);
            ymax = first ? row[c] : std::max(ymax, row[c]);
            first = false;
        }
    if (ymax - ymin < 1e-12)
        ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    auto sx = [&](double v) { return L + (W - L - R) * v / 2.0; };
    auto sy = [&](double v) { return H - B - (H - T - B) * (v - ymin) / (ymax - ymin); };
    auto num = [](double v) { return format_decimal(v, 6); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = 0.5 * i;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        os << "<text x=\"" << num(sx(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << num(xv)
           << "</text>\n";
        os << "<text x=\"" << L - 6 << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << num(sx(1.0)) << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << fig.columns[0]
       << "</text>\n";

    for (std::size_t c = 1; c < fig.columns.size(); ++c) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[(c - 1) % 5] << "\" stroke-width=\"1.5\"";
        if (*dashes[(c - 1) % 5])
            os << " stroke-dasharray=\"" << dashes[(c - 1) % 5] << "\"";
        os << " points=\"";
        for (const auto& row : fig.rows)
            if (std::isfinite(row[c]))
                os << num(sx(row[0])) << ',' << num(sy(row[c])) << ' ';
        os << "\"/>\n";
        const double ly = T + 20.0 * static_cast<double>(c);
        os << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 45 << "\" y2=\"" << ly
           << "\" stroke=\"" << colors[(c - 1) % 5] << "\" stroke-width=\"1.5\"";
        if (*dashes[(c - 1) % 5])
            os << " stroke-dasharray=\"" << dashes[(c - 1) % 5] << "\"";
        os << "/>\n<text x=\"" << W - R + 52 << "\" y=\"" << ly + 4 << "\">" << fig.columns[c] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace entb

namespace entb {

double figure_ordering_slack(const FigureData& fig)
{
    double worst = INFINITY;
    for (const auto& row : fig.rows)
        for (std::size_t c = 1; c + 1 < row.size(); ++c) {
            const double d = fig.id == 2 ? row[c] - row[c + 1] : row[c + 1] - row[c];
            worst = std::min(worst, d);
        }
    return worst;
}

}  // namespace entb
