#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "entbounds/bounds.hpp"
#include "entbounds/execution.hpp"

namespace entb {

struct FigureSpec {
    int id = 1;  // 1, 2 or 3
    std::size_t samples = 201;

    void validate() const;
};

struct FigureData {
    int id = 1;
    std::vector<std::string> columns;       // exponent name, lhs, four bound series
    std::vector<std::vector<double>> rows;  // one row per sample
};

/// State and p choices behind each figure.
///   1: three-qubit Acin-family state, focus A, p = 3/5.
///   2: four-qubit W-class state, AB-cut lower bounds, p_A = (4/5, 3/5), p_B = (2/5, 3/5).
///   3: same state and p, AB-cut upper bounds.
/// Series are ours, the p = 1 specialization, the (2^x - 1) chain and the x chain.
PureState figure_state(int id);
FocusOptionMap figure_options(int id);

/// Exponent samples 2 i / (samples - 1), i = 0 .. samples - 1.
FigureData compute_figure(const FigureSpec& spec, Execution exec = Execution::Parallel);

/// Header plus one line per row, 12 significant digits, newline-terminated.
std::string figure_csv(const FigureData& fig);

/// Self-contained line plot of the five series.
std::string figure_svg(const FigureData& fig);

}  // namespace entb

namespace entb {

/// Smallest slack of the plotted ordering over all rows: lhs <= series 1 <= ... <= series 4 for
/// figures 1 and 3, reversed for figure 2. Non-negative when every row is ordered.
double figure_ordering_slack(const FigureData& fig);

}  // namespace entb
