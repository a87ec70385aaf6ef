#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entbounds/measures.hpp"
#include "entbounds/states.hpp"

namespace entb {

/// base^exponent with the convention value^0 = 1 (including 0^0).
double pow0(double base, double exponent);

/// Coefficients of the parametrized binomial bound
///   (1 + t)^x <= omega + upsilon * t^x,   0 <= t <= p <= 1, 0 <= x <= 1,
/// with omega = 1 + x t / (1+p)^2 and
///      upsilon = ((1+p)^x - 1) / p^x - x p / ((1+p)^2 p^x).
struct LemmaCoefficients {
    double omega;
    double upsilon;
    double t;
    double p;
    double x;

    double rhs() const { return omega + upsilon * pow0(t, x); }
};

LemmaCoefficients lemma_rhs(double t, double p, double x);

/// The six expressions of the comparison chain, in nondecreasing order:
///   (1+t)^x, lemma rhs, 1 + ((1+p)^x - 1)/p^x t^x, 1 + (2^x - 1) t^x, 1 + x t^x, 1 + t^x.
std::array<double, 6> chain_values(double t, double p, double x);

/// Ordered partition of the partner subsystems of one focus subsystem (positions in the shape).
struct Grouping {
    std::vector<std::vector<std::size_t>> groups;

    std::size_t k() const { return groups.size(); }
    /// Throws unless the groups are non-empty, disjoint and cover exactly `partners`.
    void validate(std::span<const std::size_t> partners) const;

    static Grouping singletons(std::span<const std::size_t> order);
    static Grouping single_group(std::span<const std::size_t> partners);

    friend bool operator==(const Grouping&, const Grouping&) = default;
    friend auto operator<=>(const Grouping& a, const Grouping& b) { return a.groups <=> b.groups; }
};

/// Exponent (alpha or beta, in [0, 2]) and one p per lemma application.
struct BoundParams {
    double exponent = 2.0;
    std::vector<double> p;
    std::vector<bool> feasible;

    bool all_feasible() const;
};

enum class PMode { Auto, One, Explicit };

/// How to choose p: Auto picks the tightest admissible value max(t, 1e-6), One reproduces the
/// p = 1 bound, Explicit takes caller values level by level.
struct PChoice {
    PMode mode = PMode::Auto;
    std::vector<double> values;
};

inline constexpr double kMinP = 1e-6;

/// Per-level tail ratios t_l = (sum_{j>l} a_j) / a_l over the given group sums.
std::vector<double> level_ratios(std::span<const double> group_coa_sq);

/// Resolves a PChoice against group sums (after zero-group compaction, see theta).
BoundParams resolve_params(std::span<const double> group_coa_sq, double exponent, const PChoice& choice);

struct ThetaLevel {
    double group_coa_sq;
    double omega;    // 1 on the final level
    double upsilon;  // 1 on the final level
    double weight;   // full coefficient multiplying group_coa_sq^(exponent/2)
};

struct ThetaResult {
    double value = 0.0;
    std::vector<ThetaLevel> per_level;
    std::string focus;
};

/// Raised when some level has t_l > p_l; carries the 1-based level and the minimal feasible p.
class InfeasibleParams : public std::domain_error {
public:
    InfeasibleParams(std::size_t level, double minimal_p);
    std::size_t level() const { return level_; }
    double minimal_p() const { return minimal_p_; }

private:
    std::size_t level_;
    double minimal_p_;
};

/// Nested grouped upper bound on (sum_l a_l)^(exponent/2):
///   sum_{l<k} (prod_{u<l} upsilon_u) omega_l a_l^x + (prod_{u<k} upsilon_u) a_k^x,  x = exponent/2.
///
/// Groups with a_l < kTolNum are removed from the recursion and their mass is added to the
/// last retained group, where no lemma is applied. The remaining groups keep their own p.
/// With no retained group the result is (sum a)^x.
ThetaResult theta(std::span<const double> group_coa_sq, const BoundParams& params, std::string focus = {});

enum class ThetaVariant {
    Parametrized,       // the parametrized bound at the given p
    PEqualsOne,         // same with every p = 1
    PhiChain,           // weights prod_u ((1+p_u)^x - 1)/p_u^x
    Pow2Chain,          // weights (2^x - 1)^(l-1)
    HalfExponentChain,  // weights x^(l-1)
    TrivialSum,         // weights 1
};

double theta_variant(std::span<const double> group_coa_sq, const BoundParams& params, ThetaVariant variant);

/// Comparator names used in reports, weakest last.
inline const std::array<std::string, 5> kComparatorNames = {
    "p1_specialization", "phi_chain", "pow2_chain", "beta_half_chain", "trivial_sum"};

struct FocusOptions {
    std::optional<Grouping> grouping;  // default: singletons by descending C_a^2
    PChoice p;
};
using FocusOptionMap = std::map<std::string, FocusOptions>;

struct FocusTerm {
    std::string focus;
    Grouping grouping;
    BoundParams params;
    ThetaResult theta;
    /// "ours" plus every comparator name.
    std::map<std::string, double> variants;
    /// Requested configuration was infeasible; the k = 1 grouping was used instead.
    bool fell_back = false;
    std::size_t infeasible_level = 0;
    double infeasible_minimal_p = 0.0;
};

enum class BoundDirection { Upper, Lower };

struct BoundReport {
    std::string name;
    BoundDirection direction = BoundDirection::Upper;
    double exponent = 0.0;
    double lhs = 0.0;
    double ours = 0.0;
    std::map<std::string, double> comparators;
    /// ours - lhs for upper bounds, lhs - ours for lower bounds; >= 0 when the bound holds.
    double gap = 0.0;
    std::vector<FocusTerm> terms;

    bool fell_back() const;
};

struct Sandwich {
    BoundReport lower;
    BoundReport upper;
};

/// Per-state data shared by every bound: pairwise C and C_a plus the shape.
class BoundContext {
public:
    explicit BoundContext(PureState psi);

    const PureState& state() const { return psi_; }
    const SubsystemShape& shape() const { return psi_.shape(); }
    const PairTable& pairs() const { return pairs_; }

    /// C(left | rest)
    double concurrence(const std::vector<std::string>& left) const;

    /// Theta for one focus with its grouping and p choice, including all comparator variants.
    FocusTerm focus_term(const std::string& focus, double exponent, const FocusOptions& options) const;

    /// Partner positions of a focus sorted by descending C_a^2 (ties by position).
    std::vector<std::size_t> partners_by_coa(std::size_t focus) const;

private:
    PureState psi_;
    PairTable pairs_;
};

/// C^beta(focus | rest) <= Theta_focus.
BoundReport polygamy_bound_coa(const BoundContext& ctx, const std::string& focus, double exponent,
                               const FocusOptions& options = {});

/// C^alpha(AB | C1...) >= max{ (sum_i C^2_ACi + C^2_AB)^(alpha/2) - Theta_B,
///                             (sum_i C^2_BCi + C^2_AB)^(alpha/2) - Theta_A }.  Needs N >= 4.
BoundReport monogamy_lower_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options = {});

/// C^alpha(AB | C1...) <= Theta_A + Theta_B.  Needs N >= 4.
BoundReport polygamy_upper_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options = {});

/// Negativity analogues across AB | C1...: the lower bound uses CREN = C, the upper bound uses
/// CRENoA = C_a and the factor (r(r-1)/2)^(alpha/2), r the Schmidt rank of the cut.
Sandwich negativity_bounds_AB(const BoundContext& ctx, double exponent, const FocusOptionMap& options = {});

/// Bounds on C^alpha(ABC1 | C2...). Needs N >= 5.
Sandwich tripartite_bounds(const BoundContext& ctx, double exponent, const FocusOptionMap& options = {});

/// C^alpha(left | rest) <= sum over focus in left of Theta_focus.
BoundReport multi_partition_polygamy(const BoundContext& ctx, const std::vector<std::string>& left,
                                     double exponent, const FocusOptionMap& options = {});

}  // namespace entb
