#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "entbounds/linalg.hpp"
#include "entbounds/states.hpp"

namespace entb {

/// Two complementary, non-empty label sets.
struct Bipartition {
    std::vector<std::string> left;
    std::vector<std::string> right;

    /// Checks disjointness, coverage and non-emptiness against a shape.
    void validate(const SubsystemShape& shape) const;

    /// "AB|C1C2": labels are an uppercase letter followed by optional digits, no separators.
    static Bipartition parse(std::string_view expr, const SubsystemShape& shape);
    /// left = given labels, right = everything else.
    static Bipartition complement_of(std::vector<std::string> left, const SubsystemShape& shape);
    static Bipartition one_vs_rest(const std::string& label, const SubsystemShape& shape);
};

/// Splits "ABC1" into {"A","B","C1"}.
std::vector<std::string> split_labels(std::string_view run);

enum class MeasureKind { Concurrence, CoA, Negativity, CREN, CRENoA, LinearEntropy, SchmidtRank };

struct MeasureValue {
    MeasureKind kind;
    double value;

    MeasureValue(MeasureKind k, double v);
};

// Eigenvalues of rho below this are treated as exact zeros when forming the two-qubit
// decomposition vectors; see two_qubit_spectrum.
inline constexpr double kTolRank = 1e-13;

inline constexpr double kSchmidtTol = 1e-10;

/// 1 - Tr(rho^2). Requires a Hermitian, unit-trace operator.
double linear_entropy(const ComplexMatrix& rho);

/// sqrt(2 [1 - Tr rho_left^2]).
double pure_concurrence(const PureState& psi, const Bipartition& cut);

/// Descending mu_i = sqrt(eig(rho * rho~)), rho~ = (Y x Y) rho* (Y x Y).
///
/// Computed without square-rooting round-off: with rho = sum_i |v_i><v_i| over eigenvalues
/// above kTolRank, the mu_i are the singular values of tau_ij = <v_i| Y x Y |v_j*>, read off
/// as the non-negative eigenvalues of the Hermitian dilation [[0, tau], [tau^dag, 0]].
std::array<double, 4> two_qubit_spectrum(const ComplexMatrix& rho);

/// Wootters closed form max(0, mu1 - mu2 - mu3 - mu4).
double two_qubit_concurrence(const ComplexMatrix& rho);

/// Concurrence of assistance, mu1 + mu2 + mu3 + mu4.
double two_qubit_coa(const ComplexMatrix& rho);

/// (CREN, CRENoA) for two qubits, equal to (C, C_a).
std::pair<double, double> cren_crenoa_two_qubit(const ComplexMatrix& rho);

/// ||rho^{T_side}||_1 - 1, clipped at zero.
double negativity(const ComplexMatrix& rho, const SubsystemShape& shape, std::span<const std::string> side);
double negativity(const PureState& psi, const Bipartition& cut);

/// Number of eigenvalues of rho_left above tol.
std::size_t schmidt_rank(const PureState& psi, const Bipartition& cut, double tol = kSchmidtTol);

/// Wootters concurrence and CoA for every qubit pair of a pure state.
class PairTable {
public:
    explicit PairTable(const PureState& psi);

    std::size_t size() const { return n_; }
    double concurrence(std::size_t i, std::size_t j) const { return c_[i * n_ + j]; }
    double coa(std::size_t i, std::size_t j) const { return ca_[i * n_ + j]; }

    /// sum over partners j != focus of C^2(focus, j)
    double concurrence_sq_sum(std::size_t focus) const;
    double coa_sq_sum(std::size_t focus) const;

private:
    std::size_t n_;
    std::vector<double> c_;
    std::vector<double> ca_;
};

}  // namespace entb
