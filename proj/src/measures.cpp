#include "entbounds/measures.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace entb {

std::vector<std::string> split_labels(std::string_view run)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < run.size()) {
        if (!std::isupper(static_cast<unsigned char>(run[i])))
            throw std::invalid_argument("malformed label list '" + std::string(run) + "'");
        std::size_t j = i + 1;
        while (j < run.size() && std::isdigit(static_cast<unsigned char>(run[j])))
            ++j;
        out.emplace_back(run.substr(i, j - i));
        i = j;
    }
    return out;
}

void Bipartition::validate(const SubsystemShape& shape) const
{
    if (left.empty() || right.empty())
        throw std::invalid_argument("both sides of a bipartition must be non-empty");
    std::vector<std::string> all = left;
    all.insert(all.end(), right.begin(), right.end());
    const auto pos = shape.positions(all);  // rejects unknown and duplicated labels
    if (pos.size() != shape.size())
        throw std::invalid_argument("bipartition does not cover every subsystem");
}

Bipartition Bipartition::parse(std::string_view expr, const SubsystemShape& shape)
{
    const auto bar = expr.find('|');
    if (bar == std::string_view::npos || expr.find('|', bar + 1) != std::string_view::npos)
        throw std::invalid_argument("partition expression must contain exactly one '|': '" + std::string(expr) + "'");
    Bipartition cut{split_labels(expr.substr(0, bar)), split_labels(expr.substr(bar + 1))};
    cut.validate(shape);
    return cut;
}

Bipartition Bipartition::complement_of(std::vector<std::string> left, const SubsystemShape& shape)
{
    const auto pos = shape.positions(left);
    Bipartition cut{std::move(left), {}};
    for (std::size_t k = 0; k < shape.size(); ++k)
        if (!std::binary_search(pos.begin(), pos.end(), k))
            cut.right.push_back(shape.labels()[k]);
    cut.validate(shape);
    return cut;
}

Bipartition Bipartition::one_vs_rest(const std::string& label, const SubsystemShape& shape)
{
    return complement_of({label}, shape);
}

MeasureValue::MeasureValue(MeasureKind k, double v) : kind(k), value(v)
{
    if (!(v >= 0.0))
        throw std::invalid_argument("entanglement measure values are non-negative");
    if (k == MeasureKind::SchmidtRank && (v < 1.0 || v != std::floor(v)))
        throw std::invalid_argument("Schmidt rank must be an integer >= 1");
}

namespace {

void check_density(const ComplexMatrix& rho)
{
    if (!rho.is_square())
        throw std::invalid_argument("density matrix must be square");
    if (!rho.is_hermitian())
        throw std::domain_error("density matrix must be Hermitian");
    if (std::abs(rho.trace() - cplx{1.0}) > kTolNum)
        throw std::domain_error("density matrix must have unit trace");
}

void check_two_qubit(const ComplexMatrix& rho)
{
    if (rho.rows() != 4 || rho.cols() != 4)
        throw std::invalid_argument("two-qubit measures need a 4x4 density matrix, got " +
                                    std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
    check_density(rho);
}

double purity(const ComplexMatrix& rho)
{
    double s = 0.0;
    for (const auto& z : rho.entries())
        s += std::norm(z);
    return s;
}

}  // namespace

double linear_entropy(const ComplexMatrix& rho)
{
    check_density(rho);
    return std::max(0.0, 1.0 - purity(rho));
}

double pure_concurrence(const PureState& psi, const Bipartition& cut)
{
    cut.validate(psi.shape());
    const auto rho = psi.reduced_density(std::span<const std::string>(cut.left));
    return std::sqrt(2.0 * std::max(0.0, 1.0 - purity(rho)));
}

std::array<double, 4> two_qubit_spectrum(const ComplexMatrix& rho)
{
    check_two_qubit(rho);
    const auto es = hermitian_eigensystem(rho);
    // sigma_y x sigma_y is real: antidiagonal (-1, 1, 1, -1).
    static constexpr double kFlip[4] = {-1.0, 1.0, 1.0, -1.0};

    std::vector<std::vector<cplx>> v;
    for (std::size_t k = 0; k < 4; ++k) {
        if (es.values[k] <= kTolRank)
            continue;
        const double root = std::sqrt(es.values[k]);
        std::vector<cplx> col(4);
        for (std::size_t i = 0; i < 4; ++i)
            col[i] = root * es.vectors(i, k);
        v.push_back(std::move(col));
    }
    const std::size_t r = v.size();
    std::array<double, 4> mu{};
    if (r == 0)
        return mu;

    // tau_ij = v_i^dagger (Y x Y) conj(v_j)
    ComplexMatrix dilation(2 * r, 2 * r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            cplx t{};
            for (std::size_t a = 0; a < 4; ++a)
                t += std::conj(v[i][a]) * kFlip[a] * std::conj(v[j][3 - a]);
            dilation(i, r + j) = t;
            dilation(r + j, i) = std::conj(t);
        }
    const auto ev = hermitian_eigenvalues(dilation);
    for (std::size_t k = 0; k < r; ++k)
        mu[k] = std::max(0.0, ev[k]);
    return mu;
}

double two_qubit_concurrence(const ComplexMatrix& rho)
{
    const auto mu = two_qubit_spectrum(rho);
    return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double two_qubit_coa(const ComplexMatrix& rho)
{
    const auto mu = two_qubit_spectrum(rho);
    return mu[0] + mu[1] + mu[2] + mu[3];
}

std::pair<double, double> cren_crenoa_two_qubit(const ComplexMatrix& rho)
{
    const auto mu = two_qubit_spectrum(rho);
    return {std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]), mu[0] + mu[1] + mu[2] + mu[3]};
}

double negativity(const ComplexMatrix& rho, const SubsystemShape& shape, std::span<const std::string> side)
{
    check_density(rho);
    const double n = trace_norm(partial_transpose(rho, shape, side)) - 1.0;
    if (n < -kTolNum)
        throw std::domain_error("trace norm of the partial transpose fell below one");
    return std::max(0.0, n);
}

double negativity(const PureState& psi, const Bipartition& cut)
{
    cut.validate(psi.shape());
    return negativity(psi.density(), psi.shape(), cut.left);
}

std::size_t schmidt_rank(const PureState& psi, const Bipartition& cut, double tol)
{
    cut.validate(psi.shape());
    const auto rho = psi.reduced_density(std::span<const std::string>(cut.left));
    const auto ev = hermitian_eigenvalues(rho);
    return static_cast<std::size_t>(std::count_if(ev.begin(), ev.end(), [tol](double l) { return l > tol; }));
}

PairTable::PairTable(const PureState& psi)
    : n_(psi.shape().size()), c_(n_ * n_, 0.0), ca_(n_ * n_, 0.0)
{
    if (!psi.shape().all_qubits())
        throw std::invalid_argument("pairwise concurrence tables need qubit subsystems");
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const std::size_t keep[2] = {i, j};
            const auto [c, ca] = cren_crenoa_two_qubit(psi.reduced_density(std::span<const std::size_t>(keep)));
            c_[i * n_ + j] = c_[j * n_ + i] = c;
            ca_[i * n_ + j] = ca_[j * n_ + i] = ca;
        }
}

double PairTable::concurrence_sq_sum(std::size_t focus) const
{
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
        if (j != focus)
            s += concurrence(focus, j) * concurrence(focus, j);
    return s;
}

double PairTable::coa_sq_sum(std::size_t focus) const
{
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j)
        if (j != focus)
            s += coa(focus, j) * coa(focus, j);
    return s;
}

}  // namespace entb
