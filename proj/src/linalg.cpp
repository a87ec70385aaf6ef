#include "entbounds/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace entb {

namespace {

void check_dims(std::size_t rows, std::size_t cols)
{
    if (rows > kMaxDim || cols > kMaxDim)
        throw std::length_error("matrix dimension " + std::to_string(rows) + "x" + std::to_string(cols) +
                                " exceeds the supported maximum of " + std::to_string(kMaxDim));
}

// Mixed-radix digits of a flat index, most significant first.
void decompose(std::size_t index, const std::vector<std::size_t>& dims, std::vector<std::size_t>& digits)
{
    for (std::size_t k = dims.size(); k-- > 0;) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

std::size_t compose(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims)
{
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k)
        index = index * dims[k] + digits[k];
    return index;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols)
{
    check_dims(rows, cols);
    data_.assign(rows * cols, cplx{});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    check_dims(rows, cols);
    if (data_.size() != rows * cols)
        throw std::invalid_argument("entry count does not match matrix dimensions");
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d)
{
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const cplx> v)
{
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const
{
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const
{
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const
{
    ComplexMatrix r = *this;
    for (auto& z : r.data_)
        z = std::conj(z);
    return r;
}

cplx ComplexMatrix::trace() const
{
    if (!is_square())
        throw std::invalid_argument("trace of a non-square matrix");
    cplx t{};
    for (std::size_t i = 0; i < rows_; ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::hermiticity_defect() const
{
    if (!is_square())
        return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return worst;
}

bool ComplexMatrix::is_hermitian(double tol) const
{
    return hermiticity_defect() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("dimension mismatch in matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o)
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("dimension mismatch in matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s)
{
    for (auto& z : data_)
        z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("dimension mismatch in matrix product");
    ComplexMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{})
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                r(i, j) += aik * b(k, j);
        }
    return r;
}

double ComplexMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& z : data_)
        m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (const auto& z : data_)
        s += std::norm(z);
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels))
{
    if (dims_.size() != labels_.size())
        throw std::invalid_argument("subsystem dims and labels differ in length");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (l.empty())
            throw std::invalid_argument("empty subsystem label");
        if (!seen.insert(l).second)
            throw std::invalid_argument("duplicate subsystem label '" + l + "'");
    }
    for (auto d : dims_) {
        if (d < 1)
            throw std::invalid_argument("subsystem dimension must be positive");
        total_ *= d;
        if (total_ > kMaxDim)
            throw std::length_error("state space exceeds the supported maximum dimension of " +
                                    std::to_string(kMaxDim));
    }
}

SubsystemShape SubsystemShape::qubits(std::size_t n)
{
    std::vector<std::string> labels;
    if (n >= 1)
        labels.emplace_back("A");
    if (n >= 2)
        labels.emplace_back("B");
    if (n == 3)
        labels.emplace_back("C");
    else
        for (std::size_t i = 1; n >= 4 && i + 2 <= n; ++i)
            labels.push_back("C" + std::to_string(i));
    return SubsystemShape(std::vector<std::size_t>(n, 2), std::move(labels));
}

std::size_t SubsystemShape::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw std::invalid_argument("unknown subsystem label '" + label + "'");
    return static_cast<std::size_t>(it - labels_.begin());
}

bool SubsystemShape::contains(const std::string& label) const
{
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::vector<std::size_t> SubsystemShape::positions(std::span<const std::string> labels) const
{
    std::vector<std::size_t> pos;
    pos.reserve(labels.size());
    for (const auto& l : labels)
        pos.push_back(index_of(l));
    std::sort(pos.begin(), pos.end());
    if (std::adjacent_find(pos.begin(), pos.end()) != pos.end())
        throw std::invalid_argument("label set contains duplicates");
    return pos;
}

SubsystemShape SubsystemShape::restrict_to(std::span<const std::size_t> positions) const
{
    std::vector<std::size_t> d;
    std::vector<std::string> l;
    for (auto p : positions) {
        if (p >= dims_.size())
            throw std::out_of_range("subsystem position out of range");
        d.push_back(dims_[p]);
        l.push_back(labels_[p]);
    }
    return SubsystemShape(std::move(d), std::move(l));
}

bool SubsystemShape::all_qubits() const
{
    return std::all_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 2; });
}

// ---------------------------------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t rows = a.rows() * b.rows();
    const std::size_t cols = a.cols() * b.cols();
    if (rows > kMaxDim || cols > kMaxDim)
        throw std::length_error("tensor product of dimension " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " exceeds the supported maximum");
    ComplexMatrix r(rows, cols);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

namespace {

void check_operator_shape(const ComplexMatrix& rho, const SubsystemShape& shape)
{
    if (!rho.is_square())
        throw std::invalid_argument("operator must be square");
    if (rho.rows() != shape.total_dim())
        throw std::invalid_argument("operator dimension " + std::to_string(rho.rows()) +
                                    " does not match subsystem shape dimension " +
                                    std::to_string(shape.total_dim()));
}

}  // namespace

ComplexMatrix partial_trace_positions(const ComplexMatrix& rho, const SubsystemShape& shape,
                                      std::span<const std::size_t> keep)
{
    check_operator_shape(rho, shape);
    std::vector<bool> kept(shape.size(), false);
    for (auto p : keep) {
        if (p >= shape.size())
            throw std::out_of_range("subsystem position out of range");
        kept[p] = true;
    }
    if (std::all_of(kept.begin(), kept.end(), [](bool k) { return k; }))
        return rho;

    std::vector<std::size_t> keep_dims, trace_dims;
    for (std::size_t k = 0; k < shape.size(); ++k)
        (kept[k] ? keep_dims : trace_dims).push_back(shape.dims()[k]);

    const std::size_t dim = shape.total_dim();
    std::vector<std::size_t> keep_index(dim), trace_index(dim);
    std::vector<std::size_t> digits(shape.size()), kd, td;
    for (std::size_t i = 0; i < dim; ++i) {
        decompose(i, shape.dims(), digits);
        kd.clear();
        td.clear();
        for (std::size_t k = 0; k < shape.size(); ++k)
            (kept[k] ? kd : td).push_back(digits[k]);
        keep_index[i] = compose(kd, keep_dims);
        trace_index[i] = compose(td, trace_dims);
    }

    const std::size_t out_dim = std::accumulate(keep_dims.begin(), keep_dims.end(), std::size_t{1},
                                                std::multiplies<>());
    ComplexMatrix out(out_dim, out_dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            if (trace_index[i] == trace_index[j])
                out(keep_index[i], keep_index[j]) += rho(i, j);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemShape& shape,
                            std::span<const std::string> keep)
{
    const auto pos = shape.positions(keep);
    return partial_trace_positions(rho, shape, pos);
}

ComplexMatrix partial_transpose_positions(const ComplexMatrix& rho, const SubsystemShape& shape,
                                          std::span<const std::size_t> side)
{
    check_operator_shape(rho, shape);
    std::vector<bool> flip(shape.size(), false);
    for (auto p : side) {
        if (p >= shape.size())
            throw std::out_of_range("subsystem position out of range");
        flip[p] = true;
    }
    const std::size_t dim = shape.total_dim();
    std::vector<std::size_t> ri(shape.size()), ci(shape.size());
    ComplexMatrix out(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        decompose(i, shape.dims(), ri);
        for (std::size_t j = 0; j < dim; ++j) {
            decompose(j, shape.dims(), ci);
            auto r = ri;
            auto c = ci;
            for (std::size_t k = 0; k < shape.size(); ++k)
                if (flip[k])
                    std::swap(r[k], c[k]);
            out(compose(r, shape.dims()), compose(c, shape.dims())) = rho(i, j);
        }
    }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemShape& shape,
                                std::span<const std::string> side)
{
    const auto pos = shape.positions(side);
    return partial_transpose_positions(rho, shape, pos);
}

// ---------------------------------------------------------------------------

EigenSystem hermitian_eigensystem(const ComplexMatrix& h)
{
    if (!h.is_square())
        throw std::invalid_argument("eigenvalues of a non-square matrix");
    const double defect = h.hermiticity_defect();
    if (defect > kTolHerm)
        throw std::domain_error("matrix is not Hermitian (defect " + std::to_string(defect) + ")");

    const std::size_t n = h.rows();
    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
            a(j, i) = std::conj(a(i, j));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = 1e-13 * std::max(1.0, a.frobenius_norm());
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0)
                    continue;
                const cplx e = apq / g;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx se = s * e;
                const cplx sec = s * std::conj(e);

                // A <- A U, columns p and q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - sec * akq;
                    a(k, q) = se * akp + c * akq;
                }
                // A <- U^dagger A, rows p and q.
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - se * aqk;
                    a(q, k) = sec * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - sec * vkq;
                    v(k, q) = se * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t col = 0; col < n; ++col) {
        es.values[col] = a(order[col], order[col]).real();
        for (std::size_t k = 0; k < n; ++k)
            es.vectors(k, col) = v(k, order[col]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h)
{
    return hermitian_eigensystem(h).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m)
{
    const auto es = hermitian_eigensystem(m);
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = es.values[k];
        if (lambda < -kTolPsd)
            throw std::domain_error("matrix is not positive semidefinite (eigenvalue " +
                                    std::to_string(lambda) + ")");
        const double root = std::sqrt(std::max(lambda, 0.0));
        if (root == 0.0)
            continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vi = root * es.vectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                out(i, j) += vi * std::conj(es.vectors(j, k));
        }
    }
    return out;
}

double trace_norm(const ComplexMatrix& m)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0.0;
    if (m.is_square() && m.is_hermitian()) {
        double s = 0.0;
        for (double l : hermitian_eigenvalues(m))
            s += std::abs(l);
        return s;
    }
    // Singular values are square roots of the eigenvalues of M M^dagger.
    double s = 0.0;
    for (double l : hermitian_eigenvalues(m * m.adjoint()))
        s += std::sqrt(std::max(l, 0.0));
    return s;
}

}  // namespace entb
