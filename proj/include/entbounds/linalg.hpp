#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace entb {

using cplx = std::complex<double>;

// Project-wide numeric tolerances. Spectra here are at most 64-dimensional.
inline constexpr double kTolNum = 1e-9;
inline constexpr double kTolHerm = 1e-9;
inline constexpr double kTolPsd = 1e-9;

// Largest supported Hilbert-space dimension (6 qubits).
inline constexpr std::size_t kMaxDim = 64;

/// Dense complex matrix, row-major. Dimensions are capped at kMaxDim per side.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> d);
    /// |v><v| for a column vector v.
    static ComplexMatrix projector(std::span<const cplx> v);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const cplx> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cplx trace() const;

    /// max_ij |a_ij - conj(a_ji)|
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kTolHerm) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

    /// Largest absolute entry.
    double max_abs() const;
    double frobenius_norm() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Tensor factorization of a Hilbert space: ordered local dimensions with unique labels.
/// Index convention: the first factor is the most significant digit.
class SubsystemShape {
public:
    SubsystemShape() = default;
    SubsystemShape(std::vector<std::size_t> dims, std::vector<std::string> labels);

    /// n qubits labelled A,B (n=2), A,B,C (n=3) or A,B,C1..C_{n-2} (n>=4).
    static SubsystemShape qubits(std::size_t n);

    std::size_t size() const { return dims_.size(); }
    std::size_t total_dim() const { return total_; }
    const std::vector<std::size_t>& dims() const { return dims_; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Position of a label; throws std::invalid_argument for unknown labels.
    std::size_t index_of(const std::string& label) const;
    bool contains(const std::string& label) const;

    /// Positions for a label set, sorted into shape order, duplicates rejected.
    std::vector<std::size_t> positions(std::span<const std::string> labels) const;

    /// Shape restricted to the given positions (shape order).
    SubsystemShape restrict_to(std::span<const std::size_t> positions) const;

    bool all_qubits() const;

    friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

private:
    std::vector<std::size_t> dims_;
    std::vector<std::string> labels_;
    std::size_t total_ = 1;
};

/// Kronecker product; entry (i*rb + k, j*cb + l) = a(i,j) * b(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on the kept subsystems, in shape order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemShape& shape,
                            std::span<const std::string> keep);
ComplexMatrix partial_trace_positions(const ComplexMatrix& rho, const SubsystemShape& shape,
                                      std::span<const std::size_t> keep);

/// Transpose on the listed tensor factors only. A permutation of entries, so it is an exact involution.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const SubsystemShape& shape,
                                std::span<const std::string> side);
ComplexMatrix partial_transpose_positions(const ComplexMatrix& rho, const SubsystemShape& shape,
                                          std::span<const std::size_t> side);

struct EigenSystem {
    std::vector<double> values;   // descending
    ComplexMatrix vectors;        // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Throws std::domain_error if h is not Hermitian within kTolHerm.
EigenSystem hermitian_eigensystem(const ComplexMatrix& h);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);

/// Principal square root of a PSD matrix. Eigenvalues in [-kTolPsd, 0) are clipped to zero,
/// anything lower throws std::domain_error.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

}  // namespace entb
