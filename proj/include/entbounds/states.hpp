#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entbounds/linalg.hpp"

namespace entb {

enum class Normalization { Strict, Renormalize };

/// Normalized pure state over a labelled tensor factorization.
/// Basis index is the big-endian digit string in label order (first label most significant).
class PureState {
public:
    PureState(SubsystemShape shape, std::vector<cplx> amplitudes,
              Normalization mode = Normalization::Strict);

    const SubsystemShape& shape() const { return shape_; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::size_t dim() const { return amps_.size(); }

    ComplexMatrix density() const;

    /// Reduced density matrix on the kept subsystems (shape order), computed as M M^dagger
    /// where M reshapes the amplitudes into kept x traced blocks.
    ComplexMatrix reduced_density(std::span<const std::size_t> keep) const;
    ComplexMatrix reduced_density(std::span<const std::string> keep) const;

private:
    SubsystemShape shape_;
    std::vector<cplx> amps_;
};

/// lambda0|000> + lambda1 e^{i phi}|100> + lambda2|1?1> ... family on three qubits A,B,C.
struct AcinParams {
    double lambda0 = 1.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;
    double phi = 0.0;
};

/// Four-qubit generalized W-class coefficients, labels A,B,C1,C2.
struct WClass4Params {
    double lambda1 = 1.0;
    double lambda2 = 0.0;
    double lambda3 = 0.0;
    double lambda4 = 0.0;
};

/// Three-qubit state with the usual closed forms
///   C(A|BC) = 2 l0 sqrt(l2^2 + l3^2 + l4^2),
///   C_a(AB) = 2 l0 sqrt(l2^2 + l4^2),  C_a(AC) = 2 l0 sqrt(l3^2 + l4^2).
///
/// The expansion is customarily printed as
///   l0|000> + l1 e^{i phi}|100> + l2|101> + l3|110> + l4|111>,
/// but read with big-endian A,B,C that ket places l2 on the A-C pair and contradicts the
/// closed forms above. The closed forms are taken as authoritative: l2 multiplies
/// |A=1,B=1,C=0> (index 6) and l3 multiplies |A=1,B=0,C=1> (index 5).
PureState acin_state(const AcinParams& p);

/// l1|1000> + l2|0100> + l3|0010> + l4|0001> on A,B,C1,C2.
///
/// The source expression "l1(|1000> + l2|0100>) + ..." carries an l1*l2 cross factor that is
/// inconsistent with the stated pair concurrences C_AB = 2 l1 l2 and with sum l_i^2 = 1.
/// The un-parenthesized reading is implemented.
PureState wclass4_state(const WClass4Params& p);

/// SplitMix64: a 64-bit counter-based generator. Output k is mix(seed + (k+1) * 0x9E3779B97F4A7C15),
/// so a stream is fully determined by its seed and draws are reproducible across platforms.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal pair via Box-Muller.
    std::pair<double, double> gaussian_pair();

    static std::uint64_t mix(std::uint64_t z);

private:
    std::uint64_t state_;
};

/// Independent stream seed for (seed, index), e.g. one per verification trial.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// Normalized vector of i.i.d. standard complex Gaussians (Haar measure on the sphere).
PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Line-oriented state spec:
///   qubits <n>
///   amp <index> <re> <im>
/// '#' starts a comment. Unlisted amplitudes are zero; duplicate indices are errors.
PureState parse_state_spec(std::istream& in, Normalization mode = Normalization::Strict);
PureState parse_state_spec(std::string_view text, Normalization mode = Normalization::Strict);

/// Writes nonzero amplitudes with round-trip precision.
std::string emit_state_spec(const PureState& psi);

}  // namespace entb
