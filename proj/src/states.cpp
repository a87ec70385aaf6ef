#include "entbounds/states.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <set>
#include <sstream>

namespace entb {

namespace {

double norm_of(const std::vector<cplx>& v)
{
    double s = 0.0;
    for (const auto& z : v)
        s += std::norm(z);
    return std::sqrt(s);
}

void check_lambdas(std::initializer_list<double> lambdas, const char* family)
{
    double s = 0.0;
    for (double l : lambdas) {
        if (!(l >= 0.0) || !std::isfinite(l))
            throw std::invalid_argument(std::string(family) + " coefficients must be finite and non-negative");
        s += l * l;
    }
    if (std::abs(s - 1.0) > kTolNum)
        throw std::invalid_argument(std::string(family) + " coefficients violate sum of squares = 1 (got " +
                                    std::to_string(s) + ")");
}

}  // namespace

PureState::PureState(SubsystemShape shape, std::vector<cplx> amplitudes, Normalization mode)
    : shape_(std::move(shape)), amps_(std::move(amplitudes))
{
    if (amps_.size() != shape_.total_dim())
        throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                    " does not match state dimension " + std::to_string(shape_.total_dim()));
    for (const auto& z : amps_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("amplitudes must be finite");
    const double n = norm_of(amps_);
    if (mode == Normalization::Renormalize) {
        if (n == 0.0)
            throw std::invalid_argument("cannot renormalize the zero vector");
        for (auto& z : amps_)
            z /= n;
    } else if (std::abs(n * n - 1.0) > kTolNum) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "state is not normalized (norm " << n << ")";
        throw std::invalid_argument(msg.str());
    }
}

ComplexMatrix PureState::density() const
{
    return ComplexMatrix::projector(amps_);
}

ComplexMatrix PureState::reduced_density(std::span<const std::size_t> keep) const
{
    const auto& dims = shape_.dims();
    std::vector<bool> kept(dims.size(), false);
    for (auto p : keep) {
        if (p >= dims.size())
            throw std::out_of_range("subsystem position out of range");
        kept[p] = true;
    }
    std::size_t keep_dim = 1, trace_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        (kept[k] ? keep_dim : trace_dim) *= dims[k];

    // Split every basis index into (kept index, traced index).
    std::vector<std::size_t> ki(amps_.size()), ti(amps_.size());
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        std::size_t rem = i, kmul = 1, tmul = 1, kidx = 0, tidx = 0;
        for (std::size_t k = dims.size(); k-- > 0;) {
            const std::size_t digit = rem % dims[k];
            rem /= dims[k];
            if (kept[k]) {
                kidx += digit * kmul;
                kmul *= dims[k];
            } else {
                tidx += digit * tmul;
                tmul *= dims[k];
            }
        }
        ki[i] = kidx;
        ti[i] = tidx;
    }

    std::vector<cplx> m(keep_dim * trace_dim);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        m[ki[i] * trace_dim + ti[i]] = amps_[i];

    ComplexMatrix rho(keep_dim, keep_dim);
    for (std::size_t r = 0; r < keep_dim; ++r)
        for (std::size_t c = r; c < keep_dim; ++c) {
            cplx s{};
            for (std::size_t t = 0; t < trace_dim; ++t)
                s += m[r * trace_dim + t] * std::conj(m[c * trace_dim + t]);
            rho(r, c) = s;
            rho(c, r) = std::conj(s);
        }
    for (std::size_t r = 0; r < keep_dim; ++r)
        rho(r, r) = rho(r, r).real();
    return rho;
}

ComplexMatrix PureState::reduced_density(std::span<const std::string> keep) const
{
    const auto pos = shape_.positions(keep);
    return reduced_density(std::span<const std::size_t>(pos));
}

PureState acin_state(const AcinParams& p)
{
    check_lambdas({p.lambda0, p.lambda1, p.lambda2, p.lambda3, p.lambda4}, "Acin-family");
    if (!std::isfinite(p.phi))
        throw std::invalid_argument("phase must be finite");
    std::vector<cplx> a(8);
    a[0b000] = p.lambda0;
    a[0b100] = p.lambda1 * std::polar(1.0, p.phi);
    a[0b110] = p.lambda2;
    a[0b101] = p.lambda3;
    a[0b111] = p.lambda4;
    return PureState(SubsystemShape::qubits(3), std::move(a));
}

PureState wclass4_state(const WClass4Params& p)
{
    check_lambdas({p.lambda1, p.lambda2, p.lambda3, p.lambda4}, "W-class");
    std::vector<cplx> a(16);
    a[0b1000] = p.lambda1;
    a[0b0100] = p.lambda2;
    a[0b0010] = p.lambda3;
    a[0b0001] = p.lambda4;
    return PureState(SubsystemShape::qubits(4), std::move(a));
}

// ---------------------------------------------------------------------------

std::uint64_t SplitMix64::mix(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next()
{
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
}

double SplitMix64::uniform()
{
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::pair<double, double> SplitMix64::gaussian_pair()
{
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
    return SplitMix64::mix(seed ^ SplitMix64::mix(index + 0x9E3779B97F4A7C15ULL));
}

PureState haar_random_pure(std::size_t n_qubits, std::uint64_t seed)
{
    if (n_qubits < 2 || n_qubits > 6)
        throw std::invalid_argument("random states support 2..6 qubits, got " + std::to_string(n_qubits));
    SplitMix64 rng(seed);
    std::vector<cplx> a(std::size_t{1} << n_qubits);
    for (auto& z : a) {
        const auto [re, im] = rng.gaussian_pair();
        z = {re, im};
    }
    return PureState(SubsystemShape::qubits(n_qubits), std::move(a), Normalization::Renormalize);
}

// ---------------------------------------------------------------------------

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
{
}

namespace {

std::vector<std::string_view> split_ws(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r'))
            ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r')
            ++j;
        if (j > i)
            out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
T parse_number(std::string_view tok, std::size_t line, const char* what)
{
    T value{};
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && tok.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
    return value;
}

}  // namespace

PureState parse_state_spec(std::istream& in, Normalization mode)
{
    std::string raw;
    std::size_t line_no = 0;
    std::size_t qubits = 0;
    bool have_header = false;
    std::vector<cplx> amps;
    std::set<std::size_t> seen;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty())
            continue;

        if (tok[0] == "qubits") {
            if (have_header)
                throw ParseError(line_no, "duplicate 'qubits' header");
            if (tok.size() != 2)
                throw ParseError(line_no, "expected 'qubits <n>'");
            qubits = parse_number<std::size_t>(tok[1], line_no, "qubit count");
            if (qubits < 1 || qubits > 6)
                throw ParseError(line_no, "qubit count must be between 1 and 6");
            amps.assign(std::size_t{1} << qubits, cplx{});
            have_header = true;
        } else if (tok[0] == "amp") {
            if (!have_header)
                throw ParseError(line_no, "'amp' before 'qubits' header");
            if (tok.size() != 4)
                throw ParseError(line_no, "expected 'amp <index> <re> <im>'");
            const auto index = parse_number<std::size_t>(tok[1], line_no, "basis index");
            if (index >= amps.size())
                throw ParseError(line_no, "basis index " + std::to_string(index) + " out of range for " +
                                              std::to_string(qubits) + " qubits");
            if (!seen.insert(index).second)
                throw ParseError(line_no, "duplicate amplitude index " + std::to_string(index));
            const double re = parse_number<double>(tok[2], line_no, "real part");
            const double im = parse_number<double>(tok[3], line_no, "imaginary part");
            amps[index] = {re, im};
        } else {
            throw ParseError(line_no, "unknown directive '" + std::string(tok[0]) + "'");
        }
    }
    if (!have_header)
        throw ParseError(line_no, "missing 'qubits <n>' header");

    try {
        return PureState(SubsystemShape::qubits(qubits), std::move(amps), mode);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

PureState parse_state_spec(std::string_view text, Normalization mode)
{
    std::istringstream in{std::string(text)};
    return parse_state_spec(in, mode);
}

std::string emit_state_spec(const PureState& psi)
{
    std::size_t n = 0;
    while ((std::size_t{1} << n) < psi.dim())
        ++n;
    std::string out = "qubits " + std::to_string(n) + "\n";
    char buf[64];
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        const cplx z = psi.amplitudes()[i];
        if (z == cplx{})
            continue;
        out += "amp " + std::to_string(i);
        for (double part : {z.real(), z.imag()}) {
            auto res = std::to_chars(buf, buf + sizeof buf, part);
            out += ' ';
            out.append(buf, res.ptr);
        }
        out += '\n';
    }
    return out;
}

}  // namespace entb
