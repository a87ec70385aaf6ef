#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "entbounds/execution.hpp"
#include "entbounds/states.hpp"

namespace entb {

struct VerifyConfig {
    std::size_t qubits = 4;
    std::size_t trials = 1000;
    std::vector<double> exponents{0.5, 1.0, 1.5, 2.0};
    std::uint64_t seed = 42;
    double tol = 1e-9;
    std::size_t lemma_samples = 100000;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
};

/// Aggregate of one inequality over every trial and exponent. slack >= 0 means it held.
struct CheckSummary {
    std::string name;
    std::size_t evaluations = 0;
    std::size_t violations = 0;
    double worst_slack = 0.0;
    std::size_t worst_trial = 0;
    double worst_exponent = 0.0;
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<CheckSummary> checks;
    std::size_t fallbacks = 0;  // focus terms that fell back to the single group

    std::size_t total_violations() const;
    std::string text() const;
    std::string csv() const;
};

/// Check names in report order; tripartite checks appear only for five or more qubits.
std::vector<std::string> check_names(std::size_t qubits);

/// (x, p, t) grid with 0 <= t <= p <= 1, 0 <= x <= 1: the lemma inequality and the full chain.
CheckSummary lemma_grid_check(std::size_t samples, std::uint64_t seed, double tol,
                              Execution exec = Execution::Parallel);

/// Haar trials drawn from stream_seed(seed, trial), plus the lemma grid.
VerifyReport run_verification(const VerifyConfig& cfg, Execution exec = Execution::Parallel);

/// The per-trial checks applied to one given state (reported as trial 0).
VerifyReport verify_state(const PureState& psi, const std::vector<double>& exponents, double tol,
                          std::size_t lemma_samples = 0, std::uint64_t seed = 42);

}  // namespace entb
