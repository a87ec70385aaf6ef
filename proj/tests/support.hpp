#pragma once

#include <cmath>
#include <cstdint>

#include "entbounds/linalg.hpp"
#include "entbounds/states.hpp"

namespace entb::testing {

inline ComplexMatrix random_matrix(std::size_t n, SplitMix64& rng)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto [re, im] = rng.gaussian_pair();
            m(i, j) = {re, im};
        }
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, SplitMix64& rng)
{
    const auto m = random_matrix(n, rng);
    return (m + m.adjoint()) * cplx{0.5};
}

inline ComplexMatrix random_density(std::size_t n, SplitMix64& rng)
{
    const auto m = random_matrix(n, rng);
    auto rho = m * m.adjoint();
    return rho * cplx{1.0 / rho.trace().real()};
}

inline ComplexMatrix random_unitary(std::size_t n, SplitMix64& rng)
{
    return hermitian_eigensystem(random_hermitian(n, rng)).vectors;
}

inline PureState bell_state()
{
    const double r = std::sqrt(0.5);
    return PureState(SubsystemShape::qubits(2), {r, 0.0, 0.0, r});
}

inline PureState product_state(std::size_t n)
{
    std::vector<cplx> a(std::size_t{1} << n);
    a[0] = 1.0;
    return PureState(SubsystemShape::qubits(n), std::move(a));
}

inline PureState acin_reference_state()
{
    return acin_state({.lambda0 = 0.5, .lambda1 = 0.0, .lambda2 = std::sqrt(0.5), .lambda3 = 0.5, .lambda4 = 0.0,
                       .phi = 0.0});
}

inline PureState wclass_reference_state()
{
    return wclass4_state({.lambda1 = 0.75, .lambda2 = 0.5, .lambda3 = std::sqrt(2.0) / 4.0, .lambda4 = 0.25});
}

}  // namespace entb::testing
