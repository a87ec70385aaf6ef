#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "entbounds/linalg.hpp"
#include "support.hpp"

using namespace entb;
using entb::testing::random_density;
using entb::testing::random_hermitian;
using entb::testing::random_matrix;
using entb::testing::random_unitary;

namespace {

ComplexMatrix bell_projector()
{
    return entb::testing::bell_state().density();
}

const std::vector<std::string> kA{"A"};

}  // namespace

TEST_CASE("matrix construction validates sizes and entries")
{
    CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), std::invalid_argument);
    CHECK_THROWS_AS(ComplexMatrix(65, 65), std::length_error);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx{NAN, 0.0}}), std::invalid_argument);
    const auto i3 = ComplexMatrix::identity(3);
    CHECK(i3.trace() == cplx{3.0});
    CHECK(i3.is_hermitian());
}

TEST_CASE("tensor_product")
{
    SUBCASE("identity")
    {
        CHECK(tensor_product(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));
    }
    SUBCASE("projector alignment")
    {
        const double d1[] = {1.0, 0.0}, d2[] = {0.0, 1.0}, want[] = {0.0, 1.0, 0.0, 0.0};
        CHECK(tensor_product(ComplexMatrix::diagonal(d1), ComplexMatrix::diagonal(d2)) ==
              ComplexMatrix::diagonal(want));
    }
    SUBCASE("index formula")
    {
        SplitMix64 rng(7);
        const auto a = random_matrix(2, rng), b = random_matrix(2, rng);
        const auto k = tensor_product(a, b);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t r = 0; r < 2; ++r)
                    for (std::size_t l = 0; l < 2; ++l)
                        CHECK(k(2 * i + r, 2 * j + l) == a(i, j) * b(r, l));
    }
    SUBCASE("dimension overflow")
    {
        CHECK_THROWS_AS(tensor_product(ComplexMatrix::identity(16), ComplexMatrix::identity(8)), std::length_error);
    }
}

TEST_CASE("partial_trace")
{
    const auto shape = SubsystemShape::qubits(2);
    SUBCASE("Bell state keeps a maximally mixed qubit")
    {
        const auto r = partial_trace(bell_projector(), shape, kA);
        CHECK((r - ComplexMatrix::identity(2) * cplx{0.5}).max_abs() < 1e-15);
    }
    SUBCASE("product state")
    {
        SplitMix64 rng(3);
        const auto ra = random_density(2, rng), rb = random_density(2, rng);
        const auto r = partial_trace(tensor_product(ra, rb), shape, kA);
        CHECK((r - ra).max_abs() < 1e-14);
        const std::vector<std::string> kb{"B"};
        CHECK((partial_trace(tensor_product(ra, rb), shape, kb) - rb).max_abs() < 1e-14);
    }
    SUBCASE("Acin-family purity")
    {
        const auto psi = entb::testing::acin_reference_state();
        const auto ra = partial_trace(psi.density(), psi.shape(), kA);
        double purity = 0.0;
        for (const auto& z : ra.entries())
            purity += std::norm(z);
        CHECK(purity == doctest::Approx(5.0 / 8.0).epsilon(1e-14));
    }
    SUBCASE("keeping everything is bit-exact")
    {
        SplitMix64 rng(11);
        const auto rho = random_density(8, rng);
        const std::vector<std::string> all{"A", "B", "C"};
        CHECK(partial_trace(rho, SubsystemShape::qubits(3), all) == rho);
    }
    SUBCASE("errors")
    {
        const std::vector<std::string> bad{"Z"};
        CHECK_THROWS_AS(partial_trace(bell_projector(), shape, bad), std::invalid_argument);
        CHECK_THROWS(partial_trace(ComplexMatrix(4, 2), shape, kA));
    }
    SUBCASE("random pure states reduce to unit-trace PSD operators")
    {
        for (std::uint64_t s = 0; s < 10000; ++s) {
            const auto psi = haar_random_pure(3, s);
            const std::vector<std::size_t> keep{s % 3};
            const auto r = partial_trace_positions(psi.density(), psi.shape(), keep);
            REQUIRE(std::abs(r.trace() - cplx{1.0}) < 1e-12);
            REQUIRE(hermitian_eigenvalues(r).back() >= -kTolPsd);
        }
    }
}

TEST_CASE("partial_transpose")
{
    const auto shape = SubsystemShape::qubits(2);
    SUBCASE("diagonal states are unchanged")
    {
        const double d[] = {0.1, 0.2, 0.3, 0.4};
        const auto rho = ComplexMatrix::diagonal(d);
        CHECK(partial_transpose(rho, shape, kA) == rho);
    }
    SUBCASE("Bell spectrum")
    {
        const auto ev = hermitian_eigenvalues(partial_transpose(bell_projector(), shape, kA));
        const double want[] = {0.5, 0.5, 0.5, -0.5};
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(ev[i] == doctest::Approx(want[i]).epsilon(1e-14));
    }
    SUBCASE("involution is bit-exact")
    {
        SplitMix64 rng(5);
        const auto rho = random_density(8, rng);
        const auto s3 = SubsystemShape::qubits(3);
        const std::vector<std::string> side{"A", "C"};
        CHECK(partial_transpose(partial_transpose(rho, s3, side), s3, side) == rho);
    }
    SUBCASE("unknown label")
    {
        const std::vector<std::string> bad{"Q"};
        CHECK_THROWS_AS(partial_transpose(bell_projector(), shape, bad), std::invalid_argument);
    }
}

TEST_CASE("hermitian_eigenvalues")
{
    SUBCASE("identity")
    {
        CHECK(hermitian_eigenvalues(ComplexMatrix::identity(4)) == std::vector<double>{1, 1, 1, 1});
    }
    SUBCASE("ordering")
    {
        const double d[] = {3.0, 1.0, 2.0};
        CHECK(hermitian_eigenvalues(ComplexMatrix::diagonal(d)) == std::vector<double>{3, 2, 1});
    }
    SUBCASE("trace identity")
    {
        SplitMix64 rng(17);
        for (std::size_t n : {2u, 5u, 16u, 64u}) {
            const auto h = random_hermitian(n, rng);
            const auto ev = hermitian_eigenvalues(h);
            double s = 0.0;
            for (double v : ev)
                s += v;
            CHECK(s == doctest::Approx(h.trace().real()).epsilon(1e-12));
        }
    }
    SUBCASE("eigenpairs reconstruct the input")
    {
        SplitMix64 rng(19);
        const auto h = random_hermitian(12, rng);
        const auto es = hermitian_eigensystem(h);
        const auto rec = es.vectors * ComplexMatrix::diagonal(es.values) * es.vectors.adjoint();
        CHECK((rec - h).max_abs() < 1e-12);
    }
    SUBCASE("unitary invariance")
    {
        SplitMix64 rng(23);
        for (int trial = 0; trial < 20; ++trial) {
            const auto h = random_hermitian(8, rng);
            const auto u = random_unitary(8, rng);
            const auto a = hermitian_eigenvalues(h);
            const auto b = hermitian_eigenvalues(u * h * u.adjoint());
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(std::abs(a[i] - b[i]) < 1e-10);
        }
    }
    SUBCASE("rejects non-Hermitian input")
    {
        ComplexMatrix m(2, 2);
        m(0, 1) = 1.0;
        CHECK_THROWS_AS(hermitian_eigenvalues(m), std::domain_error);
    }
}

TEST_CASE("psd_sqrt")
{
    SUBCASE("diagonal")
    {
        const double d[] = {4.0, 9.0}, r[] = {2.0, 3.0};
        CHECK((psd_sqrt(ComplexMatrix::diagonal(d)) - ComplexMatrix::diagonal(r)).max_abs() < 1e-15);
    }
    SUBCASE("half identity")
    {
        const auto s = psd_sqrt(ComplexMatrix::identity(2) * cplx{0.5});
        CHECK((s - ComplexMatrix::identity(2) * cplx{std::sqrt(0.5)}).max_abs() < 1e-15);
    }
    SUBCASE("reconstruction")
    {
        SplitMix64 rng(29);
        for (std::size_t n : {2u, 4u, 16u}) {
            const auto m = random_density(n, rng);
            const auto s = psd_sqrt(m);
            CHECK((s * s - m).max_abs() < 1e-10);
        }
    }
    SUBCASE("negative spectrum")
    {
        const double d[] = {1.0, -1e-3};
        CHECK_THROWS_AS(psd_sqrt(ComplexMatrix::diagonal(d)), std::domain_error);
        const double tiny[] = {1.0, -1e-12};
        CHECK(psd_sqrt(ComplexMatrix::diagonal(tiny))(1, 1) == cplx{0.0});
    }
}

TEST_CASE("trace_norm")
{
    SplitMix64 rng(31);
    CHECK(trace_norm(random_density(8, rng)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_norm(partial_transpose(bell_projector(), SubsystemShape::qubits(2), kA)) ==
          doctest::Approx(2.0).epsilon(1e-14));
    CHECK(trace_norm(ComplexMatrix(3, 3)) == 0.0);
    const auto rect = random_matrix(3, rng);
    CHECK(trace_norm(rect) > 0.0);
    for (int i = 0; i < 100; ++i) {
        const auto rho = random_density(4, rng);
        CHECK(trace_norm(partial_transpose(rho, SubsystemShape::qubits(2), kA)) >= 1.0 - 1e-12);
    }
}

TEST_CASE("subsystem shapes")
{
    CHECK(SubsystemShape::qubits(2).labels() == std::vector<std::string>{"A", "B"});
    CHECK(SubsystemShape::qubits(3).labels() == std::vector<std::string>{"A", "B", "C"});
    CHECK(SubsystemShape::qubits(5).labels() == std::vector<std::string>{"A", "B", "C1", "C2", "C3"});
    CHECK_THROWS(SubsystemShape({2, 2}, {"A", "A"}));
    CHECK_THROWS(SubsystemShape::qubits(7));
    const auto s = SubsystemShape::qubits(4);
    const std::vector<std::string> q{"C2", "A"};
    CHECK(s.positions(q) == std::vector<std::size_t>{0, 3});
    CHECK_THROWS_AS(s.index_of("D"), std::invalid_argument);
}
