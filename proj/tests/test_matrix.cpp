#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cloneray/matrix.hpp>
#include <cloneray/random.hpp>

#include <cmath>

using namespace cloneray;

namespace {

SquareMatrix random_matrix(Rng& rng, int dim) {
    SquareMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    return m;
}

SquareMatrix random_hermitian(Rng& rng, int dim) {
    const SquareMatrix m = random_matrix(rng, dim);
    SquareMatrix h = m + m.adjoint();
    h *= Complex(0.5);
    return h;
}

// random density matrix: normalized M M^dag, guaranteed PSD with trace 1
SquareMatrix random_density(Rng& rng, int dim) {
    const SquareMatrix m = random_matrix(rng, dim);
    SquareMatrix rho = m * m.adjoint();
    rho *= Complex(1.0 / rho.trace().real());
    return rho;
}

double max_diff(const SquareMatrix& a, const SquareMatrix& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("pauli matrices: convention, involution, algebra") {
    const SquareMatrix sz = pauli(PauliAxis::z);
    CHECK(sz(0, 0) == Complex(1.0));
    CHECK(sz(1, 1) == Complex(-1.0));
    CHECK(sz(0, 1) == Complex(0.0));

    for (auto axis : {PauliAxis::x, PauliAxis::y, PauliAxis::z}) {
        const SquareMatrix s = pauli(axis);
        CHECK(s.is_hermitian());
        CHECK(std::abs(s.trace()) < 1e-15);
        CHECK(max_diff(s * s, SquareMatrix::identity(2)) < 1e-15);
    }

    // sigma_x sigma_y = i sigma_z
    const SquareMatrix lhs = pauli(PauliAxis::x) * pauli(PauliAxis::y);
    const SquareMatrix rhs = Complex(0.0, 1.0) * pauli(PauliAxis::z);
    CHECK(max_diff(lhs, rhs) < 1e-15);
}

TEST_CASE("kron: identity blocks, diag expansion, trace multiplicativity") {
    const SquareMatrix eye2 = SquareMatrix::identity(2);
    CHECK(max_diff(kron(eye2, eye2), SquareMatrix::identity(4)) < 1e-15);

    const SquareMatrix zi = kron(pauli(PauliAxis::z), eye2);
    for (int i = 0; i < 4; ++i) CHECK(zi(i, i).real() == doctest::Approx(i < 2 ? 1.0 : -1.0));

    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const SquareMatrix a = random_matrix(rng, 2);
        const SquareMatrix b = random_matrix(rng, 2);
        const Complex lhs = kron(a, b).trace();
        const Complex rhs = a.trace() * b.trace();
        CHECK(std::abs(lhs - rhs) < 1e-13);
    }

    CHECK_THROWS_AS(kron(SquareMatrix::identity(4), SquareMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("kron associativity on three qubit factors") {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const SquareMatrix a = random_matrix(rng, 2);
        const SquareMatrix b = random_matrix(rng, 2);
        const SquareMatrix c = random_matrix(rng, 2);
        CHECK(max_diff(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-13);
    }
}

TEST_CASE("partial trace: Bell state marginals are maximally mixed") {
    // |Phi+> = (|00> + |11>)/sqrt(2)
    SquareMatrix bell(4);
    bell(0, 0) = 0.5;
    bell(0, 3) = 0.5;
    bell(3, 0) = 0.5;
    bell(3, 3) = 0.5;
    const SquareMatrix half_eye = 0.5 * SquareMatrix::identity(2);
    CHECK(max_diff(partial_trace(bell, {0}, {2, 2}), half_eye) < 1e-15);
    CHECK(max_diff(partial_trace(bell, {1}, {2, 2}), half_eye) < 1e-15);
}

TEST_CASE("partial trace of a product recovers the factors up to trace weights") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const SquareMatrix a = random_matrix(rng, 2);
        const SquareMatrix b = random_matrix(rng, 2);
        const SquareMatrix ab = kron(a, b);
        CHECK(max_diff(partial_trace(ab, {0}, {2, 2}), b.trace() * a) < 1e-13);
        CHECK(max_diff(partial_trace(ab, {1}, {2, 2}), a.trace() * b) < 1e-13);

        const SquareMatrix c = random_matrix(rng, 2);
        const SquareMatrix abc = kron(ab, c);
        CHECK(max_diff(partial_trace(abc, {0, 1}, {2, 2, 2}), c.trace() * ab) < 1e-12);
        CHECK(max_diff(partial_trace(abc, {0, 2}, {2, 2, 2}), b.trace() * kron(a, c)) < 1e-12);
    }
    CHECK_THROWS_AS(partial_trace(SquareMatrix::identity(4), {0}, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(SquareMatrix::identity(4), {}, {2, 2}), std::invalid_argument);
}

TEST_CASE("partial trace preserves trace and hermiticity") {
    Rng rng(14);
    for (int trial = 0; trial < 10; ++trial) {
        const SquareMatrix rho = random_density(rng, 8);
        const SquareMatrix reduced = partial_trace(rho, {1}, {2, 2, 2});
        CHECK(std::abs(reduced.trace() - rho.trace()) < 1e-13);
        CHECK(reduced.is_hermitian(1e-13));
    }
}

TEST_CASE("hermitian eigenvalues: fixed spectra") {
    const auto spec_z = hermitian_eigenvalues(pauli(PauliAxis::z));
    CHECK(spec_z.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(spec_z.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

    const auto spec_mixed = hermitian_eigenvalues(0.25 * SquareMatrix::identity(4));
    for (double ev : spec_mixed.eigenvalues) CHECK(ev == doctest::Approx(0.25).epsilon(1e-14));

    Rng rng(1);
    CHECK_THROWS_AS(hermitian_eigenvalues(random_matrix(rng, 2)), std::invalid_argument);
}

TEST_CASE("hermitian eigenvalues: characteristic sums match trace and tr(M^2)") {
    Rng rng(15);
    for (int dim : {2, 4, 8}) {
        for (int trial = 0; trial < 40; ++trial) {
            const SquareMatrix h = random_hermitian(rng, dim);
            const auto spec = hermitian_eigenvalues(h);
            double sum = 0.0, sum_sq = 0.0;
            for (double ev : spec.eigenvalues) {
                sum += ev;
                sum_sq += ev * ev;
            }
            CHECK(std::abs(sum - h.trace().real()) < 1e-12);
            CHECK(std::abs(sum_sq - (h * h).trace().real()) < 1e-10);
            for (std::size_t i = 1; i < spec.eigenvalues.size(); ++i)
                CHECK(spec.eigenvalues[i - 1] <= spec.eigenvalues[i]);
        }
    }
}

TEST_CASE("is_psd verdicts") {
    CHECK(is_psd(0.25 * SquareMatrix::identity(4), 1e-10).psd);

    SquareMatrix m(4);
    m(0, 0) = 0.5;
    m(1, 1) = 0.5;
    m(2, 2) = -1e-3;
    const auto verdict = is_psd(m, 1e-10);
    CHECK_FALSE(verdict.psd);
    CHECK(verdict.min_eigenvalue == doctest::Approx(-1e-3).epsilon(1e-10));
}

TEST_CASE("trace distance: coincidence, orthogonal states, correlated pair") {
    Rng rng(16);
    const SquareMatrix rho = random_density(rng, 4);
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-14));

    SquareMatrix ket0(2), ket1(2);
    ket0(0, 0) = 1.0;
    ket1(1, 1) = 1.0;
    CHECK(trace_distance(ket0, ket1) == doctest::Approx(1.0).epsilon(1e-14));

    // (1/4)(I + t sz(x)sz) vs (1/4)(I + t sx(x)sx) at distance t/2
    for (double t : {0.1, 0.4, 0.9}) {
        SquareMatrix a = SquareMatrix::identity(4);
        a += t * kron(pauli(PauliAxis::z), pauli(PauliAxis::z));
        a *= Complex(0.25);
        SquareMatrix b = SquareMatrix::identity(4);
        b += t * kron(pauli(PauliAxis::x), pauli(PauliAxis::x));
        b *= Complex(0.25);
        CHECK(trace_distance(a, b) == doctest::Approx(t / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("trace distance: symmetry, positivity, triangle inequality") {
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        const SquareMatrix a = random_density(rng, 4);
        const SquareMatrix b = random_density(rng, 4);
        const SquareMatrix c = random_density(rng, 4);
        const double dab = trace_distance(a, b);
        const double dba = trace_distance(b, a);
        const double dac = trace_distance(a, c);
        const double dcb = trace_distance(c, b);
        CHECK(std::abs(dab - dba) < 1e-12);
        CHECK(dab >= 0.0);
        CHECK(dab <= 1.0 + 1e-12);
        CHECK(dab <= dac + dcb + 1e-10);
    }
}

TEST_CASE("commutator") {
    Rng rng(18);
    const SquareMatrix a = random_matrix(rng, 4);
    CHECK(commutator(a, a).max_abs() < 1e-13);

    const SquareMatrix expected = Complex(0.0, 2.0) * pauli(PauliAxis::z);
    CHECK(max_diff(commutator(pauli(PauliAxis::x), pauli(PauliAxis::y)), expected) < 1e-15);
}

TEST_CASE("matrix validation") {
    CHECK_THROWS_AS(SquareMatrix(3), std::invalid_argument);
    CHECK_THROWS_AS(SquareMatrix(1), std::invalid_argument);

    SquareMatrix nan_mat = SquareMatrix::identity(2);
    nan_mat(0, 1) = Complex(std::nan(""), 0.0);
    nan_mat(1, 0) = Complex(std::nan(""), 0.0);
    CHECK_FALSE(nan_mat.all_finite());
    CHECK_THROWS_AS(hermitian_eigenvalues(nan_mat), std::invalid_argument);
}
