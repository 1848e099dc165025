#pragma once

// Bloch vectors, SO(3) rotations and the SU(2) covering map, plus the
// seeded samplers used by the randomized verification suites.

#include <array>
#include <cmath>
#include <stdexcept>

#include "matrix.hpp"
#include "random.hpp"

namespace cloneray {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(double s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
};

using BlochVector = Vec3;

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (n == 0.0) throw std::invalid_argument("normalized: zero vector");
    return (1.0 / n) * a;
}

inline bool is_unit(const Vec3& a, double tol = 1e-12) { return std::abs(norm(a) - 1.0) <= tol; }

inline constexpr Vec3 kXAxis{1.0, 0.0, 0.0};
inline constexpr Vec3 kYAxis{0.0, 1.0, 0.0};
inline constexpr Vec3 kZAxis{0.0, 0.0, 1.0};

// Rotation about a unit axis by an angle in radians.
struct Rotation {
    Vec3 axis;
    double angle = 0.0;
};

// m.x*sigma_x + m.y*sigma_y + m.z*sigma_z
inline SquareMatrix pauli_vector(const Vec3& m) {
    return SquareMatrix::from_rows({{Complex(m.z, 0.0), Complex(m.x, -m.y)},
                                    {Complex(m.x, m.y), Complex(-m.z, 0.0)}});
}

// rho = (1/2)(I + m.sigma); pure iff |m| = 1
inline SquareMatrix qubit_state(const BlochVector& m) {
    if (norm(m) > 1.0 + 1e-12) throw std::invalid_argument("qubit_state: Bloch vector outside unit ball");
    SquareMatrix rho = SquareMatrix::identity(2);
    rho += pauli_vector(m);
    rho *= Complex(0.5);
    return rho;
}

// Rodrigues rotation of m about r.axis by r.angle.
inline BlochVector rotate_vector(const Rotation& r, const BlochVector& m) {
    if (!is_unit(r.axis)) throw std::invalid_argument("rotate_vector: axis must be a unit vector");
    const double c = std::cos(r.angle);
    const double s = std::sin(r.angle);
    return c * m + s * cross(r.axis, m) + ((1.0 - c) * dot(r.axis, m)) * r.axis;
}

// U(R) = cos(angle/2) I - i sin(angle/2) axis.sigma, the SU(2) element
// covering the SO(3) rotation: U qubit_state(m) U^dag = qubit_state(R m).
inline SquareMatrix su2_of(const Rotation& r) {
    if (!is_unit(r.axis)) throw std::invalid_argument("su2_of: axis must be a unit vector");
    SquareMatrix u = std::cos(0.5 * r.angle) * SquareMatrix::identity(2);
    u += Complex(0.0, -std::sin(0.5 * r.angle)) * pauli_vector(r.axis);
    return u;
}

// uniform on the unit sphere (normalized Gaussian triple)
inline BlochVector sample_unit_vector(Rng& rng) {
    while (true) {
        const Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = norm(v);
        if (n > 1e-12) return (1.0 / n) * v;
    }
}

// uniform axis, uniform angle in [0, 2*pi)
inline Rotation sample_rotation(Rng& rng) {
    return {sample_unit_vector(rng), rng.uniform(0.0, 2.0 * 3.14159265358979323846)};
}

using Qubit = std::array<Complex, 2>;  // single-qubit ket

inline double ket_norm(const Qubit& psi) {
    return std::sqrt(std::norm(psi[0]) + std::norm(psi[1]));
}

inline SquareMatrix ket_density(const Qubit& psi) {
    SquareMatrix rho(2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) rho(r, c) = psi[r] * std::conj(psi[c]);
    return rho;
}

inline BlochVector bloch_vector_of(const Qubit& psi) {
    const Complex cross_term = std::conj(psi[0]) * psi[1];
    return {2.0 * cross_term.real(), 2.0 * cross_term.imag(),
            std::norm(psi[0]) - std::norm(psi[1])};
}

// Haar-random pure qubit state
inline Qubit sample_pure_qubit(Rng& rng) {
    while (true) {
        Qubit psi{Complex(rng.gaussian(), rng.gaussian()), Complex(rng.gaussian(), rng.gaussian())};
        const double n = ket_norm(psi);
        if (n > 1e-12) {
            psi[0] /= n;
            psi[1] /= n;
            return psi;
        }
    }
}

}  // namespace cloneray
