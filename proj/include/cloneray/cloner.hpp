#pragma once

// The universal asymmetric 1->2 cloning output family and the constraints
// that pin it down: isotropic marginals, rotation covariance, the nine
// linear conditions on the correlation tensor, the closed-form two-clone
// spectrum, and the feasibility / frontier relations for the reduction
// factors (s0, s1).

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bloch.hpp"
#include "matrix.hpp"

namespace cloneray {

// Real 3x3 tensor t_jk multiplying sigma_j (x) sigma_k in the two-qubit
// output expansion; indices run over {x, y, z}.
struct CorrelationTensor {
    std::array<std::array<double, 3>, 3> t{};

    double& operator()(int j, int k) { return t[j][k]; }
    double operator()(int j, int k) const { return t[j][k]; }

    static CorrelationTensor isotropic(double value) {
        CorrelationTensor out;
        for (int j = 0; j < 3; ++j) out(j, j) = value;
        return out;
    }
};

// Parameters of the canonical universal family: reduction factors s0, s1,
// isotropic correlation t and antisymmetric correlation t_xy.
struct CloneFamilyParams {
    double s0 = 0.0;
    double s1 = 0.0;
    double t = 0.0;
    double t_xy = 0.0;
};

namespace detail {
inline double levi_civita(int j, int k, int l) {
    if (j == k || k == l || j == l) return 0.0;
    // even permutations of (0,1,2)
    if ((j == 0 && k == 1 && l == 2) || (j == 1 && k == 2 && l == 0) || (j == 2 && k == 0 && l == 1))
        return 1.0;
    return -1.0;
}

inline const std::array<SquareMatrix, 3>& pauli_triple() {
    static const std::array<SquareMatrix, 3> sigma{pauli(PauliAxis::x), pauli(PauliAxis::y),
                                                   pauli(PauliAxis::z)};
    return sigma;
}
}  // namespace detail

// The unique rotation-covariant tensor family through the canonical point:
// T(m) = t * I + t_xy * K(m) with K_jk = eps_jkl m_l, so that at m = z-hat
// the entry T_xy equals +t_xy and T_yx equals -t_xy.
inline CorrelationTensor covariant_tensor(double t, double t_xy, const Vec3& m) {
    CorrelationTensor out = CorrelationTensor::isotropic(t);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) out(j, k) += t_xy * detail::levi_civita(j, k, l) * m[l];
    return out;
}

// rho = (1/4)(I(x)I + s0 m.sigma (x) I + s1 I (x) m.sigma + sum_jk T_jk sigma_j (x) sigma_k)
// Hermitian and trace one by construction; positivity is NOT guaranteed.
inline SquareMatrix output_state_general(const BlochVector& m, double s0, double s1,
                                         const CorrelationTensor& tensor) {
    const auto& sigma = detail::pauli_triple();
    const SquareMatrix eye2 = SquareMatrix::identity(2);
    SquareMatrix rho = SquareMatrix::identity(4);
    rho += s0 * kron(pauli_vector(m), eye2);
    rho += s1 * kron(eye2, pauli_vector(m));
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            const double v = tensor(j, k);
            if (v != 0.0) rho += v * kron(sigma[j], sigma[k]);
        }
    rho *= Complex(0.25);
    return rho;
}

// Canonical universal output for input direction m.
inline SquareMatrix universal_output(const BlochVector& m, const CloneFamilyParams& p) {
    if (!is_unit(m)) throw std::invalid_argument("universal_output: m must be a unit vector");
    return output_state_general(m, p.s0, p.s1, covariant_tensor(p.t, p.t_xy, m));
}

struct IsotropyEstimate {
    double s0 = 0.0;
    double s1 = 0.0;
    double residual = 0.0;  // max deviation of either marginal from s_j * m
};

// Estimate the reduction factors from the single-clone marginals and report
// how far they sit from the isotropic form (1/2)(I + s_j m.sigma).
inline IsotropyEstimate isotropy_check(const SquareMatrix& rho_pair, const BlochVector& m) {
    if (rho_pair.dim() != 4) throw std::invalid_argument("isotropy_check: expected a two-qubit state");
    const double m2 = dot(m, m);
    if (m2 < 1e-24) throw std::invalid_argument("isotropy_check: direction undefined for zero m");

    const auto& sigma = detail::pauli_triple();
    const SquareMatrix eye2 = SquareMatrix::identity(2);
    std::array<Complex, 3> c0{}, c1{};
    for (int j = 0; j < 3; ++j) {
        c0[j] = (rho_pair * kron(sigma[j], eye2)).trace();
        c1[j] = (rho_pair * kron(eye2, sigma[j])).trace();
    }

    IsotropyEstimate est;
    for (int j = 0; j < 3; ++j) {
        est.s0 += c0[j].real() * m[j] / m2;
        est.s1 += c1[j].real() * m[j] / m2;
    }
    for (int j = 0; j < 3; ++j) {
        est.residual = std::max(est.residual, std::abs(c0[j] - Complex(est.s0 * m[j])));
        est.residual = std::max(est.residual, std::abs(c1[j] - Complex(est.s1 * m[j])));
    }
    return est;
}

// Max-norm defect of the covariance relation
//   family(R m) = (U (x) U) family(m) (U (x) U)^dag,  U = su2_of(R)
// for an arbitrary map m -> two-qubit state.
template <typename Family>
double family_covariance_residual(Family&& family, const Rotation& r, const BlochVector& m) {
    const SquareMatrix rotated_input = family(rotate_vector(r, m));
    const SquareMatrix u = su2_of(r);
    const SquareMatrix uu = kron(u, u);
    const SquareMatrix conjugated = uu * family(m) * uu.adjoint();
    return (rotated_input - conjugated).max_abs();
}

inline double covariance_residual(const CloneFamilyParams& p, const Rotation& r, const BlochVector& m) {
    return family_covariance_residual([&p](const BlochVector& v) { return universal_output(v, p); }, r, m);
}

// Max-norm of [exp(i*alpha*m.sigma) (x) exp(i*alpha*m.sigma), rho].
inline double invariance_residual(const SquareMatrix& rho, const BlochVector& m, double alpha) {
    if (!is_unit(m)) throw std::invalid_argument("invariance_residual: m must be a unit vector");
    if (rho.dim() != 4) throw std::invalid_argument("invariance_residual: expected a two-qubit state");
    // exp(i*alpha*m.sigma) = cos(alpha) I + i sin(alpha) m.sigma for unit m
    SquareMatrix v = std::cos(alpha) * SquareMatrix::identity(2);
    v += Complex(0.0, std::sin(alpha)) * pauli_vector(m);
    return commutator(kron(v, v), rho).max_abs();
}

// --- the nine linear conditions on the correlation tensor ------------------

// Column order of the unknowns: (xx, xy, xz, yx, yy, yz, zx, zy, zz).
using TensorSystem = std::array<std::array<double, 9>, 9>;

inline std::array<double, 9> tensor_as_vector(const CorrelationTensor& tensor) {
    std::array<double, 9> v{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) v[3 * j + k] = tensor(j, k);
    return v;
}

inline const char* tensor_entry_name(int idx) {
    static constexpr const char* names[9] = {"t_xx", "t_xy", "t_xz", "t_yx", "t_yy",
                                             "t_yz", "t_zx", "t_zy", "t_zz"};
    if (idx < 0 || idx > 8) throw std::invalid_argument("tensor_entry_name: index out of range");
    return names[idx];
}

// Coefficient matrix of the nine homogeneous rotation-invariance conditions
// on t_jk, in the printed row order.
inline TensorSystem tjk_linear_system(const BlochVector& m) {
    if (!is_unit(m)) throw std::invalid_argument("tjk_linear_system: m must be a unit vector");
    const double mx = m.x, my = m.y, mz = m.z;
    enum { xx, xy, xz, yx, yy, yz, zx, zy, zz };
    TensorSystem a{};
    a[0][xy] = -mz; a[0][xz] = my;  a[0][yx] = -mz; a[0][zx] = my;
    a[1][xx] = mz;  a[1][xz] = -mx; a[1][yy] = -mz; a[1][zy] = my;
    a[2][xx] = -my; a[2][xy] = mx;  a[2][yz] = -mz; a[2][zz] = my;
    a[3][xx] = mz;  a[3][yy] = -mz; a[3][yz] = my;  a[3][zx] = -mx;
    a[4][xy] = mz;  a[4][yx] = mz;  a[4][yz] = -mx; a[4][zy] = -mx;
    a[5][xz] = mz;  a[5][yx] = -my; a[5][yy] = mx;  a[5][zz] = -mx;
    a[6][xx] = -my; a[6][yx] = mx;  a[6][zy] = -mz; a[6][zz] = my;
    a[7][xy] = -my; a[7][yy] = mx;  a[7][zx] = mz;  a[7][zz] = -mx;
    a[8][xz] = -my; a[8][yz] = mx;  a[8][zx] = -my; a[8][zy] = mx;
    return a;
}

inline std::array<double, 9> apply_system(const TensorSystem& a, const std::array<double, 9>& v) {
    std::array<double, 9> out{};
    for (int r = 0; r < 9; ++r)
        for (int c = 0; c < 9; ++c) out[r] += a[r][c] * v[c];
    return out;
}

// Nullspace basis by Gauss-Jordan elimination with partial pivoting.
inline std::vector<std::array<double, 9>> tjk_nullspace(TensorSystem a, double pivot_tol = 1e-12) {
    constexpr int n = 9;
    std::vector<int> pivot_cols;
    std::vector<int> pivot_rows;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int best = -1;
        double best_val = pivot_tol;
        for (int r = rank; r < n; ++r)
            if (std::abs(a[r][col]) > best_val) {
                best = r;
                best_val = std::abs(a[r][col]);
            }
        if (best < 0) continue;
        std::swap(a[best], a[rank]);
        const double inv = 1.0 / a[rank][col];
        for (int c = 0; c < n; ++c) a[rank][c] *= inv;
        a[rank][col] = 1.0;
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int c = 0; c < n; ++c) a[r][c] -= f * a[rank][c];
            a[r][col] = 0.0;
        }
        pivot_cols.push_back(col);
        pivot_rows.push_back(rank);
        ++rank;
    }

    std::vector<std::array<double, 9>> basis;
    for (int col = 0; col < n; ++col) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), col) != pivot_cols.end()) continue;
        std::array<double, 9> v{};
        v[col] = 1.0;
        for (int i = 0; i < rank; ++i) v[pivot_cols[i]] = -a[pivot_rows[i]][col];
        basis.push_back(v);
    }
    return basis;
}

enum class InputAxis { up, down, right, left };

inline Vec3 axis_vector(InputAxis axis) {
    switch (axis) {
        case InputAxis::up: return {0.0, 0.0, 1.0};
        case InputAxis::down: return {0.0, 0.0, -1.0};
        case InputAxis::right: return {1.0, 0.0, 0.0};
        case InputAxis::left: return {-1.0, 0.0, 0.0};
    }
    throw std::invalid_argument("axis_vector: invalid axis");
}

// How the nullspace constrains each tensor entry at one of the four special
// input directions: forced to zero, tied (equal / opposite) to a partner,
// or left free.
struct AxisConstraintReport {
    InputAxis axis = InputAxis::up;
    int nullspace_dim = 0;
    std::array<bool, 9> forced_zero{};
    std::vector<std::pair<int, int>> equal_pairs;
    std::vector<std::pair<int, int>> opposite_pairs;
    std::vector<int> free_entries;
};

inline AxisConstraintReport axis_constraints(InputAxis axis) {
    const auto basis = tjk_nullspace(tjk_linear_system(axis_vector(axis)));
    const double tol = 1e-10;

    double scale = 0.0;
    for (const auto& v : basis)
        for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) scale = 1.0;

    AxisConstraintReport rep;
    rep.axis = axis;
    rep.nullspace_dim = static_cast<int>(basis.size());

    const auto coordinate_row = [&](int entry) {
        std::vector<double> row;
        row.reserve(basis.size());
        for (const auto& v : basis) row.push_back(v[entry]);
        return row;
    };

    std::array<std::vector<double>, 9> rows;
    for (int i = 0; i < 9; ++i) rows[i] = coordinate_row(i);

    const auto is_zero_row = [&](const std::vector<double>& r) {
        for (double x : r)
            if (std::abs(x) > tol * scale) return false;
        return true;
    };

    for (int i = 0; i < 9; ++i) rep.forced_zero[i] = is_zero_row(rows[i]);

    std::array<bool, 9> paired{};
    for (int i = 0; i < 9; ++i) {
        if (rep.forced_zero[i]) continue;
        for (int j = i + 1; j < 9; ++j) {
            if (rep.forced_zero[j]) continue;
            bool equal = true, opposite = true;
            for (std::size_t b = 0; b < rows[i].size(); ++b) {
                if (std::abs(rows[i][b] - rows[j][b]) > tol * scale) equal = false;
                if (std::abs(rows[i][b] + rows[j][b]) > tol * scale) opposite = false;
            }
            if (equal) {
                rep.equal_pairs.emplace_back(i, j);
                paired[i] = paired[j] = true;
            } else if (opposite) {
                rep.opposite_pairs.emplace_back(i, j);
                paired[i] = paired[j] = true;
            }
        }
    }
    for (int i = 0; i < 9; ++i)
        if (!rep.forced_zero[i] && !paired[i]) rep.free_entries.push_back(i);
    return rep;
}

// --- closed-form spectrum and feasibility -----------------------------------

// Eigenvalues of the canonical output, ascending:
//   (1/4)(1 + t +- (s0 + s1)),  (1/4)(1 - t +- sqrt(4t^2 + 4t_xy^2 + (s0-s1)^2))
inline std::array<double, 4> eigen_closed_form(const CloneFamilyParams& p) {
    const double sum = p.s0 + p.s1;
    const double root = std::sqrt(4.0 * p.t * p.t + 4.0 * p.t_xy * p.t_xy +
                                  (p.s0 - p.s1) * (p.s0 - p.s1));
    std::array<double, 4> ev{0.25 * (1.0 + p.t + sum), 0.25 * (1.0 + p.t - sum),
                             0.25 * (1.0 - p.t + root), 0.25 * (1.0 - p.t - root)};
    std::sort(ev.begin(), ev.end());
    return ev;
}

inline double min_eigenvalue_closed_form(const CloneFamilyParams& p) {
    const double root = std::sqrt(4.0 * p.t * p.t + 4.0 * p.t_xy * p.t_xy +
                                  (p.s0 - p.s1) * (p.s0 - p.s1));
    return 0.25 * std::min(1.0 + p.t - (p.s0 + p.s1), 1.0 - p.t - root);
}

// The three non-negativity conditions on the closed-form spectrum.
enum class CloneInequality {
    sum_bound,    // s0 + s1 <= 1 + t
    cross_bound,  // (s0 - s1)^2 + 4 t_xy^2 <= (1 + t)(1 - 3t)
    t_range,      // -1 <= t <= 1/3
};

inline const char* inequality_label(CloneInequality ineq) {
    switch (ineq) {
        case CloneInequality::sum_bound: return "eq9";
        case CloneInequality::cross_bound: return "eq10";
        case CloneInequality::t_range: return "eq11";
    }
    return "?";
}

struct FeasibilityVerdict {
    bool ok = false;
    std::vector<CloneInequality> violated;
};

inline FeasibilityVerdict feasible(const CloneFamilyParams& p, double tol = kDefaultPsdTol) {
    FeasibilityVerdict v;
    if (p.s0 + p.s1 > 1.0 + p.t + tol) v.violated.push_back(CloneInequality::sum_bound);
    const double lhs = (p.s0 - p.s1) * (p.s0 - p.s1) + 4.0 * p.t_xy * p.t_xy;
    if (lhs > (1.0 + p.t) * (1.0 - 3.0 * p.t) + tol) v.violated.push_back(CloneInequality::cross_bound);
    if (p.t < -1.0 - tol || p.t > 1.0 / 3.0 + tol) v.violated.push_back(CloneInequality::t_range);
    v.ok = v.violated.empty();
    return v;
}

// s0^2 + s1^2 + s0*s1 - s0 - s1 + t_xy^2; <= 0 on optimal machines, = 0 on
// saturating ones.
inline double frontier_lhs(double s0, double s1, double t_xy) {
    return s0 * s0 + s1 * s1 + s0 * s1 - s0 - s1 + t_xy * t_xy;
}

// The t maximizing both reduction factors (t = s0 + s1 - 1), clamped to the
// admissible range [-1, 1/3].
inline double maximality_t(double s0, double s1) {
    return std::clamp(s0 + s1 - 1.0, -1.0, 1.0 / 3.0);
}

}  // namespace cloneray
