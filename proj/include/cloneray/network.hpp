#pragma once

// Independent saturating oracle: a pure-state asymmetric cloner on three
// qubits (original a0, copy a1, one machine qubit b1) whose two-clone
// reductions land exactly on the optimality frontier. Everything reported
// here is measured from the state by Pauli-basis tomography, never assumed.

#include <array>
#include <cmath>
#include <stdexcept>

#include "bloch.hpp"
#include "cloner.hpp"
#include "matrix.hpp"
#include "random.hpp"

namespace cloneray {

// Three-qubit ket, basis index 4*i_a0 + 2*i_a1 + i_b1.
struct PureState8 {
    std::array<Complex, 8> amp{};

    double norm() const {
        double s = 0.0;
        for (const Complex& a : amp) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline SquareMatrix ket_density(const PureState8& psi) {
    SquareMatrix rho(8);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) rho(r, c) = psi.amp[r] * std::conj(psi.amp[c]);
    return rho;
}

// Asymmetry weights constrained by a^2 + b^2 + a*b = 1, which is exactly the
// condition for the cloner output below to have unit norm.
struct AsymmetryWeights {
    double a = 1.0;
    double b = 0.0;
};

inline double weights_residual(const AsymmetryWeights& w) {
    return std::abs(w.a * w.a + w.b * w.b + w.a * w.b - 1.0);
}

inline AsymmetryWeights weights_from_b(double b) {
    if (b < 0.0 || b > 1.0) throw std::invalid_argument("weights_from_b: b must lie in [0, 1]");
    return {0.5 * (-b + std::sqrt(4.0 - 3.0 * b * b)), b};
}

// a |psi>_a0 |Phi+>_(a1 b1) + b |psi>_a1 |Phi+>_(a0 b1),
// with |Phi+> = (|00> + |11>)/sqrt(2).
inline PureState8 cerf_output(const Qubit& psi, const AsymmetryWeights& w) {
    if (std::abs(ket_norm(psi) - 1.0) > 1e-12)
        throw std::invalid_argument("cerf_output: input ket must be normalized");
    if (weights_residual(w) > 1e-12)
        throw std::invalid_argument("cerf_output: weights violate a^2 + b^2 + a*b = 1");
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PureState8 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Complex amp = 0.0;
                if (j == k) amp += w.a * psi[i];
                if (i == k) amp += w.b * psi[j];
                out.amp[4 * i + 2 * j + k] = inv_sqrt2 * amp;
            }
    return out;
}

// Two-clone state: machine qubit traced out.
inline SquareMatrix clone_pair_state(const Qubit& psi, const AsymmetryWeights& w) {
    return partial_trace(ket_density(cerf_output(psi, w)), {0, 1}, {2, 2, 2});
}

struct ExtractedParams {
    double s0 = 0.0;
    double s1 = 0.0;
    CorrelationTensor tensor;
    double isotropy_residual = 0.0;
};

// Pauli-basis tomography of a two-qubit state: reduction factors from the
// marginals (least squares along m) and the full correlation tensor from
// tr(rho sigma_j (x) sigma_k).
inline ExtractedParams extract_params(const SquareMatrix& rho_pair, const BlochVector& m) {
    if (rho_pair.dim() != 4) throw std::invalid_argument("extract_params: expected a two-qubit state");
    if (!is_unit(m)) throw std::invalid_argument("extract_params: m must be a unit vector");

    const auto& sigma = detail::pauli_triple();
    const SquareMatrix eye2 = SquareMatrix::identity(2);

    ExtractedParams out;
    std::array<Complex, 3> c0{}, c1{};
    for (int j = 0; j < 3; ++j) {
        c0[j] = (rho_pair * kron(sigma[j], eye2)).trace();
        c1[j] = (rho_pair * kron(eye2, sigma[j])).trace();
        out.s0 += c0[j].real() * m[j];
        out.s1 += c1[j].real() * m[j];
        for (int k = 0; k < 3; ++k) out.tensor(j, k) = (rho_pair * kron(sigma[j], sigma[k])).trace().real();
    }
    for (int j = 0; j < 3; ++j) {
        out.isotropy_residual = std::max(out.isotropy_residual, std::abs(c0[j] - Complex(out.s0 * m[j])));
        out.isotropy_residual = std::max(out.isotropy_residual, std::abs(c1[j] - Complex(out.s1 * m[j])));
    }
    if (out.isotropy_residual > 1e-8)
        throw std::runtime_error("extract_params: not isotropic for this m");
    return out;
}

// Isotropic part tr(T)/3 of a correlation tensor.
inline double tensor_isotropic_part(const CorrelationTensor& tensor) {
    return (tensor(0, 0) + tensor(1, 1) + tensor(2, 2)) / 3.0;
}

// Coefficient of the antisymmetric component K(m) (K_jk = eps_jkl m_l).
inline double tensor_antisymmetric_along(const CorrelationTensor& tensor, const Vec3& m) {
    double c = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            for (int l = 0; l < 3; ++l) c += tensor(j, k) * detail::levi_civita(j, k, l) * m[l];
    return 0.5 * c;
}

// Entrywise residual of T against t*I + t_xy*K(m).
inline double tensor_model_residual(const CorrelationTensor& tensor, double t, double t_xy,
                                    const Vec3& m) {
    const CorrelationTensor model = covariant_tensor(t, t_xy, m);
    double r = 0.0;
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r = std::max(r, std::abs(tensor(j, k) - model(j, k)));
    return r;
}

struct SaturationReport {
    double a = 0.0;
    double b = 0.0;
    int samples = 0;
    double s0 = 0.0;                        // mean over inputs
    double s1 = 0.0;
    double t = 0.0;
    double input_independence = 0.0;        // max |value - mean| over inputs
    double sum_rule_residual = 0.0;         // max |s0 + s1 - 1 - t|
    double frontier_residual = 0.0;         // max |frontier_lhs(s0, s1, 0)|
    double max_abs_t_xy = 0.0;
    double max_anisotropy = 0.0;            // tensor residual against t*I
    double max_isotropy_residual = 0.0;
    double shrink0_vs_weights = 0.0;        // |s0 - (1 - b^2)|
    double shrink1_vs_weights = 0.0;        // |s1 - (1 - a^2)|
};

// Runs the cloner on `samples` Haar-random inputs and measures everything
// the saturating family is supposed to satisfy.
inline SaturationReport verify_saturation(const AsymmetryWeights& w, int samples, Rng& rng) {
    if (samples < 1) throw std::invalid_argument("verify_saturation: need at least one sample");
    SaturationReport rep;
    rep.a = w.a;
    rep.b = w.b;
    rep.samples = samples;

    std::vector<double> s0s, s1s, ts;
    s0s.reserve(samples);
    s1s.reserve(samples);
    ts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        const Qubit psi = sample_pure_qubit(rng);
        const BlochVector m = bloch_vector_of(psi);
        const ExtractedParams ep = extract_params(clone_pair_state(psi, w), m);
        const double t = tensor_isotropic_part(ep.tensor);
        const double t_xy = tensor_antisymmetric_along(ep.tensor, m);
        s0s.push_back(ep.s0);
        s1s.push_back(ep.s1);
        ts.push_back(t);
        rep.max_abs_t_xy = std::max(rep.max_abs_t_xy, std::abs(t_xy));
        rep.max_anisotropy = std::max(rep.max_anisotropy, tensor_model_residual(ep.tensor, t, t_xy, m));
        rep.max_isotropy_residual = std::max(rep.max_isotropy_residual, ep.isotropy_residual);
        rep.sum_rule_residual = std::max(rep.sum_rule_residual, std::abs(ep.s0 + ep.s1 - 1.0 - t));
        rep.frontier_residual = std::max(rep.frontier_residual, std::abs(frontier_lhs(ep.s0, ep.s1, 0.0)));
    }

    for (int i = 0; i < samples; ++i) {
        rep.s0 += s0s[i] / samples;
        rep.s1 += s1s[i] / samples;
        rep.t += ts[i] / samples;
    }
    for (int i = 0; i < samples; ++i) {
        rep.input_independence = std::max(rep.input_independence, std::abs(s0s[i] - rep.s0));
        rep.input_independence = std::max(rep.input_independence, std::abs(s1s[i] - rep.s1));
        rep.input_independence = std::max(rep.input_independence, std::abs(ts[i] - rep.t));
    }
    rep.shrink0_vs_weights = std::abs(rep.s0 - (1.0 - w.b * w.b));
    rep.shrink1_vs_weights = std::abs(rep.s1 - (1.0 - w.a * w.a));
    return rep;
}

}  // namespace cloneray
