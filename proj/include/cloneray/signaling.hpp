#pragma once

// No-signaling test bench: antipodal output mixtures, their basis
// independence, a deliberately non-universal control family that would
// signal, and a steering demo that prepares the mixtures remotely.

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>

#include "bloch.hpp"
#include "cloner.hpp"
#include "matrix.hpp"
#include "random.hpp"

namespace cloneray {

enum class ChannelLabel { universal, aligned_control, custom };

inline const char* channel_label_name(ChannelLabel label) {
    switch (label) {
        case ChannelLabel::universal: return "universal";
        case ChannelLabel::aligned_control: return "aligned-control";
        case ChannelLabel::custom: return "custom";
    }
    return "?";
}

// A cloning machine viewed as a map from input direction to the two-qubit
// output state. Outputs are trace-one Hermitian; positivity is reported by
// downstream checks, not required, so hypothetical machines are admitted.
struct CloneChannel {
    std::function<SquareMatrix(const BlochVector&)> map;
    ChannelLabel label = ChannelLabel::custom;

    SquareMatrix operator()(const BlochVector& m) const { return map(m); }
};

inline CloneChannel universal_channel(const CloneFamilyParams& p) {
    return {[p](const BlochVector& m) { return universal_output(m, p); }, ChannelLabel::universal};
}

// Negative control: correlations aligned with the input direction,
// T(m) = t * m m^T. The marginals stay isotropic, but the antipodal
// mixtures depend on m, so this family would signal for t != 0.
inline CloneChannel aligned_control_family(double s0, double s1, double t) {
    return {[s0, s1, t](const BlochVector& m) {
                CorrelationTensor tensor;
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) tensor(j, k) = t * m[j] * m[k];
                return output_state_general(m, s0, s1, tensor);
            },
            ChannelLabel::aligned_control};
}

// (1/2)[ch(m) + ch(-m)], the state a remote party can steer to.
inline SquareMatrix mixture_output(const CloneChannel& ch, const BlochVector& m) {
    if (!is_unit(m)) throw std::invalid_argument("mixture_output: m must be a unit vector");
    SquareMatrix mix = ch(m);
    mix += ch(-m);
    mix *= Complex(0.5);
    return mix;
}

struct MixtureReport {
    BlochVector basis_a;
    BlochVector basis_b;
    double trace_distance = 0.0;
    double max_entry_diff = 0.0;
    double tolerance = 0.0;
    bool signaling = false;
};

// Distinguishability of the mixtures steered with two different bases.
inline MixtureReport signaling_distance(const CloneChannel& ch, const BlochVector& m,
                                        const BlochVector& m2, double tol = 1e-12) {
    const SquareMatrix mix_a = mixture_output(ch, m);
    const SquareMatrix mix_b = mixture_output(ch, m2);
    MixtureReport rep;
    rep.basis_a = m;
    rep.basis_b = m2;
    rep.trace_distance = trace_distance(mix_a, mix_b);
    rep.max_entry_diff = (mix_a - mix_b).max_abs();
    rep.tolerance = tol;
    rep.signaling = rep.trace_distance > tol;
    return rep;
}

struct RemotePreparationReport {
    SquareMatrix average{4};    // shot-averaged (or exactly weighted) channel output
    SquareMatrix reference{4};  // exact mixture_output for the same basis
    double distance = 0.0;      // trace distance between the two
    long shots = 0;             // 0 means exact probability weighting
    long plus_outcomes = 0;
};

// Steering scenario: a singlet pair, the sender projects along +-basis
// (probability 1/2 each), the receiver's collapsed qubit is fed to the
// channel. shots = 0 averages the two branches with their exact
// probabilities; shots > 0 samples outcomes with per-shot sub-seeds.
inline RemotePreparationReport remote_preparation_demo(const CloneChannel& ch,
                                                       const BlochVector& basis, long shots,
                                                       std::uint64_t seed) {
    if (!is_unit(basis)) throw std::invalid_argument("remote_preparation_demo: basis must be unit");
    if (shots < 0) throw std::invalid_argument("remote_preparation_demo: negative shot count");

    // |Psi-> = (|01> - |10>)/sqrt(2)
    SquareMatrix singlet(4);
    const double half = 0.5;
    singlet(1, 1) = half;
    singlet(2, 2) = half;
    singlet(1, 2) = -half;
    singlet(2, 1) = -half;

    const SquareMatrix eye2 = SquareMatrix::identity(2);
    const auto& sigma = detail::pauli_triple();

    // collapse the receiver qubit for each sender outcome
    std::array<SquareMatrix, 2> branch_output{SquareMatrix(4), SquareMatrix(4)};
    std::array<double, 2> branch_prob{};
    for (int outcome = 0; outcome < 2; ++outcome) {
        const BlochVector direction = outcome == 0 ? basis : -basis;
        const SquareMatrix projector = kron(qubit_state(direction), eye2);
        const SquareMatrix projected = projector * singlet * projector;
        const double prob = projected.trace().real();
        SquareMatrix receiver = partial_trace(projected, {1}, {2, 2});
        receiver *= Complex(1.0 / prob);
        BlochVector r{};
        r.x = (receiver * sigma[0]).trace().real();
        r.y = (receiver * sigma[1]).trace().real();
        r.z = (receiver * sigma[2]).trace().real();
        branch_prob[outcome] = prob;
        branch_output[outcome] = ch(normalized(r));
    }

    RemotePreparationReport rep;
    rep.shots = shots;
    if (shots == 0) {
        rep.average = branch_prob[0] * branch_output[0] + branch_prob[1] * branch_output[1];
    } else {
        const Rng master(seed);
        SquareMatrix sum(4);
        for (long i = 0; i < shots; ++i) {
            Rng shot_rng = master.spawn(static_cast<std::uint64_t>(i));
            const bool plus = shot_rng.uniform() < branch_prob[0];
            if (plus) ++rep.plus_outcomes;
            sum += branch_output[plus ? 0 : 1];
        }
        sum *= Complex(1.0 / static_cast<double>(shots));
        rep.average = sum;
    }
    rep.reference = mixture_output(ch, basis);
    rep.distance = trace_distance(rep.average, rep.reference);
    return rep;
}

}  // namespace cloneray
