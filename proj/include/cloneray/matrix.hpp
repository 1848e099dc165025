#pragma once

// Dense complex matrix algebra for one-, two- and three-qubit operators:
// Pauli matrices, Kronecker products, partial traces, commutators, trace
// distance, and a cyclic Jacobi eigensolver for Hermitian spectra.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace cloneray {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-10;

// Square complex matrix of dimension 2, 4 or 8, row-major storage.
class SquareMatrix {
public:
    explicit SquareMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim) {
        if (dim != 2 && dim != 4 && dim != 8)
            throw std::invalid_argument("SquareMatrix: dimension must be 2, 4 or 8");
    }

    static SquareMatrix identity(int dim) {
        SquareMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static SquareMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        SquareMatrix m(static_cast<int>(rows.size()));
        int r = 0;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != m.dim_)
                throw std::invalid_argument("SquareMatrix: ragged initializer");
            int c = 0;
            for (const Complex& v : row) m(r, c++) = v;
            ++r;
        }
        return m;
    }

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    Complex operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }

    Complex trace() const {
        Complex t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    SquareMatrix adjoint() const {
        SquareMatrix m(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    double max_abs() const {
        double v = 0.0;
        for (const Complex& x : a_) v = std::max(v, std::abs(x));
        return v;
    }

    double hermiticity_residual() const {
        double v = 0.0;
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c)
                v = std::max(v, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
        return v;
    }

    bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_residual() <= tol; }

    bool all_finite() const {
        for (const Complex& x : a_)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }

    SquareMatrix& operator+=(const SquareMatrix& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }

    SquareMatrix& operator-=(const SquareMatrix& o) {
        require_same_dim(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }

    SquareMatrix& operator*=(Complex s) {
        for (Complex& x : a_) x *= s;
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
    friend SquareMatrix operator*(Complex s, SquareMatrix m) { return m *= s; }
    friend SquareMatrix operator*(SquareMatrix m, Complex s) { return m *= s; }
    friend SquareMatrix operator*(double s, SquareMatrix m) { return m *= Complex(s); }
    friend SquareMatrix operator*(SquareMatrix m, double s) { return m *= Complex(s); }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        a.require_same_dim(b);
        SquareMatrix out(a.dim_);
        for (int r = 0; r < a.dim_; ++r)
            for (int k = 0; k < a.dim_; ++k) {
                const Complex arow = a(r, k);
                if (arow == 0.0) continue;
                for (int c = 0; c < a.dim_; ++c) out(r, c) += arow * b(k, c);
            }
        return out;
    }

private:
    void require_same_dim(const SquareMatrix& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("SquareMatrix: dimension mismatch");
    }

    int dim_;
    std::vector<Complex> a_;
};

enum class PauliAxis { x, y, z };

inline SquareMatrix pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::x:
            return SquareMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
        case PauliAxis::y:
            return SquareMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
        case PauliAxis::z:
            return SquareMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}});
    }
    throw std::invalid_argument("pauli: invalid axis");
}

inline SquareMatrix pauli(int axis) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("pauli: axis index out of range");
    return pauli(static_cast<PauliAxis>(axis));
}

// Kronecker product with a as the left (most significant) factor.
inline SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
    const int dim = a.dim() * b.dim();
    if (dim != 4 && dim != 8) throw std::invalid_argument("kron: product dimension out of range");
    SquareMatrix out(dim);
    for (int ra = 0; ra < a.dim(); ++ra)
        for (int ca = 0; ca < a.dim(); ++ca) {
            const Complex v = a(ra, ca);
            if (v == 0.0) continue;
            for (int rb = 0; rb < b.dim(); ++rb)
                for (int cb = 0; cb < b.dim(); ++cb)
                    out(ra * b.dim() + rb, ca * b.dim() + cb) = v * b(rb, cb);
        }
    return out;
}

// Partial trace over the factors NOT listed in keep. Factor 0 is the leftmost
// (most significant) tensor slot; keep must be strictly increasing.
inline SquareMatrix partial_trace(const SquareMatrix& m, const std::vector<int>& keep,
                                  const std::vector<int>& dims) {
    const int nf = static_cast<int>(dims.size());
    long long total = 1;
    for (int d : dims) {
        if (d < 2) throw std::invalid_argument("partial_trace: factor dimension < 2");
        total *= d;
    }
    if (total != m.dim()) throw std::invalid_argument("partial_trace: factor dimensions do not match matrix");
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set empty");
    for (std::size_t i = 0; i < keep.size(); ++i) {
        if (keep[i] < 0 || keep[i] >= nf) throw std::invalid_argument("partial_trace: keep index out of range");
        if (i > 0 && keep[i] <= keep[i - 1])
            throw std::invalid_argument("partial_trace: keep must be strictly increasing");
    }

    std::vector<int> traced;
    for (int f = 0; f < nf; ++f)
        if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);

    std::vector<long long> stride(nf, 1);
    for (int f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

    int kept_dim = 1;
    for (int f : keep) kept_dim *= dims[f];
    int traced_dim = 1;
    for (int f : traced) traced_dim *= dims[f];

    // decompose a linear index over the given factor subset, most significant first
    const auto offset = [&](int idx, const std::vector<int>& factors) {
        long long off = 0;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            off += static_cast<long long>(idx % dims[*it]) * stride[*it];
            idx /= dims[*it];
        }
        return off;
    };

    SquareMatrix out(kept_dim);
    for (int kr = 0; kr < kept_dim; ++kr) {
        const long long row_base = offset(kr, keep);
        for (int kc = 0; kc < kept_dim; ++kc) {
            const long long col_base = offset(kc, keep);
            Complex sum = 0.0;
            for (int ti = 0; ti < traced_dim; ++ti) {
                const long long toff = offset(ti, traced);
                sum += m(static_cast<int>(row_base + toff), static_cast<int>(col_base + toff));
            }
            out(kr, kc) = sum;
        }
    }
    return out;
}

inline SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b) {
    return a * b - b * a;
}

struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // ascending
};

namespace detail {

inline double off_diagonal_norm(const SquareMatrix& m) {
    double s = 0.0;
    for (int r = 0; r < m.dim(); ++r)
        for (int c = 0; c < m.dim(); ++c)
            if (r != c) s += std::norm(m(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing m(p,q). The 2x2 block is reduced to a
// real symmetric one by factoring out the phase of m(p,q), then rotated by
// the small-angle root of t^2 - 2*tau*t - 1 = 0.
inline void jacobi_rotate(SquareMatrix& m, int p, int q) {
    const Complex apq = m(p, q);
    const double b = std::abs(apq);
    if (b == 0.0) return;
    const Complex phase = apq / b;  // e^{i phi}
    const double app = m(p, p).real();
    const double aqq = m(q, q).real();
    const double tau = (app - aqq) / (2.0 * b);
    const double sgn = tau >= 0.0 ? 1.0 : -1.0;
    const double t = -sgn / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const Complex conj_phase = std::conj(phase);
    for (int r = 0; r < m.dim(); ++r) {
        if (r == p || r == q) continue;
        const Complex mrp = m(r, p);
        const Complex mrq = m(r, q);
        m(r, p) = c * mrp - s * conj_phase * mrq;
        m(r, q) = s * mrp + c * conj_phase * mrq;
        m(p, r) = std::conj(m(r, p));
        m(q, r) = std::conj(m(r, q));
    }
    const double new_p = app * c * c + aqq * s * s - 2.0 * b * s * c;
    const double new_q = app * s * s + aqq * c * c + 2.0 * b * s * c;
    m(p, p) = new_p;
    m(q, q) = new_q;
    m(p, q) = 0.0;
    m(q, p) = 0.0;
}

}  // namespace detail

// Eigenvalues of a Hermitian matrix by cyclic Jacobi sweeps. Converges when
// the off-diagonal Frobenius norm drops below 1e-14; at most 50 sweeps.
inline HermitianSpectrum hermitian_eigenvalues(SquareMatrix m) {
    if (!m.all_finite()) throw std::invalid_argument("hermitian_eigenvalues: non-finite entries");
    if (!m.is_hermitian())
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

    constexpr double kConvergence = 1e-14;
    constexpr int kMaxSweeps = 50;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (detail::off_diagonal_norm(m) < kConvergence) {
            converged = true;
            break;
        }
        for (int p = 0; p < m.dim() - 1; ++p)
            for (int q = p + 1; q < m.dim(); ++q) detail::jacobi_rotate(m, p, q);
    }
    if (!converged && detail::off_diagonal_norm(m) >= kConvergence)
        throw std::runtime_error("hermitian_eigenvalues: Jacobi sweeps did not converge");

    HermitianSpectrum spectrum;
    spectrum.eigenvalues.reserve(m.dim());
    for (int i = 0; i < m.dim(); ++i) spectrum.eigenvalues.push_back(m(i, i).real());
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());
    return spectrum;
}

struct PsdVerdict {
    bool psd;
    double min_eigenvalue;
};

inline PsdVerdict is_psd(const SquareMatrix& m, double tol = kDefaultPsdTol) {
    const auto spectrum = hermitian_eigenvalues(m);
    const double min_ev = spectrum.eigenvalues.front();
    return {min_ev >= -tol, min_ev};
}

// (1/2) * sum |eigenvalues(a - b)|; requires Hermitian inputs of equal trace.
inline double trace_distance(const SquareMatrix& a, const SquareMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    if (!a.is_hermitian() || !b.is_hermitian())
        throw std::invalid_argument("trace_distance: inputs must be Hermitian");
    if (std::abs(a.trace() - b.trace()) > 1e-10)
        throw std::invalid_argument("trace_distance: traces differ");
    const auto spectrum = hermitian_eigenvalues(a - b);
    double sum = 0.0;
    for (double ev : spectrum.eigenvalues) sum += std::abs(ev);
    return 0.5 * sum;
}

}  // namespace cloneray
