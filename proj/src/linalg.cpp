#include "arcmusic/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arcmusic/errors.hpp"

namespace arcmusic {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double CMatrix::frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

CMatrix CMatrix::transposed() const {
    CMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

LuFactor::LuFactor(CMatrix a) : lu_(std::move(a)) {
    if (lu_.rows() != lu_.cols()) throw std::invalid_argument("LuFactor: matrix must be square");
    const int n = lu_.rows();
    piv_.resize(n);
    std::iota(piv_.begin(), piv_.end(), 0);
    double min_piv = 1e300, max_piv = 0.0;
    for (int col = 0; col < n; ++col) {
        int best = col;
        double best_mag = std::abs(lu_(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double mag = std::abs(lu_(r, col));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best != col) {
            std::swap(piv_[col], piv_[best]);
            for (int j = 0; j < n; ++j) std::swap(lu_(col, j), lu_(best, j));
        }
        if (best_mag == 0.0) throw SolverError("LU: exactly singular matrix");
        min_piv = std::min(min_piv, best_mag);
        max_piv = std::max(max_piv, best_mag);
        const cplx inv_piv = 1.0 / lu_(col, col);
        for (int r = col + 1; r < n; ++r) {
            const cplx f = lu_(r, col) * inv_piv;
            lu_(r, col) = f;
            if (f == cplx{}) continue;
            for (int j = col + 1; j < n; ++j) lu_(r, j) -= f * lu_(col, j);
        }
    }
    cond_ = max_piv / min_piv;
}

void LuFactor::solve_in_place(std::span<cplx> b) const {
    const int n = lu_.rows();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("LuFactor::solve: size mismatch");
    std::vector<cplx> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[piv_[i]];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
        x[i] /= lu_(i, i);
    }
    std::copy(x.begin(), x.end(), b.begin());
}

std::vector<cplx> LuFactor::solve(std::span<const cplx> b) const {
    std::vector<cplx> x(b.begin(), b.end());
    solve_in_place(x);
    return x;
}

double SvdResult::orthonormality_defect(const CMatrix& u) {
    const int n = u.rows(), m = u.cols();
    double worst = 0.0;
    for (int a = 0; a < m; ++a) {
        for (int b = a; b < m; ++b) {
            cplx dot{0.0, 0.0};
            for (int i = 0; i < n; ++i) dot += std::conj(u(i, a)) * u(i, b);
            if (a == b) dot -= 1.0;
            worst = std::max(worst, std::abs(dot));
        }
    }
    return worst;
}

double SvdResult::reconstruction_error(const CMatrix& k) const {
    const int n = k.rows();
    CMatrix rec(n, n);
    for (std::size_t m = 0; m < singular_values.size(); ++m) {
        const double s = singular_values[m];
        if (s == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cplx ui = s * left(i, static_cast<int>(m));
            for (int j = 0; j < n; ++j) rec(i, j) += ui * std::conj(right(j, static_cast<int>(m)));
        }
    }
    double diff = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) diff += std::norm(rec(i, j) - k(i, j));
    const double base = k.frobenius();
    return base > 0.0 ? std::sqrt(diff) / base : std::sqrt(diff);
}

namespace {

// Deterministic orthonormal completion for (numerically) rank-deficient
// columns: the canonical basis vector whose residual against the accepted
// columns is largest, orthogonalized twice and normalized. The best residual
// norm is at least 1/sqrt(n), so this always succeeds.
void complete_column(CMatrix& u, int col) {
    const int n = u.rows();
    std::vector<cplx> best;
    double best_norm = -1.0;
    for (int cand = 0; cand < n; ++cand) {
        std::vector<cplx> v(n, cplx{0.0, 0.0});
        v[cand] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (int c = 0; c < col; ++c) {
                cplx proj{0.0, 0.0};
                for (int i = 0; i < n; ++i) proj += std::conj(u(i, c)) * v[i];
                for (int i = 0; i < n; ++i) v[i] -= proj * u(i, c);
            }
        }
        double nrm = 0.0;
        for (const cplx& x : v) nrm += std::norm(x);
        nrm = std::sqrt(nrm);
        if (nrm > best_norm) {
            best_norm = nrm;
            best = std::move(v);
        }
    }
    if (best_norm < 1e-6) throw NumericalError("svd: failed to complete orthonormal basis");
    for (int i = 0; i < n; ++i) u(i, col) = best[i] / best_norm;
}

void fix_phase(CMatrix& u, CMatrix& v, int col) {
    const int n = u.rows();
    for (int i = 0; i < n; ++i) {
        const cplx x = u(i, col);
        if (std::abs(x) > 1e-9) {
            const cplx rot = std::conj(x) / std::abs(x);
            for (int r = 0; r < n; ++r) {
                u(r, col) *= rot;
                v(r, col) *= rot;
            }
            return;
        }
    }
}

}  // namespace

SvdResult svd_jacobi(const CMatrix& k) {
    if (k.rows() != k.cols()) throw std::invalid_argument("svd_jacobi: matrix must be square");
    const int n = k.rows();
    CMatrix w = k;  // columns rotated toward mutual orthogonality
    CMatrix v = CMatrix::identity(n);

    const double tol = 1e-15;
    const int max_sweeps = 60;
    // Columns whose squared norm falls below this are numerically zero;
    // rotating them against roundoff noise would never satisfy the relative
    // criterion.
    double frob_sq = 0.0;
    for (const cplx& v : w.data()) frob_sq += std::norm(v);
    const double floor_sq = frob_sq * 1e-30;
    bool converged = (n <= 1);
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0;
                cplx apq{0.0, 0.0};
                for (int i = 0; i < n; ++i) {
                    app += std::norm(w(i, p));
                    aqq += std::norm(w(i, q));
                    apq += std::conj(w(i, p)) * w(i, q);
                }
                const double mag = std::abs(apq);
                if (app <= floor_sq || aqq <= floor_sq) continue;
                if (mag <= tol * std::sqrt(app * aqq) || mag == 0.0) continue;
                converged = false;
                // Unitary 2x2 zeroing the off-diagonal of [[app, apq],[conj(apq), aqq]].
                const cplx phase = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const cplx s = phase * (c * t);
                for (int i = 0; i < n; ++i) {
                    const cplx wp = w(i, p), wq = w(i, q);
                    w(i, p) = c * wp - std::conj(s) * wq;
                    w(i, q) = s * wp + c * wq;
                    const cplx vp = v(i, p), vq = v(i, q);
                    v(i, p) = c * vp - std::conj(s) * vq;
                    v(i, q) = s * vp + c * vq;
                }
            }
        }
    }
    if (!converged) throw NumericalError("svd_jacobi: sweep cap reached without convergence");

    std::vector<double> sigma(n);
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += std::norm(w(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return sigma[a] > sigma[b]; });

    SvdResult out;
    out.singular_values.resize(n);
    out.left = CMatrix(n, n);
    out.right = CMatrix(n, n);
    const double sigma_max = sigma[order[0]];
    const double rank_floor = sigma_max * n * 1e-16;
    for (int j = 0; j < n; ++j) {
        const int src = order[j];
        out.singular_values[j] = sigma[src];
        if (sigma[src] > rank_floor && sigma[src] > 0.0) {
            for (int i = 0; i < n; ++i) {
                out.left(i, j) = w(i, src) / sigma[src];
                out.right(i, j) = v(i, src);
            }
        } else {
            out.singular_values[j] = sigma[src];  // keep the tiny value as measured
            complete_column(out.left, j);
            for (int i = 0; i < n; ++i) out.right(i, j) = v(i, src);
        }
        fix_phase(out.left, out.right, j);
    }
    return out;
}

}  // namespace arcmusic
