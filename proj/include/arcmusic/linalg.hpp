#pragma once

#include <complex>
#include <span>
#include <vector>

namespace arcmusic {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Small helper, no expression templates;
/// every system in this project is at most a few hundred rows.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static CMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    std::span<cplx> row(int i) { return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const cplx> row(int i) const { return {a_.data() + static_cast<std::size_t>(i) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<cplx> data() { return a_; }
    std::span<const cplx> data() const { return a_; }

    double frobenius() const;
    CMatrix transposed() const;

    bool operator==(const CMatrix& other) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// LU factorization with partial pivoting of a square complex matrix.
/// cond_estimate is the max/min pivot-magnitude ratio: an order-of-magnitude
/// conditioning proxy, not a true condition number.
class LuFactor {
public:
    explicit LuFactor(CMatrix a);

    /// Solves A x = b in place. b.size() must equal the matrix dimension.
    void solve_in_place(std::span<cplx> b) const;
    std::vector<cplx> solve(std::span<const cplx> b) const;

    double cond_estimate() const { return cond_; }
    int dim() const { return lu_.rows(); }

private:
    CMatrix lu_;
    std::vector<int> piv_;
    double cond_ = 0.0;
};

/// Full SVD of a square complex matrix: singular values descending,
/// left/right singular vectors in matrix columns.
struct SvdResult {
    std::vector<double> singular_values;
    CMatrix left;   // N x N, columns U_m, orthonormal
    CMatrix right;  // N x N, columns V_m, orthonormal

    /// max|U^H U - I| over all entries.
    static double orthonormality_defect(const CMatrix& u);
    /// ||K - U diag(sigma) V^H||_F / ||K||_F.
    double reconstruction_error(const CMatrix& k) const;
};

/// One-sided Jacobi SVD. Deterministic: fixed sweep order and a fixed phase
/// convention (first component of each left vector above 1e-9 in magnitude is
/// made real positive). Rank-deficient tails get a deterministic orthonormal
/// completion. Throws NumericalError if sweeps fail to converge.
SvdResult svd_jacobi(const CMatrix& k);

}  // namespace arcmusic
