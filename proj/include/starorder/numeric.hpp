#pragma once

#include <vector>

#include "starorder/error.hpp"

namespace starorder::num {

// Row-major dense matrix of doubles. Small and value-semantic; every solver
// below works on private copies, so concurrent calls are safe.
class DenseMatrix {
public:
    DenseMatrix() : rows_(0), cols_(0) {}
    DenseMatrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static DenseMatrix identity(int n) {
        DenseMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    DenseMatrix transposed() const;
    DenseMatrix operator*(const DenseMatrix& o) const;
    DenseMatrix operator+(const DenseMatrix& o) const;
    DenseMatrix operator-(const DenseMatrix& o) const;
    std::vector<double> apply(const std::vector<double>& v) const;

    double frobenius_norm() const;
    double max_abs() const;

    bool is_symmetric(double rel_tol = 1e-12) const;

private:
    int rows_, cols_;
    std::vector<double> a_;
};

struct EigResult {
    std::vector<double> values; // descending
    DenseMatrix vectors;        // orthonormal columns, matching order
};

// Cyclic Jacobi sweeps; converges when the off-diagonal Frobenius mass drops
// below 1e-14 * ||m||_F, with a budget of 100 sweeps.
EigResult sym_eig(const DenseMatrix& m);

// Nearest PSD matrix in Frobenius norm (eigenvalue clipping at zero).
DenseMatrix psd_project(const DenseMatrix& m);

struct LdltResult {
    DenseMatrix l;            // unit lower triangular
    std::vector<double> d;    // nonnegative diagonal
    std::vector<int> perm;    // perm[k] = original index placed at position k
    int rank;
};

// P^T m P = L D L^T with diagonal pivoting; requires m symmetric PSD within
// tolerance (pivot < -1e-8 * max pivot raises not_psd).
LdltResult ldlt_pivoted(const DenseMatrix& m);

enum class RowSense { le, eq, ge };

struct LpProblem {
    std::vector<double> objective; // maximize c^T x
    DenseMatrix constraints;       // m x n
    std::vector<double> rhs;
    std::vector<RowSense> senses;  // one per row
    std::vector<bool> nonneg;      // per variable: true -> x >= 0, false -> free
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded };
    Status status;
    std::vector<double> x;
    double value = 0.0;
    std::vector<double> dual; // one multiplier per row (optimal results only)
};

// Dense two-phase simplex with Bland's rule. Desk scale only.
LpResult lp_solve(const LpProblem& p);

struct LeastSquaresResult {
    std::vector<double> x;
    double residual_norm;
};

// Normal equations solved by the pivoted factorization; throws rank_deficient
// (message carries the achieved rank) when A^T A is singular.
LeastSquaresResult least_squares(const DenseMatrix& a, const std::vector<double>& b);

struct HermitianEigResult {
    std::vector<double> values; // descending, deduplicated
    DenseMatrix vectors_re;     // complex orthonormal columns, split
    DenseMatrix vectors_im;
};

// Complex Hermitian eigenproblem through the real 2m x 2m embedding
// [[re, -im], [im, re]]; duplicated eigenvalue pairs are averaged away.
HermitianEigResult hermitian_eig(const DenseMatrix& re, const DenseMatrix& im);

} // namespace starorder::num
