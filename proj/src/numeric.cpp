#include "starorder/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace starorder::num {

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::dimension_mismatch, "matrix product shapes");
    DenseMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const double v = at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
        }
    return r;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(Errc::dimension_mismatch, "matrix sum shapes");
    DenseMatrix r(*this);
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw Error(Errc::dimension_mismatch, "matrix difference shapes");
    DenseMatrix r(*this);
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& v) const {
    if (static_cast<int>(v.size()) != cols_)
        throw Error(Errc::dimension_mismatch, "matrix-vector shapes");
    std::vector<double> r(rows_, 0.0);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[i] += at(i, j) * v[j];
    return r;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double s = 0.0;
    for (double v : a_) s = std::max(s, std::fabs(v));
    return s;
}

bool DenseMatrix::is_symmetric(double rel_tol) const {
    if (rows_ != cols_) return false;
    const double scale = 1.0 + max_abs();
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (std::fabs(at(i, j) - at(j, i)) > rel_tol * scale) return false;
    return true;
}

EigResult sym_eig(const DenseMatrix& m) {
    if (!m.is_symmetric())
        throw Error(Errc::not_symmetric, "eigendecomposition input is not symmetric");
    const int n = m.rows();
    DenseMatrix a(m);
    DenseMatrix q = DenseMatrix::identity(n);
    const double total = m.frobenius_norm();

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += a.at(i, j) * a.at(i, j);
        return std::sqrt(s);
    };

    const int sweep_budget = 100;
    int sweep = 0;
    while (off_norm() > 1e-14 * total && total > 0.0) {
        if (++sweep > sweep_budget)
            throw Error(Errc::no_convergence, "Jacobi sweep budget exhausted");
        for (int p = 0; p < n - 1; ++p) {
            for (int qi = p + 1; qi < n; ++qi) {
                const double apq = a.at(p, qi);
                if (apq == 0.0) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(qi, qi);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, qi);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, qi) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(qi, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(qi, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = q.at(k, p);
                    const double qkq = q.at(k, qi);
                    q.at(k, p) = c * qkp - s * qkq;
                    q.at(k, qi) = s * qkp + c * qkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i) > a.at(j, j); });

    EigResult r;
    r.values.resize(n);
    r.vectors = DenseMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        r.values[j] = a.at(order[j], order[j]);
        for (int i = 0; i < n; ++i) r.vectors.at(i, j) = q.at(i, order[j]);
    }
    return r;
}

DenseMatrix psd_project(const DenseMatrix& m) {
    const EigResult e = sym_eig(m);
    const int n = m.rows();
    DenseMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = std::max(0.0, e.values[k]);
        if (lam == 0.0) continue;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.at(i, j) += lam * e.vectors.at(i, k) * e.vectors.at(j, k);
    }
    return r;
}

LdltResult ldlt_pivoted(const DenseMatrix& m) {
    if (!m.is_symmetric())
        throw Error(Errc::not_symmetric, "LDLT input is not symmetric");
    const int n = m.rows();
    DenseMatrix a(m);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    double max_pivot = 0.0;
    for (int i = 0; i < n; ++i) max_pivot = std::max(max_pivot, std::fabs(a.at(i, i)));

    LdltResult res;
    res.l = DenseMatrix::identity(n);
    res.d.assign(n, 0.0);
    res.rank = 0;

    const double rank_tol = 1e-9 * std::max(max_pivot, 1e-300);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (a.at(i, i) > a.at(piv, piv)) piv = i;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            for (int i = 0; i < n; ++i) std::swap(a.at(i, k), a.at(i, piv));
            for (int j = 0; j < k; ++j) std::swap(res.l.at(k, j), res.l.at(piv, j));
            std::swap(perm[k], perm[piv]);
        }
        const double d = a.at(k, k);
        if (d < -1e-8 * std::max(max_pivot, 1.0))
            throw Error(Errc::not_psd, "negative pivot in LDLT");
        if (d <= rank_tol) break;
        res.d[k] = d;
        ++res.rank;
        for (int i = k + 1; i < n; ++i) {
            const double lik = a.at(i, k) / d;
            res.l.at(i, k) = lik;
            for (int j = k + 1; j <= i; ++j) {
                a.at(i, j) -= lik * a.at(k, j);
                a.at(j, i) = a.at(i, j);
            }
        }
    }
    res.perm = perm;
    return res;
}

namespace {

// Solve P L D L^T P^T x = b for one right-hand side, ranks permitting.
std::vector<double> ldlt_solve(const LdltResult& f, const std::vector<double>& b) {
    const int n = f.l.rows();
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = b[f.perm[i]];
        for (int j = 0; j < i; ++j) s -= f.l.at(i, j) * y[j];
        y[i] = s;
    }
    for (int i = 0; i < f.rank; ++i) y[i] /= f.d[i];
    for (int i = f.rank; i < n; ++i) y[i] = 0.0;
    std::vector<double> z(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int j = i + 1; j < n; ++j) s -= f.l.at(j, i) * z[j];
        z[i] = s;
    }
    std::vector<double> x(n, 0.0);
    for (int i = 0; i < n; ++i) x[f.perm[i]] = z[i];
    return x;
}

constexpr double kLpEps = 1e-9;

// Dense tableau for the two-phase simplex. Columns: structural variables
// (free ones split into +/- parts), then one slack/surplus/artificial block.
struct Tableau {
    int rows;
    int cols; // excluding rhs
    std::vector<std::vector<double>> t; // rows x (cols+1); last row = objective
    std::vector<int> basis;             // basic column per row
    std::vector<bool> blocked;          // columns barred from entering

    double& rhs(int i) { return t[i][cols]; }

    void pivot(int r, int c) {
        const double inv = 1.0 / t[r][c];
        for (int j = 0; j <= cols; ++j) t[r][j] *= inv;
        for (int i = 0; i <= rows; ++i) {
            if (i == r) continue;
            const double f = t[i][c];
            if (f == 0.0) continue;
            for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Bland's rule: smallest eligible entering column, smallest basic index
    // on ratio ties. Returns false when optimal, throws on unbounded.
    bool step() {
        int enter = -1;
        for (int j = 0; j < cols; ++j) {
            if (blocked[j]) continue;
            if (t[rows][j] < -kLpEps) { enter = j; break; }
        }
        if (enter < 0) return false;
        int leave = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < rows; ++i) {
            if (t[i][enter] > kLpEps) {
                const double ratio = t[i][cols] / t[i][enter];
                if (ratio < best - kLpEps ||
                    (ratio < best + kLpEps && (leave < 0 || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave < 0) throw Error(Errc::no_convergence, "unbounded direction");
        pivot(leave, enter);
        return true;
    }
};

} // namespace

LpResult lp_solve(const LpProblem& p) {
    const int m = p.constraints.rows();
    const int n = p.constraints.cols();
    if (static_cast<int>(p.objective.size()) != n ||
        static_cast<int>(p.rhs.size()) != m ||
        static_cast<int>(p.senses.size()) != m ||
        static_cast<int>(p.nonneg.size()) != n)
        throw Error(Errc::dimension_mismatch, "LP field sizes disagree");
    if (m > 1000 || n > 1000)
        throw Error(Errc::desk_scale_exceeded, "LP beyond desk scale");

    // Split free variables; normalize rhs >= 0.
    std::vector<int> pos_col(n), neg_col(n, -1);
    int nn = 0;
    for (int j = 0; j < n; ++j) {
        pos_col[j] = nn++;
        if (!p.nonneg[j]) neg_col[j] = nn++;
    }
    std::vector<double> row_sign(m, 1.0);
    std::vector<RowSense> senses(p.senses);
    for (int i = 0; i < m; ++i) {
        if (p.rhs[i] < 0.0) {
            row_sign[i] = -1.0;
            if (senses[i] == RowSense::le) senses[i] = RowSense::ge;
            else if (senses[i] == RowSense::ge) senses[i] = RowSense::le;
        }
    }

    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (senses[i] != RowSense::eq) ++n_slack;
        if (senses[i] != RowSense::le) ++n_art;
    }

    Tableau tab;
    tab.rows = m;
    tab.cols = nn + n_slack + n_art;
    tab.t.assign(m + 1, std::vector<double>(tab.cols + 1, 0.0));
    tab.basis.assign(m, -1);
    tab.blocked.assign(tab.cols, false);

    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int next = nn;
    for (int i = 0; i < m; ++i)
        if (senses[i] != RowSense::eq) slack_col[i] = next++;
    for (int i = 0; i < m; ++i)
        if (senses[i] != RowSense::le) art_col[i] = next++;

    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            const double v = row_sign[i] * p.constraints.at(i, j);
            tab.t[i][pos_col[j]] = v;
            if (neg_col[j] >= 0) tab.t[i][neg_col[j]] = -v;
        }
        tab.rhs(i) = row_sign[i] * p.rhs[i];
        if (slack_col[i] >= 0)
            tab.t[i][slack_col[i]] = senses[i] == RowSense::le ? 1.0 : -1.0;
        if (art_col[i] >= 0) tab.t[i][art_col[i]] = 1.0;
        tab.basis[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
    }

    LpResult res;

    // Phase 1: minimize the artificial sum (cost 1 on artificials, then
    // eliminate the basic columns from the reduced-cost row).
    if (n_art > 0) {
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) tab.t[m][art_col[i]] = 1.0;
        for (int i = 0; i < m; ++i) {
            if (art_col[i] < 0) continue;
            for (int j = 0; j <= tab.cols; ++j) tab.t[m][j] -= tab.t[i][j];
        }
        try {
            while (tab.step()) {}
        } catch (const Error&) {
            throw Error(Errc::no_convergence, "phase 1 simplex failed");
        }
        if (tab.t[m][tab.cols] < -1e-7) {
            res.status = LpResult::Status::infeasible;
            return res;
        }
        // Drive lingering artificials out of the basis when possible.
        for (int i = 0; i < m; ++i) {
            if (art_col[i] < 0 || tab.basis[i] != art_col[i]) continue;
            for (int j = 0; j < nn + n_slack; ++j) {
                if (std::fabs(tab.t[i][j]) > kLpEps) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        for (int i = 0; i < m; ++i)
            if (art_col[i] >= 0) tab.blocked[art_col[i]] = true;
        for (int j = 0; j <= tab.cols; ++j) tab.t[m][j] = 0.0;
    }

    // Phase 2 objective: maximize c^T x as minimize -c^T x; objective row
    // keeps reduced costs of the minimization form.
    for (int j = 0; j < n; ++j) {
        tab.t[m][pos_col[j]] = -p.objective[j];
        if (neg_col[j] >= 0) tab.t[m][neg_col[j]] = p.objective[j];
    }
    for (int i = 0; i < m; ++i) {
        const int b = tab.basis[i];
        const double cb = tab.t[m][b];
        if (cb == 0.0) continue;
        for (int j = 0; j <= tab.cols; ++j) tab.t[m][j] -= cb * tab.t[i][j];
    }

    try {
        while (tab.step()) {}
    } catch (const Error&) {
        res.status = LpResult::Status::unbounded;
        return res;
    }

    res.status = LpResult::Status::optimal;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i) {
        const int b = tab.basis[i];
        for (int j = 0; j < n; ++j) {
            if (b == pos_col[j]) res.x[j] += tab.rhs(i);
            if (b == neg_col[j]) res.x[j] -= tab.rhs(i);
        }
    }
    res.value = 0.0;
    for (int j = 0; j < n; ++j) res.value += p.objective[j] * res.x[j];

    // Duals from the reduced costs of each row's unit column, mapped back
    // through the row sign normalization.
    res.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i) {
        double y;
        if (slack_col[i] >= 0) {
            y = senses[i] == RowSense::le ? tab.t[m][slack_col[i]]
                                          : -tab.t[m][slack_col[i]];
        } else {
            y = tab.t[m][art_col[i]];
        }
        res.dual[i] = row_sign[i] * y;
    }
    return res;
}

LeastSquaresResult least_squares(const DenseMatrix& a, const std::vector<double>& b) {
    if (a.rows() < a.cols())
        throw Error(Errc::rank_deficient, "least squares needs rows >= cols");
    if (static_cast<int>(b.size()) != a.rows())
        throw Error(Errc::dimension_mismatch, "least squares rhs length");
    const DenseMatrix at = a.transposed();
    const DenseMatrix normal = at * a;
    const std::vector<double> rhs = at.apply(b);
    const LdltResult f = ldlt_pivoted(normal);
    if (f.rank < a.cols())
        throw Error(Errc::rank_deficient,
                    "normal matrix rank " + std::to_string(f.rank) + " of " +
                        std::to_string(a.cols()));
    LeastSquaresResult r;
    r.x = ldlt_solve(f, rhs);
    const std::vector<double> ax = a.apply(r.x);
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i) s += (ax[i] - b[i]) * (ax[i] - b[i]);
    r.residual_norm = std::sqrt(s);
    return r;
}

HermitianEigResult hermitian_eig(const DenseMatrix& re, const DenseMatrix& im) {
    const int n = re.rows();
    if (re.cols() != n || im.rows() != n || im.cols() != n)
        throw Error(Errc::dimension_mismatch, "Hermitian embedding shapes");
    DenseMatrix big(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            big.at(i, j) = re.at(i, j);
            big.at(i + n, j + n) = re.at(i, j);
            big.at(i, j + n) = -im.at(i, j);
            big.at(i + n, j) = im.at(i, j);
        }
    const EigResult e = sym_eig(big);

    HermitianEigResult r;
    r.vectors_re = DenseMatrix(n, n);
    r.vectors_im = DenseMatrix(n, n);

    // Eigenvalues arrive in duplicate pairs. Walk clusters, average the pair
    // values, and complex-orthonormalize the real eigenvectors inside each
    // cluster to pick one representative per pair.
    const double scale = 1.0 + big.max_abs();
    int out = 0;
    int k = 0;
    while (k < 2 * n) {
        int end = k + 1;
        while (end < 2 * n && std::fabs(e.values[end] - e.values[k]) <= 1e-8 * scale) ++end;
        const int pairs = (end - k) / 2;
        double mean = 0.0;
        for (int t = k; t < end; ++t) mean += e.values[t];
        mean /= (end - k);

        std::vector<std::vector<double>> kept_re, kept_im;
        for (int t = k; t < end && static_cast<int>(kept_re.size()) < pairs; ++t) {
            std::vector<double> u(n), v(n);
            for (int i = 0; i < n; ++i) {
                u[i] = e.vectors.at(i, t);
                v[i] = e.vectors.at(i + n, t);
            }
            // Gram-Schmidt against kept complex vectors (z = u + i v).
            for (std::size_t s = 0; s < kept_re.size(); ++s) {
                double pr = 0.0, pi = 0.0;
                for (int i = 0; i < n; ++i) {
                    pr += kept_re[s][i] * u[i] + kept_im[s][i] * v[i];
                    pi += kept_re[s][i] * v[i] - kept_im[s][i] * u[i];
                }
                for (int i = 0; i < n; ++i) {
                    u[i] -= pr * kept_re[s][i] - pi * kept_im[s][i];
                    v[i] -= pr * kept_im[s][i] + pi * kept_re[s][i];
                }
            }
            double norm = 0.0;
            for (int i = 0; i < n; ++i) norm += u[i] * u[i] + v[i] * v[i];
            norm = std::sqrt(norm);
            if (norm < 1e-8) continue;
            for (int i = 0; i < n; ++i) {
                u[i] /= norm;
                v[i] /= norm;
            }
            kept_re.push_back(std::move(u));
            kept_im.push_back(std::move(v));
        }
        for (int s = 0; s < pairs; ++s) {
            r.values.push_back(mean);
            for (int i = 0; i < n; ++i) {
                r.vectors_re.at(i, out) = kept_re[s][i];
                r.vectors_im.at(i, out) = kept_im[s][i];
            }
            ++out;
        }
        k = end;
    }
    return r;
}

} // namespace starorder::num
