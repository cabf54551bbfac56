#include "starorder/gns.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace starorder::gns {

using num::DenseMatrix;

CMat CMat::operator*(const CMat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
}

CMat CMat::operator-(const CMat& o) const { return {re - o.re, im - o.im}; }

double CMat::frobenius_norm() const {
    const double a = re.frobenius_norm();
    const double b = im.frobenius_norm();
    return std::sqrt(a * a + b * b);
}

namespace {

int rank_by_eig(const num::EigResult& e, int count) {
    double max_eig = 0.0;
    for (int i = 0; i < count; ++i) max_eig = std::max(max_eig, e.values[i]);
    int rank = 0;
    for (int i = 0; i < count; ++i)
        if (e.values[i] > 1e-9 * max_eig) ++rank;
    return rank;
}

} // namespace

GnsRepresentation gns_build(const MomentFunctional& l, int d) {
    if (2 * (d + 1) > l.max_degree())
        throw Error(Errc::degree_headroom_missing,
                    "needs moments up to degree 2(d+1) for multiplication");
    if (!l.is_hermitian())
        throw Error(Errc::not_positive, "GNS needs a Hermitian positive functional");
    if (!moments::is_positive(l))
        throw Error(Errc::not_positive, "moment functional is not positive");

    GnsRepresentation rep;
    rep.arity = l.arity();
    rep.degree = d;
    rep.monomial_basis = poly::monomials_up_to(l.arity(), d);
    const int n = static_cast<int>(rep.monomial_basis.size());

    // One degree of headroom: entries L(alpha * x_i * beta) live here.
    const auto big_basis = poly::monomials_up_to(l.arity(), d + 1);
    std::map<Monomial, int> big_index;
    for (std::size_t i = 0; i < big_basis.size(); ++i)
        big_index.emplace(big_basis[i], static_cast<int>(i));
    const DenseMatrix big = moments::moment_matrix(l, d + 1);

    // Gram at degree d is the leading block (graded-lex prefixes nest).
    DenseMatrix gram(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gram.at(i, j) = big.at(i, j);

    const num::EigResult eig = num::sym_eig(gram);
    const int rank = rank_by_eig(eig, n);
    rep.quotient_dim = rank;

    // Rank at degree d-1 from the smaller leading block; flatness gates the
    // exactness of the truncated multiplication operators.
    const int n_small =
        d == 0 ? 0 : static_cast<int>(poly::monomials_up_to(l.arity(), d - 1).size());
    if (d == 0) {
        rep.flat = rank <= 1;
    } else {
        DenseMatrix small(n_small, n_small);
        for (int i = 0; i < n_small; ++i)
            for (int j = 0; j < n_small; ++j) small.at(i, j) = gram.at(i, j);
        rep.flat = rank_by_eig(num::sym_eig(small), n_small) == rank;
    }

    // Orthonormal quotient basis rows: b_k = v_k / sqrt(lambda_k).
    rep.basis_coeffs = DenseMatrix(rank, n);
    for (int k = 0; k < rank; ++k) {
        const double inv = 1.0 / std::sqrt(eig.values[k]);
        for (int a = 0; a < n; ++a) rep.basis_coeffs.at(k, a) = eig.vectors.at(a, k) * inv;
    }

    // M_i[a][b] = <b_a, x_i b_b>_L; with an orthonormal basis the normal
    // equations of the least-squares fit reduce to exactly these pairings.
    for (int var = 0; var < l.arity(); ++var) {
        DenseMatrix shifted(n, n);
        for (int a = 0; a < n; ++a) {
            const int row = big_index.at(rep.monomial_basis[a] *
                                         Monomial::var(l.arity(), var));
            for (int b = 0; b < n; ++b) shifted.at(a, b) = big.at(row, b);
        }
        rep.mult_matrices.push_back(rep.basis_coeffs * shifted *
                                    rep.basis_coeffs.transposed());
    }

    rep.cyclic.assign(rank, 0.0);
    for (int k = 0; k < rank; ++k)
        for (int a = 0; a < n; ++a)
            rep.cyclic[k] += rep.basis_coeffs.at(k, a) * gram.at(a, 0);

    for (const auto& m : rep.mult_matrices)
        rep.adjoint_residual =
            std::max(rep.adjoint_residual, (m - m.transposed()).frobenius_norm());
    for (std::size_t i = 0; i < rep.mult_matrices.size(); ++i)
        for (std::size_t j = i + 1; j < rep.mult_matrices.size(); ++j) {
            const DenseMatrix& a = rep.mult_matrices[i];
            const DenseMatrix& b = rep.mult_matrices[j];
            rep.commutator_residual =
                std::max(rep.commutator_residual, (a * b - b * a).frobenius_norm());
        }

    rep.source = l;
    return rep;
}

namespace {

CMat apply_unchecked(const GnsRepresentation& rep, const Polynomial& p) {
    const int r = rep.quotient_dim;
    CMat acc = CMat::zero(r, r);
    for (const auto& [mono, coeff] : p.terms()) {
        DenseMatrix term = DenseMatrix::identity(r);
        for (int i = 0; i < rep.arity; ++i)
            for (unsigned e = 0; e < mono.exponent(i); ++e)
                term = term * rep.mult_matrices[i];
        const std::complex<double> c = coeff.to_complex();
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) {
                acc.re.at(a, b) += c.real() * term.at(a, b);
                acc.im.at(a, b) += c.imag() * term.at(a, b);
            }
    }
    return acc;
}

} // namespace

CMat gns_apply(const GnsRepresentation& rep, const Polynomial& p) {
    if (p.arity() != rep.arity) throw Error(Errc::arity_mismatch, "polynomial arity mismatch");
    if (p.degree() > rep.degree)
        throw Error(Errc::degree_exceeded, "polynomial degree beyond the representation");
    if (!rep.flat)
        throw Error(Errc::not_flat, "multiplication operators are only exact when flat");
    return apply_unchecked(rep, p);
}

double gns_vector_state_check(const GnsRepresentation& rep, const MomentFunctional& l,
                              const std::vector<Polynomial>& samples) {
    double worst = 0.0;
    for (const auto& p : samples) {
        if (p.degree() > rep.degree)
            throw Error(Errc::degree_exceeded, "sample degree beyond the representation");
        const CMat mat = apply_unchecked(rep, p);
        std::complex<double> pairing(0.0, 0.0);
        for (int a = 0; a < rep.quotient_dim; ++a)
            for (int b = 0; b < rep.quotient_dim; ++b)
                pairing += rep.cyclic[a] *
                           std::complex<double>(mat.re.at(a, b), mat.im.at(a, b)) *
                           rep.cyclic[b];
        worst = std::max(worst, std::abs(pairing - moments::evaluate(l, p)));
    }
    return worst;
}

GnsDirectSum gns_direct_sum(const std::vector<GnsRepresentation>& reps) {
    if (reps.empty()) throw Error(Errc::invalid_value, "empty direct sum");
    const int arity = reps.front().arity;
    int total = 0;
    for (const auto& r : reps) {
        if (r.arity != arity)
            throw Error(Errc::arity_mismatch, "direct sum needs a common variable set");
        total += r.quotient_dim;
    }
    GnsDirectSum sum;
    sum.dim = total;
    for (int var = 0; var < arity; ++var) {
        DenseMatrix block(total, total);
        int off = 0;
        for (const auto& r : reps) {
            for (int a = 0; a < r.quotient_dim; ++a)
                for (int b = 0; b < r.quotient_dim; ++b)
                    block.at(off + a, off + b) = r.mult_matrices[var].at(a, b);
            off += r.quotient_dim;
        }
        sum.mult_matrices.push_back(std::move(block));
    }
    int off = 0;
    for (const auto& r : reps) {
        std::vector<double> c(total, 0.0);
        for (int a = 0; a < r.quotient_dim; ++a) c[off + a] = r.cyclic[a];
        sum.cyclics.push_back(std::move(c));
        off += r.quotient_dim;
    }
    return sum;
}

void validate(const FiniteStarAlgebra& alg) {
    const int k = alg.dim;
    if (k < 1 || static_cast<int>(alg.structure.size()) != k * k * k ||
        static_cast<int>(alg.involution.size()) != k * k ||
        static_cast<int>(alg.unit.size()) != k)
        throw Error(Errc::dimension_mismatch, "structure tensor shapes");

    // Associativity: (e_i e_j) e_m = e_i (e_j e_m).
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int m = 0; m < k; ++m)
                for (int l = 0; l < k; ++l) {
                    std::complex<double> lhs(0.0, 0.0), rhs(0.0, 0.0);
                    for (int t = 0; t < k; ++t) {
                        lhs += alg.c(i, j, t) * alg.c(t, m, l);
                        rhs += alg.c(j, m, t) * alg.c(i, t, l);
                    }
                    if (std::abs(lhs - rhs) > 1e-10)
                        throw Error(Errc::invalid_value, "structure constants not associative");
                }

    // Involution: (e_i e_j)* = e_j* e_i* and e_i** = e_i.
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) {
            std::complex<double> twice(0.0, 0.0);
            for (int t = 0; t < k; ++t) twice += std::conj(alg.s(i, t)) * alg.s(t, l);
            if (std::abs(twice - (i == l ? 1.0 : 0.0)) > 1e-10)
                throw Error(Errc::invalid_value, "involution is not involutive");
        }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            for (int l = 0; l < k; ++l) {
                std::complex<double> lhs(0.0, 0.0), rhs(0.0, 0.0);
                for (int t = 0; t < k; ++t) lhs += std::conj(alg.c(i, j, t)) * alg.s(t, l);
                for (int p = 0; p < k; ++p)
                    for (int q = 0; q < k; ++q)
                        rhs += alg.s(j, p) * alg.s(i, q) * alg.c(p, q, l);
                if (std::abs(lhs - rhs) > 1e-10)
                    throw Error(Errc::invalid_value, "involution does not reverse products");
            }

    // Two-sided unit.
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) {
            std::complex<double> left(0.0, 0.0), right(0.0, 0.0);
            for (int i = 0; i < k; ++i) {
                left += alg.unit[i] * alg.c(i, j, l);
                right += alg.unit[i] * alg.c(j, i, l);
            }
            const std::complex<double> expect = j == l ? 1.0 : 0.0;
            if (std::abs(left - expect) > 1e-10 || std::abs(right - expect) > 1e-10)
                throw Error(Errc::invalid_value, "unit coordinates are not a two-sided unit");
        }
}

FiniteGns gns_finite(const FiniteStarAlgebra& alg,
                     const std::vector<std::complex<double>>& omega, double tol) {
    validate(alg);
    const int k = alg.dim;
    if (static_cast<int>(omega.size()) != k)
        throw Error(Errc::dimension_mismatch, "functional length mismatch");

    // omega(a*) = conj(omega(a)) on the basis.
    for (int i = 0; i < k; ++i) {
        std::complex<double> starred(0.0, 0.0);
        for (int l = 0; l < k; ++l) starred += alg.s(i, l) * omega[l];
        if (std::abs(starred - std::conj(omega[i])) > 1e-8 * (1.0 + std::abs(omega[i])))
            throw Error(Errc::not_hermitian_functional, "omega is not Hermitian");
    }

    // Gram G[i][j] = omega(e_i* e_j).
    DenseMatrix gre(k, k), gim(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            std::complex<double> g(0.0, 0.0);
            for (int p = 0; p < k; ++p) {
                if (alg.s(i, p) == std::complex<double>(0.0, 0.0)) continue;
                for (int l = 0; l < k; ++l) g += alg.s(i, p) * alg.c(p, j, l) * omega[l];
            }
            gre.at(i, j) = g.real();
            gim.at(i, j) = g.imag();
        }

    const num::HermitianEigResult eig = num::hermitian_eig(gre, gim);
    double max_eig = 0.0;
    for (double v : eig.values) max_eig = std::max(max_eig, v);
    if (!eig.values.empty() && eig.values.back() < -1e-9 * std::max(max_eig, 1e-30))
        throw Error(Errc::not_positive, "omega is not positive on squares");

    int rank = 0;
    for (double v : eig.values)
        if (v > 1e-9 * std::max(max_eig, 1e-30)) ++rank;

    // Orthonormal quotient basis b_a (columns over e-coordinates).
    std::vector<std::vector<std::complex<double>>> basis(rank,
                                                         std::vector<std::complex<double>>(k));
    for (int a = 0; a < rank; ++a) {
        const double inv = 1.0 / std::sqrt(eig.values[a]);
        for (int i = 0; i < k; ++i)
            basis[a][i] = std::complex<double>(eig.vectors_re.at(i, a),
                                               eig.vectors_im.at(i, a)) *
                          inv;
    }

    auto pair_g = [&](const std::vector<std::complex<double>>& u,
                      const std::vector<std::complex<double>>& v) {
        std::complex<double> s(0.0, 0.0);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j)
                s += std::conj(u[i]) * std::complex<double>(gre.at(i, j), gim.at(i, j)) * v[j];
        return s;
    };

    FiniteGns out;
    out.quotient_dim = rank;

    // Left multiplication by e_i in coordinates, then compressed.
    for (int i = 0; i < k; ++i) {
        CMat m = CMat::zero(rank, rank);
        for (int b = 0; b < rank; ++b) {
            std::vector<std::complex<double>> shifted(k, 0.0);
            for (int j = 0; j < k; ++j) {
                if (basis[b][j] == std::complex<double>(0.0, 0.0)) continue;
                for (int l = 0; l < k; ++l) shifted[l] += alg.c(i, j, l) * basis[b][j];
            }
            for (int a = 0; a < rank; ++a) {
                const std::complex<double> v = pair_g(basis[a], shifted);
                m.re.at(a, b) = v.real();
                m.im.at(a, b) = v.imag();
            }
        }
        out.mult.push_back(std::move(m));
    }

    out.cyclic.resize(rank);
    for (int a = 0; a < rank; ++a) {
        std::vector<std::complex<double>> unit(alg.unit.begin(), alg.unit.end());
        out.cyclic[a] = pair_g(basis[a], unit);
    }

    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            CMat expect = CMat::zero(rank, rank);
            for (int l = 0; l < k; ++l) {
                const std::complex<double> c = alg.c(i, j, l);
                if (c == std::complex<double>(0.0, 0.0)) continue;
                for (int a = 0; a < rank; ++a)
                    for (int b = 0; b < rank; ++b) {
                        expect.re.at(a, b) += c.real() * out.mult[l].re.at(a, b) -
                                              c.imag() * out.mult[l].im.at(a, b);
                        expect.im.at(a, b) += c.real() * out.mult[l].im.at(a, b) +
                                              c.imag() * out.mult[l].re.at(a, b);
                    }
            }
            const double r = (out.mult[i] * out.mult[j] - expect).frobenius_norm();
            out.representation_residual = std::max(out.representation_residual, r);
        }
    if (out.representation_residual > tol)
        throw Error(Errc::no_convergence, "representation property violated beyond tolerance");
    return out;
}

AtomicMeasure joint_diagonalize(const GnsRepresentation& rep, std::uint64_t seed) {
    if (!rep.flat) throw Error(Errc::not_flat, "quadrature extraction needs a flat rep");
    if (rep.commutator_residual > 1e-6)
        throw Error(Errc::invalid_value, "commutator residual too large for joint spectrum");
    if (!rep.source)
        throw Error(Errc::invalid_value, "representation lacks its moment data");

    const int r = rep.quotient_dim;
    const int n = rep.arity;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    num::EigResult eig;
    bool ok = false;
    for (int attempt = 0; attempt < 8 && !ok; ++attempt) {
        std::vector<double> c(n);
        double norm = 0.0;
        for (double& x : c) {
            x = gauss(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (double& x : c) x /= norm;

        DenseMatrix combo(r, r);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    combo.at(a, b) += c[i] * 0.5 *
                                      (rep.mult_matrices[i].at(a, b) +
                                       rep.mult_matrices[i].at(b, a));

        eig = num::sym_eig(combo);
        ok = true;
        const double scale = 1.0 + combo.max_abs();
        for (int i = 0; i + 1 < r; ++i)
            if (std::fabs(eig.values[i] - eig.values[i + 1]) < 1e-8 * scale) ok = false;
    }
    if (!ok)
        throw Error(Errc::degenerate_spectrum,
                    "no separating combination after 8 attempts");

    AtomicMeasure measure;
    for (int kk = 0; kk < r; ++kk) {
        moments::Atom atom;
        atom.point.resize(n);
        for (int i = 0; i < n; ++i) {
            double v = 0.0;
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b)
                    v += eig.vectors.at(a, kk) * rep.mult_matrices[i].at(a, b) *
                         eig.vectors.at(b, kk);
            atom.point[i] = v;
        }
        atom.weight = 1.0; // placeholder, fitted below
        measure.atoms.push_back(std::move(atom));
    }

    // Weights from the moments of degree <= d, least squares.
    const MomentFunctional& l = *rep.source;
    const auto basis = rep.monomial_basis;
    DenseMatrix a(static_cast<int>(basis.size()), r);
    std::vector<double> b(basis.size());
    for (std::size_t row = 0; row < basis.size(); ++row) {
        for (int kk = 0; kk < r; ++kk) {
            double v = 1.0;
            for (int i = 0; i < n; ++i)
                for (unsigned e = 0; e < basis[row].exponent(i); ++e)
                    v *= measure.atoms[kk].point[i];
            a.at(static_cast<int>(row), kk) = v;
        }
        b[row] = l.value(basis[row]).real();
    }
    const num::LeastSquaresResult fit = num::least_squares(a, b);
    for (int kk = 0; kk < r; ++kk) {
        if (fit.x[kk] < -1e-8)
            throw Error(Errc::no_convergence, "recovered weight is negative");
        measure.atoms[kk].weight = std::max(fit.x[kk], 0.0);
    }

    // The quadrature must reproduce every stored moment.
    double scale = 0.0;
    for (const auto& [mono, val] : l.moments()) scale = std::max(scale, std::abs(val));
    for (const auto& [mono, val] : l.moments()) {
        double s = 0.0;
        for (const auto& atom : measure.atoms) {
            double t = atom.weight;
            for (int i = 0; i < n; ++i)
                for (unsigned e = 0; e < mono.exponent(i); ++e) t *= atom.point[i];
            s += t;
        }
        if (std::abs(s - val.real()) > 1e-6 * (1.0 + scale))
            throw Error(Errc::no_convergence, "quadrature fails to reproduce the moments");
    }
    return measure;
}

std::vector<std::complex<double>> gelfand_transform(const Polynomial& p,
                                                    const AtomicMeasure& atoms) {
    std::vector<std::complex<double>> out;
    for (const auto& atom : atoms.atoms) {
        if (static_cast<int>(atom.point.size()) != p.arity())
            throw Error(Errc::arity_mismatch, "atom arity mismatch");
        out.push_back(p.evaluate(atom.point));
    }
    return out;
}

bool daniell_check(const AtomicMeasure& m, const std::vector<Polynomial>& sequence,
                   double tol) {
    moments::validate(m);
    if (sequence.empty()) throw Error(Errc::invalid_value, "empty sequence");

    const std::size_t natoms = m.atoms.size();
    std::vector<std::vector<double>> values(sequence.size(), std::vector<double>(natoms));
    for (std::size_t k = 0; k < sequence.size(); ++k)
        for (std::size_t x = 0; x < natoms; ++x) {
            values[k][x] = sequence[k].evaluate(m.atoms[x].point).real();
            if (values[k][x] < -tol)
                throw Error(Errc::not_decreasing, "sequence not nonnegative on the atoms");
            if (k > 0 && values[k][x] > values[k - 1][x] + tol)
                throw Error(Errc::not_decreasing, "sequence not decreasing on the atoms");
        }

    // Vacuously true unless the pointwise infimum vanishes everywhere.
    for (std::size_t x = 0; x < natoms; ++x) {
        double inf = values[0][x];
        for (std::size_t k = 1; k < sequence.size(); ++k) inf = std::min(inf, values[k][x]);
        if (inf > tol) return true;
    }

    double inf_integral = 0.0;
    bool first = true;
    for (std::size_t k = 0; k < sequence.size(); ++k) {
        double integral = 0.0;
        for (std::size_t x = 0; x < natoms; ++x) integral += m.atoms[x].weight * values[k][x];
        if (first || integral < inf_integral) inf_integral = integral;
        first = false;
    }
    return inf_integral <= tol * (1.0 + m.total_weight());
}

} // namespace starorder::gns
