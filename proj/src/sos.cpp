#include "starorder/sos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace starorder::sos {

using num::DenseMatrix;

SosProblem build_problem(const Polynomial& p) {
    if (!p.is_hermitian())
        throw Error(Errc::not_hermitian, "SOS target must be Hermitian");
    if (p.degree() % 2 != 0)
        throw Error(Errc::odd_degree, "SOS target must have even degree");

    SosProblem prob;
    prob.target = p;
    const int d = p.degree() / 2;
    prob.gram_basis = poly::monomials_up_to(p.arity(), d);
    const int n = static_cast<int>(prob.gram_basis.size());

    std::map<Monomial, int> group_of;
    for (const auto& gamma : poly::monomials_up_to(p.arity(), 2 * d)) {
        SosProblem::Group g;
        g.gamma = gamma;
        g.value = p.coefficient(gamma).re();
        group_of.emplace(gamma, static_cast<int>(prob.constraints.size()));
        prob.constraints.push_back(std::move(g));
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const Monomial gamma = prob.gram_basis[a] * prob.gram_basis[b];
            prob.constraints[group_of.at(gamma)].entries.emplace_back(a, b);
        }
    return prob;
}

namespace {

// Orthogonal projection onto the coefficient constraints. The entry groups
// partition the matrix, so the normal equations are diagonal and reduce to a
// uniform shift per group.
void project_constraints(const SosProblem& prob, DenseMatrix& g) {
    for (const auto& group : prob.constraints) {
        double s = 0.0;
        for (const auto& [a, b] : group.entries) s += g.at(a, b);
        const double shift = (group.value - s) / static_cast<double>(group.entries.size());
        for (const auto& [a, b] : group.entries) g.at(a, b) += shift;
    }
}

double constraint_residual(const SosProblem& prob, const DenseMatrix& g) {
    double worst = 0.0;
    for (const auto& group : prob.constraints) {
        double s = 0.0;
        for (const auto& [a, b] : group.entries) s += g.at(a, b);
        worst = std::max(worst, std::fabs(s - group.value));
    }
    return worst;
}

double coefficient_scale(const Polynomial& p) {
    double m = 0.0;
    for (const auto& [mono, c] : p.terms()) m = std::max(m, std::sqrt(c.abs2()));
    return 1.0 + m;
}

} // namespace

SosFeasibility sos_feasibility(const SosProblem& prob, int max_iter, double tol) {
    const int n = static_cast<int>(prob.gram_basis.size());
    if (n > 64)
        throw Error(Errc::desk_scale_exceeded, "Gram basis limited to 64 monomials");

    const double scale = coefficient_scale(prob.target);

    DenseMatrix x(n, n);
    project_constraints(prob, x);
    DenseMatrix p_corr(n, n), q_corr(n, n);

    SosFeasibility out;
    out.gap = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        DenseMatrix y = num::psd_project(x + p_corr);
        p_corr = x + p_corr - y;
        DenseMatrix z = y + q_corr;
        project_constraints(prob, z);
        q_corr = y + q_corr - z;

        out.gap = (y - z).frobenius_norm();
        out.iterations = it;
        if (constraint_residual(prob, y) <= tol * scale) {
            out.status = SosFeasibility::Status::feasible;
            out.gram = y;
            return out;
        }
        x = z;
    }
    out.status = SosFeasibility::Status::undecided;
    out.gram = x;
    return out;
}

SosCertificate extract_certificate(const DenseMatrix& gram,
                                   const std::vector<Monomial>& basis, int arity) {
    if (gram.rows() != static_cast<int>(basis.size()) || gram.rows() != gram.cols())
        throw Error(Errc::dimension_mismatch, "Gram/basis size mismatch");
    const num::EigResult e = num::sym_eig(gram);
    const double max_eig = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
    if (!e.values.empty() && e.values.back() < -1e-8 * std::max(max_eig, 1.0))
        throw Error(Errc::not_psd, "Gram matrix has a negative eigenvalue");

    SosCertificate cert;
    for (int k = 0; k < gram.rows(); ++k) {
        if (e.values[k] <= 1e-12 * std::max(max_eig, 1.0)) continue;
        const double root = std::sqrt(e.values[k]);
        std::vector<std::pair<Monomial, Scalar>> terms;
        for (std::size_t a = 0; a < basis.size(); ++a) {
            const double c = root * e.vectors.at(static_cast<int>(a), k);
            if (c != 0.0) terms.emplace_back(basis[a], Scalar::real(c));
        }
        cert.squares.push_back(Polynomial::from_terms(arity, CoeffMode::real, terms));
    }
    return cert;
}

bool verify_certificate(const Polynomial& p, const SosCertificate& cert, CoeffMode mode) {
    for (const auto& q : cert.squares)
        if (q.arity() != p.arity())
            throw Error(Errc::arity_mismatch, "certificate square arity mismatch");

    if (mode == CoeffMode::exact) {
        Polynomial sum = Polynomial::zero(p.arity(), CoeffMode::exact);
        for (const auto& q : cert.squares) {
            const Polynomial qe = q.to_exact();
            sum = sum + qe.star() * qe;
        }
        return sum == p.to_exact();
    }

    Polynomial sum = Polynomial::zero(p.arity(), CoeffMode::real);
    for (const auto& q : cert.squares) {
        const Polynomial qr = q.to_real();
        sum = sum + qr.star() * qr;
    }
    const Polynomial diff = sum - p.to_real();
    const double bound = 1e-7 * coefficient_scale(p);
    for (const auto& [mono, c] : diff.terms())
        if (std::sqrt(c.abs2()) > bound) return false;
    return true;
}

namespace {

// Shared scaffolding of the dual search: moment vector indexed by the
// monomials of degree <= 2d, with the moment matrix assembled on demand and
// monomial consistency restored after every PSD projection.
struct MomentVector {
    int arity;
    int two_d;
    std::vector<Monomial> monomials;        // degree <= 2d
    std::map<Monomial, int> index;
    std::vector<Monomial> basis;            // degree <= d
    std::vector<std::vector<int>> cell;     // basis x basis -> moment index
    std::vector<std::vector<std::pair<int, int>>> cells_of; // moment -> matrix cells

    explicit MomentVector(int arity_, int two_d_) : arity(arity_), two_d(two_d_) {
        monomials = poly::monomials_up_to(arity, two_d);
        for (std::size_t i = 0; i < monomials.size(); ++i)
            index.emplace(monomials[i], static_cast<int>(i));
        basis = poly::monomials_up_to(arity, two_d / 2);
        const int n = static_cast<int>(basis.size());
        cell.assign(n, std::vector<int>(n, -1));
        cells_of.assign(monomials.size(), {});
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const int idx = index.at(basis[a] * basis[b]);
                cell[a][b] = idx;
                cells_of[idx].emplace_back(a, b);
            }
    }

    DenseMatrix matrix(const std::vector<double>& y) const {
        const int n = static_cast<int>(basis.size());
        DenseMatrix m(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) m.at(a, b) = y[cell[a][b]];
        return m;
    }

    // Average matrix cells back onto the shared moments.
    void average(const DenseMatrix& m, std::vector<double>& y) const {
        for (std::size_t i = 0; i < cells_of.size(); ++i) {
            if (cells_of[i].empty()) continue;
            double s = 0.0;
            for (const auto& [a, b] : cells_of[i]) s += m.at(a, b);
            y[i] = s / static_cast<double>(cells_of[i].size());
        }
    }
};

} // namespace

WitnessSearch non_sos_witness(const Polynomial& p, int max_iter, double tol,
                              std::uint64_t seed) {
    if (!p.is_hermitian())
        throw Error(Errc::not_hermitian, "witness target must be Hermitian");
    if (p.degree() % 2 != 0)
        throw Error(Errc::odd_degree, "witness target must have even degree");

    const MomentVector mv(p.arity(), p.degree());
    if (mv.basis.size() > 64)
        throw Error(Errc::desk_scale_exceeded, "moment basis limited to 64 monomials");

    const int nm = static_cast<int>(mv.monomials.size());
    const int unit = mv.index.at(Monomial::unit(p.arity()));

    std::vector<double> obj(nm, 0.0);
    for (const auto& [mono, c] : p.terms()) obj[mv.index.at(mono)] = c.re();
    double obj_norm = 0.0;
    for (double v : obj) obj_norm += v * v;
    obj_norm = std::sqrt(obj_norm);
    if (obj_norm == 0.0) obj_norm = 1.0;

    std::vector<double> y(nm, 0.0);
    y[unit] = 1.0;

    auto consistency_rounds = [&](std::vector<double>& vec, int rounds) {
        for (int r = 0; r < rounds; ++r) {
            DenseMatrix m = mv.matrix(vec);
            m = num::psd_project(m);
            mv.average(m, vec);
            vec[unit] = 1.0;
        }
    };

    auto min_eig = [&](const std::vector<double>& vec) {
        const num::EigResult e = num::sym_eig(mv.matrix(vec));
        return std::make_pair(e.values.back(), std::max(e.values.front(), 0.0));
    };

    auto value_of = [&](const std::vector<double>& vec) {
        double s = 0.0;
        for (int i = 0; i < nm; ++i) s += obj[i] * vec[i];
        return s;
    };

    // Seeded restarts only perturb the starting point; the iteration itself
    // is deterministic.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 0.1);

    WitnessSearch out;
    out.found = false;
    out.best_value = value_of(y);

    const double radius = 1e3;
    std::vector<double> candidate;
    double candidate_value = 0.0;

    for (int it = 1; it <= max_iter; ++it) {
        const double step = 1.0 / (obj_norm * std::sqrt(static_cast<double>(it)));
        for (int i = 0; i < nm; ++i) y[i] -= step * obj[i];

        double norm = 0.0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm > radius)
            for (double& v : y) v *= radius / norm;

        consistency_rounds(y, 4);

        const double value = value_of(y);
        out.best_value = std::min(out.best_value, value);
        // Candidate needs margin: the PSD polish below costs a little value.
        if (value <= -3.0 * tol) {
            candidate = y;
            candidate_value = value;
            break;
        }
        if (it % 2000 == 0 && value > -0.1 * tol) {
            // Stalled near zero; restart from a perturbed normalized point.
            for (double& v : y) v += gauss(rng);
            y[unit] = 1.0;
            consistency_rounds(y, 20);
        }
    }
    if (candidate.empty()) {
        const double value = value_of(y);
        auto [lo, hi] = min_eig(y);
        if (value <= -tol && lo >= -1e-9 * (1.0 + hi)) {
            candidate = y;
            candidate_value = value;
        }
    }
    if (candidate.empty()) return out;

    // Polish to a strictly PSD-quality moment matrix while the value keeps
    // its margin.
    for (int round = 0; round < 200; ++round) {
        auto [lo, hi] = min_eig(candidate);
        if (lo >= -1e-9 * (1.0 + hi)) break;
        consistency_rounds(candidate, 25);
    }
    const auto [lo, hi] = min_eig(candidate);
    candidate_value = value_of(candidate);
    if (candidate_value > -tol || lo < -1e-9 * (1.0 + hi)) {
        out.best_value = std::min(out.best_value, candidate_value);
        return out;
    }

    std::map<Monomial, std::complex<double>> mommap;
    for (int i = 0; i < nm; ++i)
        mommap.emplace(mv.monomials[i], std::complex<double>(candidate[i], 0.0));
    MomentFunctional functional(p.arity(), p.degree(), std::move(mommap));
    out.found = true;
    out.best_value = std::min(out.best_value, candidate_value);
    out.witness = DualWitness{std::move(functional), candidate_value};
    return out;
}

namespace {

Polynomial exact_poly(int arity, const std::vector<std::pair<std::vector<unsigned>, long>>& terms) {
    std::vector<std::pair<Monomial, Scalar>> t;
    for (const auto& [exps, coeff] : terms)
        t.emplace_back(Monomial(std::vector<unsigned>(exps)), Scalar::exact(coeff));
    return Polynomial::from_terms(arity, CoeffMode::exact, t);
}

} // namespace

Polynomial demo_positive_polynomial() {
    // x^4 y^2 + x^2 y^4 - x^2 y^2 + 1: pointwise positive, not a sum of squares.
    return exact_poly(2, {{{4, 2}, 1}, {{2, 4}, 1}, {{2, 2}, -1}, {{0, 0}, 1}});
}

Polynomial demo_cofactor() {
    return exact_poly(2, {{{2, 0}, 1}, {{0, 2}, 1}, {{0, 0}, 1}});
}

SosCertificate demo_product_certificate() {
    SosCertificate cert;
    cert.squares = {
        exact_poly(2, {{{3, 1}, 1}}),               // x^3 y
        exact_poly(2, {{{2, 2}, 1}}),               // x^2 y^2
        exact_poly(2, {{{1, 3}, 1}}),               // x y^3
        exact_poly(2, {{{1, 1}, 1}}),               // x y
        exact_poly(2, {{{1, 0}, 1}}),               // x
        exact_poly(2, {{{0, 1}, 1}}),               // y
        exact_poly(2, {{{2, 2}, 1}, {{0, 0}, -1}}), // x^2 y^2 - 1
    };
    return cert;
}

NonradicalReport demonstrate_nonradical(int witness_max_iter, std::uint64_t seed) {
    NonradicalReport report;
    const Polynomial p = demo_positive_polynomial();
    const Polynomial q = demo_cofactor();

    // Step 1: pq is a sum of squares, exactly.
    report.product_cert = demo_product_certificate();
    report.product_sos_exact = verify_certificate(p * q, report.product_cert, CoeffMode::exact);

    // Step 2: qpq = q^2 p; multiply each square of pq by the squares of q
    // (q = x^2 + y^2 + 1 is itself the square sum of x, y, 1).
    const std::vector<Polynomial> q_roots = {
        exact_poly(2, {{{1, 0}, 1}}),
        exact_poly(2, {{{0, 1}, 1}}),
        exact_poly(2, {{{0, 0}, 1}}),
    };
    for (const auto& root : q_roots)
        for (const auto& square : report.product_cert.squares)
            report.sandwich_cert.squares.push_back(root * square);
    report.sandwich_sos_exact =
        verify_certificate(q * p * q, report.sandwich_cert, CoeffMode::exact);

    // Step 3: q^2 - 1 = (x^2+y^2)^2 + 2x^2 + 2y^2, so 1 <= q^2.
    report.unit_bound_cert.squares = {
        exact_poly(2, {{{2, 0}, 1}, {{0, 2}, 1}}),
        exact_poly(2, {{{1, 0}, 1}}),
        exact_poly(2, {{{1, 0}, 1}}),
        exact_poly(2, {{{0, 1}, 1}}),
        exact_poly(2, {{{0, 1}, 1}}),
    };
    const Polynomial unit = exact_poly(2, {{{0, 0}, 1}});
    report.unit_bound_exact =
        verify_certificate(q * q - unit, report.unit_bound_cert, CoeffMode::exact);

    // Step 4: p itself is not a sum of squares.
    WitnessSearch search = non_sos_witness(p, witness_max_iter, 1e-3, seed);
    report.witness_found = search.found;
    if (search.found) {
        report.witness_value = search.witness->value;
        report.witness = std::move(search.witness);
    }
    return report;
}

} // namespace starorder::sos
