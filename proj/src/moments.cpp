#include "starorder/moments.hpp"

#include <cmath>

namespace starorder::moments {

void validate(const AtomicMeasure& m) {
    for (const auto& a : m.atoms) {
        if (!(a.weight > 0.0)) throw Error(Errc::invalid_value, "atom weights must be positive");
        if (a.point.size() != m.atoms.front().point.size())
            throw Error(Errc::dimension_mismatch, "atom points have mixed arities");
    }
}

MomentFunctional::MomentFunctional(int arity, int max_degree,
                                   std::map<Monomial, std::complex<double>> moments)
    : arity_(arity), max_degree_(max_degree), moments_(std::move(moments)) {
    if (arity_ < 1) throw Error(Errc::invalid_value, "arity must be positive");
    if (max_degree_ < 0) throw Error(Errc::invalid_value, "max_degree must be nonnegative");
    for (const auto& [m, v] : moments_) {
        if (m.arity() != arity_)
            throw Error(Errc::arity_mismatch, "moment monomial arity mismatch");
        if (static_cast<int>(m.total_degree()) > max_degree_)
            throw Error(Errc::degree_exceeded, "moment beyond the declared degree bound");
    }
    for (const auto& m : poly::monomials_up_to(arity_, max_degree_))
        if (!moments_.count(m))
            throw Error(Errc::missing_moment, "moment table is incomplete");
}

std::complex<double> MomentFunctional::value(const Monomial& m) const {
    if (m.arity() != arity_) throw Error(Errc::arity_mismatch, "monomial arity mismatch");
    auto it = moments_.find(m);
    if (it == moments_.end())
        throw Error(Errc::degree_exceeded, "monomial beyond the stored degree bound");
    return it->second;
}

bool MomentFunctional::is_hermitian() const {
    for (const auto& [m, v] : moments_)
        if (std::fabs(v.imag()) > 1e-12 * (1.0 + std::fabs(v.real()))) return false;
    return true;
}

MomentFunctional functional_from_atoms(const AtomicMeasure& m, int arity, int max_degree) {
    validate(m);
    std::map<Monomial, std::complex<double>> values;
    for (const auto& mono : poly::monomials_up_to(arity, max_degree)) {
        double s = 0.0;
        for (const auto& atom : m.atoms) {
            if (static_cast<int>(atom.point.size()) != arity)
                throw Error(Errc::arity_mismatch, "atom arity mismatch");
            double t = atom.weight;
            for (int i = 0; i < arity; ++i)
                for (unsigned e = 0; e < mono.exponent(i); ++e) t *= atom.point[i];
            s += t;
        }
        values.emplace(mono, std::complex<double>(s, 0.0));
    }
    return MomentFunctional(arity, max_degree, std::move(values));
}

std::complex<double> evaluate(const MomentFunctional& l, const Polynomial& p) {
    if (p.arity() != l.arity()) throw Error(Errc::arity_mismatch, "polynomial arity mismatch");
    if (p.degree() > l.max_degree())
        throw Error(Errc::degree_exceeded, "polynomial degree beyond the moment bound");
    std::complex<double> s(0.0, 0.0);
    for (const auto& [m, c] : p.terms()) s += c.to_complex() * l.value(m);
    return s;
}

num::DenseMatrix moment_matrix(const MomentFunctional& l, int d) {
    if (2 * d > l.max_degree())
        throw Error(Errc::degree_exceeded, "moment matrix degree beyond the stored bound");
    if (!l.is_hermitian())
        throw Error(Errc::not_hermitian, "moment matrix needs a Hermitian functional");
    const auto basis = poly::monomials_up_to(l.arity(), d);
    const int n = static_cast<int>(basis.size());
    num::DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = l.value(basis[i] * basis[j]).real();
    return m;
}

bool is_positive(const MomentFunctional& l) {
    if (!l.is_hermitian())
        throw Error(Errc::not_hermitian, "positivity test needs a Hermitian functional");
    const num::DenseMatrix m = moment_matrix(l, l.max_degree() / 2);
    const num::EigResult e = num::sym_eig(m);
    const double max_eig = e.values.empty() ? 0.0 : std::fabs(e.values.front());
    const double min_eig = e.values.empty() ? 0.0 : e.values.back();
    return min_eig >= -1e-9 * std::max(max_eig, 1e-30);
}

double cauchy_schwarz_residual(const MomentFunctional& l, const Polynomial& a,
                               const Polynomial& b) {
    const std::complex<double> bb = evaluate(l, b.star() * b);
    const std::complex<double> aa = evaluate(l, a.star() * a);
    const std::complex<double> ba = evaluate(l, b.star() * a);
    return bb.real() * aa.real() - std::norm(ba);
}

double variance(const MomentFunctional& l, const Polynomial& a) {
    const std::complex<double> unit_mass = l.value(Monomial::unit(l.arity()));
    if (std::abs(unit_mass - 1.0) > 1e-12)
        throw Error(Errc::not_state, "variance requires a state (L(1) = 1)");
    const std::complex<double> mean = evaluate(l, a);
    const Polynomial centered =
        a - Polynomial::constant(a.arity(), a.mode() == CoeffMode::exact
                                                ? Scalar::exact(mpq_class(mean.real()),
                                                                mpq_class(mean.imag()))
                                                : Scalar::real(mean.real(), mean.imag()));
    const double defining = evaluate(l, centered.star() * centered).real();
    const double alternative = evaluate(l, a.star() * a).real() - std::norm(mean);
    if (std::fabs(defining - alternative) > 1e-9 * (1.0 + std::fabs(defining)))
        throw Error(Errc::invalid_value, "variance forms disagree beyond tolerance");
    if (defining < 0.0 && defining > -1e-10) return 0.0;
    return defining;
}

bool multiplicativity_test(const MomentFunctional& l, const std::vector<Polynomial>& generators,
                           double tol) {
    for (const auto& g : generators) {
        if (variance(l, g) > tol) return false;
        if (g.is_hermitian()) {
            const Polynomial shifted =
                Polynomial::constant(g.arity(), Scalar::one(g.mode())) + g * g;
            if (variance(l, shifted) > tol) return false;
        }
    }
    return true;
}

MomentFunctional normalize_state(const MomentFunctional& l) {
    const std::complex<double> mass = l.value(Monomial::unit(l.arity()));
    if (!(mass.real() > 0.0) || std::fabs(mass.imag()) > 1e-12 * (1.0 + mass.real()))
        throw Error(Errc::not_state, "cannot normalize: L(1) <= 0");
    std::map<Monomial, std::complex<double>> scaled;
    for (const auto& [m, v] : l.moments()) scaled.emplace(m, v / mass.real());
    return MomentFunctional(l.arity(), l.max_degree(), std::move(scaled));
}

} // namespace starorder::moments
