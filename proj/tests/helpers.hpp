#pragma once

#include <complex>
#include <map>
#include <random>
#include <vector>

#include "starorder/moments.hpp"
#include "starorder/poly.hpp"

namespace testutil {

using starorder::CoeffMode;
using starorder::Scalar;
using starorder::poly::Monomial;
using starorder::poly::Polynomial;

inline Monomial mono(std::vector<unsigned> e) { return Monomial(std::move(e)); }

inline Polynomial exact_poly(int arity,
                             std::vector<std::pair<std::vector<unsigned>, long>> terms) {
    std::vector<std::pair<Monomial, Scalar>> t;
    for (auto& [e, c] : terms) t.emplace_back(Monomial(std::move(e)), Scalar::exact(c));
    return Polynomial::from_terms(arity, CoeffMode::exact, t);
}

inline Scalar random_exact_scalar(std::mt19937& rng, bool complex_coeffs = true) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    mpq_class re(num(rng), den(rng));
    mpq_class im = complex_coeffs ? mpq_class(num(rng), den(rng)) : mpq_class(0);
    re.canonicalize();
    im.canonicalize();
    return Scalar::exact(re, im);
}

inline Polynomial random_exact_poly(std::mt19937& rng, int arity, int max_degree,
                                    int max_terms, bool complex_coeffs = true) {
    const auto basis = starorder::poly::monomials_up_to(arity, max_degree);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::vector<std::pair<Monomial, Scalar>> t;
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
        t.emplace_back(basis[pick(rng)], random_exact_scalar(rng, complex_coeffs));
    return Polynomial::from_terms(arity, CoeffMode::exact, t);
}

inline Polynomial random_float_poly(std::mt19937& rng, int arity, int max_degree,
                                    int max_terms, bool real_coeffs = false) {
    const auto basis = starorder::poly::monomials_up_to(arity, max_degree);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<std::pair<Monomial, Scalar>> t;
    const int k = count(rng);
    for (int i = 0; i < k; ++i)
        t.emplace_back(basis[pick(rng)],
                       Scalar::real(coeff(rng), real_coeffs ? 0.0 : coeff(rng)));
    return Polynomial::from_terms(arity, CoeffMode::real, t);
}

// Independent expansion oracle: multiply/add polynomials through plain maps
// keyed by exponent vectors, no Polynomial code involved.
using TermMap = std::map<std::vector<unsigned>, std::complex<double>>;

inline TermMap to_map(const Polynomial& p) {
    TermMap m;
    for (const auto& [mono, c] : p.terms()) m[mono.exponents()] += c.to_complex();
    return m;
}

inline TermMap map_mul(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            std::vector<unsigned> e(ea);
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            out[e] += ca * cb;
        }
    return out;
}

inline TermMap map_add(const TermMap& a, const TermMap& b) {
    TermMap out(a);
    for (const auto& [e, c] : b) out[e] += c;
    return out;
}

inline bool map_close(const TermMap& a, const TermMap& b, double tol) {
    TermMap diff(a);
    for (const auto& [e, c] : b) diff[e] -= c;
    for (const auto& [e, c] : diff)
        if (std::abs(c) > tol) return false;
    return true;
}

inline starorder::moments::AtomicMeasure random_atoms(std::mt19937& rng, int arity,
                                                      int count, double spread = 1.5) {
    std::uniform_real_distribution<double> coord(-spread, spread);
    std::uniform_real_distribution<double> weight(0.2, 2.0);
    starorder::moments::AtomicMeasure m;
    for (int k = 0; k < count; ++k) {
        starorder::moments::Atom a;
        for (int i = 0; i < arity; ++i) a.point.push_back(coord(rng));
        a.weight = weight(rng);
        m.atoms.push_back(std::move(a));
    }
    return m;
}

} // namespace testutil
