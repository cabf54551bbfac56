#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "starorder/scalar.hpp"

namespace starorder::poly {

// Exponent vector of fixed arity. Variables are Hermitian and commute.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {}

    static Monomial unit(int arity) { return Monomial(std::vector<unsigned>(arity, 0)); }

    static Monomial var(int arity, int i, unsigned power = 1) {
        std::vector<unsigned> e(arity, 0);
        e.at(i) = power;
        return Monomial(std::move(e));
    }

    int arity() const { return static_cast<int>(exps_.size()); }
    unsigned exponent(int i) const { return exps_.at(i); }
    const std::vector<unsigned>& exponents() const { return exps_; }

    unsigned total_degree() const {
        unsigned d = 0;
        for (unsigned e : exps_) d += e;
        return d;
    }

    Monomial operator*(const Monomial& o) const;

    // Graded lexicographic: degree first, then exponent vectors.
    bool operator<(const Monomial& o) const {
        const unsigned da = total_degree(), db = o.total_degree();
        if (da != db) return da < db;
        return exps_ < o.exps_;
    }
    bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }

private:
    std::vector<unsigned> exps_;
};

// All monomials in `arity` variables of total degree <= max_degree,
// in ascending graded-lex order. This is the basis order used everywhere.
std::vector<Monomial> monomials_up_to(int arity, int max_degree);

// Sparse multivariate *-polynomial. Coefficients are complex, either exact
// rationals or doubles (per-instance mode). The involution conjugates
// coefficients and fixes the (Hermitian) variables. Values are immutable
// after construction and freely shareable.
class Polynomial {
public:
    Polynomial() : arity_(0), mode_(CoeffMode::real) {}
    Polynomial(int arity, CoeffMode mode) : arity_(arity), mode_(mode) {}

    static Polynomial zero(int arity, CoeffMode mode) { return Polynomial(arity, mode); }
    static Polynomial constant(int arity, const Scalar& c);
    static Polynomial variable(int arity, int i, CoeffMode mode);
    static Polynomial from_terms(int arity, CoeffMode mode,
                                 const std::vector<std::pair<Monomial, Scalar>>& terms);

    int arity() const { return arity_; }
    CoeffMode mode() const { return mode_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    // Zero if the monomial is absent.
    Scalar coefficient(const Monomial& m) const;

    // Total degree; 0 for the zero polynomial.
    int degree() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Scalar& c) const;

    // Involution: conjugate coefficients, keep monomials.
    Polynomial star() const;

    bool operator==(const Polynomial& o) const;
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    // a = a*; with Hermitian variables this means every coefficient is real.
    bool is_hermitian() const;

    Polynomial to_real() const;
    Polynomial to_exact() const;

    std::complex<double> evaluate(const std::vector<double>& point) const;

private:
    void insert(const Monomial& m, const Scalar& c);

    int arity_;
    CoeffMode mode_;
    std::map<Monomial, Scalar> terms_;
};

Polynomial pow(const Polynomial& base, unsigned k);

// c = c_r + i*c_i with both parts Hermitian.
struct HermitianDecomposition {
    Polynomial real_part;
    Polynomial imag_part;
};

HermitianDecomposition hermitian_decompose(const Polynomial& a);

// a = pos - neg with pos = (a+1)^2/4, neg = (a-1)^2/4; each side carries its
// single square root as a one-element certificate.
struct DirectedDecomposition {
    Polynomial pos;
    Polynomial neg;
    Polynomial pos_root; // pos == pos_root * pos_root
    Polynomial neg_root;
};

DirectedDecomposition directed_decomposition(const Polynomial& a);

// v_hat_n = n * sum_{k<=n} (1 + a_k^2) for Hermitian generators a_k.
Polynomial dominating_sequence(const std::vector<Polynomial>& generators, int n);

// Squares q_i with sum q_i^2 = v_hat_n -+ 2n*a_k (minus for sign_minus=true),
// built from n copies of (a_k -+ 1) and n copies of 1 and a_j for j != k.
std::vector<Polynomial> dominating_bound_certificate(const std::vector<Polynomial>& generators,
                                                     int n, int k, bool sign_minus);

} // namespace starorder::poly
