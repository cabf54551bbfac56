#pragma once

#include <complex>
#include <map>
#include <vector>

#include "starorder/numeric.hpp"
#include "starorder/poly.hpp"

namespace starorder::moments {

using poly::Monomial;
using poly::Polynomial;

struct Atom {
    std::vector<double> point;
    double weight;
};

// Finitely supported positive measure on R^n.
struct AtomicMeasure {
    std::vector<Atom> atoms;

    double total_weight() const {
        double s = 0.0;
        for (const auto& a : atoms) s += a.weight;
        return s;
    }
};

void validate(const AtomicMeasure& m);

// Hermitian-or-not linear functional on the truncated polynomial algebra,
// given by its values on all monomials of degree <= max_degree. Missing
// entries are a hard error, never an implicit zero.
class MomentFunctional {
public:
    MomentFunctional(int arity, int max_degree,
                     std::map<Monomial, std::complex<double>> moments);

    int arity() const { return arity_; }
    int max_degree() const { return max_degree_; }
    const std::map<Monomial, std::complex<double>>& moments() const { return moments_; }

    std::complex<double> value(const Monomial& m) const;

    // Recomputed on demand: every moment real (the monomials are Hermitian).
    bool is_hermitian() const;

private:
    int arity_;
    int max_degree_;
    std::map<Monomial, std::complex<double>> moments_;
};

// L(alpha) = sum_k w_k alpha(x_k); PSD moment matrix by construction.
MomentFunctional functional_from_atoms(const AtomicMeasure& m, int arity, int max_degree);

// <L, p> = sum coeff(alpha) L(alpha).
std::complex<double> evaluate(const MomentFunctional& l, const Polynomial& p);

// M[alpha][beta] = L(alpha*beta) over the graded-lex basis of degree <= d.
num::DenseMatrix moment_matrix(const MomentFunctional& l, int d);

// Positivity on the sum-of-squares cone: PSD-ness of the full moment matrix
// at d = floor(max_degree/2).
bool is_positive(const MomentFunctional& l);

// L(b*b) L(a*a) - |L(b*a)|^2; nonnegative for positive L.
double cauchy_schwarz_residual(const MomentFunctional& l, const Polynomial& a,
                               const Polynomial& b);

// Var_L(a), computed both from the defining expression
// L((a - L(a))*(a - L(a))) and from L(a*a) - |L(a)|^2; the two must agree.
double variance(const MomentFunctional& l, const Polynomial& a);

// Var_L(1 + a^2) <= tol for every Hermitian generator and Var_L(a) <= tol for
// every generator: certifies multiplicativity on the generated algebra.
bool multiplicativity_test(const MomentFunctional& l, const std::vector<Polynomial>& generators,
                           double tol);

// Scale to L(1) = 1; rejects L(1) <= 0.
MomentFunctional normalize_state(const MomentFunctional& l);

} // namespace starorder::moments
