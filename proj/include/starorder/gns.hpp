#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "starorder/moments.hpp"
#include "starorder/numeric.hpp"
#include "starorder/poly.hpp"

namespace starorder::gns {

using moments::AtomicMeasure;
using moments::MomentFunctional;
using poly::Monomial;
using poly::Polynomial;

// Complex matrix as a split real pair; only used where complex data is
// unavoidable (finite *-algebras, transforms of complex polynomials).
struct CMat {
    num::DenseMatrix re;
    num::DenseMatrix im;

    static CMat zero(int rows, int cols) {
        return {num::DenseMatrix(rows, cols), num::DenseMatrix(rows, cols)};
    }
    CMat operator*(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    double frobenius_norm() const;
};

// Truncated GNS data built from a positive Hermitian moment functional:
// orthonormal quotient basis of degree <= d and one multiplication operator
// per variable, with the moment data kept for quadrature extraction.
struct GnsRepresentation {
    int arity = 0;
    int degree = 0;
    int quotient_dim = 0;
    std::vector<Monomial> monomial_basis;          // graded-lex, degree <= d
    num::DenseMatrix basis_coeffs;                 // quotient_dim x basis size
    std::vector<num::DenseMatrix> mult_matrices;   // one per variable
    std::vector<double> cyclic;                    // [1] in the quotient basis
    bool flat = false;
    double adjoint_residual = 0.0;
    double commutator_residual = 0.0;
    std::optional<MomentFunctional> source;        // moments backing the build
};

GnsRepresentation gns_build(const MomentFunctional& l, int d);

// pi(p) = sum coeff(alpha) prod_i M_i^{alpha_i}. Requires a flat
// representation; the commutator residual bounds the order ambiguity.
CMat gns_apply(const GnsRepresentation& rep, const Polynomial& p);

// max over the samples of |<[1], pi(p) [1]> - L(p)|, the vector-state pairing
// diagnostic. Runs on non-flat representations too (it reports, not asserts).
double gns_vector_state_check(const GnsRepresentation& rep, const MomentFunctional& l,
                              const std::vector<Polynomial>& samples);

// Block-diagonal concatenation of finitely many representations over the
// same variables: the desk-scale orthogonal sum. Cyclic vectors are kept
// per summand.
struct GnsDirectSum {
    std::vector<num::DenseMatrix> mult_matrices;
    std::vector<std::vector<double>> cyclics; // embedded [1]_k per summand
    int dim = 0;
};

GnsDirectSum gns_direct_sum(const std::vector<GnsRepresentation>& reps);

// Finite-dimensional *-algebra by structure constants: e_i e_j = sum_l
// c[i][j][l] e_l, involution e_i* = sum_l s[i][l] e_l, distinguished unit.
struct FiniteStarAlgebra {
    int dim = 0;
    std::vector<std::complex<double>> structure;  // dim^3, index (i*dim+j)*dim+l
    std::vector<std::complex<double>> involution; // dim^2, index i*dim+l
    std::vector<std::complex<double>> unit;       // coordinates of 1

    std::complex<double> c(int i, int j, int l) const {
        return structure[(static_cast<std::size_t>(i) * dim + j) * dim + l];
    }
    std::complex<double> s(int i, int l) const {
        return involution[static_cast<std::size_t>(i) * dim + l];
    }
};

// Checks associativity, the antilinear antihomomorphism law for the
// involution, and that the unit is two-sided.
void validate(const FiniteStarAlgebra& alg);

struct FiniteGns {
    int quotient_dim = 0;
    std::vector<CMat> mult;              // pi(e_i), quotient_dim square
    std::vector<std::complex<double>> cyclic;
    double representation_residual = 0.0; // max |pi(e_i)pi(e_j) - sum c pi(e_l)|
};

FiniteGns gns_finite(const FiniteStarAlgebra& alg,
                     const std::vector<std::complex<double>>& omega, double tol);

// Atomic quadrature from a flat representation: diagonalize one random
// combination of the multiplication operators, read off the points, fit the
// weights against the stored moments.
AtomicMeasure joint_diagonalize(const GnsRepresentation& rep, std::uint64_t seed = 42);

// Evaluation of p on the multiplicative states recovered as atoms.
std::vector<std::complex<double>> gelfand_transform(const Polynomial& p,
                                                    const AtomicMeasure& atoms);

// Daniell property of the atomic functional: decreasing sequences with
// pointwise infimum ~0 on the atoms integrate to infimum ~0.
bool daniell_check(const AtomicMeasure& m, const std::vector<Polynomial>& sequence, double tol);

} // namespace starorder::gns
