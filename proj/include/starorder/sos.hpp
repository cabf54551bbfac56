#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "starorder/moments.hpp"
#include "starorder/numeric.hpp"
#include "starorder/poly.hpp"

namespace starorder::sos {

using moments::MomentFunctional;
using poly::Monomial;
using poly::Polynomial;

// Gram-matrix formulation of "p is a sum of Hermitian squares": any PSD G
// over the degree-<=d monomial basis whose anti-diagonal sums match the
// coefficients of p yields a certificate.
struct SosProblem {
    Polynomial target;
    std::vector<Monomial> gram_basis; // graded-lex, degree <= d
    struct Group {
        Monomial gamma;
        std::vector<std::pair<int, int>> entries; // (a,b) with basis_a*basis_b = gamma
        double value;                             // required coefficient of gamma
    };
    std::vector<Group> constraints;
};

SosProblem build_problem(const Polynomial& p);

struct SosCertificate {
    std::vector<Polynomial> squares; // p = sum q_i* q_i
};

struct SosFeasibility {
    enum class Status { feasible, undecided };
    Status status;
    num::DenseMatrix gram; // PSD iterate (feasible results)
    double gap;            // stalled set distance (undecided results)
    int iterations;
};

// Dykstra alternating projections between the coefficient constraints and
// the PSD cone. Never claims infeasibility: the only negative certificate is
// a dual witness from non_sos_witness.
SosFeasibility sos_feasibility(const SosProblem& prob, int max_iter = 20000, double tol = 1e-8);

// Square roots of a PSD Gram matrix, one polynomial per surviving eigenvalue.
SosCertificate extract_certificate(const num::DenseMatrix& gram,
                                   const std::vector<Monomial>& basis, int arity);

// Exact mode: rational identity p == sum q_i* q_i. Float mode: coefficient
// deviation <= 1e-7 * (1 + max |p_gamma|).
bool verify_certificate(const Polynomial& p, const SosCertificate& cert, CoeffMode mode);

// State with a PSD moment matrix taking a negative value on p: proof that p
// is not a sum of squares at this degree.
struct DualWitness {
    MomentFunctional functional;
    double value; // <L, p> < 0
};

struct WitnessSearch {
    bool found;
    std::optional<DualWitness> witness;
    double best_value; // most negative <L, p> seen (diagnostic)
};

WitnessSearch non_sos_witness(const Polynomial& p, int max_iter = 200000, double tol = 1e-3,
                              std::uint64_t seed = 42);

// Fixed fixtures: the pointwise-positive degree-6 target p that is not a sum
// of squares, the cofactor q = x^2 + y^2 + 1, and the explicit certificate
// for the product pq. Exact coefficients.
Polynomial demo_positive_polynomial();
Polynomial demo_cofactor();
SosCertificate demo_product_certificate();

// Machine-checked walk through the failure of the radical property for
// (q^2, p): pq and qpq and q^2-1 are sums of squares (exactly), yet p has a
// dual witness.
struct NonradicalReport {
    bool product_sos_exact = false;   // step 1: pq
    bool sandwich_sos_exact = false;  // step 2: qpq
    bool unit_bound_exact = false;    // step 3: q^2 - 1 (so 1 <= q^2)
    bool witness_found = false;       // step 4: p not SOS
    double witness_value = 0.0;
    SosCertificate product_cert, sandwich_cert, unit_bound_cert;
    std::optional<DualWitness> witness;

    bool all_passed() const {
        return product_sos_exact && sandwich_sos_exact && unit_bound_exact && witness_found;
    }
};

NonradicalReport demonstrate_nonradical(int witness_max_iter = 200000,
                                        std::uint64_t seed = 42);

} // namespace starorder::sos
