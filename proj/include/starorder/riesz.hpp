#pragma once

#include <vector>

#include "starorder/error.hpp"
#include "starorder/numeric.hpp"

namespace starorder::riesz {

// Element of R^X for a finite index set X (pointwise order).
struct RieszElement {
    std::vector<double> values;

    int space() const { return static_cast<int>(values.size()); }
};

// Linear functional on R^X; positive iff all weights are >= 0.
struct RieszFunctional {
    std::vector<double> weights;

    int space() const { return static_cast<int>(weights.size()); }

    double pair(const RieszElement& r) const {
        if (r.space() != space())
            throw Error(Errc::space_mismatch, "functional/element space mismatch");
        double s = 0.0;
        for (int i = 0; i < space(); ++i) s += weights[i] * r.values[i];
        return s;
    }
};

struct LatticeOps {
    RieszElement sup;   // r v s
    RieszElement inf;   // r ^ s
    RieszElement abs_r; // |r|
    RieszElement pos_r; // r v 0
    RieszElement neg_r; // (-r) v 0
};

LatticeOps lattice_ops(const RieszElement& r, const RieszElement& s);

// <w,|r|> = |<w,r>| on every sample.
bool riesz_hom_check(const RieszFunctional& omega, const std::vector<RieszElement>& samples,
                     double tol);

// Extreme rays of the positive-functional cone on R^X; for R^X these are the
// point evaluations. Enumerated through the cone module's dual description
// and verified to be evaluations before returning.
std::vector<RieszFunctional> extremal_positive_functionals(int space_size);

// sup_n <w,(nr) ^ t> for positive w and nonnegative r,t. On finite X the
// supremum stabilizes, so it is evaluated directly on the support of r.
double rho_tilde(const RieszFunctional& omega, const RieszElement& r, const RieszElement& t);

// Value matrix of pi_std: rows = elements, columns = nonzero extremal
// functionals in enumeration order.
num::DenseMatrix standard_representation(const std::vector<RieszElement>& elements,
                                         int space_size);

} // namespace starorder::riesz
