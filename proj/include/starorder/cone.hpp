#pragma once

#include <utility>
#include <vector>

#include "starorder/error.hpp"

namespace starorder::cone {

// Finitely generated cone in R^m. Generators need not be extreme; membership
// and separation are LP questions, the dual description is computed exactly.
struct PolyhedralCone {
    int dim = 0;
    std::vector<std::vector<double>> generators;
};

// Throws on empty/zero/mis-sized generators.
void validate(const PolyhedralCone& c);

// v lies in the cone iff it is a nonnegative combination of the generators.
bool cone_member(const PolyhedralCone& c, const std::vector<double>& v, double tol = 1e-9);

// Positive functional separating v from the cone: <w,g> >= 0 for every
// generator and <w,v> <= -1. Throws is_member when v is in the cone.
std::vector<double> separate(const PolyhedralCone& c, const std::vector<double>& v);

// Extreme rays of the dual cone {w : <w,g> >= 0 for all generators}, unit
// Euclidean norm. When the generators do not span R^m the dual cone has a
// lineality space and both signs of each lineality basis vector are included,
// so the returned list always generates the dual cone.
std::vector<std::vector<double>> dual_extreme_rays(const PolyhedralCone& c);

// Nonnegative combination of dual extreme rays reproducing omega.
std::vector<std::pair<double, std::vector<double>>>
decompose_into_extremals(const PolyhedralCone& c, const std::vector<double>& omega);

struct OrderInterval {
    PolyhedralCone cone;
    std::vector<double> lower;
    std::vector<double> upper;
};

bool interval_member(const OrderInterval& interval, const std::vector<double>& v);

// Finite truncation of a U_delta zero-neighbourhood: the union of the order
// intervals [-sum_{k<=N} delta_k vhat_k, +sum_{k<=N} delta_k vhat_k].
struct DeltaNeighborhood {
    PolyhedralCone cone;
    std::vector<std::vector<double>> dominating; // vhat_1 <= vhat_2 <= ...
    std::vector<double> deltas;                  // positive
};

// Checks the stored invariants (vhat_k in cone, increasing, deltas > 0).
void validate(const DeltaNeighborhood& u);

// The intervals increase with N, so only the deepest truncation is tested.
bool u_delta_member(const DeltaNeighborhood& u, const std::vector<double>& v);

// inf{lambda > 0 : v/lambda inside the truncated U_delta}, by bisection.
double minkowski_gauge(const DeltaNeighborhood& u, const std::vector<double>& v, double tol);

} // namespace starorder::cone
