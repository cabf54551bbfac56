#include "starorder/riesz.hpp"

#include <algorithm>
#include <cmath>

#include "starorder/cone.hpp"

namespace starorder::riesz {

LatticeOps lattice_ops(const RieszElement& r, const RieszElement& s) {
    if (r.space() != s.space())
        throw Error(Errc::space_mismatch, "lattice operands live in different spaces");
    const int n = r.space();
    LatticeOps o;
    o.sup.values.resize(n);
    o.inf.values.resize(n);
    o.abs_r.values.resize(n);
    o.pos_r.values.resize(n);
    o.neg_r.values.resize(n);
    for (int i = 0; i < n; ++i) {
        o.sup.values[i] = std::max(r.values[i], s.values[i]);
        o.inf.values[i] = std::min(r.values[i], s.values[i]);
        o.abs_r.values[i] = std::fabs(r.values[i]);
        o.pos_r.values[i] = std::max(r.values[i], 0.0);
        o.neg_r.values[i] = std::max(-r.values[i], 0.0);
    }
    return o;
}

bool riesz_hom_check(const RieszFunctional& omega, const std::vector<RieszElement>& samples,
                     double tol) {
    for (const auto& r : samples) {
        RieszElement abs_r;
        abs_r.values.resize(r.space());
        for (int i = 0; i < r.space(); ++i) abs_r.values[i] = std::fabs(r.values[i]);
        if (std::fabs(omega.pair(abs_r) - std::fabs(omega.pair(r))) > tol) return false;
    }
    return true;
}

std::vector<RieszFunctional> extremal_positive_functionals(int space_size) {
    if (space_size < 1 || space_size > 6)
        throw Error(Errc::desk_scale_exceeded, "extremal enumeration limited to |X| <= 6");

    cone::PolyhedralCone orthant;
    orthant.dim = space_size;
    for (int i = 0; i < space_size; ++i) {
        std::vector<double> e(space_size, 0.0);
        e[i] = 1.0;
        orthant.generators.push_back(std::move(e));
    }
    const auto rays = cone::dual_extreme_rays(orthant);

    std::vector<RieszFunctional> out(space_size);
    std::vector<bool> seen(space_size, false);
    for (const auto& ray : rays) {
        int support = -1;
        for (int i = 0; i < space_size; ++i) {
            if (ray[i] == 0.0) continue;
            if (support >= 0 || ray[i] < 0.0)
                throw Error(Errc::no_convergence, "dual ray is not a point evaluation");
            support = i;
        }
        if (support < 0 || seen[support])
            throw Error(Errc::no_convergence, "dual ray enumeration inconsistent");
        seen[support] = true;
        out[support].weights.assign(space_size, 0.0);
        out[support].weights[support] = ray[support];
    }
    return out;
}

double rho_tilde(const RieszFunctional& omega, const RieszElement& r, const RieszElement& t) {
    if (omega.space() != r.space() || r.space() != t.space())
        throw Error(Errc::space_mismatch, "rho_tilde operands live in different spaces");
    for (double w : omega.weights)
        if (w < 0.0) throw Error(Errc::not_positive, "functional is not positive");
    for (int i = 0; i < r.space(); ++i)
        if (r.values[i] < 0.0 || t.values[i] < 0.0)
            throw Error(Errc::not_positive, "rho_tilde needs nonnegative elements");
    // (nr) ^ t stabilizes at t on the support of r once n*min(r|supp) >= max t,
    // so the supremum is the pairing with t restricted to that support.
    double s = 0.0;
    for (int i = 0; i < r.space(); ++i)
        if (r.values[i] > 0.0) s += omega.weights[i] * t.values[i];
    return s;
}

num::DenseMatrix standard_representation(const std::vector<RieszElement>& elements,
                                         int space_size) {
    const auto rays = extremal_positive_functionals(space_size);
    num::DenseMatrix m(static_cast<int>(elements.size()), space_size);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i].space() != space_size)
            throw Error(Errc::space_mismatch, "element does not live in R^size");
        for (int j = 0; j < space_size; ++j)
            m.at(static_cast<int>(i), j) = rays[j].pair(elements[i]);
    }
    return m;
}

} // namespace starorder::riesz
