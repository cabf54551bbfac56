#include "starorder/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <gmpxx.h>

#include "starorder/numeric.hpp"

namespace starorder::cone {

using num::DenseMatrix;
using num::LpProblem;
using num::LpResult;
using num::RowSense;

void validate(const PolyhedralCone& c) {
    if (c.dim < 1) throw Error(Errc::invalid_value, "cone dimension must be positive");
    if (c.generators.empty()) throw Error(Errc::invalid_value, "cone needs generators");
    for (const auto& g : c.generators) {
        if (static_cast<int>(g.size()) != c.dim)
            throw Error(Errc::dimension_mismatch, "generator length != dim");
        bool nonzero = false;
        for (double x : g) nonzero |= (x != 0.0);
        if (!nonzero) throw Error(Errc::invalid_value, "zero generator");
    }
}

namespace {

void require_dim(const PolyhedralCone& c, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != c.dim)
        throw Error(Errc::dimension_mismatch, "vector length != cone dim");
}

} // namespace

bool cone_member(const PolyhedralCone& c, const std::vector<double>& v, double tol) {
    validate(c);
    require_dim(c, v);
    const int m = c.dim;
    const int n = static_cast<int>(c.generators.size());
    LpProblem p;
    p.objective.assign(n, 0.0);
    p.constraints = DenseMatrix(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) p.constraints.at(i, j) = c.generators[j][i];
    p.rhs = v;
    p.senses.assign(m, RowSense::eq);
    p.nonneg.assign(n, true);
    const LpResult r = num::lp_solve(p);
    if (r.status != LpResult::Status::optimal) return false;
    // Confirm the combination within the membership tolerance.
    const std::vector<double> gv = p.constraints.apply(r.x);
    for (int i = 0; i < m; ++i)
        if (std::fabs(gv[i] - v[i]) > tol * (1.0 + std::fabs(v[i]))) return false;
    return true;
}

std::vector<double> separate(const PolyhedralCone& c, const std::vector<double>& v) {
    validate(c);
    require_dim(c, v);
    if (cone_member(c, v))
        throw Error(Errc::is_member, "cannot separate a member of the cone");
    const int m = c.dim;
    const int n = static_cast<int>(c.generators.size());
    LpProblem p;
    p.objective.assign(m, 0.0);
    p.constraints = DenseMatrix(n + 1, m);
    p.rhs.assign(n + 1, 0.0);
    p.senses.assign(n + 1, RowSense::ge);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < m; ++i) p.constraints.at(j, i) = c.generators[j][i];
    for (int i = 0; i < m; ++i) p.constraints.at(n, i) = v[i];
    p.rhs[n] = -1.0;
    p.senses[n] = RowSense::le;
    p.nonneg.assign(m, false);
    const LpResult r = num::lp_solve(p);
    if (r.status != LpResult::Status::optimal)
        throw Error(Errc::no_convergence, "separation LP did not produce a functional");
    return r.x;
}

namespace {

using QVec = std::vector<mpq_class>;

mpq_class dot(const QVec& a, const QVec& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Scale to a primitive integer vector (content 1); keeps DD numbers small.
void canonicalize(QVec& v) {
    mpz_class den_lcm = 1;
    for (const auto& q : v) {
        mpz_class d = q.get_den();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
        den_lcm = den_lcm / g * d;
    }
    mpz_class num_gcd = 0;
    for (auto& q : v) {
        q *= den_lcm;
        q.canonicalize();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
    }
    if (num_gcd == 0) return;
    for (auto& q : v) {
        q /= num_gcd;
        q.canonicalize();
    }
}

struct Ray {
    QVec v;
    std::uint64_t tight; // bitmask over inserted constraints
};

// Exact double description of {w : a_i^T w >= 0}. Returns extreme rays and a
// basis of the lineality space.
struct DualDescription {
    std::vector<QVec> rays;
    std::vector<QVec> lineality;
};

DualDescription dual_description(const std::vector<QVec>& constraints, int dim) {
    std::vector<QVec> lineality;
    for (int i = 0; i < dim; ++i) {
        QVec e(dim, 0);
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<Ray> rays;

    for (std::size_t idx = 0; idx < constraints.size(); ++idx) {
        const QVec& a = constraints[idx];
        const std::uint64_t bit = std::uint64_t(1) << idx;

        int pivot = -1;
        for (std::size_t l = 0; l < lineality.size(); ++l)
            if (dot(a, lineality[l]) != 0) { pivot = static_cast<int>(l); break; }

        if (pivot >= 0) {
            QVec l0 = lineality[pivot];
            if (dot(a, l0) < 0)
                for (auto& x : l0) x = -x;
            const mpq_class al0 = dot(a, l0);
            std::vector<QVec> next;
            for (std::size_t l = 0; l < lineality.size(); ++l) {
                if (static_cast<int>(l) == pivot) continue;
                QVec w = lineality[l];
                const mpq_class f = dot(a, w) / al0;
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * l0[i];
                canonicalize(w);
                next.push_back(std::move(w));
            }
            lineality = std::move(next);
            for (auto& r : rays) {
                const mpq_class f = dot(a, r.v) / al0;
                if (f != 0) {
                    for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= f * l0[i];
                    canonicalize(r.v);
                }
                r.tight |= bit;
            }
            std::uint64_t all_prev = 0;
            for (std::size_t j = 0; j < idx; ++j) all_prev |= std::uint64_t(1) << j;
            canonicalize(l0);
            rays.push_back(Ray{std::move(l0), all_prev});
            continue;
        }

        std::vector<int> sign(rays.size());
        bool has_neg = false;
        for (std::size_t r = 0; r < rays.size(); ++r) {
            const mpq_class d = dot(a, rays[r].v);
            sign[r] = d > 0 ? 1 : (d < 0 ? -1 : 0);
            if (sign[r] < 0) has_neg = true;
            if (sign[r] == 0) rays[r].tight |= bit;
        }
        if (!has_neg) continue;

        std::vector<Ray> next;
        for (std::size_t r = 0; r < rays.size(); ++r)
            if (sign[r] >= 0) next.push_back(rays[r]);

        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (sign[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (sign[q] >= 0) continue;
                const std::uint64_t common = rays[p].tight & rays[q].tight;
                // Combinatorial adjacency: no third extreme ray is tight on
                // every constraint shared by p and q.
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == q) continue;
                    if ((common & ~rays[r].tight) == 0) { adjacent = false; break; }
                }
                if (!adjacent) continue;
                const mpq_class dp = dot(a, rays[p].v);
                const mpq_class dq = dot(a, rays[q].v);
                QVec w(rays[p].v.size());
                for (std::size_t i = 0; i < w.size(); ++i)
                    w[i] = dp * rays[q].v[i] - dq * rays[p].v[i];
                canonicalize(w);
                next.push_back(Ray{std::move(w), common | bit});
            }
        }
        rays = std::move(next);
    }

    DualDescription out;
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    out.lineality = std::move(lineality);
    return out;
}

std::vector<double> to_unit(const QVec& q) {
    std::vector<double> v(q.size());
    double norm = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        v[i] = q[i].get_d();
        norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
    return v;
}

} // namespace

std::vector<std::vector<double>> dual_extreme_rays(const PolyhedralCone& c) {
    validate(c);
    if (c.dim > 8 || c.generators.size() > 32)
        throw Error(Errc::desk_scale_exceeded, "dual ray enumeration limited to dim<=8, gens<=32");

    std::vector<QVec> constraints;
    for (const auto& g : c.generators) {
        QVec q(c.dim);
        for (int i = 0; i < c.dim; ++i) q[i] = mpq_class(g[i]);
        canonicalize(q);
        constraints.push_back(std::move(q));
    }
    const DualDescription dd = dual_description(constraints, c.dim);

    std::vector<std::vector<double>> out;
    for (const auto& r : dd.rays) out.push_back(to_unit(r));
    for (const auto& l : dd.lineality) {
        out.push_back(to_unit(l));
        QVec neg(l);
        for (auto& x : neg) x = -x;
        out.push_back(to_unit(neg));
    }
    return out;
}

std::vector<std::pair<double, std::vector<double>>>
decompose_into_extremals(const PolyhedralCone& c, const std::vector<double>& omega) {
    validate(c);
    require_dim(c, omega);
    for (const auto& g : c.generators) {
        double s = 0.0, scale = 1.0;
        for (int i = 0; i < c.dim; ++i) {
            s += g[i] * omega[i];
            scale += std::fabs(g[i] * omega[i]);
        }
        if (s < -1e-9 * scale)
            throw Error(Errc::not_in_dual_cone, "functional is negative on a generator");
    }

    const std::vector<std::vector<double>> rays = dual_extreme_rays(c);
    const int k = static_cast<int>(rays.size());
    LpProblem p;
    p.objective.assign(k, 0.0);
    p.constraints = DenseMatrix(c.dim, k);
    for (int i = 0; i < c.dim; ++i)
        for (int j = 0; j < k; ++j) p.constraints.at(i, j) = rays[j][i];
    p.rhs = omega;
    p.senses.assign(c.dim, RowSense::eq);
    p.nonneg.assign(k, true);
    const LpResult r = num::lp_solve(p);
    if (r.status != LpResult::Status::optimal)
        throw Error(Errc::no_convergence, "ray decomposition LP failed");

    std::vector<std::pair<double, std::vector<double>>> out;
    for (int j = 0; j < k; ++j)
        if (r.x[j] > 1e-12) out.emplace_back(r.x[j], rays[j]);
    return out;
}

bool interval_member(const OrderInterval& interval, const std::vector<double>& v) {
    require_dim(interval.cone, v);
    const int m = interval.cone.dim;
    std::vector<double> a(m), b(m);
    for (int i = 0; i < m; ++i) {
        a[i] = v[i] - interval.lower[i];
        b[i] = interval.upper[i] - v[i];
    }
    return cone_member(interval.cone, a) && cone_member(interval.cone, b);
}

void validate(const DeltaNeighborhood& u) {
    validate(u.cone);
    if (u.dominating.size() != u.deltas.size())
        throw Error(Errc::dimension_mismatch, "dominating/delta length mismatch");
    if (u.dominating.empty())
        throw Error(Errc::invalid_value, "empty U_delta truncation");
    for (double d : u.deltas)
        if (!(d > 0.0)) throw Error(Errc::invalid_value, "deltas must be positive");
    for (std::size_t k = 0; k < u.dominating.size(); ++k) {
        if (!cone_member(u.cone, u.dominating[k]))
            throw Error(Errc::not_positive, "dominating vector outside the cone");
        if (k > 0) {
            std::vector<double> diff(u.cone.dim);
            for (int i = 0; i < u.cone.dim; ++i)
                diff[i] = u.dominating[k][i] - u.dominating[k - 1][i];
            if (!cone_member(u.cone, diff))
                throw Error(Errc::not_positive, "dominating sequence is not increasing");
        }
    }
}

namespace {

std::vector<double> truncation_bound(const DeltaNeighborhood& u) {
    std::vector<double> s(u.cone.dim, 0.0);
    for (std::size_t k = 0; k < u.dominating.size(); ++k)
        for (int i = 0; i < u.cone.dim; ++i) s[i] += u.deltas[k] * u.dominating[k][i];
    return s;
}

} // namespace

bool u_delta_member(const DeltaNeighborhood& u, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != u.cone.dim)
        throw Error(Errc::dimension_mismatch, "vector length != cone dim");
    const std::vector<double> s = truncation_bound(u);
    std::vector<double> lower(s.size()), upper(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        lower[i] = -s[i];
        upper[i] = s[i];
    }
    return interval_member(OrderInterval{u.cone, lower, upper}, v);
}

double minkowski_gauge(const DeltaNeighborhood& u, const std::vector<double>& v, double tol) {
    if (static_cast<int>(v.size()) != u.cone.dim)
        throw Error(Errc::dimension_mismatch, "vector length != cone dim");
    bool nonzero = false;
    for (double x : v) nonzero |= (x != 0.0);
    if (!nonzero) throw Error(Errc::not_absorbed, "gauge of the zero vector");
    if (!(tol > 0.0)) throw Error(Errc::invalid_value, "tolerance must be positive");

    auto inside = [&](double lambda) {
        std::vector<double> w(v);
        for (auto& x : w) x /= lambda;
        return u_delta_member(u, w);
    };

    double hi = 1.0;
    while (!inside(hi)) {
        hi *= 2.0;
        if (hi > 1e9)
            throw Error(Errc::not_absorbed, "truncated U_delta does not absorb the vector");
    }
    double lo = 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || !inside(mid))
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

} // namespace starorder::cone
