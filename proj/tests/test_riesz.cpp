#include <doctest.h>

#include <cmath>
#include <random>

#include "starorder/riesz.hpp"

using namespace starorder;
using namespace starorder::riesz;

namespace {

RieszElement elem(std::vector<double> v) { return RieszElement{std::move(v)}; }

RieszElement random_elem(std::mt19937& rng, int n) {
    // Small integers so that every lattice identity is exact in doubles.
    std::uniform_int_distribution<int> u(-8, 8);
    RieszElement r;
    for (int i = 0; i < n; ++i) r.values.push_back(u(rng));
    return r;
}

RieszElement add(const RieszElement& a, const RieszElement& b) {
    RieszElement r(a);
    for (int i = 0; i < b.space(); ++i) r.values[i] += b.values[i];
    return r;
}

RieszElement scale(const RieszElement& a, double lam) {
    RieszElement r(a);
    for (auto& x : r.values) x *= lam;
    return r;
}

bool equal(const RieszElement& a, const RieszElement& b) { return a.values == b.values; }

bool leq(const RieszElement& a, const RieszElement& b) {
    for (int i = 0; i < a.space(); ++i)
        if (a.values[i] > b.values[i]) return false;
    return true;
}

} // namespace

TEST_CASE("lattice_ops componentwise fixtures") {
    const auto o = lattice_ops(elem({1.0, -1.0}), elem({1.0, -1.0}));
    CHECK(equal(o.pos_r, elem({1.0, 0.0})));
    CHECK(equal(o.neg_r, elem({0.0, 1.0})));
    CHECK(equal(o.abs_r, elem({1.0, 1.0})));
    CHECK(equal(o.sup, o.inf)); // r v r = r ^ r = r

    CHECK_THROWS_WITH_AS((void)lattice_ops(elem({1.0}), elem({1.0, 2.0})),
                         doctest::Contains("SpaceMismatch"), Error);
}

TEST_CASE("sup agrees with the half-sum formula") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + (trial % 8);
        const RieszElement r = random_elem(rng, n);
        const RieszElement s = random_elem(rng, n);
        const auto o = lattice_ops(r, s);
        const auto abs_diff = lattice_ops(add(r, scale(s, -1.0)), elem(std::vector<double>(n, 0.0)));
        // r v s = (r + s + |r - s|)/2, exactly.
        const RieszElement formula = scale(add(add(r, s), abs_diff.abs_r), 0.5);
        CHECK(equal(o.sup, formula));
    }
}

TEST_CASE("calculation rules hold exactly on random triples") {
    std::mt19937 rng(32);
    std::uniform_int_distribution<int> lam_d(0, 5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + (trial % 8);
        const RieszElement r = random_elem(rng, n);
        const RieszElement s = random_elem(rng, n);
        const RieszElement t = random_elem(rng, n);
        const double lam = lam_d(rng);

        // (r ^ s) + t = (r+t) ^ (s+t)
        CHECK(equal(add(lattice_ops(r, s).inf, t), lattice_ops(add(r, t), add(s, t)).inf));
        // (r v s) + (r ^ s) = r + s
        CHECK(equal(add(lattice_ops(r, s).sup, lattice_ops(r, s).inf), add(r, s)));
        // -(r ^ s) = (-r) v (-s)
        CHECK(equal(scale(lattice_ops(r, s).inf, -1.0),
                    lattice_ops(scale(r, -1.0), scale(s, -1.0)).sup));
        // lam (r ^ s) = (lam r) ^ (lam s) for lam >= 0
        CHECK(equal(scale(lattice_ops(r, s).inf, lam),
                    lattice_ops(scale(r, lam), scale(s, lam)).inf));
        // r ^ (s v t) = (r ^ s) v (r ^ t)
        CHECK(equal(lattice_ops(r, lattice_ops(s, t).sup).inf,
                    lattice_ops(lattice_ops(r, s).inf, lattice_ops(r, t).inf).sup));

        // Components: r = r+ - r-, |r| = r+ + r-, r+ ^ r- = 0.
        const auto o = lattice_ops(r, r);
        CHECK(equal(add(o.pos_r, scale(o.neg_r, -1.0)), r));
        CHECK(equal(add(o.pos_r, o.neg_r), o.abs_r));
        const auto wedge = lattice_ops(o.pos_r, o.neg_r);
        for (double x : wedge.inf.values) CHECK(x == 0.0);
    }
}

TEST_CASE("wedge triangle inequality on nonnegative triples") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 400; ++trial) {
        const int n = 1 + (trial % 8);
        const auto mk = [&]() {
            RieszElement e = random_elem(rng, n);
            for (auto& x : e.values) x = std::fabs(x);
            return e;
        };
        const RieszElement r = mk(), s = mk(), t = mk();
        // r ^ (s+t) <= (r ^ s) + (r ^ t)
        const RieszElement lhs = lattice_ops(r, add(s, t)).inf;
        const RieszElement rhs = add(lattice_ops(r, s).inf, lattice_ops(r, t).inf);
        CHECK(leq(lhs, rhs));
    }
}

TEST_CASE("riesz_hom_check identifies evaluations") {
    std::mt19937 rng(34);
    RieszFunctional delta;
    delta.weights = {0.0, 1.0, 0.0};
    std::vector<RieszElement> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(random_elem(rng, 3));
    CHECK(riesz_hom_check(delta, samples, 1e-12));

    RieszFunctional sum;
    sum.weights = {1.0, 1.0};
    CHECK_FALSE(riesz_hom_check(sum, {elem({1.0, -1.0})}, 1e-9)); // 2 != 0

    RieszFunctional zero;
    zero.weights = {0.0, 0.0};
    CHECK(riesz_hom_check(zero, {elem({1.0, -1.0}), elem({3.0, 4.0})}, 1e-12));
}

TEST_CASE("extremal_positive_functionals are the point evaluations") {
    for (int n : {1, 2, 4, 6}) {
        const auto rays = extremal_positive_functionals(n);
        REQUIRE(static_cast<int>(rays.size()) == n);
        std::mt19937 rng(35);
        std::vector<RieszElement> samples;
        for (int i = 0; i < 10; ++i) samples.push_back(random_elem(rng, n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                CHECK(rays[i].weights[j] == doctest::Approx(i == j ? 1.0 : 0.0));
            CHECK(riesz_hom_check(rays[i], samples, 1e-9));
        }
    }
    CHECK_THROWS_WITH_AS((void)extremal_positive_functionals(7),
                         doctest::Contains("DeskScaleExceeded"), Error);
}

TEST_CASE("weight vectors with two or more nonzero entries fail the hom check") {
    std::mt19937 rng(36);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + (trial % 5);
        RieszFunctional omega;
        omega.weights.assign(n, 0.0);
        const int i = trial % n;
        const int j = (trial + 1) % n;
        omega.weights[i] = u(rng);
        omega.weights[j] = u(rng);
        // Constructed sample: +1 at i, -1 at j kills the hom property.
        RieszElement probe;
        probe.values.assign(n, 0.0);
        probe.values[i] = 1.0;
        probe.values[j] = -1.0;
        CHECK_FALSE(riesz_hom_check(omega, {probe}, 1e-9));
    }
}

TEST_CASE("rho_tilde stabilizes on the support") {
    RieszFunctional omega;
    omega.weights = {1.0, 1.0};
    CHECK(rho_tilde(omega, elem({1.0, 0.0}), elem({3.0, 5.0})) == doctest::Approx(3.0));
    CHECK(rho_tilde(omega, elem({0.0, 0.0}), elem({3.0, 5.0})) == 0.0);
    CHECK(rho_tilde(omega, elem({2.0, 1.0}), elem({3.0, 5.0})) == doctest::Approx(8.0));

    RieszFunctional neg;
    neg.weights = {-1.0, 1.0};
    CHECK_THROWS_WITH_AS((void)rho_tilde(neg, elem({1.0, 0.0}), elem({1.0, 1.0})),
                         doctest::Contains("NotPositive"), Error);

    // Stabilization oracle: iterate <w,(n r) ^ t> until it stops changing.
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 1 + (trial % 6);
        RieszFunctional w;
        RieszElement r, t;
        for (int i = 0; i < n; ++i) {
            w.weights.push_back(u(rng));
            r.values.push_back(trial % 3 == 0 && i % 2 == 0 ? 0.0 : u(rng));
            t.values.push_back(u(rng));
        }
        double sup = 0.0;
        for (int k = 1; k < 4000; ++k) {
            RieszElement nr = scale(r, double(k));
            sup = std::max(sup, w.pair(lattice_ops(nr, t).inf));
        }
        CHECK(rho_tilde(w, r, t) == doctest::Approx(sup).epsilon(1e-9));
    }
}

TEST_CASE("standard representation evaluates, embeds, and respects |.|") {
    const num::DenseMatrix m = standard_representation({elem({1.0, -1.0})}, 2);
    CHECK(m.at(0, 0) == doctest::Approx(1.0));
    CHECK(m.at(0, 1) == doctest::Approx(-1.0));

    std::mt19937 rng(38);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 1 + (trial % 6);
        const RieszElement r = random_elem(rng, n);
        const num::DenseMatrix v = standard_representation({r}, n);
        bool all_nonneg = true;
        for (int j = 0; j < n; ++j) all_nonneg &= v.at(0, j) >= 0.0;
        bool r_nonneg = true;
        for (double x : r.values) r_nonneg &= x >= 0.0;
        CHECK(all_nonneg == r_nonneg); // faithful order embedding

        // pi(|r|) = |pi(r)| componentwise.
        const RieszElement abs_r = lattice_ops(r, r).abs_r;
        const num::DenseMatrix va = standard_representation({abs_r}, n);
        for (int j = 0; j < n; ++j) CHECK(va.at(0, j) == doctest::Approx(std::fabs(v.at(0, j))));
    }
}
