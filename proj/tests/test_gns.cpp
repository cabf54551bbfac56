#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "helpers.hpp"
#include "starorder/gns.hpp"

using namespace starorder;
using namespace starorder::gns;
using moments::AtomicMeasure;
using moments::functional_from_atoms;
using testutil::mono;

namespace {

Polynomial float_poly(int arity, std::vector<std::pair<std::vector<unsigned>, double>> terms) {
    std::vector<std::pair<Monomial, Scalar>> t;
    for (auto& [e, c] : terms) t.emplace_back(Monomial(std::move(e)), Scalar::real(c));
    return Polynomial::from_terms(arity, CoeffMode::real, t);
}

AtomicMeasure two_atoms_01() {
    AtomicMeasure m;
    m.atoms = {{{0.0}, 0.5}, {{1.0}, 0.5}};
    return m;
}

std::vector<double> sorted_eigs(const num::DenseMatrix& m) {
    num::DenseMatrix sym(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) sym.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
    auto e = num::sym_eig(sym);
    std::sort(e.values.begin(), e.values.end());
    return e.values;
}

// Smallest degree whose previous-level basis already spans the atom count.
int sufficient_degree(int arity, int atom_count) {
    int d = 1;
    while (static_cast<int>(poly::monomials_up_to(arity, d - 1).size()) < atom_count) ++d;
    return d;
}

// Best-permutation matching distance between recovered and target atoms.
double matching_distance(const AtomicMeasure& got, const AtomicMeasure& want) {
    const int k = static_cast<int>(want.atoms.size());
    REQUIRE(static_cast<int>(got.atoms.size()) == k);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        double worst = 0.0;
        for (int i = 0; i < k; ++i) {
            const auto& a = got.atoms[perm[i]];
            const auto& b = want.atoms[i];
            double dist = std::fabs(a.weight - b.weight);
            for (std::size_t c = 0; c < b.point.size(); ++c)
                dist = std::max(dist, std::fabs(a.point[c] - b.point[c]));
            worst = std::max(worst, dist);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("gns_build on the two-atom fixture at degree 1") {
    const auto l = functional_from_atoms(two_atoms_01(), 1, 4);
    const GnsRepresentation rep = gns_build(l, 1);
    CHECK(rep.quotient_dim == 2);
    CHECK_FALSE(rep.flat); // rank at degree 0 is 1

    const auto eigs = sorted_eigs(rep.mult_matrices[0]);
    CHECK(eigs[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(eigs[1] == doctest::Approx(1.0).epsilon(1e-9));

    // Orthonormality of the quotient basis under the moment inner product.
    const num::DenseMatrix gram = moments::moment_matrix(l, 1);
    const num::DenseMatrix bgb = rep.basis_coeffs * gram * rep.basis_coeffs.transposed();
    CHECK((bgb - num::DenseMatrix::identity(2)).frobenius_norm() <= 1e-8);
}

TEST_CASE("gns_build on a point evaluation is one-dimensional") {
    AtomicMeasure m;
    m.atoms = {{{1.5, -2.0}, 1.0}};
    for (int d : {1, 2}) {
        const auto l = functional_from_atoms(m, 2, 2 * (d + 1));
        const GnsRepresentation rep = gns_build(l, d);
        CHECK(rep.quotient_dim == 1);
        CHECK(rep.flat);
        CHECK(rep.mult_matrices[0].at(0, 0) == doctest::Approx(1.5));
        CHECK(rep.mult_matrices[1].at(0, 0) == doctest::Approx(-2.0));
    }
}

TEST_CASE("gns_build headroom and positivity preconditions") {
    const auto l = functional_from_atoms(two_atoms_01(), 1, 4);
    CHECK_THROWS_WITH_AS((void)gns_build(l, 2), doctest::Contains("DegreeHeadroomMissing"),
                         Error);

    std::map<Monomial, std::complex<double>> bad;
    bad.emplace(mono({0}), 1.0);
    bad.emplace(mono({1}), 0.0);
    bad.emplace(mono({2}), -1.0);
    bad.emplace(mono({3}), 0.0);
    bad.emplace(mono({4}), 1.0);
    CHECK_THROWS_WITH_AS((void)gns_build(moments::MomentFunctional(1, 4, bad), 1),
                         doctest::Contains("NotPositive"), Error);
}

TEST_CASE("three random atoms in two variables: flat with the atoms as joint spectrum") {
    std::mt19937 rng(51);
    for (int trial = 0; trial < 10; ++trial) {
        const AtomicMeasure m = testutil::random_atoms(rng, 2, 3);
        const auto l = functional_from_atoms(m, 2, 6);
        const GnsRepresentation rep = gns_build(l, 2);
        CHECK(rep.quotient_dim == 3);
        CHECK(rep.flat);
        CHECK(rep.adjoint_residual <= 1e-7);
        CHECK(rep.commutator_residual <= 1e-7);

        const AtomicMeasure recovered = joint_diagonalize(rep, 42);
        CHECK(matching_distance(recovered, m) <= 1e-8);
    }
}

TEST_CASE("gns_apply maps the unit and the variables") {
    AtomicMeasure m;
    m.atoms = {{{0.5, 1.0}, 0.7}, {{-1.0, 2.0}, 0.3}};
    const auto l = functional_from_atoms(m, 2, 6);
    const GnsRepresentation rep = gns_build(l, 2);
    REQUIRE(rep.flat);

    const CMat unit = gns_apply(rep, float_poly(2, {{{0, 0}, 1.0}}));
    CHECK((unit.re - num::DenseMatrix::identity(rep.quotient_dim)).frobenius_norm() <= 1e-9);
    CHECK(unit.im.frobenius_norm() <= 1e-12);

    const CMat mx = gns_apply(rep, float_poly(2, {{{1, 0}, 1.0}}));
    CHECK((mx.re - rep.mult_matrices[0]).frobenius_norm() <= 1e-12);

    CHECK_THROWS_WITH_AS((void)gns_apply(rep, float_poly(2, {{{3, 0}, 1.0}})),
                         doctest::Contains("DegreeExceeded"), Error);
}

TEST_CASE("spectral mapping: eigenvalues of pi(p) are the atom values") {
    std::mt19937 rng(52);
    for (int trial = 0; trial < 15; ++trial) {
        const AtomicMeasure m = testutil::random_atoms(rng, 2, 3);
        const auto l = functional_from_atoms(m, 2, 6);
        const GnsRepresentation rep = gns_build(l, 2);
        REQUIRE(rep.flat);
        const Polynomial p = testutil::random_float_poly(rng, 2, 2, 4, /*real=*/true);

        std::vector<double> expect;
        for (const auto& atom : m.atoms) expect.push_back(p.evaluate(atom.point).real());
        std::sort(expect.begin(), expect.end());

        const auto got = sorted_eigs(gns_apply(rep, p).re);
        REQUIRE(got.size() == expect.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::fabs(got[i] - expect[i]) <= 1e-7 * (1.0 + std::fabs(expect[i])));
    }
}

TEST_CASE("vector state reproduces the functional") {
    const auto l = functional_from_atoms(two_atoms_01(), 1, 4);
    const GnsRepresentation rep = gns_build(l, 1);

    // <[1], pi(x)[1]> = L(x) = 1/2 even though this rep is not flat.
    const double resid =
        gns_vector_state_check(rep, l, {float_poly(1, {{{1}, 1.0}}), float_poly(1, {{{0}, 1.0}})});
    CHECK(resid <= 1e-10);

    std::mt19937 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        const AtomicMeasure m = testutil::random_atoms(rng, 2, 3);
        const auto lf = functional_from_atoms(m, 2, 6);
        const GnsRepresentation r2 = gns_build(lf, 2);
        std::vector<Polynomial> samples;
        for (int k = 0; k < 6; ++k)
            samples.push_back(testutil::random_float_poly(rng, 2, 2, 5));
        double scale = 1.0;
        for (const auto& s : samples)
            scale = std::max(scale, std::abs(moments::evaluate(lf, s)));
        CHECK(gns_vector_state_check(r2, lf, samples) <= 1e-7 * (1.0 + scale));
    }
}

TEST_CASE("finite *-algebra: the complex numbers") {
    FiniteStarAlgebra alg;
    alg.dim = 1;
    alg.structure = {1.0};
    alg.involution = {1.0};
    alg.unit = {1.0};
    validate(alg);
    const FiniteGns g = gns_finite(alg, {1.0}, 1e-9);
    CHECK(g.quotient_dim == 1);
    CHECK(g.mult[0].re.at(0, 0) == doctest::Approx(1.0));
    CHECK(g.representation_residual <= 1e-12);
}

namespace {

FiniteStarAlgebra matrix_algebra_2x2() {
    // Basis E11, E12, E21, E22 with E_ab E_cd = delta_bc E_ad.
    FiniteStarAlgebra alg;
    alg.dim = 4;
    alg.structure.assign(64, 0.0);
    auto idx = [](int a, int b) { return a * 2 + b; }; // (row, col) -> basis index
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    if (b == c)
                        alg.structure[(idx(a, b) * 4 + idx(c, d)) * 4 + idx(a, d)] = 1.0;
    alg.involution.assign(16, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) alg.involution[idx(a, b) * 4 + idx(b, a)] = 1.0;
    alg.unit = {1.0, 0.0, 0.0, 1.0};
    return alg;
}

} // namespace

TEST_CASE("finite *-algebra: 2x2 matrices with the trace functional") {
    const FiniteStarAlgebra alg = matrix_algebra_2x2();
    validate(alg);
    const FiniteGns g = gns_finite(alg, {1.0, 0.0, 0.0, 1.0}, 1e-8);
    CHECK(g.quotient_dim == 4);
    CHECK(g.representation_residual <= 1e-8);

    // Faithful: the four images are linearly independent.
    std::vector<std::vector<double>> flat;
    for (const auto& m : g.mult) {
        std::vector<double> row;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                row.push_back(m.re.at(i, j));
                row.push_back(m.im.at(i, j));
            }
        flat.push_back(std::move(row));
    }
    int rank = 0;
    for (int c = 0; c < 32 && rank < 4; ++c) {
        int piv = -1;
        for (int r = rank; r < 4; ++r)
            if (std::fabs(flat[r][c]) > 1e-9) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(flat[rank], flat[piv]);
        for (int r = 0; r < 4; ++r) {
            if (r == rank) continue;
            const double f = flat[r][c] / flat[rank][c];
            for (int j = 0; j < 32; ++j) flat[r][j] -= f * flat[rank][j];
        }
        ++rank;
    }
    CHECK(rank == 4);
}

TEST_CASE("finite *-algebra: evaluation on one summand of C + C") {
    FiniteStarAlgebra alg;
    alg.dim = 2;
    alg.structure.assign(8, 0.0);
    alg.structure[(0 * 2 + 0) * 2 + 0] = 1.0; // e0 e0 = e0
    alg.structure[(1 * 2 + 1) * 2 + 1] = 1.0; // e1 e1 = e1
    alg.involution = {1.0, 0.0, 0.0, 1.0};
    alg.unit = {1.0, 1.0};
    validate(alg);

    const FiniteGns g = gns_finite(alg, {1.0, 0.0}, 1e-9);
    CHECK(g.quotient_dim == 1); // the second summand is in the kernel
    CHECK(g.mult[0].re.at(0, 0) == doctest::Approx(1.0));
    CHECK(std::fabs(g.mult[1].re.at(0, 0)) <= 1e-10);

    CHECK_THROWS_WITH_AS((void)gns_finite(alg, {-1.0, 0.0}, 1e-9),
                         doctest::Contains("NotPositive"), Error);
    CHECK_THROWS_WITH_AS(
        (void)gns_finite(alg, {std::complex<double>(0.0, 1.0), 0.0}, 1e-9),
        doctest::Contains("NotHermitianFunctional"), Error);
}

TEST_CASE("joint_diagonalize inverts functional_from_atoms") {
    const auto l = functional_from_atoms(two_atoms_01(), 1, 6);
    const GnsRepresentation rep = gns_build(l, 2);
    REQUIRE(rep.flat);
    const AtomicMeasure rec = joint_diagonalize(rep, 42);
    CHECK(matching_distance(rec, two_atoms_01()) <= 1e-8);

    AtomicMeasure single;
    single.atoms = {{{0.25, -1.0}, 1.0}};
    const auto ls = functional_from_atoms(single, 2, 4);
    const AtomicMeasure rs = joint_diagonalize(gns_build(ls, 1), 42);
    REQUIRE(rs.atoms.size() == 1);
    CHECK(rs.atoms[0].weight == doctest::Approx(1.0));
    CHECK(rs.atoms[0].point[0] == doctest::Approx(0.25));
    CHECK(rs.atoms[0].point[1] == doctest::Approx(-1.0));

    std::mt19937 rng(54);
    for (int trial = 0; trial < 10; ++trial) {
        const AtomicMeasure m = testutil::random_atoms(rng, 2, 3);
        const auto lf = functional_from_atoms(m, 2, 6);
        const AtomicMeasure got = joint_diagonalize(gns_build(lf, 2), 42);
        CHECK(matching_distance(got, m) <= 1e-7);
    }
}

TEST_CASE("gelfand_transform is a unital *-homomorphism onto the atoms") {
    AtomicMeasure m;
    m.atoms = {{{0.0}, 0.5}, {{1.0}, 0.5}};

    const auto ones = gelfand_transform(float_poly(1, {{{0}, 1.0}}), m);
    CHECK(ones[0].real() == doctest::Approx(1.0));
    CHECK(ones[1].real() == doctest::Approx(1.0));

    const auto xs = gelfand_transform(float_poly(1, {{{1}, 1.0}}), m);
    CHECK(xs[0].real() == doctest::Approx(0.0));
    CHECK(xs[1].real() == doctest::Approx(1.0));

    std::mt19937 rng(55);
    for (int trial = 0; trial < 40; ++trial) {
        const AtomicMeasure ma = testutil::random_atoms(rng, 2, 3);
        const Polynomial p = testutil::random_float_poly(rng, 2, 2, 4);
        const Polynomial q = testutil::random_float_poly(rng, 2, 2, 4);
        const auto tp = gelfand_transform(p, ma);
        const auto tq = gelfand_transform(q, ma);
        const auto tpq = gelfand_transform(p * q, ma);
        for (std::size_t i = 0; i < tp.size(); ++i)
            CHECK(std::abs(tpq[i] - tp[i] * tq[i]) <=
                  1e-12 * (1.0 + std::abs(tp[i] * tq[i])));
        // Involution goes to conjugation.
        const auto tstar = gelfand_transform(p.star(), ma);
        for (std::size_t i = 0; i < tp.size(); ++i)
            CHECK(std::abs(tstar[i] - std::conj(tp[i])) <= 1e-12);
    }
}

TEST_CASE("daniell_check on decreasing sequences") {
    AtomicMeasure m;
    m.atoms = {{{0.0}, 0.5}, {{1.0}, 0.5}};

    std::vector<Polynomial> uniform;
    for (int k = 1; k <= 8; ++k) uniform.push_back(float_poly(1, {{{0}, 1.0 / k}}));
    CHECK(daniell_check(m, uniform, 1e-9));

    std::vector<Polynomial> xsq;
    for (int k = 1; k <= 8; ++k) xsq.push_back(float_poly(1, {{{2}, 1.0 / k}}));
    CHECK(daniell_check(m, xsq, 1e-9));

    std::vector<Polynomial> increasing = {float_poly(1, {{{0}, 1.0}}),
                                          float_poly(1, {{{0}, 2.0}})};
    CHECK_THROWS_WITH_AS((void)daniell_check(m, increasing, 1e-9),
                         doctest::Contains("NotDecreasing"), Error);

    std::mt19937 rng(56);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const AtomicMeasure ma = testutil::random_atoms(rng, 2, 3);
        // Random positive decreasing-to-zero sequence: c_k * (p^2) with c_k -> 0.
        const Polynomial base = testutil::random_float_poly(rng, 2, 1, 3, /*real=*/true);
        const Polynomial sq = base * base;
        std::vector<Polynomial> seq;
        double c = u(rng);
        for (int k = 0; k < 10; ++k) {
            seq.push_back(sq.scaled(Scalar::real(c)));
            c *= 0.4;
        }
        seq.push_back(sq.scaled(Scalar::real(0.0)));
        CHECK(daniell_check(ma, seq, 1e-9));
    }
}

TEST_CASE("direct sums keep each summand's state") {
    AtomicMeasure a, b;
    a.atoms = {{{2.0}, 1.0}};
    b.atoms = {{{-3.0}, 1.0}};
    const auto la = functional_from_atoms(a, 1, 4);
    const auto lb = functional_from_atoms(b, 1, 4);
    const GnsRepresentation ra = gns_build(la, 1);
    const GnsRepresentation rb = gns_build(lb, 1);

    const GnsDirectSum sum = gns_direct_sum({ra, rb});
    CHECK(sum.dim == ra.quotient_dim + rb.quotient_dim);

    // Pairing against each embedded cyclic vector recovers that summand.
    const num::DenseMatrix& mx = sum.mult_matrices[0];
    double pa = 0.0, pb = 0.0;
    for (int i = 0; i < sum.dim; ++i)
        for (int j = 0; j < sum.dim; ++j) {
            pa += sum.cyclics[0][i] * mx.at(i, j) * sum.cyclics[0][j];
            pb += sum.cyclics[1][i] * mx.at(i, j) * sum.cyclics[1][j];
        }
    CHECK(pa == doctest::Approx(2.0));
    CHECK(pb == doctest::Approx(-3.0));
}

TEST_CASE("atom-count-sufficient degrees keep the round trip flat") {
    std::mt19937 rng(57);
    for (int trial = 0; trial < 12; ++trial) {
        const int arity = 1 + (trial % 3);
        const int count = 1 + (trial % 4);
        const AtomicMeasure m = testutil::random_atoms(rng, arity, count);
        const int d = sufficient_degree(arity, count);
        const auto l = functional_from_atoms(m, arity, 2 * (d + 1));
        const GnsRepresentation rep = gns_build(l, d);
        CHECK(rep.flat);
        CHECK(rep.quotient_dim == count);
        CHECK(matching_distance(joint_diagonalize(rep, 42), m) <= 1e-7);
    }
}
