#include "starorder/poly.hpp"

#include <algorithm>

namespace starorder::poly {

namespace {

void require_same_arity(const Polynomial& a, const Polynomial& b) {
    if (a.arity() != b.arity())
        throw Error(Errc::arity_mismatch, "polynomial arities differ");
}

void require_same_mode(const Polynomial& a, const Polynomial& b) {
    if (a.mode() != b.mode())
        throw Error(Errc::mode_mismatch, "polynomial coefficient modes differ");
}

} // namespace

Monomial Monomial::operator*(const Monomial& o) const {
    if (arity() != o.arity())
        throw Error(Errc::arity_mismatch, "monomial arities differ");
    std::vector<unsigned> e(exps_);
    for (int i = 0; i < arity(); ++i) e[i] += o.exps_[i];
    return Monomial(std::move(e));
}

std::vector<Monomial> monomials_up_to(int arity, int max_degree) {
    std::vector<Monomial> out;
    std::vector<unsigned> cur(arity, 0);
    // Depth-first enumeration, then sort into graded-lex order.
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == arity) {
            out.emplace_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = static_cast<unsigned>(e);
            self(self, pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, max_degree);
    std::sort(out.begin(), out.end());
    return out;
}

void Polynomial::insert(const Monomial& m, const Scalar& c) {
    if (m.arity() != arity_)
        throw Error(Errc::arity_mismatch, "monomial arity does not match polynomial");
    if (c.mode() != mode_)
        throw Error(Errc::mode_mismatch, "coefficient mode does not match polynomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

Polynomial Polynomial::constant(int arity, const Scalar& c) {
    Polynomial p(arity, c.mode());
    p.insert(Monomial::unit(arity), c);
    return p;
}

Polynomial Polynomial::variable(int arity, int i, CoeffMode mode) {
    Polynomial p(arity, mode);
    p.insert(Monomial::var(arity, i), Scalar::one(mode));
    return p;
}

Polynomial Polynomial::from_terms(int arity, CoeffMode mode,
                                  const std::vector<std::pair<Monomial, Scalar>>& terms) {
    Polynomial p(arity, mode);
    for (const auto& [m, c] : terms) p.insert(m, c);
    return p;
}

Scalar Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(mode_) : it->second;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.total_degree()));
    return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    require_same_arity(*this, o);
    require_same_mode(*this, o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.insert(m, c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(arity_, mode_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    require_same_arity(*this, o);
    require_same_mode(*this, o);
    Polynomial r(arity_, mode_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.insert(ma * mb, ca * cb);
    return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    Polynomial r(arity_, mode_);
    if (c.is_zero()) return r;
    for (const auto& [m, t] : terms_) r.insert(m, t * c);
    return r;
}

Polynomial Polynomial::star() const {
    Polynomial r(arity_, mode_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (arity_ != o.arity_ || mode_ != o.mode_ || terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second != jt->second) return false;
    return true;
}

bool Polynomial::is_hermitian() const {
    for (const auto& [m, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

Polynomial Polynomial::to_real() const {
    Polynomial r(arity_, CoeffMode::real);
    for (const auto& [m, c] : terms_) r.insert(m, c.to_real());
    return r;
}

Polynomial Polynomial::to_exact() const {
    Polynomial r(arity_, CoeffMode::exact);
    for (const auto& [m, c] : terms_) r.insert(m, c.to_exact());
    return r;
}

std::complex<double> Polynomial::evaluate(const std::vector<double>& point) const {
    if (static_cast<int>(point.size()) != arity_)
        throw Error(Errc::dimension_mismatch, "evaluation point has wrong length");
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        double v = 1.0;
        for (int i = 0; i < arity_; ++i)
            for (unsigned e = 0; e < m.exponent(i); ++e) v *= point[i];
        acc += c.to_complex() * v;
    }
    return acc;
}

Polynomial pow(const Polynomial& base, unsigned k) {
    Polynomial acc = Polynomial::constant(base.arity(), Scalar::one(base.mode()));
    for (unsigned i = 0; i < k; ++i) acc = acc * base;
    return acc;
}

HermitianDecomposition hermitian_decompose(const Polynomial& a) {
    const Polynomial as = a.star();
    const Polynomial real_part = (a + as).scaled(Scalar::one(a.mode()) / 2);
    const Polynomial anti = a - as;
    std::vector<std::pair<Monomial, Scalar>> imag_terms;
    for (const auto& [m, c] : anti.terms()) imag_terms.emplace_back(m, (c / 2).div_i());
    return {real_part, Polynomial::from_terms(a.arity(), a.mode(), imag_terms)};
}

DirectedDecomposition directed_decomposition(const Polynomial& a) {
    if (!a.is_hermitian())
        throw Error(Errc::not_hermitian, "directed decomposition needs a Hermitian argument");
    const Scalar one = Scalar::one(a.mode());
    const Polynomial unit = Polynomial::constant(a.arity(), one);
    const Polynomial pos_root = (a + unit).scaled(one / 2);
    const Polynomial neg_root = (a - unit).scaled(one / 2);
    return {pos_root * pos_root, neg_root * neg_root, pos_root, neg_root};
}

Polynomial dominating_sequence(const std::vector<Polynomial>& generators, int n) {
    if (n < 1 || n > static_cast<int>(generators.size()))
        throw Error(Errc::index_out_of_range, "dominating sequence index exceeds generator count");
    const Polynomial& g0 = generators.front();
    const Scalar one = Scalar::one(g0.mode());
    Polynomial sum = Polynomial::zero(g0.arity(), g0.mode());
    for (int k = 0; k < n; ++k) {
        if (!generators[k].is_hermitian())
            throw Error(Errc::not_hermitian, "dominating sequence needs Hermitian generators");
        sum = sum + Polynomial::constant(g0.arity(), one) + generators[k] * generators[k];
    }
    const Scalar scale =
        g0.mode() == CoeffMode::exact ? Scalar::exact(n) : Scalar::real(double(n));
    return sum.scaled(scale);
}

std::vector<Polynomial> dominating_bound_certificate(const std::vector<Polynomial>& generators,
                                                     int n, int k, bool sign_minus) {
    if (n < 1 || n > static_cast<int>(generators.size()) || k < 0 || k >= n)
        throw Error(Errc::index_out_of_range, "certificate indices out of range");
    const Polynomial& gk = generators[k];
    const Scalar one = Scalar::one(gk.mode());
    const Polynomial unit = Polynomial::constant(gk.arity(), one);
    // v_hat_n - 2n a_k = n (a_k - 1)^2 + n sum_{j != k} (1 + a_j^2); the n
    // multiples are emitted as n copies of each square so exact mode needs
    // no irrational scaling.
    const Polynomial root = sign_minus ? gk - unit : gk + unit;
    std::vector<Polynomial> squares;
    for (int c = 0; c < n; ++c) squares.push_back(root);
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        for (int c = 0; c < n; ++c) {
            squares.push_back(unit);
            squares.push_back(generators[j]);
        }
    }
    return squares;
}

} // namespace starorder::poly
