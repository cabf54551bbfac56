#include "starorder/json_io.hpp"

namespace starorder::io {

namespace {

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end())
        throw Error(Errc::parse_error, std::string("missing field '") + name + "'");
    return *it;
}

int int_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number_integer())
        throw Error(Errc::parse_error, std::string("field '") + name + "' must be an integer");
    return f.get<int>();
}

double number_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (!f.is_number())
        throw Error(Errc::parse_error, std::string("field '") + name + "' must be a number");
    return f.get<double>();
}

std::vector<unsigned> exps_field(const json& j, int arity) {
    const json& f = field(j, "exps");
    if (!f.is_array() || static_cast<int>(f.size()) != arity)
        throw Error(Errc::parse_error, "field 'exps' must be an array of length arity");
    std::vector<unsigned> e;
    for (const auto& x : f) {
        if (!x.is_number_integer() || x.get<long long>() < 0)
            throw Error(Errc::parse_error, "field 'exps' entries must be nonnegative integers");
        e.push_back(x.get<unsigned>());
    }
    return e;
}

mpq_class rational_field(const json& j, const char* name) {
    const json& f = field(j, name);
    if (f.is_string()) {
        mpq_class q;
        if (q.set_str(f.get<std::string>(), 10) != 0)
            throw Error(Errc::parse_error,
                        std::string("field '") + name + "' is not a valid rational");
        if (q.get_den() == 0)
            throw Error(Errc::parse_error, std::string("field '") + name + "' has denominator 0");
        q.canonicalize();
        return q;
    }
    if (f.is_number()) return mpq_class(f.get<double>());
    throw Error(Errc::parse_error,
                std::string("field '") + name + "' must be a rational string or number");
}

std::vector<double> vector_field(const json& f, const char* name) {
    if (!f.is_array())
        throw Error(Errc::parse_error, std::string("field '") + name + "' must be an array");
    std::vector<double> v;
    for (const auto& x : f) {
        if (!x.is_number())
            throw Error(Errc::parse_error,
                        std::string("field '") + name + "' entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

json matrix_to_json(const num::DenseMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

json to_json(const poly::Polynomial& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        json t;
        t["exps"] = m.exponents();
        if (p.mode() == CoeffMode::exact) {
            t["re"] = c.re_exact().get_str();
            t["im"] = c.im_exact().get_str();
        } else {
            t["re"] = c.re();
            t["im"] = c.im();
        }
        terms.push_back(std::move(t));
    }
    return json{{"arity", p.arity()},
                {"mode", p.mode() == CoeffMode::exact ? "exact" : "float"},
                {"terms", std::move(terms)}};
}

poly::Polynomial poly_from_json(const json& j) {
    const int arity = int_field(j, "arity");
    if (arity < 1) throw Error(Errc::parse_error, "field 'arity' must be positive");
    const json& mode_f = field(j, "mode");
    if (!mode_f.is_string() ||
        (mode_f.get<std::string>() != "exact" && mode_f.get<std::string>() != "float"))
        throw Error(Errc::parse_error, "field 'mode' must be \"exact\" or \"float\"");
    const CoeffMode mode =
        mode_f.get<std::string>() == "exact" ? CoeffMode::exact : CoeffMode::real;

    const json& terms = field(j, "terms");
    if (!terms.is_array()) throw Error(Errc::parse_error, "field 'terms' must be an array");
    std::vector<std::pair<poly::Monomial, Scalar>> parsed;
    for (const auto& t : terms) {
        poly::Monomial m(exps_field(t, arity));
        Scalar c = mode == CoeffMode::exact
                       ? Scalar::exact(rational_field(t, "re"), rational_field(t, "im"))
                       : Scalar::real(number_field(t, "re"), number_field(t, "im"));
        parsed.emplace_back(std::move(m), std::move(c));
    }
    return poly::Polynomial::from_terms(arity, mode, parsed);
}

json to_json(const moments::MomentFunctional& l) {
    json moments = json::array();
    for (const auto& [m, v] : l.moments()) {
        json t;
        t["exps"] = m.exponents();
        t["re"] = v.real();
        t["im"] = v.imag();
        moments.push_back(std::move(t));
    }
    return json{{"arity", l.arity()}, {"max_degree", l.max_degree()},
                {"moments", std::move(moments)}};
}

moments::MomentFunctional moments_from_json(const json& j) {
    const int arity = int_field(j, "arity");
    const int max_degree = int_field(j, "max_degree");
    const json& entries = field(j, "moments");
    if (!entries.is_array()) throw Error(Errc::parse_error, "field 'moments' must be an array");
    std::map<poly::Monomial, std::complex<double>> values;
    for (const auto& t : entries)
        values.emplace(poly::Monomial(exps_field(t, arity)),
                       std::complex<double>(number_field(t, "re"), number_field(t, "im")));
    try {
        return moments::MomentFunctional(arity, max_degree, std::move(values));
    } catch (const Error& e) {
        if (e.code() == Errc::missing_moment) throw;
        throw Error(Errc::parse_error, e.what());
    }
}

json to_json(const cone::PolyhedralCone& c) {
    return json{{"dim", c.dim}, {"generators", c.generators}};
}

cone::PolyhedralCone cone_from_json(const json& j) {
    cone::PolyhedralCone c;
    c.dim = int_field(j, "dim");
    const json& gens = field(j, "generators");
    if (!gens.is_array())
        throw Error(Errc::parse_error, "field 'generators' must be an array");
    for (const auto& g : gens) c.generators.push_back(vector_field(g, "generators"));
    try {
        cone::validate(c);
    } catch (const Error& e) {
        throw Error(Errc::parse_error, e.what());
    }
    return c;
}

json to_json(const riesz::RieszElement& r) {
    return json{{"space", r.space()}, {"values", r.values}};
}

riesz::RieszElement riesz_element_from_json(const json& j) {
    const int space = int_field(j, "space");
    riesz::RieszElement r{vector_field(field(j, "values"), "values")};
    if (r.space() != space)
        throw Error(Errc::parse_error, "field 'values' length differs from 'space'");
    return r;
}

json to_json(const moments::AtomicMeasure& m) {
    json atoms = json::array();
    for (const auto& a : m.atoms)
        atoms.push_back(json{{"point", a.point}, {"weight", a.weight}});
    return json{{"atoms", std::move(atoms)}};
}

moments::AtomicMeasure atoms_from_json(const json& j) {
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) throw Error(Errc::parse_error, "field 'atoms' must be an array");
    moments::AtomicMeasure m;
    for (const auto& a : atoms) {
        moments::Atom atom;
        atom.point = vector_field(field(a, "point"), "point");
        atom.weight = number_field(a, "weight");
        m.atoms.push_back(std::move(atom));
    }
    try {
        moments::validate(m);
    } catch (const Error& e) {
        throw Error(Errc::parse_error, e.what());
    }
    return m;
}

json to_json(const sos::SosCertificate& c) {
    json squares = json::array();
    for (const auto& q : c.squares) squares.push_back(to_json(q));
    return json{{"squares", std::move(squares)}};
}

sos::SosCertificate certificate_from_json(const json& j) {
    const json& squares = field(j, "squares");
    if (!squares.is_array())
        throw Error(Errc::parse_error, "field 'squares' must be an array");
    sos::SosCertificate c;
    for (const auto& q : squares) c.squares.push_back(poly_from_json(q));
    return c;
}

json to_json(const sos::DualWitness& w) {
    return json{{"functional", to_json(w.functional)}, {"value", w.value}};
}

json to_json(const gns::GnsRepresentation& rep) {
    json mult = json::array();
    for (const auto& m : rep.mult_matrices) mult.push_back(matrix_to_json(m));
    json basis = json::array();
    for (const auto& m : rep.monomial_basis) basis.push_back(m.exponents());
    return json{{"arity", rep.arity},
                {"degree", rep.degree},
                {"quotient_dim", rep.quotient_dim},
                {"monomial_basis", std::move(basis)},
                {"basis_coeffs", matrix_to_json(rep.basis_coeffs)},
                {"mult_matrices", std::move(mult)},
                {"cyclic", rep.cyclic},
                {"flat", rep.flat},
                {"adjoint_residual", rep.adjoint_residual},
                {"commutator_residual", rep.commutator_residual}};
}

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(Errc::parse_error, "malformed JSON document");
    return j;
}

} // namespace starorder::io
