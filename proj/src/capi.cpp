#include "star_order.h"

#include <cstring>
#include <string>

#include "starorder/json_io.hpp"

using namespace starorder;
using nlohmann::json;

struct sol_poly {
    poly::Polynomial value;
};
struct sol_moments {
    moments::MomentFunctional value;
};
struct sol_cone {
    cone::PolyhedralCone value;
};

namespace {

thread_local std::string g_last_error;

constexpr const char* kSchema = "star-order-lab/v1";

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void emit(char** payload, json body) {
    if (!payload) return;
    body["schema"] = kSchema;
    *payload = dup_string(body.dump());
}

sol_status map_error(const Error& e) {
    switch (e.code()) {
        case Errc::is_member:
            return SOL_NEGATIVE;
        case Errc::not_psd:
        case Errc::no_convergence:
        case Errc::degenerate_spectrum:
        case Errc::not_symmetric:
            return SOL_INTERNAL;
        default:
            return SOL_BAD_INPUT;
    }
}

template <typename F>
sol_status guarded(F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        g_last_error = e.what();
        return map_error(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SOL_INTERNAL;
    }
}

struct Options {
    double tol;
    int max_iter;
    std::uint64_t seed = 42;
    bool exact = false;
    int degree = -1;
};

Options parse_options(const char* text, double default_tol, int default_iters) {
    Options o;
    o.tol = default_tol;
    o.max_iter = default_iters;
    if (!text || !*text) return o;
    const json j = io::parse_document(text);
    if (!j.is_object()) throw Error(Errc::parse_error, "options must be a JSON object");
    if (j.contains("tol")) o.tol = j.at("tol").get<double>();
    if (j.contains("max_iter")) o.max_iter = j.at("max_iter").get<int>();
    if (j.contains("seed")) o.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("exact")) o.exact = j.at("exact").get<bool>();
    if (j.contains("degree")) o.degree = j.at("degree").get<int>();
    return o;
}

std::vector<double> parse_vector(const char* text) {
    if (!text) throw Error(Errc::parse_error, "missing vector document");
    const json j = io::parse_document(text);
    if (!j.is_array()) throw Error(Errc::parse_error, "vector must be a JSON array");
    std::vector<double> v;
    for (const auto& x : j) {
        if (!x.is_number()) throw Error(Errc::parse_error, "vector entries must be numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

} // namespace

extern "C" {

const char* sol_last_error(void) { return g_last_error.c_str(); }

void sol_string_free(char* s) { delete[] s; }

sol_status sol_poly_parse(const char* json_text, sol_poly** out) {
    return guarded([&]() {
        if (!json_text || !out) throw Error(Errc::parse_error, "null argument");
        *out = new sol_poly{io::poly_from_json(io::parse_document(json_text))};
        return SOL_OK;
    });
}

void sol_poly_free(sol_poly* p) { delete p; }

sol_status sol_poly_to_json(const sol_poly* p, char** json_out) {
    return guarded([&]() {
        if (!p || !json_out) throw Error(Errc::parse_error, "null argument");
        *json_out = dup_string(io::to_json(p->value).dump());
        return SOL_OK;
    });
}

sol_status sol_moments_parse(const char* json_text, sol_moments** out) {
    return guarded([&]() {
        if (!json_text || !out) throw Error(Errc::parse_error, "null argument");
        *out = new sol_moments{io::moments_from_json(io::parse_document(json_text))};
        return SOL_OK;
    });
}

void sol_moments_free(sol_moments* m) { delete m; }

sol_status sol_moments_to_json(const sol_moments* m, char** json_out) {
    return guarded([&]() {
        if (!m || !json_out) throw Error(Errc::parse_error, "null argument");
        *json_out = dup_string(io::to_json(m->value).dump());
        return SOL_OK;
    });
}

sol_status sol_cone_parse(const char* json_text, sol_cone** out) {
    return guarded([&]() {
        if (!json_text || !out) throw Error(Errc::parse_error, "null argument");
        *out = new sol_cone{io::cone_from_json(io::parse_document(json_text))};
        return SOL_OK;
    });
}

void sol_cone_free(sol_cone* c) { delete c; }

sol_status sol_sos_check(const sol_poly* p, const char* options, char** payload) {
    return guarded([&]() {
        if (!p) throw Error(Errc::parse_error, "null polynomial");
        const Options o = parse_options(options, 1e-8, 20000);
        const sos::SosProblem prob = sos::build_problem(p->value);
        const sos::SosFeasibility fr = sos::sos_feasibility(prob, o.max_iter, o.tol);
        if (fr.status == sos::SosFeasibility::Status::undecided) {
            emit(payload, json{{"result", "undecided"},
                               {"gap", fr.gap},
                               {"iterations", fr.iterations}});
            return SOL_UNDECIDED;
        }
        const sos::SosCertificate cert =
            sos::extract_certificate(fr.gram, prob.gram_basis, p->value.arity());
        if (!sos::verify_certificate(p->value, cert, CoeffMode::real))
            throw Error(Errc::no_convergence, "extracted certificate failed verification");
        emit(payload, json{{"result", "feasible"},
                           {"iterations", fr.iterations},
                           {"certificate", io::to_json(cert)}});
        return SOL_OK;
    });
}

sol_status sol_sos_verify(const sol_poly* p, const char* certificate_json,
                          const char* options, char** payload) {
    return guarded([&]() {
        if (!p || !certificate_json) throw Error(Errc::parse_error, "null argument");
        const Options o = parse_options(options, 1e-7, 0);
        const sos::SosCertificate cert =
            io::certificate_from_json(io::parse_document(certificate_json));
        const bool ok = sos::verify_certificate(
            p->value, cert, o.exact ? CoeffMode::exact : CoeffMode::real);
        emit(payload, json{{"result", ok ? "verified" : "rejected"},
                           {"mode", o.exact ? "exact" : "float"}});
        return ok ? SOL_OK : SOL_NEGATIVE;
    });
}

sol_status sol_sos_witness(const sol_poly* p, const char* options, char** payload) {
    return guarded([&]() {
        if (!p) throw Error(Errc::parse_error, "null polynomial");
        const Options o = parse_options(options, 1e-3, 200000);
        const sos::WitnessSearch ws =
            sos::non_sos_witness(p->value, o.max_iter, o.tol, o.seed);
        if (!ws.found) {
            emit(payload, json{{"result", "not_found"}, {"best_value", ws.best_value}});
            return SOL_NEGATIVE;
        }
        emit(payload, json{{"result", "witness"}, {"witness", io::to_json(*ws.witness)}});
        return SOL_OK;
    });
}

sol_status sol_sos_nonradical_demo(const char* options, char** payload) {
    return guarded([&]() {
        const Options o = parse_options(options, 1e-3, 200000);
        const sos::NonradicalReport r = sos::demonstrate_nonradical(o.max_iter, o.seed);
        json body{{"product_sos_exact", r.product_sos_exact},
                  {"sandwich_sos_exact", r.sandwich_sos_exact},
                  {"unit_bound_exact", r.unit_bound_exact},
                  {"witness_found", r.witness_found},
                  {"all_passed", r.all_passed()}};
        if (r.witness) body["witness_value"] = r.witness_value;
        emit(payload, std::move(body));
        return r.all_passed() ? SOL_OK : SOL_NEGATIVE;
    });
}

namespace {

int default_gns_degree(const moments::MomentFunctional& l, int requested) {
    if (requested >= 0) return requested;
    return l.max_degree() / 2 - 1;
}

} // namespace

sol_status sol_gns_build(const sol_moments* m, const char* options, char** payload) {
    return guarded([&]() {
        if (!m) throw Error(Errc::parse_error, "null moments");
        const Options o = parse_options(options, 1e-7, 0);
        const gns::GnsRepresentation rep =
            gns::gns_build(m->value, default_gns_degree(m->value, o.degree));
        emit(payload, json{{"representation", io::to_json(rep)}});
        return SOL_OK;
    });
}

sol_status sol_gns_quadrature(const sol_moments* m, const char* options, char** payload) {
    return guarded([&]() {
        if (!m) throw Error(Errc::parse_error, "null moments");
        const Options o = parse_options(options, 1e-7, 0);
        const gns::GnsRepresentation rep =
            gns::gns_build(m->value, default_gns_degree(m->value, o.degree));
        const moments::AtomicMeasure atoms = gns::joint_diagonalize(rep, o.seed);
        emit(payload, json{{"atoms", io::to_json(atoms)["atoms"]}});
        return SOL_OK;
    });
}

sol_status sol_gns_check(const sol_moments* m, const char* options, char** payload) {
    return guarded([&]() {
        if (!m) throw Error(Errc::parse_error, "null moments");
        const Options o = parse_options(options, 1e-7, 0);
        const int degree = default_gns_degree(m->value, o.degree);
        const gns::GnsRepresentation rep = gns::gns_build(m->value, degree);
        std::vector<poly::Polynomial> samples;
        for (const auto& mono : rep.monomial_basis)
            samples.push_back(poly::Polynomial::from_terms(
                rep.arity, CoeffMode::real, {{mono, Scalar::real(1.0)}}));
        const double vs = gns::gns_vector_state_check(rep, m->value, samples);
        const bool ok = vs <= o.tol && rep.adjoint_residual <= o.tol &&
                        rep.commutator_residual <= o.tol;
        emit(payload, json{{"flat", rep.flat},
                           {"degree", degree},
                           {"quotient_dim", rep.quotient_dim},
                           {"vector_state_residual", vs},
                           {"adjoint_residual", rep.adjoint_residual},
                           {"commutator_residual", rep.commutator_residual},
                           {"tol", o.tol},
                           {"result", ok ? "ok" : "residuals_exceeded"}});
        return ok ? SOL_OK : SOL_NEGATIVE;
    });
}

sol_status sol_cone_member(const sol_cone* c, const char* vector_json, char** payload) {
    return guarded([&]() {
        if (!c) throw Error(Errc::parse_error, "null cone");
        const bool member = cone::cone_member(c->value, parse_vector(vector_json));
        emit(payload, json{{"member", member}});
        return member ? SOL_OK : SOL_NEGATIVE;
    });
}

sol_status sol_cone_separate(const sol_cone* c, const char* vector_json, char** payload) {
    return guarded([&]() {
        if (!c) throw Error(Errc::parse_error, "null cone");
        const std::vector<double> omega =
            cone::separate(c->value, parse_vector(vector_json));
        emit(payload, json{{"functional", omega}});
        return SOL_OK;
    });
}

sol_status sol_cone_rays(const sol_cone* c, char** payload) {
    return guarded([&]() {
        if (!c) throw Error(Errc::parse_error, "null cone");
        emit(payload, json{{"rays", cone::dual_extreme_rays(c->value)}});
        return SOL_OK;
    });
}

sol_status sol_cone_decompose(const sol_cone* c, const char* vector_json, char** payload) {
    return guarded([&]() {
        if (!c) throw Error(Errc::parse_error, "null cone");
        const auto parts = cone::decompose_into_extremals(c->value, parse_vector(vector_json));
        json list = json::array();
        for (const auto& [coeff, ray] : parts)
            list.push_back(json{{"coefficient", coeff}, {"ray", ray}});
        emit(payload, json{{"decomposition", std::move(list)}});
        return SOL_OK;
    });
}

sol_status sol_riesz_extremal(int size, char** payload) {
    return guarded([&]() {
        const auto rays = riesz::extremal_positive_functionals(size);
        json list = json::array();
        for (const auto& r : rays) list.push_back(r.weights);
        emit(payload, json{{"extremal_functionals", std::move(list)}});
        return SOL_OK;
    });
}

sol_status sol_riesz_stdrep(int size, const char* elements_json, char** payload) {
    return guarded([&]() {
        std::vector<riesz::RieszElement> elements;
        if (elements_json && *elements_json) {
            const json j = io::parse_document(elements_json);
            if (!j.is_array())
                throw Error(Errc::parse_error, "elements must be a JSON array");
            for (const auto& e : j) elements.push_back(io::riesz_element_from_json(e));
        } else {
            for (int i = 0; i < size; ++i) {
                riesz::RieszElement e;
                e.values.assign(size, 0.0);
                e.values[i] = 1.0;
                elements.push_back(std::move(e));
            }
        }
        const num::DenseMatrix m = riesz::standard_representation(elements, size);
        json rows = json::array();
        for (int i = 0; i < m.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
            rows.push_back(std::move(row));
        }
        emit(payload, json{{"values", std::move(rows)}});
        return SOL_OK;
    });
}

} // extern "C"
