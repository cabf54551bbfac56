#pragma once

#include <string>

#include <json.hpp>

#include "starorder/cone.hpp"
#include "starorder/gns.hpp"
#include "starorder/moments.hpp"
#include "starorder/poly.hpp"
#include "starorder/riesz.hpp"
#include "starorder/sos.hpp"

namespace starorder::io {

using nlohmann::json;

// Parsers throw Error(parse_error) with the offending field in the message.

json to_json(const poly::Polynomial& p);
poly::Polynomial poly_from_json(const json& j);

json to_json(const moments::MomentFunctional& l);
moments::MomentFunctional moments_from_json(const json& j);

json to_json(const cone::PolyhedralCone& c);
cone::PolyhedralCone cone_from_json(const json& j);

json to_json(const riesz::RieszElement& r);
riesz::RieszElement riesz_element_from_json(const json& j);

json to_json(const moments::AtomicMeasure& m);
moments::AtomicMeasure atoms_from_json(const json& j);

json to_json(const sos::SosCertificate& c);
sos::SosCertificate certificate_from_json(const json& j);

json to_json(const sos::DualWitness& w);

json to_json(const gns::GnsRepresentation& rep);

json parse_document(const std::string& text);

} // namespace starorder::io
