#ifndef CUSP_JSON_IO_HPP
#define CUSP_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "cusp/graph.hpp"
#include "cusp/pi1.hpp"
#include "cusp/resolution.hpp"

namespace cusp {

using json = nlohmann::json;

// input document
CuspidalInput input_from_json(const json &j);
json input_to_json(const CuspidalInput &in);

// serialized values
json scalar_to_json(const CycloScalar &c);
CycloScalar scalar_from_json(const json &j, const CycloFieldPtr &f);
json poly_to_json(const Polynomial &p);
Polynomial poly_from_json(const json &j, const CycloFieldPtr &f, const VarSetPtr &v);

json trace_to_json(const ResolutionTrace &t);
json graph_to_json(const DivisorGraph &g);
json presentations_to_json(const PresentationPair &p);

std::string dump_deterministic(const json &j);

} // namespace cusp

#endif
