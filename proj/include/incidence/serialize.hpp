#pragma once

#include <incidence/completion.hpp>

#include <json.hpp>

namespace incidence {

using Json = nlohmann::json;

/**
 * Structure documents: {"incidences": [[point, line], ...], "lines": [...],
 * "m": m, "n": n, "points": [...]} with an optional "provenance" object
 * mapping element names to {"spawner": [...], "stage": k}. Keys are sorted
 * and arrays follow id order, so emitting is canonical.
 */
struct Document {
    Structure structure{Params{}};
    std::map<Id, Provenance> provenance;
};

// Ids are assigned in document order, points before lines. Errors name the
// offending entry.
Document parse_document(std::string_view text);
Structure parse_structure(std::string_view text);
Document document_from_json(const Json & j);

Json structure_json(const Structure & s, const std::map<Id, Provenance> * provenance = nullptr);
std::string emit_json(const Structure & s, const std::map<Id, Provenance> * provenance = nullptr);

// Points as circles, lines as boxes, one edge per incidence.
std::string emit_dot(const Structure & s);

Json id_set_json(const Structure & s, const IdSet & xs);

}
