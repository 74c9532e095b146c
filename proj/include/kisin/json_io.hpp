#pragma once

#include <json.hpp>

#include "kisin/connect.hpp"

namespace kisin {
namespace io {

using nlohmann::json;

json to_json(const FieldSpec* s);
const FieldSpec* field_from_json(const json& j);

json to_json(const FieldElement& x);
FieldElement field_element_from_json(const json& j, const FieldSpec* s);

json to_json(const LaurentElement& x);
LaurentElement laurent_from_json(const json& j, const FieldSpec* s);

json to_json(const Rat& r);
Rat rat_from_json(const json& j);

json to_json(const Lattice& L);
Lattice lattice_from_json(const json& j, const FieldSpec* s);

json to_json(const VertexClass& v);
VertexClass vertex_from_json(const json& j, const FieldSpec* s);

json to_json(const BuildingPoint& x);
BuildingPoint building_point_from_json(const json& j, const FieldSpec* s);

json to_json(const PhiModule& M);
PhiModule phimodule_from_json(const json& j);

json to_json(const KisinPoint& x);
KisinPoint kisin_point_from_json(const json& j, const FieldSpec* s);

json to_json(const Cochar& nu);
Cochar cochar_from_json(const json& j);

/// Full run configuration, as accepted by `--config`. Unknown keys are
/// rejected. The module is given inline or as standard-form parameters.
struct RunConfig {
    const FieldSpec* field = nullptr; // enumeration field
    PhiModule module;
    Cochar nu;
    int prec = kDefaultPrec;
    int radius_slack = 0;
    unsigned long long seed = 0;
    GraphRules rules;
    int jobs = 1;
};

RunConfig run_config_from_json(const json& j);
json to_json(const RunConfig& cfg);

/// Enumeration result document (embeds the generating config so downstream
/// commands can recover the module).
json enumeration_to_json(const RunConfig& cfg, const Enumeration& en);
std::pair<RunConfig, Enumeration> enumeration_from_json(const json& j);

json graph_to_json(const CertGraph& g);
std::string graph_to_dot(const CertGraph& g);

/// Canonical serialization (sorted keys, no floats anywhere).
std::string dumps(const json& j);

} // namespace io
} // namespace kisin
