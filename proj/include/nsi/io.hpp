#pragma once

#include <json.hpp>
#include <string>

#include "nsi/chern.hpp"
#include "nsi/fan.hpp"
#include "nsi/ktheory.hpp"
#include "nsi/resolution_graph.hpp"
#include "nsi/surface_model.hpp"

namespace nsi {

using json = nlohmann::json;

// Fan file: {"rank": r, "rays": [[..]], "cones": [[..]]} with integer
// entries; rank-2 files may omit "cones" (consecutive pairs are implied).
Fan fan_from_json(const json& j);
json fan_to_json(const Fan& f);

// Model file: {"basis": [..], "gram": [[..]], "exceptional_groups": [[..]],
// "canonical": [..], "toric_derived": bool, "chi_o": optional int}.
// Rationals are "num/den" strings with "/1" omitted.
NormalSurfaceModel model_from_json(const json& j);
json model_to_json(const NormalSurfaceModel& m);

// Graph file: {"curves": [{"label","self_int","genus"}],
// "adjacency": [[i,j,value], ...]} with sparse off-diagonal triples.
ResolutionGraph graph_from_json(const json& j);
json graph_to_json(const ResolutionGraph& g);

// Sheaf file: {"rank": r, "c1": [..], "local_c2": {"<group>": "num/den"},
// "smooth_c2": "num/den"}.
SheafData sheaf_from_json(const json& j);
json sheaf_to_json(const SheafData& s);

json load_json_file(const std::string& path);
Fan load_fan(const std::string& path);
NormalSurfaceModel load_model(const std::string& path);
ResolutionGraph load_graph(const std::string& path);
SheafData load_sheaf(const std::string& path);

// Loads either a fan file or a model file and returns the model (fans are
// exported through the toric pipeline).
NormalSurfaceModel load_model_or_fan(const std::string& path);

std::string render_json(const json& j);

// CSV convergence table: header m,chi,two_chi_over_m2, one row per sample,
// trailing "limit,<value>". All rationals as explicit num/den.
std::string convergence_csv(const LimitResult& r);

// CSV defect report: header group,defect then one row per group and a
// trailing total row.
std::string defect_csv(const DefectReport& r);

std::string rat_to_string(const Rat& r);       // "/1" omitted
Rat rat_from_string(const std::string& s);

} // namespace nsi
