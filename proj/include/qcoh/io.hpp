#pragma once

// On-disk JSON formats. A matrix is an array of rows; each entry is a
// two-element [re, im] array. Loading validates invariants and rejects
// malformed files with field-level context.

#include <string>

#include <json.hpp>

#include "qcoh/states.hpp"

namespace qcoh {

struct Measurement; // operations.hpp

nlohmann::json matrix_to_json(const Mat& m);
Mat matrix_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json to_json(const DensityMatrix& rho);
nlohmann::json to_json(const Ensemble& e);
nlohmann::json to_json(const BipartiteState& s);
nlohmann::json to_json(const SeparableSpec& spec);

DensityMatrix density_from_json(const nlohmann::json& j);
Ensemble ensemble_from_json(const nlohmann::json& j);
BipartiteState bipartite_from_json(const nlohmann::json& j);
SeparableSpec separable_from_json(const nlohmann::json& j);

void save_state(const DensityMatrix& rho, const std::string& path);
void save_ensemble(const Ensemble& e, const std::string& path);
void save_bipartite(const BipartiteState& s, const std::string& path);
void save_separable(const SeparableSpec& spec, const std::string& path);

DensityMatrix load_state(const std::string& path);
Ensemble load_ensemble(const std::string& path);
BipartiteState load_bipartite(const std::string& path);
SeparableSpec load_separable(const std::string& path);

/// Basis file: {"kind":"basis","dim":d,"matrix":...} with a unitary matrix.
void save_basis(const Mat& u, const std::string& path);
Mat load_basis(const std::string& path);

/// Reads any of the state-like kinds and reports which one was found.
nlohmann::json load_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

} // namespace qcoh
