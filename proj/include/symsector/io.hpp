#pragma once

#include <nlohmann/json_fwd.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "symsector/lagrangian.hpp"
#include "symsector/sequence.hpp"

namespace symsector::io {

using json = nlohmann::json;

// Matrix container: {"d": n, "rows": [[...], ...]} row-major. A 2d x 2d
// payload with "d" = d is a block map; a d x d payload is a symmetric
// matrix (graph or block input).

Matrix parse_matrix(const json& j);
BlockMap parse_block_map(const json& j);
json block_map_json(const BlockMap& map);
json square_matrix_json(const Matrix& m);

PhaseVector parse_phase_vector(const json& j, Index d);
json phase_vector_json(const PhaseVector& w);

std::vector<LagrangianSubspace> parse_subspaces(const json& j);
json subspace_json(const LagrangianSubspace& e);

/// {"maps": [...]} or {"example69": {...}}. Example entries may carry a
/// "count" with single-element lists broadcast to it; "tau": "harmonic"
/// expands to tau_n = tau'_n = 1/n. R defaults to a seeded draw inside the
/// tau band when absent.
MapSequence parse_sequence(const json& j, std::uint64_t seed);
Example69Spec parse_example69(const json& j, std::uint64_t seed);
json sequence_json(const MapSequence& seq);

json report_json(const SequenceReport& rep);
void write_analyze_csv(std::ostream& out, const SequenceReport& rep);

json load_json_file(const std::string& path);

}  // namespace symsector::io
