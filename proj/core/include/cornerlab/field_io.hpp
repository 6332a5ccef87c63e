#pragma once

// Field persistence and JSON conversion of the problem description.
//
// File layout: line 1 is a compact JSON header, then nx*ny values one per
// line in row-major order, printed with 17 significant digits.

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "cornerlab/domain.hpp"

namespace cornerlab {

/// 17 significant digits, shortest exponent form ("%.17g").
std::string format_real(double v);

/// JSON text with every floating-point number printed by format_real, so
/// reports are byte-stable and round-trip exactly.
std::string dump_json(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const ProblemSpec& spec);
ProblemSpec problem_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GridSpec& grid);
GridSpec grid_from_json(const nlohmann::json& j);

struct StoredField {
  ScalarField field;
  nlohmann::json header;
};

/// `extra` is merged into the header (e.g. alpha, beta, stag_type).
void write_field(std::ostream& os, const ScalarField& u,
                 const nlohmann::json& extra = nlohmann::json::object());
StoredField read_field(std::istream& is);

void save_field(const std::string& path, const ScalarField& u,
                const nlohmann::json& extra = nlohmann::json::object());
StoredField load_field(const std::string& path);

/// Header entries describing the problem (alpha, beta, stag_type, ...).
nlohmann::json field_metadata(const ProblemSpec& spec);

}  // namespace cornerlab
