// On-disk memo of class polynomials: JSON object "n:k:a1,...,an" -> coefficients.
#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sublat/polyalg.hpp"

namespace sublat {

std::string cache_key(const Partition& alpha);
/// Throws std::invalid_argument on a malformed key.
Partition parse_cache_key(const std::string& key);

/// Coefficients as JSON numbers; values outside int64 become decimal strings.
nlohmann::json coefficients_json(const IntPoly& p);
/// Accepts integers or decimal strings; throws std::invalid_argument otherwise.
IntPoly coefficients_from_json(const nlohmann::json& j);

/// Seeds `table` from the file. A missing file is a silent cold start; an
/// unreadable or malformed file is reported on `warn` and ignored entirely.
/// Returns the number of entries loaded.
std::size_t load_poly_cache(const std::filesystem::path& path, ClassPolyTable& table, std::ostream& warn);

/// Writes the whole table via a temporary file and rename.
void store_poly_cache(const std::filesystem::path& path, const ClassPolyTable& table);

}  // namespace sublat
