#pragma once

#include "json.hpp"
#include "massqd/encodings.hpp"

namespace massqd {

// {"encoding": "<tag>", ...payload}. Doubles are written with round-trip
// precision, so genome_from_json(genome_to_json(g)) == g.
nlohmann::json genome_to_json(const Genome& genome);

// Throws ParseError with a JSON-pointer location on malformed input.
Genome genome_from_json(const nlohmann::json& doc, const std::string& location = "");

}  // namespace massqd
