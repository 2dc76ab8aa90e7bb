#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "bicap/game.hpp"
#include "bicap/moebius.hpp"

namespace bicap {

/// Raised for any malformed interchange document: unreadable JSON, unknown
/// kind, wrong array length, bad or overlapping sparse keys.  The CLI maps it
/// to exit code 2.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Interchange schema:
///   {"n": int, "kind": "bigame"|"capacity"|"moebius",
///    "encoding": "dense"|"sparse", "values": ...}
/// Dense values are an array in ternary-index order (bigame/moebius) or
/// binary-mask order (capacity); sparse values are an object keyed by "A|B"
/// (bigame/moebius) or "A" (capacity) with omitted entries defaulting to 0.
using Document = std::variant<BiGame, Capacity, MoebiusRep>;

Document document_from_json(const nlohmann::json& j);
Document load_document(const std::string& path);

nlohmann::json to_json(const BiGame& v, bool sparse = false);
nlohmann::json to_json(const Capacity& nu, bool sparse = false);
nlohmann::json to_json(const MoebiusRep& m, bool sparse = false);

void save_json(const nlohmann::json& j, const std::string& path);

}  // namespace bicap
