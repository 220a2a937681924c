#pragma once
// JSON files. Every document carries "format": 1; nodes and symbols are
// 1-indexed; unknown keys are rejected. Parse errors report line:column.

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"
#include "dissem/instance.hpp"
#include "dissem/multiround.hpp"
#include "dissem/one_round.hpp"
#include "dissem/protocol_sim.hpp"

namespace dissem {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Schema violation at a JSON pointer; file loaders turn it into line:column.
class JsonSchemaError : public InputError {
 public:
  JsonSchemaError(const std::string& pointer, const std::string& what)
      : InputError(what), pointer_(pointer) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

/// 1-based line and column of the value at `pointer` in `text`, if found.
std::optional<std::pair<std::size_t, std::size_t>> locate(const std::string& text, const std::string& pointer);

/// Parses text; errors name `source` and the line:column.
Json parse_json(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json instance_to_json(const DisseminationInstance& inst);
DisseminationInstance instance_from_json(const Json& j);
DisseminationInstance load_instance(const std::string& path);

/// One-round schemes are written as a single round.
Json scheme_to_json(const MultiRoundScheme& s);
MultiRoundScheme scheme_from_json(const Json& j);
MultiRoundScheme load_scheme(const std::string& path);

Json one_round_to_json(const DisseminationInstance& inst, const OneRoundResult& r);
Json transcript_to_json(const Transcript& t);
Json bounds_to_json(const BoundsReport& b);

/// Coefficients of a vector as a plain integer list.
Json vector_to_json(std::span<const std::uint8_t> v);
/// "x1 + 2x3", or "0".
std::string format_combination(std::span<const std::uint8_t> v);

}  // namespace dissem
