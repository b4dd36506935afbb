#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "statemap/channels.hpp"
#include "statemap/core.hpp"
#include "statemap/duality.hpp"
#include "statemap/positivity.hpp"
#include "statemap/schmidt.hpp"

namespace statemap::io {

using Json = nlohmann::ordered_json;

// Readers throw MalformedInput on missing fields or wrong types and
// ShapeMismatch on inconsistent dimensions.

Json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json to_json(const SuperOperator& phi);
SuperOperator superoperator_from_json(const Json& j);

Json to_json(const ChoiOperator& c);
Json to_json(const TwistedChoiOperator& c);
/// Either kind; "twisted" selects which. Exactly one of the outputs is set.
struct AnyChoi {
  bool twisted = false;
  ChoiOperator plain;
  TwistedChoiOperator twisted_op;
};
AnyChoi choi_from_json(const Json& j);

Json to_json(const KrausChannel& k);
KrausChannel kraus_from_json(const Json& j);

Json to_json(const BipartiteVector& v);
BipartiteVector vector_from_json(const Json& j);

Json to_json(const PositivityVerdict& v);
Json to_json(const HarnessReport& r);
Json to_json(const MeasureReport& r);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Two-space indentation plus trailing newline.
std::string dump(const Json& j);

}  // namespace statemap::io
