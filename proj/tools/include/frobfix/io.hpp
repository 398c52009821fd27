#pragma once

#include "frobfix/curves.hpp"
#include "frobfix/fixpoint.hpp"
#include "frobfix/indgroup.hpp"
#include "frobfix/thh.hpp"
#include "frobfix/weight1.hpp"

#include <json.hpp>

#include <functional>
#include <string>
#include <vector>

namespace frobfix::io {

/// Keys keep insertion order so output is byte-for-byte reproducible.
using Json = nlohmann::ordered_json;

/// A number when it fits in 64 bits, otherwise a decimal string.
Json integer(const Integer& n);

Json to_json(const FgAbGroup& g);
Json to_json(const LocalizedGroup& g);
Json to_json(const GroupHom& f);
Json to_json(const DegreePieces& d);
Json to_json(const GradedFixedPoints& g);
Json to_json(const IndAbGroup& g, const Integer& p);
Json to_json(const VanishingCertificate& c);
Json to_json(const RigidityReport& r);
Json to_json(const VerschiebungReport& r);
Json to_json(const ThhReport& r);

std::string dump(const Json& j);

/// A Markdown table; cell(i, n) fills row i, column n.
std::string markdown_table(const std::string& corner, const std::vector<std::string>& rows, const std::vector<int>& cols,
                           const std::function<std::string(std::size_t, int)>& cell);

/// "Z/2 + Z[1/3]", or "?" for an unknown piece, or "ext(sub, quot)" when
/// the extension is not determined.
std::string describe(const DegreePieces& d);

/// {"curves": [{"name", "p", "a1", "a2", "a3", "a4", "a6"}, ...]}. Each
/// curve is validated; throws std::runtime_error on malformed input.
std::vector<CurveSpec> load_corpus(const std::string& path);
std::vector<CurveSpec> parse_corpus(const std::string& text);

}  // namespace frobfix::io
