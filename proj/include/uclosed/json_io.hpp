#pragma once

#include "uclosed/condition1.hpp"
#include "uclosed/family.hpp"
#include "uclosed/search.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace uclosed::io {

using Json = nlohmann::ordered_json;

// Family:       {"ground": n, "sets": [[1,4,7], ...]}
// Certificate:  {"ground": n, "pairs": [{"set": [...], "image": [...]}, ...]}
// Search shape: {"ground": n, "pairs": [[1,2], [3,4]]}
// Elements are 1-based everywhere. Writers emit canonical order.

Json to_json(SetMask s);
Json to_json(const Family& fam);
Json to_json(const Certificate& cert);
Json to_json(const SearchShape& shape);
Json to_json(const FrequencyVector& fv);
Json to_json(const CounterexampleReport& r);

/// All readers throw ParseError with a description of the offending field.
Family family_from_json(const Json& j);
Certificate certificate_from_json(const Json& j);
SearchShape shape_from_json(const Json& j);

/// Parse text, reporting the byte offset of syntax errors.
Json parse_text(std::string_view text);
Family parse_family(std::string_view text);
Certificate parse_certificate(std::string_view text);
SearchShape parse_shape(std::string_view text);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_file(const std::string& path);

} // namespace uclosed::io
