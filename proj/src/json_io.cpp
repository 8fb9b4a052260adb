#include "uclosed/json_io.hpp"

#include "uclosed/error.hpp"

#include <fstream>
#include <sstream>

namespace uclosed::io {

Json to_json(SetMask s) {
  Json arr = Json::array();
  for (int e : s.elements()) arr.push_back(e);
  return arr;
}

Json to_json(const Family& fam) {
  Json sets = Json::array();
  for (SetMask m : fam) sets.push_back(to_json(m));
  return Json{{"ground", fam.ground_size()}, {"sets", std::move(sets)}};
}

Json to_json(const Certificate& cert) {
  Certificate sorted = cert;
  sorted.canonicalize();
  Json pairs = Json::array();
  for (const auto& p : sorted.pairs) pairs.push_back(Json{{"set", to_json(p.set)}, {"image", to_json(p.image)}});
  return Json{{"ground", cert.ground_size}, {"pairs", std::move(pairs)}};
}

Json to_json(const SearchShape& shape) {
  Json pairs = Json::array();
  for (const auto& [i, j] : shape.pairs()) pairs.push_back(Json::array({i + 1, j + 1}));
  return Json{{"ground", shape.ground_size()}, {"pairs", std::move(pairs)}};
}

Json to_json(const FrequencyVector& fv) { return Json(fv.counts); }

Json to_json(const CounterexampleReport& r) {
  return Json{{"family", to_json(r.family)},
              {"certificate", to_json(r.certificate)},
              {"frequency", to_json(r.frequency)},
              {"max_frequency", r.max_frequency}};
}

namespace {

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(where + ": missing \"" + name + "\"");
  return *it;
}

int read_ground(const Json& j, const std::string& where) {
  const Json& g = field(j, "ground", where);
  if (!g.is_number_integer()) throw ParseError(where + ": \"ground\" must be an integer");
  const auto n = g.get<long long>();
  if (n < 0 || n > kMaxGround) throw ParseError(where + ": \"ground\" must lie in 0.." + std::to_string(kMaxGround));
  return static_cast<int>(n);
}

int read_element(const Json& e, int n, const std::string& where) {
  if (!e.is_number_integer()) throw ParseError(where + ": elements must be integers");
  const auto x = e.get<long long>();
  if (x < 1 || x > n) throw ParseError(where + ": element " + std::to_string(x) + " outside [" + std::to_string(n) + "]");
  return static_cast<int>(x);
}

SetMask read_set(const Json& j, int n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": a set must be an array of elements");
  SetMask s;
  for (const Json& e : j) {
    const int x = read_element(e, n, where);
    if (s.contains(x - 1)) throw ParseError(where + ": element " + std::to_string(x) + " repeated");
    s = s.with(x - 1);
  }
  return s;
}

} // namespace

Family family_from_json(const Json& j) {
  const int n = read_ground(j, "family");
  const Json& sets = field(j, "sets", "family");
  if (!sets.is_array()) throw ParseError("family: \"sets\" must be an array");
  std::vector<SetMask> members;
  for (std::size_t i = 0; i < sets.size(); ++i)
    members.push_back(read_set(sets[i], n, "family set #" + std::to_string(i + 1)));
  try {
    return Family(n, std::move(members));
  } catch (const InvalidFamily& e) {
    throw ParseError(std::string("family: ") + e.what());
  }
}

Certificate certificate_from_json(const Json& j) {
  Certificate cert;
  cert.ground_size = read_ground(j, "certificate");
  const Json& pairs = field(j, "pairs", "certificate");
  if (!pairs.is_array()) throw ParseError("certificate: \"pairs\" must be an array");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = "certificate pair #" + std::to_string(i + 1);
    cert.pairs.push_back({read_set(field(pairs[i], "set", where), cert.ground_size, where),
                          read_set(field(pairs[i], "image", where), cert.ground_size, where)});
  }
  cert.canonicalize();
  return cert;
}

SearchShape shape_from_json(const Json& j) {
  const int n = read_ground(j, "shape");
  const Json& pairs = field(j, "pairs", "shape");
  if (!pairs.is_array()) throw ParseError("shape: \"pairs\" must be an array");
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string where = "shape pair #" + std::to_string(i + 1);
    if (!pairs[i].is_array() || pairs[i].size() != 2) throw ParseError(where + ": expected two elements");
    out.emplace_back(read_element(pairs[i][0], n, where) - 1, read_element(pairs[i][1], n, where) - 1);
  }
  try {
    return SearchShape(n, std::move(out));
  } catch (const InvalidFamily& e) {
    throw ParseError(std::string("shape: ") + e.what());
  }
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Family parse_family(std::string_view text) { return family_from_json(parse_text(text)); }
Certificate parse_certificate(std::string_view text) { return certificate_from_json(parse_text(text)); }
SearchShape parse_shape(std::string_view text) { return shape_from_json(parse_text(text)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace uclosed::io
