#include "ghom/io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <set>
#include <sstream>

#include "ghom/errors.hpp"
#include "json.hpp"

namespace ghom {

namespace {

using nlohmann::json;

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": invalid JSON: " + e.what());
  }
}

void allow_fields(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown field \"" + key + "\"");
  }
}

const json& field(const json& j, const std::string& where, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(where + ": missing field \"" + name + "\"");
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::array<std::string, 3>> triples(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of triples");
  std::vector<std::array<std::string, 3>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) throw ParseError(at + ": expected [a, b, c]");
    out.push_back({as_string(j[i][0], at), as_string(j[i][1], at), as_string(j[i][2], at)});
  }
  return out;
}

std::size_t positive(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw ParseError(where + ": expected an integer >= 1");
  return j.get<std::size_t>();
}

FiniteAmpleGroupoid groupoid_from(const json& j, const std::string& where);

FiniteAmpleGroupoid group_from(const json& j, const std::string& where) {
  auto G = groupoid_from(j, where);
  if (G.unit_count() != 1) throw ParseError(where + ": expected a group (one unit)");
  return G;
}

FiniteAmpleGroupoid groupoid_from(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const std::string kind = as_string(field(j, where, "kind"), where + ".kind");
  if (kind == "table") {
    allow_fields(j, where, {"kind", "units", "arrows", "compose"});
    auto units = string_list(field(j, where, "units"), where + ".units");
    const json& arr = field(j, where, "arrows");
    if (!arr.is_array()) throw ParseError(where + ".arrows: expected an array");
    std::vector<ExplicitArrow> arrows;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string at = where + ".arrows[" + std::to_string(i) + "]";
      allow_fields(arr[i], at, {"id", "src", "rng", "inv"});
      arrows.push_back({as_string(field(arr[i], at, "id"), at + ".id"), as_string(field(arr[i], at, "src"), at + ".src"),
                        as_string(field(arr[i], at, "rng"), at + ".rng"), as_string(field(arr[i], at, "inv"), at + ".inv")});
    }
    return from_explicit_table(units, arrows, triples(field(j, where, "compose"), where + ".compose"));
  }
  if (kind == "pair") {
    allow_fields(j, where, {"kind", "n"});
    return pair_groupoid(positive(field(j, where, "n"), where + ".n"));
  }
  if (kind == "cyclic_group") {
    allow_fields(j, where, {"kind", "m"});
    return cyclic_group(positive(field(j, where, "m"), where + ".m"));
  }
  if (kind == "group_table") {
    allow_fields(j, where, {"kind", "elements", "mul"});
    return group_from_table(string_list(field(j, where, "elements"), where + ".elements"),
                            triples(field(j, where, "mul"), where + ".mul"));
  }
  if (kind == "action") {
    allow_fields(j, where, {"kind", "group", "points", "act"});
    return action_groupoid(group_from(field(j, where, "group"), where + ".group"),
                           string_list(field(j, where, "points"), where + ".points"),
                           triples(field(j, where, "act"), where + ".act"));
  }
  if (kind == "disjoint_union") {
    allow_fields(j, where, {"kind", "parts"});
    const json& parts = field(j, where, "parts");
    if (!parts.is_array() || parts.empty()) throw ParseError(where + ".parts: expected a nonempty array");
    std::vector<FiniteAmpleGroupoid> gs;
    for (std::size_t i = 0; i < parts.size(); ++i) gs.push_back(groupoid_from(parts[i], where + ".parts[" + std::to_string(i) + "]"));
    return disjoint_union(gs);
  }
  if (kind == "restriction") {
    allow_fields(j, where, {"kind", "groupoid", "units"});
    auto G = groupoid_from(field(j, where, "groupoid"), where + ".groupoid");
    std::vector<Arrow> units;
    for (const auto& id : string_list(field(j, where, "units"), where + ".units")) {
      auto a = G.find(id);
      if (!a || !G.is_unit(*a)) throw ParseError(where + ".units: '" + id + "' is not a unit");
      units.push_back(*a);
    }
    return restriction(G, units);
  }
  throw ParseError(where + ".kind: unknown kind \"" + kind + "\"");
}

std::vector<Arrow> arrow_ids(const FiniteAmpleGroupoid& G, const json& j, const std::string& where) {
  std::vector<Arrow> out;
  for (const auto& id : string_list(j, where)) {
    auto a = G.find(id);
    if (!a) throw ParseError(where + ": unknown arrow '" + id + "'");
    out.push_back(*a);
  }
  return out;
}

mpq_class rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return mpq_class(mpz_class(j.dump()));
  if (!j.is_string()) throw ParseError(where + ": expected an integer or a \"p/q\" string");
  const std::string s = j.get<std::string>();
  mpq_class q;
  const auto slash = s.find('/');
  auto digits = [](const std::string& t, bool sign) {
    std::size_t i = sign && !t.empty() && t[0] == '-' ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!digits(s.substr(0, slash), true) || (slash != std::string::npos && !digits(s.substr(slash + 1), false)))
    throw ParseError(where + ": malformed rational \"" + s + "\"");
  q.set_str(s, 10);
  if (q.get_den() == 0) throw ParseError(where + ": zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

}  // namespace

FiniteAmpleGroupoid parse_groupoid(const std::string& text) {
  return groupoid_from(parse_json(text, "groupoid"), "groupoid");
}

Colouring parse_colouring(const FiniteAmpleGroupoid& G, const std::string& text) {
  const json j = parse_json(text, "colouring");
  allow_fields(j, "colouring", {"parts"});
  const json& parts = field(j, "colouring", "parts");
  if (!parts.is_array() || parts.empty()) throw ParseError("colouring.parts: expected a nonempty array");
  std::vector<Subgroupoid> subs;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto members = arrow_ids(G, parts[i], "colouring.parts[" + std::to_string(i) + "]");
    try {
      subs.emplace_back(G, members);
    } catch (const MalformedSpec& e) {
      throw MalformedSpec("colouring.parts[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return Colouring(G, std::move(subs));
}

ScaleSet parse_scale(const FiniteAmpleGroupoid& G, const std::string& text) {
  const json j = parse_json(text, "scale");
  if (j.is_string()) {
    if (j == "all") return ScaleSet::all(G);
    if (j == "units") return ScaleSet::units(G);
    throw ParseError("scale: expected \"all\", \"units\" or an array of arrow ids");
  }
  return ScaleSet(G, arrow_ids(G, j, "scale"));
}

FiniteMetricSpace parse_metric(const std::string& text) {
  const json j = parse_json(text, "metric");
  allow_fields(j, "metric", {"points", "dist"});
  auto points = string_list(field(j, "metric", "points"), "metric.points");
  const json& dist = field(j, "metric", "dist");
  if (!dist.is_array()) throw ParseError("metric.dist: expected an array of rows");
  std::vector<std::vector<mpq_class>> d;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const std::string at = "metric.dist[" + std::to_string(i) + "]";
    if (!dist[i].is_array()) throw ParseError(at + ": expected an array");
    d.emplace_back();
    for (std::size_t k = 0; k < dist[i].size(); ++k) d.back().push_back(rational(dist[i][k], at + "[" + std::to_string(k) + "]"));
  }
  return FiniteMetricSpace(std::move(points), std::move(d));
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long long rows = -1, cols = -1;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream head(line);
    std::string extra;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!(head >> rows >> cols) || (head >> extra) || rows < 0 || cols < 0)
      throw ParseError("matrix line " + std::to_string(line_no) + ": expected \"rows cols\"");
    break;
  }
  if (rows < 0) throw ParseError("matrix: missing \"rows cols\" header");
  IntMatrix M(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  long long r = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::vector<std::string> tokens;
    for (std::string t; row >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (r == rows) throw ParseError("matrix line " + std::to_string(line_no) + ": more than " + std::to_string(rows) + " rows");
    if (static_cast<long long>(tokens.size()) != cols)
      throw ParseError("matrix line " + std::to_string(line_no) + ": expected " + std::to_string(cols) + " entries");
    for (long long c = 0; c < cols; ++c) {
      try {
        M.set(r, c, Integer::parse(tokens[c]));
      } catch (const std::exception&) {
        throw ParseError("matrix line " + std::to_string(line_no) + ": bad integer \"" + tokens[c] + "\"");
      }
    }
    ++r;
  }
  if (r != rows) throw ParseError("matrix: expected " + std::to_string(rows) + " rows, found " + std::to_string(r));
  return M;
}

std::string groupoid_to_json(const FiniteAmpleGroupoid& G) {
  json j;
  j["kind"] = "table";
  json units = json::array();
  for (Arrow x : G.units()) units.push_back(G.id(x));
  j["units"] = units;
  json arrows = json::array();
  json compose = json::array();
  for (Arrow g = 0; g < G.size(); ++g) {
    arrows.push_back({{"id", G.id(g)}, {"src", G.id(G.src(g))}, {"rng", G.id(G.rng(g))}, {"inv", G.id(G.inv(g))}});
    for (Arrow h : G.range_fiber(G.src(g))) compose.push_back({G.id(g), G.id(h), G.id(G.mul(g, h))});
  }
  j["arrows"] = arrows;
  j["compose"] = compose;
  return j.dump(1);
}

std::string colouring_to_json(const Colouring& C) {
  json parts = json::array();
  for (const auto& H : C.parts()) {
    json ids = json::array();
    for (Arrow a : H.members()) ids.push_back(C.groupoid().id(a));
    parts.push_back(ids);
  }
  return json{{"parts", parts}}.dump();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr)) throw Error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

}  // namespace ghom
