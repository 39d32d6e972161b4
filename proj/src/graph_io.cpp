#include "gmslope/graph_io.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gmslope {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (allowed.count(key) == 0) fail(where + ": unknown key '" + key + "'");
  }
}

const json& required(const json& obj, const std::string& key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(where + ": missing key '" + key + "'");
  return *it;
}

Integer integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(v.get<long>());
  if (v.is_string()) {
    Integer out;
    if (out.set_str(v.get<std::string>(), 10) != 0) fail(where + ": not an integer");
    return out;
  }
  fail(where + ": expected an integer");
}

std::size_t count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long>() < 0) fail(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(v.get<long>());
}

std::string piece_id(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  fail(where + ": piece id must be a string or an integer");
}

BoundaryRef boundary_ref(const json& v, const PlumbingGraph& g, const std::string& where) {
  if (!v.is_array() || v.size() != 2) fail(where + ": expected [piece id, boundary index]");
  auto p = g.find_piece(piece_id(v[0], where));
  if (!p) fail(where + ": unknown piece '" + piece_id(v[0], where) + "'");
  return {*p, count(v[1], where)};
}

json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return json(x.get_si());
  return json(x.get_str());
}

}  // namespace

PlumbingGraph parse_manifold(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  only_keys(doc, {"role", "pieces", "edges"}, "manifold");
  PlumbingGraph g;
  const json& role = required(doc, "role", "manifold");
  if (role == "closed") {
    g.role = Role::Closed;
  } else if (role == "solid-torus") {
    g.role = Role::SolidTorus;
  } else {
    fail("manifold: role must be \"closed\" or \"solid-torus\"");
  }

  const json& pieces = required(doc, "pieces", "manifold");
  if (!pieces.is_array()) fail("manifold: pieces must be an array");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string where = "pieces[" + std::to_string(i) + "]";
    const json& pj = pieces[i];
    only_keys(pj, {"id", "base", "cones", "b", "boundary"}, where);
    GraphPiece p;
    p.id = piece_id(required(pj, "id", where), where);
    const json& base = required(pj, "base", where);
    only_keys(base, {"orientable", "crosscaps"}, where + ".base");
    const json& orient = required(base, "orientable", where + ".base");
    if (!orient.is_boolean()) fail(where + ".base.orientable: expected a boolean");
    p.orientable = orient.get<bool>();
    if (base.contains("crosscaps")) {
      p.crosscaps = static_cast<int>(count(base["crosscaps"], where + ".base.crosscaps"));
    } else {
      p.crosscaps = p.orientable ? 0 : 1;
    }
    if (pj.contains("cones")) {
      const json& cones = pj["cones"];
      if (!cones.is_array()) fail(where + ".cones: expected an array");
      for (const auto& c : cones) {
        if (!c.is_array() || c.size() != 2) fail(where + ".cones: each cone is [a, beta]");
        p.cones.push_back({integer(c[0], where + ".cones"), integer(c[1], where + ".cones")});
      }
    }
    if (pj.contains("b")) p.b = integer(pj["b"], where + ".b");
    p.boundary = count(required(pj, "boundary", where), where + ".boundary");
    if (g.find_piece(p.id)) fail(where + ": duplicate piece id '" + p.id + "'");
    g.pieces.push_back(std::move(p));
  }

  if (doc.contains("edges")) {
    const json& edges = doc["edges"];
    if (!edges.is_array()) fail("manifold: edges must be an array");
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const std::string where = "edges[" + std::to_string(k) + "]";
      const json& ej = edges[k];
      only_keys(ej, {"from", "to", "matrix"}, where);
      Edge e;
      e.from = boundary_ref(required(ej, "from", where), g, where + ".from");
      e.to = boundary_ref(required(ej, "to", where), g, where + ".to");
      const json& m = required(ej, "matrix", where);
      if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
          m[1].size() != 2) {
        fail(where + ".matrix: expected [[a, b], [c, d]]");
      }
      e.matrix = {integer(m[0][0], where), integer(m[0][1], where), integer(m[1][0], where),
                  integer(m[1][1], where)};
      g.edges.push_back(std::move(e));
    }
  }
  return g;
}

PlumbingGraph load_manifold(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifold(ss.str());
}

std::string dump_manifold(const PlumbingGraph& g) {
  json doc;
  doc["role"] = to_string(g.role);
  doc["pieces"] = json::array();
  for (const auto& p : g.pieces) {
    json pj;
    pj["id"] = p.id;
    pj["base"] = {{"orientable", p.orientable}, {"crosscaps", p.crosscaps}};
    pj["cones"] = json::array();
    for (const auto& c : p.cones) pj["cones"].push_back({integer_json(c.a), integer_json(c.beta)});
    pj["b"] = integer_json(p.b);
    pj["boundary"] = p.boundary;
    doc["pieces"].push_back(std::move(pj));
  }
  doc["edges"] = json::array();
  for (const auto& e : g.edges) {
    json ej;
    ej["from"] = {g.pieces[e.from.piece].id, e.from.index};
    ej["to"] = {g.pieces[e.to.piece].id, e.to.index};
    ej["matrix"] = {{integer_json(e.matrix.a), integer_json(e.matrix.b)},
                    {integer_json(e.matrix.c), integer_json(e.matrix.d)}};
    doc["edges"].push_back(std::move(ej));
  }
  return doc.dump(2) + "\n";
}

}  // namespace gmslope
