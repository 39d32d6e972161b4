// Command-line front end for slope detection and the taut-foliation decision.

#include "gmslope/ctf.hpp"
#include "gmslope/graph.hpp"
#include "gmslope/graph_io.hpp"
#include "gmslope/oracle.hpp"
#include "gmslope/random.hpp"
#include "gmslope/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <deque>
#include <iostream>
#include <optional>
#include <string>

using namespace gmslope;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMalformed = 1, kRole = 2, kOracle = 3 };

struct Options {
  std::string command;
  std::string input;
  std::string format = "text";
  std::optional<long long> nmax;
  long grid = 24;
  std::string split_edge = "0";
  std::optional<long> random_count;
  unsigned long long seed = 1;
};

class RoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json header(const Options& o) { return {{"schema", kReportSchema}, {"command", o.command}}; }

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

bool has_role_mismatch(const std::vector<std::string>& diag) {
  for (const auto& d : diag) {
    if (d.rfind("role mismatch", 0) == 0) return true;
  }
  return false;
}

PlumbingGraph load_valid(const Options& o) {
  PlumbingGraph g = load_manifold(o.input);
  auto diag = validate(g);
  if (!diag.empty()) {
    if (has_role_mismatch(diag)) throw RoleError(diag.front());
    throw ParseError(diag.front());
  }
  return g;
}

// Accepts "e<k>" or a bare index k.
std::size_t parse_edge(const std::string& text, const PlumbingGraph& g) {
  std::string digits = text.rfind('e', 0) == 0 ? text.substr(1) : text;
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 9) {
    throw ParseError("--split-edge expects e<k> or k, got '" + text + "'");
  }
  const std::size_t k = std::stoul(digits);
  if (k >= g.edges.size()) throw ParseError("--split-edge e" + digits + " out of range");
  return k;
}

void require_role(const PlumbingGraph& g, Role role) {
  if (g.role != role) throw RoleError("command needs the " + to_string(role) + " role, input is " + to_string(g.role));
}

int cmd_validate(const Options& o) {
  PlumbingGraph g = load_manifold(o.input);
  auto diag = validate(g);
  json j = header(o);
  j["role"] = to_string(g.role);
  j["diagnostics"] = diag;
  std::string text;
  if (diag.empty()) {
    HomologySummary h = homology(g);
    j["homology"] = homology_json(h);
    text = "valid " + to_string(g.role) + " graph, " + std::to_string(g.pieces.size()) + " pieces\n";
    text += "H_1: Z^" + std::to_string(h.betti);
    for (const auto& t : h.torsion) text += " + Z/" + t.get_str();
    text += "\n";
  } else {
    for (const auto& d : diag) text += d + "\n";
  }
  emit(o, j, text);
  if (diag.empty()) return kOk;
  return has_role_mismatch(diag) ? kRole : kMalformed;
}

int cmd_longitude(const Options& o) {
  PlumbingGraph g = load_valid(o);
  require_role(g, Role::SolidTorus);
  HomologySummary h = homology(g);
  if (h.betti != 1) throw RoleError("not a rational homology solid torus (b_1 = " + std::to_string(h.betti) + ")");
  LongitudeResult l = rational_longitude(g);
  json j = header(o);
  j["longitude"] = longitude_json(g, l);
  j["homology"] = homology_json(h);
  emit(o, j,
       "rational longitude on " + g.torus_id(l.torus) + ": " + l.slope.str() + " (tau " + l.slope.tau_str() +
           "), order " + l.order.get_str() + "\n");
  return kOk;
}

int cmd_detect(const Options& o) {
  PlumbingGraph g = load_valid(o);
  require_role(g, Role::SolidTorus);
  if (homology(g).betti != 1) throw RoleError("not a rational homology solid torus");
  DetectionResult d = detect_tree(g, o.nmax);
  json j = header(o);
  const SubtreeRef root = root_of(g);
  j["torus"] = g.torus_id({root.piece, root.target});
  j["detection"] = detection_json(d);
  std::string text = "torus " + g.torus_id({root.piece, root.target}) + "\n" + detection_text(d);
  {
    LongitudeResult l = rational_longitude(g);
    DegenerateReport dr = check_degenerate(g, o.nmax);
    j["longitude"] = longitude_json(g, l);
    j["degenerate"] = degenerate_json(dr);
    text += "rational longitude: " + l.slope.str() + " (tau " + l.slope.tau_str() + ")\n";
    text += std::string("degenerate: ") + (dr.degenerate ? "yes" : "no") + " [" + dr.branch + "; " + dr.explanation + "]\n";
    if (!dr.consistent) {
      emit(o, j, text + "internal inconsistency in the degenerate-case check\n");
      return kOracle;
    }
  }
  emit(o, j, text);
  return kOk;
}

int cmd_ctf(const Options& o) {
  // Edgeless closed input is refused before validation, which needs boundary tori.
  if (const PlumbingGraph raw = load_manifold(o.input); raw.role == Role::Closed && raw.edges.empty()) {
    throw RoleError("no JSJ edge: closed Seifert input is not handled; fill a one-piece solid torus and use detect");
  }
  PlumbingGraph g = load_valid(o);
  require_role(g, Role::Closed);
  if (homology(g).betti != 0) throw RoleError("not a rational homology sphere");
  const std::size_t split = parse_edge(o.split_edge, g);
  CtfVerdict v = decide_ctf(g, split, o.nmax);
  json j = header(o);
  j["verdict"] = verdict_json(v);
  emit(o, j, verdict_text(v));
  return kOk;
}

struct OracleRow {
  std::string label;
  json data;
  bool ok = true;
};

OracleRow oracle_row(const std::string& label, const SeifertPiece& piece, const ConstraintFamily& family,
                     const Options& o) {
  OracleRow row;
  row.label = label;
  auto core = core_interval(piece, family);
  const long d = std::lcm(o.grid, endpoint_lcm(family));
  auto grid = grid_union(piece, family, d);
  row.ok = core == grid;
  row.data = {{"label", label},
              {"core", {core.first.get_str(), core.second.get_str()}},
              {"grid", {grid.first.get_str(), grid.second.get_str()}},
              {"grid_denominator", d}};
  const long long nmax = o.nmax.value_or(std::min<long long>(default_nmax(piece, family), 40));
  row.data["nmax"] = nmax;
  for (Side side : {Side::Low, Side::High}) {
    auto fast = jn_refine(piece, family, side, nmax);
    auto slow = jn_extremal(piece, family, side, nmax);
    const bool agree = fast.has_value() == slow.has_value() && (!fast || fast->endpoint == slow->endpoint);
    const bool valid = !fast || validate_certificate(piece, family, *fast);
    row.ok = row.ok && agree && valid;
    row.data[side == Side::Low ? "low" : "high"] = {
        {"search", fast ? json(to_string(fast->endpoint)) : json(nullptr)},
        {"exhaustive", slow ? json(to_string(slow->endpoint)) : json(nullptr)},
        {"certificate_valid", valid}};
  }
  row.data["ok"] = row.ok;
  return row;
}

std::string row_text(const OracleRow& r) {
  const json& d = r.data;
  auto side = [&](const char* k) {
    const json& s = d[k];
    auto str = [](const json& v) { return v.is_null() ? std::string("none") : v.get<std::string>(); };
    return std::string(k) + " " + str(s["search"]) + "/" + str(s["exhaustive"]);
  };
  return (r.ok ? "ok   " : "FAIL ") + r.label + ": core [" + d["core"][0].get<std::string>() + ", " +
         d["core"][1].get<std::string>() + "] grid [" + d["grid"][0].get<std::string>() + ", " +
         d["grid"][1].get<std::string>() + "] " + side("low") + " " + side("high") + "\n";
}

int cmd_oracle(const Options& o) {
  std::vector<OracleRow> rows;
  if (o.random_count) {
    Rng rng(o.seed);
    for (long i = 0; i < *o.random_count; ++i) {
      RandomInstance inst = random_instance(rng);
      rows.push_back(oracle_row("random#" + std::to_string(i), inst.piece, inst.family, o));
    }
  } else {
    PlumbingGraph g = load_valid(o);
    PlumbingGraph ng = normalize(g);
    TreeDetector td(ng, o.nmax);
    std::deque<SubtreeRef> todo;
    if (ng.role == Role::SolidTorus) {
      todo.push_back(root_of(ng));
    } else if (!ng.edges.empty()) {
      todo.push_back({ng.edges[0].from.piece, ng.edges[0].from.index});
      todo.push_back({ng.edges[0].to.piece, ng.edges[0].to.index});
    }
    while (!todo.empty()) {
      SubtreeRef s = todo.front();
      todo.pop_front();
      for (const auto& link : children(ng, s)) todo.push_back(link.child);
      const SeifertPiece piece = ng.pieces[s.piece].seifert();
      ConstraintFamily family;
      family.arcs = td.child_arcs(s);
      if (!piece.base_orientable || v_count(family) != 0 || piece.cone_count() + piece.boundary_count < 3) continue;
      rows.push_back(oracle_row("piece " + ng.pieces[s.piece].id, piece, family, o));
    }
  }
  json j = header(o);
  j["checks"] = json::array();
  std::string text;
  long bad = 0;
  for (const auto& r : rows) {
    j["checks"].push_back(r.data);
    text += row_text(r);
    if (!r.ok) ++bad;
  }
  j["mismatches"] = bad;
  text += std::to_string(rows.size()) + " checks, " + std::to_string(bad) + " mismatches\n";
  emit(o, j, text);
  return bad == 0 ? kOk : kOracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detected slopes and taut-foliation certificates for graph manifolds"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_common = [&](CLI::App* sub, bool input_required) {
    auto* in = sub->add_option("input", o.input, "manifold JSON file");
    if (input_required) in->required();
    sub->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--nmax", o.nmax, "bound on N in the refinement search")->check(CLI::PositiveNumber);
    sub->add_option("--grid", o.grid, "grid denominator for oracle-check")->check(CLI::PositiveNumber);
    sub->add_option("--split-edge", o.split_edge, "edge to split along for ctf (e<k> or k)");
  };
  add_common(app.add_subcommand("validate", "check a manifold file"), true);
  add_common(app.add_subcommand("longitude", "rational longitude of a solid torus"), true);
  add_common(app.add_subcommand("detect", "detected slopes on the boundary of a solid torus"), true);
  add_common(app.add_subcommand("ctf", "decide whether a closed manifold admits a taut foliation"), true);
  auto* oracle = app.add_subcommand("oracle-check", "compare closed forms against brute force");
  add_common(oracle, false);
  oracle->add_option("--random", o.random_count, "check this many random pieces instead of a file")
      ->check(CLI::NonNegativeNumber);
  oracle->add_option("--seed", o.seed, "seed for --random");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kMalformed;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.command == "oracle-check" && !o.random_count && o.input.empty()) {
    std::cerr << "oracle-check needs an input file or --random\n";
    return kMalformed;
  }

  try {
    if (o.command == "validate") return cmd_validate(o);
    if (o.command == "longitude") return cmd_longitude(o);
    if (o.command == "detect") return cmd_detect(o);
    if (o.command == "ctf") return cmd_ctf(o);
    return cmd_oracle(o);
  } catch (const RoleError& e) {
    std::cerr << "role mismatch: " << e.what() << "\n";
    return kRole;
  } catch (const std::domain_error& e) {
    std::cerr << "role mismatch: " << e.what() << "\n";
    return kRole;
  } catch (const ParseError& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "malformed input: " << e.what() << "\n";
    return kMalformed;
  } catch (const std::logic_error& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kOracle;
  }
}
