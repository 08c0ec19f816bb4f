#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "flagtrop/fixtures_data.hpp"
#include "flagtrop/strata.hpp"
#include "flagtrop/subdivision.hpp"
#include "flagtrop/tropical_flag.hpp"

namespace flagtrop {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Scalars and subsets

inline Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    Rational r;
    if (r.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("not a rational: " + j.get<std::string>());
    r.canonicalize();
    return r;
  }
  throw std::invalid_argument("expected an integer or a \"p/q\" string, got " + j.dump());
}

inline Json rational_json(const Rational& r) {
  if (r.get_den() == 1 && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return r.get_str();
}

inline std::vector<Subset> subsets_from(const Json& j) {
  std::vector<Subset> out;
  for (const auto& s : j) out.push_back(parse_subset(s.get<std::string>()));
  return out;
}

inline Json subsets_json(const std::vector<Subset>& s) {
  Json out = Json::array();
  for (Subset x : s) out.push_back(to_label(x));
  return out;
}

inline std::vector<std::vector<Subset>> subset_lists_from(const Json& j) {
  std::vector<std::vector<Subset>> out;
  for (const auto& l : j) out.push_back(subsets_from(l));
  return out;
}

// ---------------------------------------------------------------------------
// Flag matroids

// {"n", "constituents": [[bases...], ...]}, {"n", "bases": [...]} for a single
// matroid, or {"n", "ranks", "nonbases"}.
// Bases are only shape-checked; validate_flag_json reports axiom failures.
inline std::vector<std::vector<Subset>> constituent_bases(const Json& j) {
  const int n = j.at("n").get<int>();
  if (j.contains("constituents")) return subset_lists_from(j.at("constituents"));
  if (j.contains("bases")) return {subsets_from(j.at("bases"))};
  const auto ranks = j.at("ranks").get<std::vector<int>>();
  const auto non = subsets_from(j.value("nonbases", Json::array()));
  std::vector<std::vector<Subset>> out;
  for (int r : ranks) {
    std::vector<Subset> bases;
    for (Subset s : k_subsets(n, r))
      if (std::find(non.begin(), non.end(), s) == non.end()) bases.push_back(s);
    out.push_back(std::move(bases));
  }
  return out;
}

inline FlagMatroid flag_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  std::vector<Matroid> cs;
  for (auto& b : constituent_bases(j)) cs.push_back(Matroid::from_bases(n, std::move(b)));
  FlagMatroid fm(std::move(cs));
  if (auto i = quotient_violation(fm))
    throw std::invalid_argument("constituent " + std::to_string(*i + 2) + " does not have constituent " +
                                std::to_string(*i + 1) + " as a quotient");
  return fm;
}

inline Json flag_json(const FlagMatroid& fm) {
  Json cs = Json::array();
  for (const auto& m : fm.constituents()) cs.push_back(subsets_json(m.bases()));
  return Json{{"n", fm.n()}, {"ranks", fm.ranks()}, {"constituents", cs}};
}

struct ValidationReport {
  bool valid = true;
  std::string witness;
};

inline ValidationReport validate_flag_json(const Json& j) {
  const int n = j.at("n").get<int>();
  const auto bases = constituent_bases(j);
  std::vector<Matroid> cs;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (auto w = exchange_violation(n, bases[i]))
      return {false, "constituent " + std::to_string(i + 1) + ": exchange fails for B1=" + to_label(w->b1) +
                         ", B2=" + to_label(w->b2) + ", x=" + std::to_string(w->x)};
    cs.emplace_back(n, bases[i]);
  }
  const FlagMatroid fm(std::move(cs));
  if (auto i = quotient_violation(fm))
    return {false, "constituent " + std::to_string(*i + 1) + " is not a quotient of constituent " + std::to_string(*i + 2)};
  return {};
}

// {"12": 1, "3": "1/2"}; missing labels weigh zero.
inline std::map<Subset, Rational> weights_from_json(const Json& j) {
  std::map<Subset, Rational> w;
  for (const auto& [k, v] : j.items()) w[parse_subset(k)] = parse_rational(v);
  return w;
}

// ---------------------------------------------------------------------------
// Reports

inline Json polynomials_json(const std::vector<Polynomial>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.to_string());
  return out;
}

inline Json chart_json(const ChartPresentation& cp) {
  Json vars = Json::array();
  for (const auto& v : cp.variables) vars.push_back(default_name(v));
  const auto d = stratum_dimension(cp);
  return Json{{"variables", vars},
              {"ideal", polynomials_json(cp.ideal)},
              {"semigroup", polynomials_json(cp.semigroup)},
              {"dim", d ? Json(*d) : Json("undetermined")}};
}

inline Json subdivision_json(const Subdivision& s) {
  Json cells = Json::array();
  for (const auto& c : s.cells) {
    Json witness = Json::array();
    for (const auto& x : c.witness) witness.push_back(rational_json(x));
    Json jc{{"bases", subsets_json(c.bases_union())}, {"witness", witness}};
    if (auto o = orbit_label(c.flag)) jc["orbit"] = *o;
    cells.push_back(jc);
  }
  Json edges = Json::array();
  for (const auto& [a, b] : s.edges) edges.push_back({a, b});
  return Json{{"dim", s.dim}, {"cells", cells}, {"edges", edges}, {"matroidal", is_matroidal(s)},
              {"tree", adjacency_graph(s).is_tree()}};
}

inline std::string subdivision_dot(const Subdivision& s) {
  std::string out = "graph subdivision {\n";
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    std::string label;
    for (Subset b : s.cells[i].bases_union()) label += (label.empty() ? "" : ",") + to_string(b);
    if (auto o = orbit_label(s.cells[i].flag)) label += " (" + std::to_string(*o) + ")";
    out += "  c" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& [a, b] : s.edges) out += "  c" + std::to_string(a) + " -- c" + std::to_string(b) + ";\n";
  return out + "}\n";
}

inline Json limit_json(const LimitDiagram& d) {
  Json vs = Json::array();
  for (const auto& v : d.vertices) {
    Json jv{{"bases", subsets_json(v.cell.bases_union())}, {"permutation", v.standardized.perm.perm},
            {"chart", chart_json(v.chart)}};
    jv["orbit"] = v.orbit ? Json(*v.orbit) : Json(nullptr);
    vs.push_back(jv);
  }
  Json es = Json::array();
  for (const auto& e : d.edges) {
    Json je{{"cells", {e.a, e.b}}, {"face", subsets_json(e.face.bases_union())}, {"internal", e.internal}};
    if (e.chain) {
      je["chain"] = subsets_json(*e.chain);
      je["chart"] = chart_json(e.chart);
      je["variables_included"] = e.variables_included;
    }
    je["criterion"] = {{"first", e.witness_a ? subsets_json(*e.witness_a) : Json(nullptr)},
                       {"second", e.witness_b ? subsets_json(*e.witness_b) : Json(nullptr)}};
    es.push_back(je);
  }
  return Json{{"vertices", vs}, {"edges", es}, {"tree", d.is_tree}};
}

inline std::string limit_dot(const LimitDiagram& d) {
  std::string out = "graph limit {\n";
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& v = d.vertices[i];
    out += "  c" + std::to_string(i) + " [label=\"(" + (v.orbit ? std::to_string(*v.orbit) : "?") + ") dim " +
           chart_json(v.chart).at("dim").dump() + "\"];\n";
  }
  for (const auto& e : d.edges) {
    std::string label = e.internal ? "internal" : "boundary";
    if (e.witness_a || e.witness_b) label += ", criterion";
    out += "  c" + std::to_string(e.a) + " -- c" + std::to_string(e.b) + " [label=\"" + label + "\"];\n";
  }
  return out + "}\n";
}

// ---------------------------------------------------------------------------
// Fixtures

inline const Json& fixture(std::string_view name) {
  static const Json t1 = Json::parse(fixtures::table1);
  static const Json t2 = Json::parse(fixtures::table2);
  static const Json sub = Json::parse(fixtures::subdivisions);
  if (name == "table1") return t1;
  if (name == "table2") return t2;
  if (name == "subdivisions") return sub;
  throw std::out_of_range("no fixture named " + std::string(name));
}

// Applies the "corrections" of an entry. Fields are dotted paths in which a
// non-numeric component selects the array element with that "label".
inline Json corrected(Json entry) {
  if (!entry.contains("corrections")) return entry;
  for (const auto& c : entry.at("corrections")) {
    const auto path = c.at("field").get<std::string>();
    Json* node = &entry;
    std::size_t pos = 0;
    while (true) {
      const auto dot = path.find('.', pos);
      const auto key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
      if (node->is_array()) {
        if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0]))) {
          node = &node->at(std::stoul(key));
        } else {
          auto it = std::find_if(node->begin(), node->end(), [&](const Json& e) { return e.value("label", "") == key; });
          if (it == node->end()) throw std::out_of_range("correction path " + path);
          node = &*it;
        }
      } else {
        node = &node->at(key);
      }
      if (dot == std::string::npos) break;
      pos = dot + 1;
    }
    if (*node != c.at("printed")) throw std::logic_error("correction " + path + " does not match the printed value");
    *node = c.at("value");
  }
  return entry;
}

inline std::vector<ConeRepresentative> representatives_from_fixture() {
  std::vector<ConeRepresentative> out;
  for (const auto& c : fixture("table2").at("cones"))
    out.push_back({c.at("id").get<std::size_t>(), subset_lists_from(c.at("rays")), c.at("orbit_size").get<std::size_t>()});
  return out;
}

}  // namespace flagtrop
