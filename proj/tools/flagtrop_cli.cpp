#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "flagtrop/json_io.hpp"

using namespace flagtrop;

namespace {

// Exit codes: 0 all checks pass, 1 mathematical mismatch, 2 input error.
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "table";
  bool check = false;
  std::uint32_t seed = 1;
  std::string out;
};

// What a subcommand produced: a JSON document, a text rendering, an optional
// DOT graph, and whether its checks passed.
struct Result {
  Json json;
  std::string table;
  std::optional<std::string> dot;
  bool ok = true;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string join_labels(const std::vector<Subset>& s) {
  std::string out;
  for (Subset x : s) out += (out.empty() ? "" : ",") + to_label(x);
  return out;
}

std::string tuple_string(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::map<Subset, Rational> ray_weight(const std::vector<std::vector<Subset>>& rays) {
  std::map<Subset, Rational> w;
  for (const auto& ray : rays)
    for (Subset s : ray) w[s] += 1;
  return w;
}

const FlagMatroid& uniform4() {
  static const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  return u;
}

// ---------------------------------------------------------------------------

Result cmd_validate(const std::string& path) {
  const auto j = read_json(path);
  ValidationReport r;
  try {
    r = validate_flag_json(j);
  } catch (const Json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  Result res;
  res.ok = r.valid;
  res.json = {{"valid", r.valid}};
  if (!r.valid) res.json["witness"] = r.witness;
  res.table = r.valid ? "valid\n" : "invalid: " + r.witness + "\n";
  return res;
}

Result cmd_orbits(const std::vector<int>& ranks, int n) {
  if (n > 5) throw InputError("orbits: n must be at most 5");
  const auto orbits = enumerate_orbits(ranks, n);
  Result res;
  Json rows = Json::array();
  std::ostringstream tab;
  std::size_t full = 0;
  for (const auto& o : orbits) {
    if (o.dim + 1 == static_cast<std::size_t>(n)) ++full;
    Json cs = Json::array();
    for (const auto& m : o.representative.constituents()) cs.push_back(subsets_json(m.bases()));
    rows.push_back({{"constituents", cs}, {"orbit_size", o.orbit_size}, {"dim", o.dim}});
    tab << "size " << o.orbit_size << "  dim " << o.dim << "  nonbases {" << join_labels(o.representative.nonbases()) << "}\n";
  }
  tab << orbits.size() << " classes, " << full << " of full dimension\n";
  // counts known for small cases; a zero means no expectation
  struct Expected {
    std::vector<int> ranks;
    int n;
    std::size_t classes, full;
  };
  const std::vector<Expected> expected = {{{1, 2}, 3, 5, 0}, {{1, 2, 3}, 4, 29, 15}, {{1}, 2, 2, 0}};
  res.json = {{"ranks", ranks}, {"n", n}, {"classes", rows.size()}, {"full_dimensional", full}, {"orbits", rows}};
  for (const auto& e : expected)
    if (e.ranks == ranks && e.n == n) {
      res.ok = e.classes == orbits.size() && (e.full == 0 || e.full == full);
      res.json["expected_classes"] = e.classes;
      tab << "expected " << e.classes << " classes";
      if (e.full) {
        res.json["expected_full_dimensional"] = e.full;
        tab << ", " << e.full << " of full dimension";
      }
      tab << ": " << (res.ok ? "OK" : "MISMATCH") << "\n";
    }
  res.table = tab.str();
  return res;
}

Result cmd_subdivide(const std::string& flag_path, const std::string& weight_path) {
  FlagMatroid fm;
  std::map<Subset, Rational> w;
  try {
    fm = flag_from_json(read_json(flag_path));
    auto wj = read_json(weight_path);
    w = weights_from_json(wj.contains("weights") ? wj.at("weights") : wj);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
  const auto s = regular_subdivision(WeightedConfig::from_flag(fm, w));
  Result res;
  res.json = subdivision_json(s);
  res.dot = subdivision_dot(s);
  std::ostringstream tab;
  for (std::size_t i = 0; i < s.cells.size(); ++i) {
    tab << "cell " << i << ": {" << join_labels(s.cells[i].bases_union()) << "}";
    if (auto o = orbit_label(s.cells[i].flag)) tab << " (" << *o << ")";
    tab << "\n";
  }
  if (auto bad = non_matroidal_cell(s)) {
    res.ok = false;
    res.json["failing_cell"] = *bad;
    tab << "not matroidal: cell " << *bad << " is not a flag matroid polytope\n";
  } else {
    tab << s.cells.size() << " cells, adjacency graph " << (adjacency_graph(s).is_tree() ? "is" : "is not") << " a tree\n";
  }
  res.table = tab.str();
  return res;
}

// Subdivisions of the 14 representative cones against the corrected fixture.
Result cmd_tables() {
  Result res;
  Json rows = Json::array();
  std::ostringstream tab;
  const auto reps = representatives_from_fixture();
  const auto& fx = fixture("subdivisions").at("subdivisions");
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto s = regular_subdivision(WeightedConfig::from_flag(uniform4(), ray_weight(reps[i].rays)));
    const auto expected = corrected(fx.at(i));
    std::set<std::pair<std::set<std::string>, int>> want, got;
    for (const auto& c : expected.at("cells"))
      want.insert({c.at("bases").get<std::set<std::string>>(), c.at("orbit").get<int>()});
    tab << "cone " << reps[i].id << ":";
    Json cells = Json::array();
    for (const auto& c : s.cells) {
      const auto b = c.bases_union();
      const int o = orbit_label(c.flag).value_or(0);
      std::set<std::string> ls;
      for (Subset x : b) ls.insert(to_label(x));
      got.insert({ls, o});
      cells.push_back({{"bases", subsets_json(b)}, {"orbit", o}});
      tab << " {" << join_labels(b) << "}(" << o << ")";
    }
    const bool match = want == got && is_matroidal(s);
    res.ok = res.ok && match;
    tab << (match ? "  OK" : "  MISMATCH") << "\n";
    Json row{{"cone", reps[i].id}, {"cells", cells}, {"match", match}};
    if (expected.contains("corrections")) row["corrections"] = expected.at("corrections");
    rows.push_back(row);
  }
  res.json = {{"subdivisions", rows}, {"ok", res.ok}};
  res.table = tab.str();
  return res;
}

Result cmd_tropfl(const std::string& which, std::uint32_t seed) {
  Result res;
  std::ostringstream tab;
  const auto& t2 = fixture("table2");
  if (which == "fvector") {
    const auto b = build_tfl4();
    const auto f = f_vector(b.fan);
    const auto fm = f_vector_mod_symmetry(b.fan);
    res.ok = f == t2.at("f_vector").get<std::vector<std::size_t>>() &&
             fm == t2.at("f_vector_mod_symmetry").at("value").get<std::vector<std::size_t>>();
    res.json = {{"f_vector", f}, {"f_vector_mod_symmetry", fm}, {"orbit_sizes", b.orbit_sizes}};
    tab << tuple_string(f) << " " << (res.ok ? "OK" : "MISMATCH") << "\nmodulo symmetry " << tuple_string(fm) << "\n";
  } else if (which == "lineality") {
    Json out;
    for (int n : {3, 4}) {
      const auto cs = complete_coordinates(n);
      const auto l = lineality_lattice(cs);
      std::vector<Vec<Integer>> cols;
      for (const auto& g : t2.at("lineality").at("n" + std::to_string(n))) cols.push_back(coordinate_vector(cs, subsets_from(g)));
      for (auto& b : block_ones(cs)) cols.push_back(std::move(b));
      const auto printed = saturate_image(IntegerMatrix::from_columns(cols, cs.dim()));
      const bool same = printed.rank() == l.rank() &&
                        std::all_of(l.basis().begin(), l.basis().end(), [&](const auto& b) { return printed.contains(b); });
      res.ok = res.ok && same;
      out["n" + std::to_string(n)] = {{"rank", l.rank()}, {"matches_generators", same}};
      tab << "n=" << n << ": rank " << l.rank() << " " << (same ? "OK" : "MISMATCH") << "\n";
    }
    res.json = out;
  } else if (which == "lemma") {
    const auto coarse = build_f4prime();
    const auto checks = verify_translation_lemma(coarse.fan);
    std::size_t passed = 0;
    for (const auto& c : checks) passed += c.pass ? 1 : 0;
    res.ok = passed == checks.size() && maximal_cones(coarse.fan).size() == t2.at("coarsening").at("maximal_cones").get<std::size_t>();
    res.json = {{"cones_checked", checks.size()}, {"passed", passed}, {"maximal_cones", maximal_cones(coarse.fan).size()}};
    tab << passed << "/" << checks.size() << " non-maximal cones " << (res.ok ? "OK" : "MISMATCH") << "\n";
  } else if (which == "simplicial") {
    const auto b = build_tfl4();
    const auto v = check_fan(b.fan);
    res.ok = v.ok && check_strictly_simplicial(b.fan);
    res.json = {{"fan", v.ok}, {"strictly_simplicial", res.ok}};
    if (!v.ok) res.json["message"] = v.message;
    tab << "strictly simplicial " << (res.ok ? "OK" : "MISMATCH") << "\n";
  } else if (which == "quadrics") {
    Json out;
    for (int n : {3, 4}) {
      std::vector<int> ranks;
      for (int r = 1; r < n; ++r) ranks.push_back(r);
      const auto qs = plucker_quadrics(ranks, n);
      const auto& printed = t2.at("quadrics").at("n" + std::to_string(n));
      std::size_t matched = 0;
      for (const auto& p : printed) {
        const auto f = parse_polynomial(p.get<std::string>());
        matched += std::any_of(qs.begin(), qs.end(), [&](const Polynomial& g) { return g.equal_up_to_sign(f); }) ? 1 : 0;
      }
      const bool ok = matched == printed.size() && qs.size() == printed.size();
      res.ok = res.ok && ok;
      out["n" + std::to_string(n)] = polynomials_json(qs);
      tab << "n=" << n << ": " << qs.size() << " generators " << (ok ? "OK" : "MISMATCH") << "\n";
      for (const auto& q : qs) tab << "  " << q.to_string() << "\n";
    }
    res.json = out;
  } else if (which == "prop33") {
    std::mt19937 rng(seed);
    const auto b = build_tfl4();
    const auto& fan = b.fan;
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4), pos(1, 4);
    std::size_t checks = 0, held = 0;
    for (const auto& rep : tfl4_representatives()) {
      Vec<Rational> w(fan.ambient(), Rational(0));
      for (const auto& ray : rep.rays) {
        const auto r = coordinate_vector(fan.coords, ray);
        const int a = pos(rng);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += r[i] * a;
      }
      const auto wm = weight_map(fan.coords, w);
      for (int k = 0; k < 25; ++k, ++checks) {
        Vec<Rational> v;
        for (int i = 0; i < 4; ++i) {
          v.emplace_back(num(rng), den(rng));
          v.back().canonicalize();
        }
        held += check_initial_face(uniform4(), wm, v) ? 1 : 0;
      }
    }
    res.ok = held == checks;
    res.json = {{"checks", checks}, {"held", held}, {"seed", seed}};
    tab << held << "/" << checks << " initial-face checks " << (res.ok ? "OK" : "MISMATCH") << "\n";
  } else {
    throw InputError("tropfl: unknown check " + which);
  }
  res.table = tab.str();
  return res;
}

Result cmd_table1() {
  Result res;
  Json rows = Json::array();
  std::ostringstream tab;
  auto names = [](const Json& j) { return j.get<std::set<std::string>>(); };
  for (const auto& printed : fixture("table1").at("rows")) {
    const auto row = corrected(printed);
    const auto fm = complete4_from_nonbases(row.at("nonbases").get<std::vector<std::string>>());
    const auto st = standardize(fm);
    const auto cp = chart_presentation(st.fm);
    auto jc = chart_json(cp);
    std::set<std::string> vars, ideal, semigroup, want_ideal, want_semi;
    for (const auto& v : cp.variables) vars.insert(default_name(v));
    for (const auto& p : cp.ideal) ideal.insert(p.sign_normalized().to_string());
    for (const auto& p : cp.semigroup) semigroup.insert(p.sign_normalized().to_string());
    for (const auto& p : row.at("ideal")) want_ideal.insert(parse_polynomial(p.get<std::string>()).sign_normalized().to_string());
    for (const auto& p : row.at("semigroup")) want_semi.insert(parse_polynomial(p.get<std::string>()).sign_normalized().to_string());
    Json faces = Json::array();
    std::set<std::pair<std::set<std::string>, std::string>> want_faces, got_faces;
    for (const auto& f : row.at("faces")) want_faces.insert({names(f.at("nonbases")), f.at("lambda").get<std::string>()});
    for (const auto& f : internal_facets(fm)) {
      std::set<std::string> nb;
      for (Subset x : f.face.nonbases()) nb.insert(to_label(x));
      got_faces.insert({nb, to_label(f.lambda)});
      faces.push_back({{"lambda", to_label(f.lambda)}, {"nonbases", subsets_json(f.face.nonbases())},
                       {"dim", standardized_dimension(f.face)}});
    }
    const bool match = vars == names(row.at("variables")) && ideal == want_ideal && semigroup == want_semi &&
                       stratum_dimension(cp) == row.at("dim").get<std::size_t>() && want_faces == got_faces &&
                       psi_compatible(st.fm, cp);
    res.ok = res.ok && match;
    const int id = row.at("id").get<int>();
    jc["psi_compatible"] = psi_compatible(st.fm, cp);
    Json jr{{"id", id}, {"nonbases", subsets_json(fm.nonbases())}, {"chart", jc}, {"internal_faces", faces}, {"match", match}};
    if (row.contains("corrections")) jr["corrections"] = row.at("corrections");
    rows.push_back(jr);
    tab << id << ": " << ring_string(cp) << "  dim " << jc.at("dim").dump() << "  faces " << faces.size() << "  "
        << (match ? "OK" : "MISMATCH") << "\n";
  }
  res.json = {{"rows", rows}, {"ok", res.ok}};
  res.table = tab.str();
  return res;
}

Result cmd_limit(int id) {
  const auto reps = representatives_from_fixture();
  if (id < 1 || id > static_cast<int>(reps.size())) throw InputError("limit: cone id must be in 1..14");
  const auto d = limit_report(uniform4(), ray_weight(reps[static_cast<std::size_t>(id - 1)].rays));
  Result res;
  res.json = limit_json(d);
  res.dot = limit_dot(d);
  // compare orbit labels with the subdivision fixture
  const auto expected = corrected(fixture("subdivisions").at("subdivisions").at(static_cast<std::size_t>(id - 1)));
  std::multiset<int> want, got;
  for (const auto& c : expected.at("cells")) want.insert(c.at("orbit").get<int>());
  std::ostringstream tab;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const auto& v = d.vertices[i];
    got.insert(v.orbit.value_or(0));
    tab << "vertex " << i << " (" << (v.orbit ? std::to_string(*v.orbit) : "?") << "): " << ring_string(v.chart) << "\n";
  }
  for (const auto& e : d.edges) {
    tab << "edge " << e.a << "-" << e.b << ": " << (e.internal ? "internal" : "boundary");
    if (e.chain) tab << ", chain " << chain_string(*e.chain) << ", " << ring_string(e.chart);
    if (e.witness_a || e.witness_b) tab << ", criterion holds";
    tab << "\n";
  }
  tab << d.vertices.size() << " vertices, " << d.edges.size() << " edges, " << (d.is_tree ? "tree" : "not a tree") << "\n";
  res.ok = want == got;
  res.table = tab.str();
  return res;
}

void emit(const Result& r, const Options& opt) {
  std::string text;
  if (opt.format == "json") {
    text = r.json.dump(2) + "\n";
  } else if (opt.format == "dot") {
    if (!r.dot) throw InputError("this subcommand has no DOT output");
    text = *r.dot;
  } else {
    text = r.table;
  }
  if (opt.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opt.out);
    if (!f) throw InputError("cannot write " + opt.out);
    f << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag matroids, their subdivisions and the tropical complete flag variety"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "table", "dot"}));
  app.add_flag("--check", opt.check, "Compare with the embedded data and set the exit status");
  app.add_option("--seed", opt.seed, "Seed for randomized checks");
  app.add_option("--out", opt.out, "Write output to this file");
  app.fallthrough();

  std::function<Result()> run;

  auto* validate = app.add_subcommand("validate", "Check the matroid and quotient axioms of a JSON flag matroid");
  std::string validate_path;
  validate->add_option("file", validate_path)->required();
  validate->callback([&] { run = [&] { return cmd_validate(validate_path); }; });

  auto* orbits = app.add_subcommand("orbits", "Flag matroids up to symmetry");
  std::vector<int> ranks{1, 2, 3};
  int n = 4;
  orbits->add_option("--ranks", ranks)->delimiter(',');
  orbits->add_option("--n", n);
  orbits->callback([&] { run = [&] { return cmd_orbits(ranks, n); }; });

  auto* subdivide = app.add_subcommand("subdivide", "Regular subdivision of a flag matroid polytope");
  std::string flag_path, weight_path;
  subdivide->add_option("flag", flag_path)->required();
  subdivide->add_option("weights", weight_path)->required();
  subdivide->callback([&] { run = [&] { return cmd_subdivide(flag_path, weight_path); }; });

  app.add_subcommand("tables", "Subdivisions for the 14 cone representatives")->callback([&] { run = cmd_tables; });

  auto* tropfl = app.add_subcommand("tropfl", "Checks on the tropical flag variety fan");
  std::string which;
  tropfl->add_option("check", which)
      ->required()
      ->check(CLI::IsMember({"fvector", "lineality", "lemma", "simplicial", "quadrics", "prop33"}));
  tropfl->callback([&] { run = [&] { return cmd_tropfl(which, opt.seed); }; });

  app.add_subcommand("table1", "Chart presentations of the 15 full-dimensional strata")->callback([&] { run = cmd_table1; });

  auto* limit = app.add_subcommand("limit", "Limit diagram over the adjacency graph of a cone representative");
  int cone = 1;
  limit->add_option("cone", cone)->required();
  limit->callback([&] { run = [&] { return cmd_limit(cone); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    const auto r = run();
    emit(r, opt);
    if (!r.ok && (opt.check || validate->parsed() || subdivide->parsed())) return kMismatch;
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
