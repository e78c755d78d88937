#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "abelcs/io.hpp"
#include "abelcs/verify.hpp"

using namespace abelcs;
using io::json;

namespace {

constexpr int kValidation = 2;
constexpr int kVerification = 3;

struct RunConfig {
  std::vector<long> levels;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::string out;

  long level() const { return levels.empty() ? 2 : levels.front(); }
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void emit(const RunConfig& cfg, const json& j) {
  const std::string text = io::dump17(j);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw ValidationError("cannot write " + cfg.out);
    f << text;
  }
}

void check_config(const RunConfig& cfg, bool even_levels = true) {
  if (even_levels)
    for (long k : cfg.levels) check_level(k);
  for (long k : cfg.levels)
    if (k < 1) throw ValidationError("level must be positive");
  if (!(cfg.tolerance > 0 && cfg.tolerance <= 1e-3)) throw ValidationError("tolerance must lie in (0, 1e-3]");
}

json framed_value(const cplx& value, long n) {
  json j;
  j["value"] = io::to_json(value);
  j["abs"] = std::abs(value);
  j["framing"] = n;
  return j;
}

int cmd_maslov(const RunConfig& cfg, const std::string& file) {
  json in = read_json_file(file);
  const json& ls = in.is_object() ? in.at("lagrangians") : in;
  if (!ls.is_array() || ls.size() != 3) throw ValidationError("need exactly three Lagrangians");
  std::vector<Lagrangian> L;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      L.push_back(io::parse_lagrangian(ls[i]));
    } catch (const ValidationError& e) {
      throw ValidationError("Lagrangian " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  json out;
  out["command"] = "maslov";
  out["genus"] = L[0].genus;
  out["tau"] = maslov_index(L[0], L[1], L[2]);
  out["gram"] = io::to_json(maslov_gram(L[0], L[1], L[2]));
  emit(cfg, out);
  return 0;
}

SurgeryWord word_from(const std::string& text, const std::string& file, std::size_t genus) {
  if (!file.empty()) return io::parse_surgery_word(read_json_file(file));
  return io::parse_word_text(text, genus);
}

int cmd_rep(const RunConfig& cfg, const std::string& text, const std::string& file, std::size_t genus) {
  check_config(cfg);
  SurgeryWord w = word_from(text, file, genus);
  const long k = cfg.level();
  HilbertSpace S = HilbertSpace::with_frame(IntMatrix::identity(2 * w.genus), k);
  ExactOperator U = ExactOperator::identity(S.dim());
  for (auto& t : w.tokens) U = generator_operator(t, S) * U;
  // the same element through the extended representation, with tracked phase
  EMorphism2 x = word_morphism(w, Lagrangian::standard(w.genus));
  CMatrix ext = mapping_class_operator(x, S, S).to_complex();
  CMatrix u = U.to_complex();
  json out;
  out["command"] = "rep";
  out["genus"] = w.genus;
  out["level"] = k;
  out["matrix"] = io::to_json(u);
  out["unitarity_residual"] = unitarity_residual(u);
  out["extended_framing"] = x.m;
  out["extended_residual"] = max_abs_diff(u, ext);
  emit(cfg, out);
  return 0;
}

int finish(const RunConfig& cfg, json out, double residual) {
  out["residual"] = residual;
  out["pass"] = residual <= cfg.tolerance;
  emit(cfg, out);
  return residual <= cfg.tolerance ? 0 : kVerification;
}

int cmd_invariant(const RunConfig& cfg, const std::string& kind, long p, const std::string& text,
                  const std::string& file, const std::string& matrix, long m, std::size_t genus,
                  const std::string& builtin, const std::string& complex_file) {
  check_config(cfg);
  const long k = cfg.level();
  json out;
  out["command"] = "invariant";
  out["kind"] = kind;
  out["level"] = k;
  if (kind == "lens") {
    if (p < 1) throw ValidationError("lens needs p >= 1");
    SurgeryWord w = lens_word(p);
    ClosedInvariant ci = closed_invariant(w, k);
    ECobordism X = heegaard_gluing(w, k, Lagrangian::standard(1));
    const double oracle = lens_gauss_oracle(p, k);
    out["p"] = p;
    out["heegaard"] = framed_value(ci.value, ci.n);
    out["heegaard"]["components"] = ci.components;
    out["gluing"] = framed_value(closed_value(X), X.n);
    out["gauss_oracle_abs"] = oracle;
    std::vector<json> cs;
    for (auto& s : cs_values_from(ci, k)) cs.push_back(io::rat_string(s));
    out["cs_values"] = cs;
    double res = std::max(std::abs(std::abs(ci.value) - oracle), std::abs(ci.value - closed_value(X)));
    return finish(cfg, out, res);
  }
  if (kind == "heegaard") {
    SurgeryWord w = word_from(text, file, genus);
    ClosedInvariant ci = closed_invariant(w, k);
    ECobordism X = heegaard_gluing(w, k, Lagrangian::standard(w.genus));
    out["genus"] = w.genus;
    out["heegaard"] = framed_value(ci.value, ci.n);
    out["heegaard"]["unframed"] = io::to_json(ci.unframed());
    out["heegaard"]["components"] = ci.components;
    out["gluing"] = framed_value(closed_value(X), X.n);
    return finish(cfg, out, std::abs(ci.value - closed_value(X)));
  }
  if (kind == "mapping-torus") {
    IntMatrix M;
    if (!matrix.empty()) {
      try {
        M = io::parse_int_matrix(json::parse(matrix));
      } catch (const json::parse_error& e) {
        throw ValidationError(std::string("--matrix: ") + e.what());
      }
    } else {
      M = word_from(text, file, genus).matrix();
    }
    if (M.rows() != M.cols() || M.rows() % 2 || !is_symplectic(M)) throw ValidationError("mapping torus needs a symplectic matrix");
    const std::size_t g = M.rows() / 2;
    MappingTorusInvariant mt = mapping_torus_invariant(M, m, k);
    ECobordism X = mapping_torus_gluing(M, m, k, Lagrangian::standard(g));
    out["genus"] = g;
    out["trace"] = framed_value(mt.value, mt.n);
    out["gluing"] = framed_value(closed_value(X), X.n);
    return finish(cfg, out, std::abs(mt.value - closed_value(X)));
  }
  if (kind == "simplicial") {
    SimplicialComplex K;
    std::vector<Rat> cs;
    std::optional<ClosedInvariant> lens_ci;
    if (!complex_file.empty()) {
      json in = read_json_file(complex_file);
      std::vector<Simplex> simplices;
      for (auto& s : in.at("simplices")) simplices.push_back(s.get<Simplex>());
      K = SimplicialComplex::from_simplices(in.at("vertices").get<std::size_t>(), simplices);
    } else if (builtin == "sphere3") {
      K = complexes::sphere3();
    } else if (builtin == "s2xs1") {
      K = complexes::s2_times_s1();
    } else if (builtin == "lens") {
      if (p < 2) throw ValidationError("lens needs p >= 2");
      K = complexes::lens_space(int(p), 1);
      lens_ci = closed_invariant(lens_word(p), k);
      cs = cs_values_from(*lens_ci, k);
    } else {
      throw ValidationError("simplicial needs --complex or --builtin sphere3|s2xs1|lens");
    }
    if (K.dim() != 3 || !topological_boundary(K).maximal().empty())
      throw ValidationError("simplicial invariant needs a closed 3-dimensional complex");
    auto prof = cohomology(K);
    const Int tors = prof.absolute.torsion_order(2);
    if (cs.empty()) {
      if (tors != 1) throw ValidationError("H^2 has torsion; Chern-Simons values are not available for this complex");
      cs.push_back(Rat(0));
    }
    const double ti = closed_torsion_integral(K, prof);
    const cplx z = direct_closed_formula(prof, cs, ti, k);
    out["betti"] = prof.absolute.betti;
    out["torsion_h2"] = tors.convert_to<long long>();
    out["torsion_integral"] = ti;
    out["m_exponent"] = io::rat_string(m_exponent(prof));
    out["direct"] = io::to_json(z);
    if (lens_ci) {
      out["heegaard"] = framed_value(lens_ci->value, lens_ci->n);
      out["heegaard"]["unframed"] = io::to_json(lens_ci->unframed());
      return finish(cfg, out, std::abs(z - lens_ci->unframed()));
    }
    emit(cfg, out);
    return 0;
  }
  throw ValidationError("unsupported invariant kind '" + kind + "'");
}

// Odd levels are accepted here: the cocycle suite reports their failure.
int cmd_verify(RunConfig cfg, const std::string& suite) {
  check_config(cfg, false);
  if (suite == "axioms" || suite == "all")
    for (long k : cfg.levels) check_level(k);
  std::vector<SuiteReport> reports;
  if (suite == "axioms" || suite == "all")
    reports.push_back(verify_axioms(cfg.levels.empty() ? std::vector<long>{2, 4} : cfg.levels, cfg.seed, cfg.tolerance));
  if (suite == "cocycle" || suite == "all") {
    std::vector<long> ks = cfg.levels.empty() ? std::vector<long>{2, 4, 6, 8, 10} : cfg.levels;
    reports.push_back(verify_cocycle(ks, cfg.seed));
  }
  if (suite == "torsion" || suite == "all") reports.push_back(verify_torsion(cfg.seed));
  if (reports.empty()) throw ValidationError("unknown suite '" + suite + "'");
  json out;
  out["command"] = "verify";
  out["seed"] = cfg.seed;
  out["suites"] = json::array();
  bool pass = true;
  for (auto& r : reports) {
    out["suites"].push_back(to_json(r));
    pass = pass && r.pass();
  }
  out["pass"] = pass;
  emit(cfg, out);
  return pass ? 0 : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abelian Chern-Simons TQFT at even level k"};
  app.require_subcommand(1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--level,-k", cfg.levels, "level k (even, positive); repeatable for verify");
    sub->add_option("--tolerance", cfg.tolerance, "cross-check tolerance, in (0, 1e-3]");
    sub->add_option("--seed", cfg.seed, "seed for randomized suites");
    sub->add_option("--out", cfg.out, "write JSON here instead of stdout");
  };

  std::string maslov_file;
  auto* maslov = app.add_subcommand("maslov", "Maslov index of three Lagrangians from a JSON file");
  maslov->add_option("file", maslov_file)->required();
  common(maslov);

  std::string word, word_file;
  std::size_t genus = 1;
  auto* rep = app.add_subcommand("rep", "matrix of a mapping class word");
  rep->add_option("--word", word, "e.g. \"S T^2 S\"");
  rep->add_option("--word-file", word_file, "surgery word JSON");
  rep->add_option("--genus,-g", genus);
  common(rep);

  std::string kind, matrix, builtin, complex_file;
  long p = 1, m = 0;
  auto* inv = app.add_subcommand("invariant", "closed 3-manifold invariants");
  inv->add_option("kind", kind, "lens | mapping-torus | heegaard | simplicial")->required();
  inv->add_option("--p", p, "lens parameter p of L(p,1)");
  inv->add_option("--word", word);
  inv->add_option("--word-file", word_file);
  inv->add_option("--genus,-g", genus);
  inv->add_option("--matrix", matrix, "symplectic matrix as JSON rows");
  inv->add_option("--framing,-m", m, "framing integer of the gluing map");
  inv->add_option("--complex", complex_file, "closed simplicial complex JSON {vertices, simplices}");
  inv->add_option("--builtin", builtin, "sphere3 | s2xs1 | lens");
  common(inv);

  std::string suite = "all";
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("suite", suite, "axioms | cocycle | torsion | all");
  common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kValidation : 0;
  }

  try {
    if (*maslov) return cmd_maslov(cfg, maslov_file);
    if (*rep) return cmd_rep(cfg, word, word_file, genus);
    if (*inv) return cmd_invariant(cfg, kind, p, word, word_file, matrix, m, genus, builtin, complex_file);
    if (*ver) return cmd_verify(cfg, suite);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return 0;
}
