#include "reflekt/cli.hpp"

#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "reflekt/chain.hpp"
#include "reflekt/diagram.hpp"
#include "reflekt/error.hpp"
#include "reflekt/homotopy.hpp"
#include "reflekt/json_io.hpp"

namespace reflekt {
namespace {

struct CliStreams {
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

// One shared option block for every leaf command; each leaf registers only
// the flags it reads.
struct Opts {
  std::string in = "-";
  std::string out;
  std::string with;
  std::string functor;
  std::string rep;
  std::string target;
  std::string vertex;
  std::string source_vertex;
  std::string object;
  std::string dir = "to-target";
  std::string side = "left";
  std::string kind;
  std::string field = "Q";
  std::string from;
  std::string to;
  std::string gamma;
  std::string a;
  std::string b;
  std::vector<long> dims;
  bool dual = false;
  bool compare_classical = false;
  std::uint64_t seed = 0;
  long bound = 12;
  long restarts = 32;
  long count = 20;
};

json read_document(const CliStreams& io, const std::string& path) {
  if (path.empty()) fail(errc::bad_input, "missing input path");
  if (path == "-") return json::parse(*io.in);
  std::ifstream f(path);
  if (!f) fail(errc::bad_input, "cannot open '" + path + "'");
  return json::parse(f);
}

void emit(const CliStreams& io, const Opts& opts, const json& doc) {
  if (opts.out.empty() || opts.out == "-") {
    *io.out << doc.dump(2) << "\n";
    return;
  }
  std::ofstream f(opts.out);
  if (!f) fail(errc::bad_input, "cannot write '" + opts.out + "'");
  f << doc.dump(2) << "\n";
  *io.err << "wrote " << opts.out << "\n";
}

const char* verdict_text(check_verdict v) {
  switch (v) {
    case check_verdict::yes: return "true";
    case check_verdict::no: return "false";
    case check_verdict::unknown: return "unknown";
  }
  return "unknown";
}

int verdict_exit(check_verdict v) {
  switch (v) {
    case check_verdict::yes: return 0;
    case check_verdict::no: return 1;
    case check_verdict::unknown: return 2;
  }
  return 2;
}

json stamped(std::initializer_list<std::pair<std::string, json>> fields) {
  json doc;
  doc["version"] = kFormatVersion;
  for (const auto& [k, v] : fields) doc[k] = v;
  return doc;
}

// --- quiver ---------------------------------------------------------------

int cmd_quiver_reflect(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  Quiver r = reflect(q, opts.vertex);
  emit(io, opts, quiver_to_json(r));
  *io.err << "reflected at '" << opts.vertex << "' ("
          << vertex_class_name(classify_vertex(q, opts.vertex)) << ")\n";
  return 0;
}

int cmd_quiver_plan(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  Quiver t = quiver_from_json(read_document(io, opts.target));
  std::vector<ReflectionStep> plan = plan_reorientation(q, t);
  emit(io, opts, plan_to_json(plan));
  *io.err << "plan with " << plan.size() << " admissible reflections\n";
  return 0;
}

int cmd_quiver_check_tree(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  bool ok = is_oriented_tree(q);
  emit(io, opts, stamped({{"verdict", ok ? "true" : "false"}}));
  *io.err << (ok ? "oriented tree\n" : "not an oriented tree\n");
  return ok ? 0 : 1;
}

// --- rep ------------------------------------------------------------------

int cmd_rep_hom(const CliStreams& io, const Opts& opts) {
  Representation m = representation_from_json(read_document(io, opts.in));
  Representation n = representation_from_json(read_document(io, opts.with));
  std::vector<RepMorphism> basis = hom_basis(m, n);
  emit(io, opts, stamped({{"dim", basis.size()}}));
  *io.err << "hom space of dimension " << basis.size() << "\n";
  return 0;
}

int cmd_rep_reflect(const CliStreams& io, const Opts& opts, bool minus) {
  Representation m = representation_from_json(read_document(io, opts.in));
  Representation r = minus ? reflect_minus(m, opts.vertex) : reflect_plus(m, opts.vertex);
  emit(io, opts, representation_to_json(r));
  long total = 0;
  for (const auto& [v, d] : r.dims) total += d;
  *io.err << "reflected representation with total dimension " << total << "\n";
  return 0;
}

int cmd_rep_adjunction(const CliStreams& io, const Opts& opts) {
  Representation m = representation_from_json(read_document(io, opts.in));
  Representation n = representation_from_json(read_document(io, opts.with));
  AdjunctionReport r = check_adjunction(m, n, opts.vertex);
  emit(io, opts,
       stamped({{"dim_lhs", r.dim_lhs}, {"dim_rhs", r.dim_rhs}, {"ok", r.ok}}));
  *io.err << "hom dimensions " << r.dim_lhs << " and " << r.dim_rhs
          << (r.ok ? " agree\n" : " disagree\n");
  return r.ok ? 0 : 1;
}

int cmd_rep_tilt(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  AprReport r = apr_tilting_check(q, opts.vertex, FieldSpec::parse(opts.field));
  emit(io, opts,
       stamped({{"order", r.order},
                {"hom_matrix", r.hom_matrix},
                {"path_matrix", r.path_matrix},
                {"dim_end", r.dim_end},
                {"paths_original", r.paths_original},
                {"paths_reflected", r.paths_reflected},
                {"ok", r.ok}}));
  *io.err << (r.ok ? "tilting checks passed\n" : "tilting checks failed\n");
  return r.ok ? 0 : 1;
}

int cmd_rep_euler(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<long> pick(0, 4);
  std::vector<std::map<std::string, long>> samples;
  for (long i = 0; i < opts.count; ++i) {
    std::map<std::string, long> d;
    for (const std::string& v : q.vertices()) d[v] = pick(rng);
    samples.push_back(std::move(d));
  }
  EulerReport r = euler_reflection_check(q, opts.vertex, samples);
  emit(io, opts,
       stamped({{"pairs_checked", r.pairs_checked}, {"ok", r.ok}, {"detail", r.detail}}));
  *io.err << "checked " << r.pairs_checked << " dimension-vector pairs\n";
  return r.ok ? 0 : 1;
}

// --- cat ------------------------------------------------------------------

int cmd_cat_realize(const CliStreams& io, const Opts& opts) {
  Presentation p = presentation_from_json(read_document(io, opts.in));
  Realization r = realize(p, opts.bound);
  emit(io, opts, fincat_to_json(r.cat));
  *io.err << r.cat.objects().size() << " objects, " << r.cat.morphisms().size()
          << " morphisms\n";
  return 0;
}

int cmd_cat_free(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  FinCat c = free_category(q);
  emit(io, opts, fincat_to_json(c));
  *io.err << c.objects().size() << " objects, " << c.morphisms().size() << " morphisms\n";
  return 0;
}

int cmd_cat_product(const CliStreams& io, const Opts& opts) {
  FinCat c = fincat_from_json(read_document(io, opts.in));
  FinCat d = fincat_from_json(read_document(io, opts.with));
  FinCat p = product(c, d);
  emit(io, opts, fincat_to_json(p));
  *io.err << p.objects().size() << " objects, " << p.morphisms().size() << " morphisms\n";
  return 0;
}

int cmd_cat_extend(const CliStreams& io, const Opts& opts) {
  FinCat c = fincat_from_json(read_document(io, opts.in));
  extend_dir dir = opts.dir == "to-source" ? extend_dir::to_source : extend_dir::to_target;
  ExtendResult r = one_point_extend(c, opts.object, dir);
  json doc = fincat_to_json(r.cat);
  doc["added_object"] = r.added_object;
  doc["added_arrow"] = r.added_arrow;
  emit(io, opts, doc);
  *io.err << "added '" << r.added_object << "' via '" << r.added_arrow << "'\n";
  return 0;
}

int cmd_cat_factor(const CliStreams& io, const Opts& opts) {
  CatFunctor u = functor_from_json(read_document(io, opts.functor));
  FinCat c = factor_category(u, opts.from, opts.to, opts.gamma);
  emit(io, opts, fincat_to_json(c));
  *io.err << c.objects().size() << " objects, " << c.morphisms().size() << " morphisms\n";
  return 0;
}

int cmd_cat_chain(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  ReflectionChain chain =
      opts.dual ? build_dual_chain(q, opts.vertex) : build_reflection_chain(q, opts.vertex);
  auto stage = [](const char* name, const Realization& r) {
    return json{{"name", name},
                {"objects", r.cat.objects().size()},
                {"morphisms", r.cat.morphisms().size()}};
  };
  json stages = json::array({stage("tree", chain.tree), stage("stage1", chain.stage1),
                             stage("stage2", chain.stage2), stage("stage3", chain.stage3),
                             stage("cat1", chain.cat1), stage("cat2", chain.cat2),
                             stage("stage_z", chain.stage_z), stage("cat3", chain.cat3)});
  emit(io, opts,
       stamped({{"stages", stages},
                {"valence", chain.valence},
                {"spokes", chain.spokes},
                {"apex", chain.apex},
                {"b", chain.b},
                {"z", chain.z},
                {"qprime", chain.qprime}}));
  *io.err << "chain through " << chain.cat3.cat.morphisms().size() << " morphisms at stage 8\n";
  return 0;
}

int cmd_cat_sigma(const CliStreams& io, const Opts& opts) {
  Quiver q = quiver_from_json(read_document(io, opts.in));
  ReflectionChain chain = build_reflection_chain(q, opts.vertex);
  ReflectionChain dual = build_dual_chain(reflect(q, opts.vertex), opts.vertex);
  CatFunctor sigma = sigma_iso(chain, dual);
  emit(io, opts, stamped({{"ob", sigma.ob}, {"mor", sigma.mor}}));
  *io.err << "isomorphism on " << sigma.ob.size() << " objects\n";
  return 0;
}

// --- hoepi / square -------------------------------------------------------

int cmd_hoepi_check(const CliStreams& io, const Opts& opts) {
  CatFunctor u = functor_from_json(read_document(io, opts.functor));
  CheckResult r = is_homotopical_epimorphism(u, opts.seed, opts.restarts);
  emit(io, opts, check_result_to_json(r));
  *io.err << "verdict: " << verdict_text(r.verdict) << " (" << r.cases.size() << " cases)\n";
  return verdict_exit(r.verdict);
}

int cmd_square_check(const CliStreams& io, const Opts& opts) {
  TwoSidedSquare s = square_from_json(read_document(io, opts.in));
  ExactnessFilter filter;
  if (!opts.a.empty()) filter.a = opts.a;
  if (!opts.b.empty()) filter.b = opts.b;
  if (!opts.gamma.empty()) filter.gamma = opts.gamma;
  CheckResult r = is_homotopy_exact(s, filter, opts.seed, opts.restarts);
  emit(io, opts, check_result_to_json(r));
  *io.err << "verdict: " << verdict_text(r.verdict) << " (" << r.cases.size() << " cases)\n";
  return verdict_exit(r.verdict);
}

// --- diagram --------------------------------------------------------------

int cmd_diagram_kan(const CliStreams& io, const Opts& opts) {
  VectDiagram x = diagram_from_json(read_document(io, opts.in));
  CatFunctor u = functor_from_json(read_document(io, opts.functor));
  kan_side side = opts.side == "right" ? kan_side::right : kan_side::left;
  KanResult r = kan_extend(x, u, side);
  json doc = diagram_to_json(r.diagram);
  json comparison = json::object();
  for (const auto& [a, m] : r.comparison) comparison[a] = matrix_to_json(m);
  doc["comparison"] = comparison;
  emit(io, opts, doc);
  long total = 0;
  for (const auto& [o, d] : r.diagram.dims) total += d;
  *io.err << opts.side << " extension with total dimension " << total << "\n";
  return 0;
}

exactness_kind parse_exactness_kind(const std::string& s) {
  if (s == "cocartesian_square") return exactness_kind::cocartesian_square;
  if (s == "cartesian_square") return exactness_kind::cartesian_square;
  if (s == "strongly_bicartesian_cube") return exactness_kind::strongly_bicartesian_cube;
  if (s == "biproduct_conditions") return exactness_kind::biproduct_conditions;
  if (s == "cofiber_square") return exactness_kind::cofiber_square;
  fail(errc::bad_input, "unknown exactness kind '" + s + "'");
}

int cmd_diagram_exact(const CliStreams& io, const Opts& opts) {
  VectDiagram x = diagram_from_json(read_document(io, opts.in));
  ExactnessReport r = exactness_check(x, parse_exactness_kind(opts.kind));
  emit(io, opts, stamped({{"kind", opts.kind}, {"ok", r.ok}, {"detail", r.detail}}));
  *io.err << (r.ok ? "exactness holds\n" : "exactness fails: " + r.detail + "\n");
  return r.ok ? 0 : 1;
}

int cmd_diagram_biproduct(const CliStreams& io, const Opts& opts) {
  VectDiagram d = biproduct_cube(opts.dims, FieldSpec::parse(opts.field));
  emit(io, opts, diagram_to_json(d));
  *io.err << "biproduct cube on " << d.base.objects().size() << " objects\n";
  return 0;
}

int cmd_diagram_pipeline(const CliStreams& io, const Opts& opts) {
  Representation m = representation_from_json(read_document(io, opts.rep));
  std::vector<PipelineStage> trace;
  Representation result = pipeline_reflect(m, opts.source_vertex, &trace);
  json stages = json::array();
  for (const PipelineStage& s : trace) {
    json dims = json::object();
    for (const auto& [o, d] : s.dims) dims[o] = d;
    stages.push_back(json{{"stage", s.stage}, {"dims", dims}, {"note", s.note}});
  }
  json doc = stamped({{"stages", stages}, {"result", representation_to_json(result)}});
  int code = 0;
  if (opts.compare_classical) {
    Representation classical = reflect_minus(m, opts.source_vertex);
    bool same_dims = result.dims == classical.dims;
    bool isomorphic =
        same_dims && iso_search(result, classical, static_cast<unsigned>(opts.seed) + 1).has_value();
    json cdims = json::object();
    for (const auto& [v, d] : classical.dims) cdims[v] = d;
    doc["classical"] = json{{"dims", cdims}, {"isomorphic", isomorphic}};
    code = isomorphic ? 0 : 1;
    *io.err << (isomorphic ? "matches the one-step reflection\n"
                           : "differs from the one-step reflection\n");
  } else {
    *io.err << trace.size() << " pipeline stages\n";
  }
  emit(io, opts, doc);
  return code;
}

// --- report ---------------------------------------------------------------

check_verdict case_verdict(const json& c) {
  std::string v = c.contains("verdict") ? c["verdict"].get<std::string>() : "unknown";
  if (v == "contractible" || v == "true") return check_verdict::yes;
  if (v == "not_contractible" || v == "false") return check_verdict::no;
  return check_verdict::unknown;
}

int cmd_report(const CliStreams& io, const Opts& opts) {
  json doc = read_document(io, opts.in);
  json cases = json::array();
  if (doc.is_array()) {
    cases = doc;
  } else if (doc.is_object() && doc.contains("cases")) {
    cases = doc["cases"];
    if (!cases.is_array()) fail(errc::bad_input, "'cases' must be an array");
  } else {
    fail(errc::bad_input, "expected a case list or an object with 'cases'");
  }
  for (const auto& c : cases)
    if (!c.is_object() || !c.contains("gamma"))
      fail(errc::bad_input, "every case needs a 'gamma' field");

  std::vector<json> sorted(cases.begin(), cases.end());
  auto key = [](const json& c) {
    auto text = [&](const char* k) {
      return c.contains(k) && c[k].is_string() ? c[k].get<std::string>() : std::string();
    };
    return std::make_tuple(text("gamma"), text("a"), text("b"));
  };
  std::sort(sorted.begin(), sorted.end(),
            [&](const json& x, const json& y) { return key(x) < key(y); });

  if (sorted.empty()) {
    emit(io, opts, stamped({{"cases", json::array()}}));
    *io.err << "no cases\n";
    return 0;
  }
  check_verdict agg = check_verdict::yes;
  for (const json& c : sorted) {
    check_verdict v = case_verdict(c);
    if (v == check_verdict::no) {
      agg = check_verdict::no;
      break;
    }
    if (v == check_verdict::unknown) agg = check_verdict::unknown;
  }
  json out_cases(sorted);
  emit(io, opts, stamped({{"verdict", verdict_text(agg)}, {"cases", out_cases}}));
  *io.err << "verdict: " << verdict_text(agg) << " (" << sorted.size() << " cases)\n";
  return verdict_exit(agg);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CliStreams io{&in, &out, &err};
  Opts opts;
  int code = 0;

  CLI::App app{"reflection functors, finite categories, and exactness checks"};
  app.name("reflekt");
  app.require_subcommand(1);

  auto in_opt = [&](CLI::App* c) { c->add_option("--in", opts.in, "input document, '-' for stdin"); };
  auto out_opt = [&](CLI::App* c) { c->add_option("--out", opts.out, "output file, '-' for stdout"); };
  auto seed_opt = [&](CLI::App* c) { c->add_option("--seed", opts.seed, "random seed"); };
  auto restarts_opt = [&](CLI::App* c) {
    c->add_option("--restarts", opts.restarts, "collapse search restarts");
  };
  auto field_opt = [&](CLI::App* c) {
    c->add_option("--field", opts.field, "ground field: Q or Fp (e.g. F5)");
  };
  auto run = [&](int (*fn)(const CliStreams&, const Opts&)) {
    return [&io, &opts, &code, fn] { code = fn(io, opts); };
  };

  CLI::App* quiver = app.add_subcommand("quiver", "oriented trees and reflections");
  quiver->require_subcommand(1);
  {
    CLI::App* c = quiver->add_subcommand("reflect", "reflect a quiver at a vertex");
    in_opt(c), out_opt(c);
    c->add_option("--vertex", opts.vertex, "vertex to reflect at")->required();
    c->callback(run(cmd_quiver_reflect));
  }
  {
    CLI::App* c = quiver->add_subcommand("plan", "plan a reorientation by admissible steps");
    in_opt(c), out_opt(c);
    c->add_option("--target", opts.target, "target quiver document")->required();
    c->callback(run(cmd_quiver_plan));
  }
  {
    CLI::App* c = quiver->add_subcommand("check-tree", "test for an oriented tree");
    in_opt(c), out_opt(c);
    c->callback(run(cmd_quiver_check_tree));
  }

  CLI::App* rep = app.add_subcommand("rep", "quiver representations");
  rep->require_subcommand(1);
  {
    CLI::App* c = rep->add_subcommand("hom", "dimension of the hom space");
    in_opt(c), out_opt(c);
    c->add_option("--with", opts.with, "second representation document")->required();
    c->callback(run(cmd_rep_hom));
  }
  {
    CLI::App* c = rep->add_subcommand("reflect-minus", "reflection functor at a source");
    in_opt(c), out_opt(c);
    c->add_option("--vertex", opts.vertex, "source vertex")->required();
    c->callback(run([](const CliStreams& s, const Opts& o) { return cmd_rep_reflect(s, o, true); }));
  }
  {
    CLI::App* c = rep->add_subcommand("reflect-plus", "reflection functor at a sink");
    in_opt(c), out_opt(c);
    c->add_option("--vertex", opts.vertex, "sink vertex")->required();
    c->callback(run([](const CliStreams& s, const Opts& o) { return cmd_rep_reflect(s, o, false); }));
  }
  {
    CLI::App* c = rep->add_subcommand("adjunction", "compare the two adjunction hom spaces");
    in_opt(c), out_opt(c);
    c->add_option("--with", opts.with, "representation on the reflected quiver")->required();
    c->add_option("--vertex", opts.vertex, "reflection vertex")->required();
    c->callback(run(cmd_rep_adjunction));
  }
  {
    CLI::App* c = rep->add_subcommand("tilt-check", "endomorphism checks for the tilting sum");
    in_opt(c), out_opt(c), field_opt(c);
    c->add_option("--vertex", opts.vertex, "source vertex")->required();
    c->callback(run(cmd_rep_tilt));
  }
  {
    CLI::App* c = rep->add_subcommand("euler-check", "Euler form against dimension reflection");
    in_opt(c), out_opt(c), seed_opt(c);
    c->add_option("--vertex", opts.vertex, "reflection vertex")->required();
    c->add_option("--count", opts.count, "number of sampled dimension vectors");
    c->callback(run(cmd_rep_euler));
  }

  CLI::App* cat = app.add_subcommand("cat", "finite categories and functors");
  cat->require_subcommand(1);
  {
    CLI::App* c = cat->add_subcommand("realize", "realize a finite presentation");
    in_opt(c), out_opt(c);
    c->add_option("--bound", opts.bound, "path length bound");
    c->callback(run(cmd_cat_realize));
  }
  {
    CLI::App* c = cat->add_subcommand("free", "free category of an acyclic quiver");
    in_opt(c), out_opt(c);
    c->callback(run(cmd_cat_free));
  }
  {
    CLI::App* c = cat->add_subcommand("product", "product of two categories");
    in_opt(c), out_opt(c);
    c->add_option("--with", opts.with, "second category document")->required();
    c->callback(run(cmd_cat_product));
  }
  {
    CLI::App* c = cat->add_subcommand("extend", "freely attach one object by one arrow");
    in_opt(c), out_opt(c);
    c->add_option("--object", opts.object, "object to attach to")->required();
    c->add_option("--dir", opts.dir, "arrow direction")
        ->check(CLI::IsMember({"to-target", "to-source"}));
    c->callback(run(cmd_cat_extend));
  }
  {
    CLI::App* c = cat->add_subcommand("factor", "category of factorizations through a functor");
    out_opt(c);
    c->add_option("--functor", opts.functor, "functor document")->required();
    c->add_option("--from", opts.from, "source endpoint")->required();
    c->add_option("--to", opts.to, "target endpoint")->required();
    c->add_option("--gamma", opts.gamma, "morphism to factor")->required();
    c->callback(run(cmd_cat_factor));
  }
  {
    CLI::App* c = cat->add_subcommand("chain", "staged gluing for the reflection pipeline");
    in_opt(c), out_opt(c);
    c->add_option("--vertex", opts.vertex, "source (or sink) vertex")->required();
    c->add_flag("--dual", opts.dual, "build the sink-side chain");
    c->callback(run(cmd_cat_chain));
  }
  {
    CLI::App* c = cat->add_subcommand("sigma", "isomorphism between the chain and its dual");
    in_opt(c), out_opt(c);
    c->add_option("--vertex", opts.vertex, "source vertex")->required();
    c->callback(run(cmd_cat_sigma));
  }

  CLI::App* hoepi = app.add_subcommand("hoepi", "homotopical epimorphism checks");
  hoepi->require_subcommand(1);
  {
    CLI::App* c = hoepi->add_subcommand("check", "factorization-category criterion");
    out_opt(c), seed_opt(c), restarts_opt(c);
    c->add_option("--functor", opts.functor, "functor document")->required();
    c->callback(run(cmd_hoepi_check));
  }

  CLI::App* square = app.add_subcommand("square", "homotopy exactness of squares");
  square->require_subcommand(1);
  {
    CLI::App* c = square->add_subcommand("check", "two-sided factorization criterion");
    in_opt(c), out_opt(c), seed_opt(c), restarts_opt(c);
    c->add_option("--a", opts.a, "restrict to one A-corner object");
    c->add_option("--b", opts.b, "restrict to one B-corner object");
    c->add_option("--gamma", opts.gamma, "restrict to one target morphism");
    c->callback(run(cmd_square_check));
  }

  CLI::App* diagram = app.add_subcommand("diagram", "vector-space diagrams on finite categories");
  diagram->require_subcommand(1);
  {
    CLI::App* c = diagram->add_subcommand("kan", "pointwise extension along a functor");
    in_opt(c), out_opt(c);
    c->add_option("--functor", opts.functor, "functor document")->required();
    c->add_option("--side", opts.side, "left or right extension")
        ->check(CLI::IsMember({"left", "right"}));
    c->callback(run(cmd_diagram_kan));
  }
  {
    CLI::App* c = diagram->add_subcommand("exact", "exactness checks for squares and cubes");
    in_opt(c), out_opt(c);
    c->add_option("--kind", opts.kind, "which exactness property")
        ->required()
        ->check(CLI::IsMember({"cocartesian_square", "cartesian_square",
                               "strongly_bicartesian_cube", "biproduct_conditions",
                               "cofiber_square"}));
    c->callback(run(cmd_diagram_exact));
  }
  {
    CLI::App* c = diagram->add_subcommand("biproduct", "biproduct diagram on a coordinate cube");
    out_opt(c), field_opt(c);
    c->add_option("--dims", opts.dims, "corner input dimensions")
        ->required()
        ->delimiter(',');
    c->callback(run(cmd_diagram_biproduct));
  }
  {
    CLI::App* c = diagram->add_subcommand("pipeline", "staged reflection with audits");
    out_opt(c), seed_opt(c);
    c->add_option("--rep", opts.rep, "representation document")->required();
    c->add_option("--source", opts.source_vertex, "source vertex")->required();
    c->add_flag("--compare-classical", opts.compare_classical,
                "compare against the one-step reflection functor");
    c->callback(run(cmd_diagram_pipeline));
  }

  {
    CLI::App* c = app.add_subcommand("report", "normalize and aggregate a case report");
    in_opt(c), out_opt(c);
    c->callback(run(cmd_report));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      err << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    err << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "invalid JSON: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }
  return code;
}

}  // namespace reflekt
