#include "reflekt/json_io.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <tuple>
#include <utility>

#include "reflekt/error.hpp"

namespace reflekt {

const char* const kFormatVersion = "reflekt/1";

namespace {

// Prepends the version tag to a payload object.
json stamp(const json& payload) {
  json doc;
  doc["version"] = kFormatVersion;
  for (auto it = payload.begin(); it != payload.end(); ++it) doc[it.key()] = it.value();
  return doc;
}

void need_version(const json& j) {
  if (!j.is_object()) fail(errc::bad_input, "expected a JSON object document");
  auto it = j.find("version");
  if (it == j.end()) fail(errc::bad_input, "document is missing the 'version' field");
  if (!it->is_string() || it->get<std::string>() != kFormatVersion)
    fail(errc::bad_input,
         "unsupported document version; expected '" + std::string(kFormatVersion) + "'");
}

const json& member(const json& j, const char* key) {
  if (!j.is_object()) fail(errc::bad_input, std::string("expected an object with '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) fail(errc::bad_input, std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T decode(const json& v, const std::string& what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    fail(errc::bad_input, what + " has the wrong type");
  }
}

std::string str_member(const json& j, const char* key) {
  return decode<std::string>(member(j, key), std::string("field '") + key + "'");
}

std::vector<std::string> string_list(const json& v, const std::string& what) {
  if (!v.is_array()) fail(errc::bad_input, what + " must be an array");
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(decode<std::string>(e, what + " entry"));
  return out;
}

std::map<std::string, std::string> string_map(const json& v, const std::string& what) {
  if (!v.is_object()) fail(errc::bad_input, what + " must be an object");
  std::map<std::string, std::string> out;
  for (auto it = v.begin(); it != v.end(); ++it)
    out[it.key()] = decode<std::string>(it.value(), what + " entry '" + it.key() + "'");
  return out;
}

std::map<std::string, long> dims_map(const json& v, const std::string& what) {
  if (!v.is_object()) fail(errc::bad_input, what + " must be an object");
  std::map<std::string, long> out;
  for (auto it = v.begin(); it != v.end(); ++it)
    out[it.key()] = decode<long>(it.value(), what + " entry '" + it.key() + "'");
  return out;
}

json quiver_payload(const Quiver& q) {
  json j;
  j["vertices"] = q.vertices();
  json arrows = json::array();
  for (const Arrow& a : q.arrows())
    arrows.push_back(json{{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  j["arrows"] = arrows;
  return j;
}

Quiver parse_quiver_payload(const json& j) {
  std::vector<std::string> vertices = string_list(member(j, "vertices"), "'vertices'");
  const json& arr = member(j, "arrows");
  if (!arr.is_array()) fail(errc::bad_input, "'arrows' must be an array");
  std::vector<Arrow> arrows;
  for (const auto& a : arr)
    arrows.push_back(Arrow{str_member(a, "id"), str_member(a, "src"), str_member(a, "tgt")});
  return Quiver(std::move(vertices), std::move(arrows));
}

json fincat_payload(const FinCat& c) {
  json j;
  j["objects"] = c.objects();
  json morphisms = json::array();
  for (const Morph& m : c.morphisms())
    morphisms.push_back(json{{"id", m.id}, {"src", m.src}, {"tgt", m.tgt}});
  j["morphisms"] = morphisms;
  json identity = json::object();
  for (const std::string& o : c.objects()) identity[o] = c.identity_of(o);
  j["identity"] = identity;
  json compose = json::array();
  for (const Morph& g : c.morphisms())
    for (const Morph& f : c.morphisms())
      if (c.composable(g.id, f.id))
        compose.push_back(json::array({g.id, f.id, c.compose(g.id, f.id)}));
  j["compose"] = compose;
  return j;
}

FinCat parse_fincat_payload(const json& j) {
  std::vector<std::string> objects = string_list(member(j, "objects"), "'objects'");
  const json& mor = member(j, "morphisms");
  if (!mor.is_array()) fail(errc::bad_input, "'morphisms' must be an array");
  std::vector<Morph> morphisms;
  for (const auto& m : mor)
    morphisms.push_back(Morph{str_member(m, "id"), str_member(m, "src"), str_member(m, "tgt")});
  std::map<std::string, std::string> identity = string_map(member(j, "identity"), "'identity'");
  const json& table = member(j, "compose");
  if (!table.is_array()) fail(errc::bad_input, "'compose' must be an array");
  std::vector<std::array<std::string, 3>> compose;
  for (const auto& row : table) {
    std::vector<std::string> triple = string_list(row, "'compose' row");
    if (triple.size() != 3) fail(errc::bad_input, "'compose' rows must have three entries");
    compose.push_back({triple[0], triple[1], triple[2]});
  }
  return FinCat(std::move(objects), std::move(morphisms), std::move(identity),
                std::move(compose));
}

json functor_payload(const CatFunctor& u) {
  json j;
  j["source"] = fincat_payload(u.source);
  j["target"] = fincat_payload(u.target);
  j["ob"] = u.ob;
  j["mor"] = u.mor;
  return j;
}

CatFunctor parse_functor_payload(const json& j) {
  CatFunctor u;
  u.source = parse_fincat_payload(member(j, "source"));
  u.target = parse_fincat_payload(member(j, "target"));
  u.ob = string_map(member(j, "ob"), "'ob'");
  u.mor = string_map(member(j, "mor"), "'mor'");
  check_functor(u);
  return u;
}

json rep_payload(const Representation& m) {
  json j;
  j["field"] = m.field.name();
  j["quiver"] = quiver_payload(m.quiver);
  json dims = json::object();
  for (const auto& [v, d] : m.dims) dims[v] = d;
  j["dims"] = dims;
  json maps = json::object();
  for (const auto& [a, mat] : m.maps) maps[a] = matrix_to_json(mat);
  j["maps"] = maps;
  return j;
}

Representation parse_rep_payload(const json& j) {
  FieldSpec field = FieldSpec::parse(str_member(j, "field"));
  Quiver quiver = parse_quiver_payload(member(j, "quiver"));
  std::map<std::string, long> dims = dims_map(member(j, "dims"), "'dims'");
  const json& maps = member(j, "maps");
  if (!maps.is_object()) fail(errc::bad_input, "'maps' must be an object");
  std::map<std::string, ExactMatrix> decoded;
  for (auto it = maps.begin(); it != maps.end(); ++it) {
    if (!quiver.has_arrow(it.key()))
      fail(errc::unknown_arrow, "map entry for unknown arrow '" + it.key() + "'");
    const Arrow& a = quiver.arrow(it.key());
    auto src = dims.find(a.src);
    auto tgt = dims.find(a.tgt);
    if (src == dims.end() || tgt == dims.end())
      fail(errc::bad_input, "map '" + it.key() + "' refers to a vertex without a dimension");
    decoded.emplace(it.key(), matrix_from_json(it.value(), tgt->second, src->second, field));
  }
  return make_representation(std::move(quiver), field, std::move(dims), std::move(decoded));
}

json diagram_payload(const VectDiagram& x) {
  json j;
  j["field"] = x.field.name();
  j["base"] = fincat_payload(x.base);
  json dims = json::object();
  for (const auto& [o, d] : x.dims) dims[o] = d;
  j["dims"] = dims;
  json maps = json::object();
  for (const auto& [m, mat] : x.maps) maps[m] = matrix_to_json(mat);
  j["maps"] = maps;
  return j;
}

VectDiagram parse_diagram_payload(const json& j) {
  FieldSpec field = FieldSpec::parse(str_member(j, "field"));
  FinCat base = parse_fincat_payload(member(j, "base"));
  std::map<std::string, long> dims = dims_map(member(j, "dims"), "'dims'");
  const json& maps = member(j, "maps");
  if (!maps.is_object()) fail(errc::bad_input, "'maps' must be an object");
  std::map<std::string, ExactMatrix> decoded;
  for (auto it = maps.begin(); it != maps.end(); ++it) {
    if (!base.has_morphism(it.key()))
      fail(errc::unknown_morphism, "map entry for unknown morphism '" + it.key() + "'");
    const Morph& m = base.morphism(it.key());
    auto src = dims.find(m.src);
    auto tgt = dims.find(m.tgt);
    if (src == dims.end() || tgt == dims.end())
      fail(errc::bad_input, "map '" + it.key() + "' refers to an object without a dimension");
    decoded.emplace(it.key(), matrix_from_json(it.value(), tgt->second, src->second, field));
  }
  return make_diagram(std::move(base), field, std::move(dims), std::move(decoded));
}

json presentation_payload(const Presentation& p) {
  json j;
  j["objects"] = p.objects;
  json generators = json::array();
  for (const PresArrow& g : p.generators)
    generators.push_back(json{{"id", g.id}, {"src", g.src}, {"tgt", g.tgt}});
  j["generators"] = generators;
  json relations = json::array();
  for (const PresRelation& r : p.relations) {
    json lhs(std::vector<std::string>(r.lhs.rbegin(), r.lhs.rend()));
    json rhs(std::vector<std::string>(r.rhs.rbegin(), r.rhs.rend()));
    relations.push_back(json::array({lhs, rhs}));
  }
  j["relations"] = relations;
  return j;
}

Presentation parse_presentation_payload(const json& j) {
  Presentation p;
  p.objects = string_list(member(j, "objects"), "'objects'");
  const json& gens = member(j, "generators");
  if (!gens.is_array()) fail(errc::bad_input, "'generators' must be an array");
  for (const auto& g : gens)
    p.generators.push_back(
        PresArrow{str_member(g, "id"), str_member(g, "src"), str_member(g, "tgt")});
  const json& rels = member(j, "relations");
  if (!rels.is_array()) fail(errc::bad_input, "'relations' must be an array");
  for (const auto& r : rels) {
    if (!r.is_array() || r.size() != 2)
      fail(errc::bad_input, "'relations' entries must be pairs of paths");
    std::vector<std::string> lhs = string_list(r[0], "relation path");
    std::vector<std::string> rhs = string_list(r[1], "relation path");
    std::reverse(lhs.begin(), lhs.end());
    std::reverse(rhs.begin(), rhs.end());
    p.relations.push_back(PresRelation{std::move(lhs), std::move(rhs)});
  }
  validate_presentation(p);
  return p;
}

json square_payload(const TwoSidedSquare& s) {
  json j;
  j["p"] = functor_payload(s.p);
  j["q"] = functor_payload(s.q);
  j["u"] = functor_payload(s.u);
  j["v"] = functor_payload(s.v);
  j["alpha"] = s.alpha;
  return j;
}

TwoSidedSquare parse_square_payload(const json& j) {
  TwoSidedSquare s;
  s.p = parse_functor_payload(member(j, "p"));
  s.q = parse_functor_payload(member(j, "q"));
  s.u = parse_functor_payload(member(j, "u"));
  s.v = parse_functor_payload(member(j, "v"));
  s.alpha = string_map(member(j, "alpha"), "'alpha'");
  check_square(s);
  return s;
}

const char* step_kind_name(ReflectionStep::kind_t k) {
  return k == ReflectionStep::kind_t::source ? "source" : "sink";
}

ReflectionStep::kind_t parse_step_kind(const std::string& s) {
  if (s == "source") return ReflectionStep::kind_t::source;
  if (s == "sink") return ReflectionStep::kind_t::sink;
  fail(errc::bad_input, "plan step kind must be 'source' or 'sink', got '" + s + "'");
}

const char* verdict_name(check_verdict v) {
  switch (v) {
    case check_verdict::yes: return "true";
    case check_verdict::no: return "false";
    case check_verdict::unknown: return "unknown";
  }
  fail(errc::internal, "unhandled verdict");
}

json factor_case_to_json(const FactorCase& c) {
  json j;
  j["gamma"] = c.gamma;
  j["a"] = c.a;
  j["b"] = c.b;
  switch (c.result.verdict) {
    case contractibility_verdict::contractible: {
      j["verdict"] = "contractible";
      json cert = json::array();
      for (const CollapseStep& s : c.result.certificate)
        cert.push_back(json::array({s.dim, s.face, s.coface}));
      j["certificate"] = cert;
      break;
    }
    case contractibility_verdict::not_contractible:
      j["verdict"] = "not_contractible";
      j["witness"] = c.result.witness;
      j["witness_degree"] = c.result.witness_degree;
      break;
    case contractibility_verdict::unknown:
      j["verdict"] = "unknown";
      j["diagnostics"] = c.result.diagnostics;
      break;
  }
  return j;
}

}  // namespace

json matrix_to_json(const ExactMatrix& m) {
  json rows = json::array();
  for (long i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (long j = 0; j < m.cols(); ++j) row.push_back(scalar_to_string(m.at(i, j)));
    rows.push_back(row);
  }
  return rows;
}

ExactMatrix matrix_from_json(const json& rows, long expected_rows, long expected_cols,
                             const FieldSpec& field) {
  if (!rows.is_array()) fail(errc::bad_input, "matrix must be an array of rows");
  std::vector<std::vector<std::string>> table;
  table.reserve(rows.size());
  for (const auto& row : rows) table.push_back(string_list(row, "matrix row"));
  if (static_cast<long>(table.size()) != expected_rows)
    fail(errc::bad_input, "matrix has " + std::to_string(table.size()) + " rows, expected " +
                              std::to_string(expected_rows));
  return ExactMatrix::from_rows(table, expected_cols, field);
}

json quiver_to_json(const Quiver& q) { return stamp(quiver_payload(q)); }

Quiver quiver_from_json(const json& j) {
  need_version(j);
  return parse_quiver_payload(j);
}

json plan_to_json(const std::vector<ReflectionStep>& plan) {
  json steps = json::array();
  for (const ReflectionStep& s : plan)
    steps.push_back(json{{"vertex", s.vertex}, {"kind", step_kind_name(s.kind)}});
  json payload;
  payload["plan"] = steps;
  return stamp(payload);
}

std::vector<ReflectionStep> plan_from_json(const json& j) {
  need_version(j);
  const json& steps = member(j, "plan");
  if (!steps.is_array()) fail(errc::bad_input, "'plan' must be an array of steps");
  std::vector<ReflectionStep> plan;
  for (const auto& s : steps)
    plan.push_back(ReflectionStep{str_member(s, "vertex"), parse_step_kind(str_member(s, "kind"))});
  return plan;
}

json representation_to_json(const Representation& m) { return stamp(rep_payload(m)); }

Representation representation_from_json(const json& j) {
  need_version(j);
  return parse_rep_payload(j);
}

json fincat_to_json(const FinCat& c) { return stamp(fincat_payload(c)); }

FinCat fincat_from_json(const json& j) {
  need_version(j);
  return parse_fincat_payload(j);
}

json functor_to_json(const CatFunctor& u) { return stamp(functor_payload(u)); }

CatFunctor functor_from_json(const json& j) {
  need_version(j);
  return parse_functor_payload(j);
}

json presentation_to_json(const Presentation& p) { return stamp(presentation_payload(p)); }

Presentation presentation_from_json(const json& j) {
  need_version(j);
  return parse_presentation_payload(j);
}

json square_to_json(const TwoSidedSquare& s) { return stamp(square_payload(s)); }

TwoSidedSquare square_from_json(const json& j) {
  need_version(j);
  return parse_square_payload(j);
}

json diagram_to_json(const VectDiagram& x) { return stamp(diagram_payload(x)); }

VectDiagram diagram_from_json(const json& j) {
  need_version(j);
  return parse_diagram_payload(j);
}

json check_result_to_json(const CheckResult& r) {
  std::vector<const FactorCase*> order;
  order.reserve(r.cases.size());
  for (const FactorCase& c : r.cases) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const FactorCase* x, const FactorCase* y) {
    return std::tie(x->gamma, x->a, x->b) < std::tie(y->gamma, y->a, y->b);
  });
  json payload;
  payload["verdict"] = verdict_name(r.verdict);
  json cases = json::array();
  for (const FactorCase* c : order) cases.push_back(factor_case_to_json(*c));
  payload["cases"] = cases;
  return stamp(payload);
}

}  // namespace reflekt
