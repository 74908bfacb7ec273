#include "reflekt/diagram.hpp"

#include <cstddef>
#include <optional>
#include <utility>

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

ExactMatrix column_block(const ExactMatrix& m, long col0, long ncols) {
  ExactMatrix out(m.rows(), ncols, m.field());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < ncols; ++j) out.set(i, j, m.at(i, col0 + j));
  return out;
}

ExactMatrix row_block(const ExactMatrix& m, long row0, long nrows) {
  ExactMatrix out(nrows, m.cols(), m.field());
  for (long i = 0; i < nrows; ++i)
    for (long j = 0; j < m.cols(); ++j) out.set(i, j, m.at(row0 + i, j));
  return out;
}

void add_block(ExactMatrix& m, long row0, long col0, const ExactMatrix& b, int sign) {
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) {
      if (b.at(i, j) == 0) continue;
      mpq_class v = sign > 0 ? b.at(i, j) : mpq_class(-b.at(i, j));
      m.set(row0 + i, col0 + j, m.at(row0 + i, col0 + j) + v);
    }
}

// Morphisms of the base grouped by source object, for the composition scan.
std::map<std::string, std::vector<const Morph*>> by_source(const FinCat& c) {
  std::map<std::string, std::vector<const Morph*>> out;
  for (const Morph& m : c.morphisms()) out[m.src].push_back(&m);
  return out;
}

// Recovers the underlying morphism g from a comma morphism named
// "<g>|<source object>|<target object>".
std::string underlying_morphism(const Morph& phi) {
  const std::size_t tail = phi.src.size() + phi.tgt.size() + 2;
  if (phi.id.size() < tail ||
      phi.id.compare(phi.id.size() - tail, tail, "|" + phi.src + "|" + phi.tgt) != 0)
    fail(errc::internal, "malformed comma morphism '" + phi.id + "'");
  return phi.id.substr(0, phi.id.size() - tail);
}

// One target object's comma category with the block layout of the direct
// sum over its objects, plus the chosen presentation of the (co)limit.
struct CommaPoint {
  FinCat comma;
  std::vector<std::string> base_ob;  // source object behind each comma object
  std::vector<std::string> leg;      // structure morphism behind each comma object
  std::vector<long> offset;          // block offsets in the object sum
  long total = 0;
  std::map<std::pair<std::string, std::string>, long> slot;  // (object, leg) -> index
  ExactMatrix to_value;    // left extensions: the cokernel projection
  ExactMatrix from_value;  // left: its section; right: the kernel inclusion
};

CommaPoint comma_point(const VectDiagram& x, const CatFunctor& u, const std::string& b,
                       kan_side side) {
  CommaPoint cp;
  cp.comma = side == kan_side::left ? comma_from(u, b) : comma_to(u, b);
  long idx = 0;
  for (const std::string& a : u.source.objects()) {
    const std::string ua = apply_ob(u, a);
    const std::vector<std::string> legs =
        side == kan_side::left ? u.target.hom(ua, b) : u.target.hom(b, ua);
    for (const std::string& m : legs) {
      if (cp.comma.objects()[idx] != "(" + a + "|" + m + ")")
        fail(errc::internal, "comma object enumeration out of step at '" + b + "'");
      cp.base_ob.push_back(a);
      cp.leg.push_back(m);
      cp.slot[{a, m}] = idx;
      cp.offset.push_back(cp.total);
      cp.total += x.dims.at(a);
      ++idx;
    }
  }
  if (idx != static_cast<long>(cp.comma.objects().size()))
    fail(errc::internal, "comma object count out of step at '" + b + "'");
  return cp;
}

struct CommaArrow {
  long s = 0;
  long t = 0;
  std::string g;
};

std::vector<CommaArrow> comma_arrows(const CommaPoint& cp, const FinCat& source) {
  std::vector<CommaArrow> out;
  for (const Morph& phi : cp.comma.morphisms()) {
    CommaArrow rec;
    rec.s = cp.comma.object_index(phi.src);
    rec.t = cp.comma.object_index(phi.tgt);
    rec.g = underlying_morphism(phi);
    if (!source.has_morphism(rec.g))
      fail(errc::internal, "comma morphism over unknown '" + rec.g + "'");
    out.push_back(std::move(rec));
  }
  return out;
}

// Difference map of the colimit presentation: one column block per comma
// morphism phi with underlying g, carrying X(g) into the target block and
// minus the identity into the source block.
ExactMatrix left_difference(const VectDiagram& x, const CommaPoint& cp,
                            const std::vector<CommaArrow>& arrows) {
  long cols = 0;
  for (const CommaArrow& rec : arrows) cols += x.dims.at(cp.base_ob[rec.s]);
  ExactMatrix d(cp.total, cols, x.field);
  long c0 = 0;
  for (const CommaArrow& rec : arrows) {
    const ExactMatrix& xg = x.maps.at(rec.g);
    add_block(d, cp.offset[rec.t], c0, xg, +1);
    add_block(d, cp.offset[rec.s], c0, ExactMatrix::identity(xg.cols(), x.field), -1);
    c0 += xg.cols();
  }
  return d;
}

// Mirror for the limit presentation: one row block per comma morphism.
ExactMatrix right_difference(const VectDiagram& x, const CommaPoint& cp,
                             const std::vector<CommaArrow>& arrows) {
  long rows = 0;
  for (const CommaArrow& rec : arrows) rows += x.dims.at(cp.base_ob[rec.t]);
  ExactMatrix d(rows, cp.total, x.field);
  long r0 = 0;
  for (const CommaArrow& rec : arrows) {
    const ExactMatrix& xg = x.maps.at(rec.g);
    add_block(d, r0, cp.offset[rec.s], xg, +1);
    add_block(d, r0, cp.offset[rec.t], ExactMatrix::identity(xg.rows(), x.field), -1);
    r0 += xg.rows();
  }
  return d;
}

// ---- exactness helpers -------------------------------------------------

FinCat interval_category() {
  return free_category(Quiver({"0", "1"}, {{"s01", "0", "1"}}));
}

FinCat three_chain_category() {
  return free_category(Quiver({"0", "1", "2"}, {{"s01", "0", "1"}, {"s12", "1", "2"}}));
}

FinCat square_category() {
  FinCat seg = interval_category();
  return product(seg, seg);
}

const ExactMatrix& unique_map(const VectDiagram& x, const std::string& a,
                              const std::string& b) {
  std::vector<std::string> h = x.base.hom(a, b);
  if (h.size() != 1)
    fail(errc::internal, "expected a unique morphism '" + a + "' -> '" + b + "'");
  return x.maps.at(h[0]);
}

std::string tuple_name(const std::vector<long>& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::vector<long> parse_tuple(const std::string& name) {
  std::vector<long> out;
  long cur = 0;
  bool have = false;
  for (char c : name) {
    if (c >= '0' && c <= '9') {
      cur = cur * 10 + (c - '0');
      have = true;
    } else if (have) {
      out.push_back(cur);
      cur = 0;
      have = false;
    }
  }
  return out;
}

std::vector<std::vector<long>> all_tuples(long slots, const std::vector<long>& values) {
  std::vector<std::vector<long>> out(1);
  for (long s = 0; s < slots; ++s) {
    std::vector<std::vector<long>> next;
    for (const std::vector<long>& t : out)
      for (long v : values) {
        next.push_back(t);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

// The square with legs f: A->B, g: A->C, h: B->D, k: C->D is cocartesian
// when the induced map from coker(A -> B+C) to D is invertible.
bool pushout_comparison_invertible(const ExactMatrix& f, const ExactMatrix& g,
                                   const ExactMatrix& h, const ExactMatrix& k) {
  CokernelData ck = cokernel_data(vstack(f, g.negated()));
  return inverse(hstack(h, k) * ck.section).has_value();
}

// Dual: the induced map from A into ker(B+C -> D) is invertible.
bool pullback_comparison_invertible(const ExactMatrix& f, const ExactMatrix& g,
                                    const ExactMatrix& h, const ExactMatrix& k) {
  ExactMatrix incl = kernel_basis(hstack(h, k.negated()));
  std::optional<ExactMatrix> lift = solve(incl, vstack(f, g));
  return lift && inverse(*lift).has_value();
}

struct SquareData {
  ExactMatrix f, g, h, k;
};

SquareData read_square(const VectDiagram& x) {
  return {unique_map(x, "(0,0)", "(1,0)"), unique_map(x, "(0,0)", "(0,1)"),
          unique_map(x, "(1,0)", "(1,1)"), unique_map(x, "(0,1)", "(1,1)")};
}

long power_exponent(std::size_t count, long base) {
  long n = 0;
  std::size_t p = 1;
  while (p < count) {
    p *= static_cast<std::size_t>(base);
    ++n;
  }
  return p == count && n >= 1 ? n : -1;
}

// Reads the four corner maps of the 2-face with coordinates (i, j) running
// over the given side values, the remaining coordinates fixed.
SquareData read_face(const VectDiagram& x, const std::vector<long>& fixed, long i, long j,
                     const std::pair<long, long>& side_i, const std::pair<long, long>& side_j) {
  auto corner = [&](long vi, long vj) {
    std::vector<long> t = fixed;
    t[i] = vi;
    t[j] = vj;
    return tuple_name(t);
  };
  const std::string a = corner(side_i.first, side_j.first);
  const std::string b = corner(side_i.second, side_j.first);
  const std::string c = corner(side_i.first, side_j.second);
  const std::string d = corner(side_i.second, side_j.second);
  return {unique_map(x, a, b), unique_map(x, a, c), unique_map(x, b, d),
          unique_map(x, c, d)};
}

// Tuples with the coordinates i (and j) left as placeholders, to be filled
// by read_face; placeholder slots carry 0.
std::vector<std::vector<long>> fixed_frames(long n, long i, long j,
                                            const std::vector<long>& values) {
  const long free_slots = n - (j >= 0 ? 2 : 1);
  std::vector<std::vector<long>> out;
  for (const std::vector<long>& rest : all_tuples(free_slots, values)) {
    std::vector<long> t(n, 0);
    long at = 0;
    for (long s = 0; s < n; ++s) {
      if (s == i || s == j) continue;
      t[s] = rest[at++];
    }
    out.push_back(std::move(t));
  }
  return out;
}

ExactnessReport check_square_kind(const VectDiagram& x, exactness_kind kind) {
  SquareData sq = read_square(x);
  if (kind == exactness_kind::cofiber_square && x.dims.at("(0,1)") != 0)
    return {false, "the cofiber corner '(0,1)' is nonzero"};
  if (kind == exactness_kind::cartesian_square) {
    if (!pullback_comparison_invertible(sq.f, sq.g, sq.h, sq.k))
      return {false, "the induced map into the pullback is not invertible"};
    return {true, ""};
  }
  if (!pushout_comparison_invertible(sq.f, sq.g, sq.h, sq.k))
    return {false, "the induced map from the pushout is not invertible"};
  return {true, ""};
}

ExactnessReport check_cube_faces(const VectDiagram& x, long n,
                                 const std::vector<long>& fixed_values,
                                 const std::vector<std::pair<long, long>>& sides) {
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      for (const std::vector<long>& frame : fixed_frames(n, i, j, fixed_values))
        for (const std::pair<long, long>& si : sides)
          for (const std::pair<long, long>& sj : sides) {
            SquareData sq = read_face(x, frame, i, j, si, sj);
            std::vector<long> lo = frame, hi = frame;
            lo[i] = si.first;
            lo[j] = sj.first;
            hi[i] = si.second;
            hi[j] = sj.second;
            const std::string where =
                "face " + tuple_name(lo) + " -> " + tuple_name(hi);
            if (!pushout_comparison_invertible(sq.f, sq.g, sq.h, sq.k))
              return {false, where + " is not cocartesian"};
            if (!pullback_comparison_invertible(sq.f, sq.g, sq.h, sq.k))
              return {false, where + " is not cartesian"};
          }
  return {true, ""};
}

ExactnessReport check_biproduct(const VectDiagram& x, long n) {
  for (const std::vector<long>& t : all_tuples(n, {0, 2}))
    if (x.dims.at(tuple_name(t)) != 0)
      return {false, "nonzero outer corner " + tuple_name(t)};
  ExactnessReport faces =
      check_cube_faces(x, n, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
  if (!faces.ok) return faces;
  for (long k = 0; k < n; ++k)
    for (const std::vector<long>& frame : fixed_frames(n, k, -1, {0, 1, 2})) {
      std::vector<long> from = frame, to = frame;
      from[k] = 0;
      to[k] = 2;
      std::vector<std::string> h = x.base.hom(tuple_name(from), tuple_name(to));
      if (h.size() != 1)
        fail(errc::internal, "expected a unique length-two composite");
      if (!inverse(x.maps.at(h[0])).has_value())
        return {false, "length-two map '" + h[0] + "' is not invertible"};
    }
  return {true, ""};
}

// ---- biproduct construction helpers ------------------------------------

std::vector<std::string> split_tuple(const std::string& name) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 1; i + 1 < name.size(); ++i) {
    if (name[i] == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += name[i];
    }
  }
  out.push_back(cur);
  return out;
}

std::string join_tuple(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  return out + ")";
}

CatFunctor inclusion_functor(const FinCat& sub, const FinCat& whole) {
  CatFunctor f;
  f.source = sub;
  f.target = whole;
  for (const std::string& o : sub.objects()) f.ob[o] = o;
  for (const Morph& m : sub.morphisms()) f.mor[m.id] = m.id;
  check_functor(f);
  return f;
}

}  // namespace

bool VectDiagram::operator==(const VectDiagram& o) const {
  return base == o.base && field == o.field && dims == o.dims && maps == o.maps;
}

VectDiagram make_diagram(FinCat base, FieldSpec field, std::map<std::string, long> dims,
                         std::map<std::string, ExactMatrix> maps) {
  VectDiagram x{std::move(base), field, std::move(dims), std::move(maps)};
  for (const auto& [o, d] : x.dims) {
    if (!x.base.has_object(o)) fail(errc::unknown_object, "dims mention '" + o + "'");
    if (d < 0) fail(errc::bad_input, "negative dimension at '" + o + "'");
  }
  for (const std::string& o : x.base.objects())
    if (!x.dims.count(o)) x.dims[o] = 0;
  for (const auto& [m, mat] : x.maps)
    if (!x.base.has_morphism(m)) fail(errc::unknown_morphism, "maps mention '" + m + "'");
  for (const Morph& m : x.base.morphisms()) {
    if (x.maps.count(m.id)) continue;
    if (x.base.is_identity(m.id))
      x.maps.emplace(m.id, ExactMatrix::identity(x.dims[m.src], field));
    else
      x.maps.emplace(m.id, ExactMatrix(x.dims[m.tgt], x.dims[m.src], field));
  }
  validate_diagram(x);
  return x;
}

VectDiagram zero_diagram(const FinCat& base, FieldSpec field) {
  return make_diagram(base, field, {}, {});
}

void validate_diagram(const VectDiagram& x) {
  for (const std::string& o : x.base.objects()) {
    auto it = x.dims.find(o);
    if (it == x.dims.end()) fail(errc::bad_input, "missing dimension for object '" + o + "'");
    if (it->second < 0) fail(errc::bad_input, "negative dimension at '" + o + "'");
  }
  for (const Morph& m : x.base.morphisms()) {
    auto it = x.maps.find(m.id);
    if (it == x.maps.end()) fail(errc::bad_input, "missing map for morphism '" + m.id + "'");
    const ExactMatrix& mat = it->second;
    if (mat.field() != x.field) fail(errc::bad_field, "map '" + m.id + "' field mismatch");
    if (mat.rows() != x.dims.at(m.tgt) || mat.cols() != x.dims.at(m.src))
      fail(errc::bad_input, "map '" + m.id + "' has shape " + std::to_string(mat.rows()) +
                                "x" + std::to_string(mat.cols()));
    if (x.base.is_identity(m.id) && !mat.is_identity())
      fail(errc::mismatch, "identity morphism '" + m.id + "' carries a non-identity matrix");
  }
  const auto outgoing = by_source(x.base);
  for (const Morph& f : x.base.morphisms()) {
    auto it = outgoing.find(f.tgt);
    if (it == outgoing.end()) continue;
    const ExactMatrix& xf = x.maps.at(f.id);
    for (const Morph* g : it->second) {
      const std::string gf = x.base.compose(g->id, f.id);
      if (x.maps.at(gf) != x.maps.at(g->id) * xf)
        fail(errc::mismatch, "functoriality fails at '" + g->id + "' after '" + f.id + "'");
    }
  }
}

void validate_diagram_morphism(const DiagramMorphism& f) {
  if (f.source.base != f.target.base || f.source.field != f.target.field)
    fail(errc::mismatch, "morphism endpoints live over different categories or fields");
  for (const std::string& o : f.source.base.objects()) {
    auto it = f.components.find(o);
    if (it == f.components.end())
      fail(errc::bad_morphism, "missing component at '" + o + "'");
    if (it->second.rows() != f.target.dims.at(o) || it->second.cols() != f.source.dims.at(o))
      fail(errc::bad_morphism, "component at '" + o + "' has the wrong shape");
  }
  for (const Morph& m : f.source.base.morphisms()) {
    if (f.source.base.is_identity(m.id)) continue;
    const ExactMatrix lhs = f.target.maps.at(m.id) * f.components.at(m.src);
    const ExactMatrix rhs = f.components.at(m.tgt) * f.source.maps.at(m.id);
    if (lhs != rhs) fail(errc::bad_morphism, "naturality fails at morphism '" + m.id + "'");
  }
}

std::vector<DiagramMorphism> diagram_hom_basis(const VectDiagram& x, const VectDiagram& y) {
  if (x.base != y.base || x.field != y.field)
    fail(errc::mismatch, "hom spaces need a common base category and field");
  const std::vector<std::string>& obs = x.base.objects();
  std::map<std::string, long> offset;
  long unknowns = 0;
  for (const std::string& o : obs) {
    offset[o] = unknowns;
    unknowns += y.dims.at(o) * x.dims.at(o);
  }
  long rows = 0;
  for (const Morph& m : x.base.morphisms())
    if (!x.base.is_identity(m.id)) rows += y.dims.at(m.tgt) * x.dims.at(m.src);
  ExactMatrix eq(rows, unknowns, x.field);
  long r0 = 0;
  for (const Morph& m : x.base.morphisms()) {
    if (x.base.is_identity(m.id)) continue;
    const ExactMatrix& xm = x.maps.at(m.id);
    const ExactMatrix& ym = y.maps.at(m.id);
    const long dxs = x.dims.at(m.src), dys = y.dims.at(m.src);
    const long dxt = x.dims.at(m.tgt), dyt = y.dims.at(m.tgt);
    // (Y(m) * c_src - c_tgt * X(m))(i, j) = 0 for all i < dim Y(tgt),
    // j < dim X(src); c-entries are laid out row-major per object.
    for (long i = 0; i < dyt; ++i)
      for (long j = 0; j < dxs; ++j) {
        const long row = r0 + i * dxs + j;
        for (long k = 0; k < dys; ++k)
          eq.set(row, offset.at(m.src) + k * dxs + j,
                 eq.at(row, offset.at(m.src) + k * dxs + j) + ym.at(i, k));
        for (long l = 0; l < dxt; ++l)
          eq.set(row, offset.at(m.tgt) + i * dxt + l,
                 eq.at(row, offset.at(m.tgt) + i * dxt + l) - xm.at(l, j));
      }
    r0 += dyt * dxs;
  }
  ExactMatrix basis = kernel_basis(eq);
  std::vector<DiagramMorphism> out;
  for (long col = 0; col < basis.cols(); ++col) {
    DiagramMorphism f{x, y, {}};
    for (const std::string& o : obs) {
      ExactMatrix c(y.dims.at(o), x.dims.at(o), x.field);
      for (long i = 0; i < c.rows(); ++i)
        for (long j = 0; j < c.cols(); ++j)
          c.set(i, j, basis.at(offset.at(o) + i * c.cols() + j, col));
      f.components.emplace(o, std::move(c));
    }
    validate_diagram_morphism(f);
    out.push_back(std::move(f));
  }
  return out;
}

VectDiagram representation_diagram(const Representation& m, const Realization& base) {
  validate_representation(m);
  VectDiagram x;
  x.base = base.cat;
  x.field = m.field;
  for (const std::string& o : base.cat.objects()) {
    auto it = m.dims.find(o);
    if (it == m.dims.end())
      fail(errc::mismatch, "realized object '" + o + "' is not a vertex");
    x.dims[o] = it->second;
  }
  const std::vector<Morph>& morphs = base.cat.morphisms();
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    ExactMatrix acc = ExactMatrix::identity(x.dims.at(morphs[i].src), m.field);
    for (const std::string& g : base.words[i]) {
      auto it = m.maps.find(g);
      if (it == m.maps.end())
        fail(errc::mismatch, "realized word uses unknown generator '" + g + "'");
      acc = it->second * acc;
    }
    x.maps.emplace(morphs[i].id, std::move(acc));
  }
  validate_diagram(x);
  return x;
}

Representation diagram_representation(const VectDiagram& x, const Quiver& q) {
  std::map<std::string, long> dims;
  for (const std::string& v : q.vertices()) {
    if (!x.base.has_object(v))
      fail(errc::mismatch, "vertex '" + v + "' is not an object of the base");
    dims[v] = x.dims.at(v);
  }
  std::map<std::string, ExactMatrix> maps;
  for (const Arrow& a : q.arrows()) {
    if (!x.base.has_morphism(a.id))
      fail(errc::mismatch, "arrow '" + a.id + "' is not a one-step path of the base");
    maps.emplace(a.id, x.maps.at(a.id));
  }
  return make_representation(q, x.field, std::move(dims), std::move(maps));
}

VectDiagram restrict_diagram(const VectDiagram& x, const CatFunctor& u) {
  if (x.base != u.target)
    fail(errc::base_mismatch, "diagram does not live over the functor target");
  VectDiagram out;
  out.base = u.source;
  out.field = x.field;
  for (const std::string& o : u.source.objects()) out.dims[o] = x.dims.at(apply_ob(u, o));
  for (const Morph& m : u.source.morphisms())
    out.maps.emplace(m.id, x.maps.at(apply_mor(u, m.id)));
  return out;
}

KanResult kan_extend(const VectDiagram& x, const CatFunctor& u, kan_side side) {
  if (x.base != u.source)
    fail(errc::base_mismatch, "diagram does not live over the functor source");
  const FinCat& bcat = u.target;
  KanResult out;
  out.diagram.base = bcat;
  out.diagram.field = x.field;

  std::map<std::string, CommaPoint> points;
  for (const std::string& b : bcat.objects()) {
    CommaPoint cp = comma_point(x, u, b, side);
    const std::vector<CommaArrow> arrows = comma_arrows(cp, u.source);
    long dim = 0;
    if (side == kan_side::left) {
      CokernelData ck = cokernel_data(left_difference(x, cp, arrows));
      dim = ck.proj.rows();
      cp.to_value = std::move(ck.proj);
      cp.from_value = std::move(ck.section);
    } else {
      cp.from_value = kernel_basis(right_difference(x, cp, arrows));
      dim = cp.from_value.cols();
    }
    out.diagram.dims[b] = dim;
    points.emplace(b, std::move(cp));
  }

  for (const Morph& h : bcat.morphisms()) {
    if (bcat.is_identity(h.id)) {
      out.diagram.maps.emplace(
          h.id, ExactMatrix::identity(out.diagram.dims.at(h.src), x.field));
      continue;
    }
    const CommaPoint& ps = points.at(h.src);
    const CommaPoint& pt = points.at(h.tgt);
    // Transport of the object sum: each comma object over the source is
    // pushed (left) or pulled (right) along h.
    ExactMatrix shift(pt.total, ps.total, x.field);
    if (side == kan_side::left) {
      for (std::size_t i = 0; i < ps.base_ob.size(); ++i) {
        const std::string m2 = bcat.compose(h.id, ps.leg[i]);
        auto it = pt.slot.find({ps.base_ob[i], m2});
        if (it == pt.slot.end()) fail(errc::internal, "pushed comma object not found");
        add_block(shift, pt.offset[it->second], ps.offset[i],
                  ExactMatrix::identity(x.dims.at(ps.base_ob[i]), x.field), +1);
      }
      out.diagram.maps.emplace(h.id, pt.to_value * (shift * ps.from_value));
    } else {
      for (std::size_t j = 0; j < pt.base_ob.size(); ++j) {
        const std::string m1 = bcat.compose(pt.leg[j], h.id);
        auto it = ps.slot.find({pt.base_ob[j], m1});
        if (it == ps.slot.end()) fail(errc::internal, "pulled comma object not found");
        add_block(shift, pt.offset[j], ps.offset[it->second],
                  ExactMatrix::identity(x.dims.at(pt.base_ob[j]), x.field), +1);
      }
      std::optional<ExactMatrix> sol = solve(pt.from_value, shift * ps.from_value);
      if (!sol) fail(errc::internal, "limit transition did not factor through the kernel");
      out.diagram.maps.emplace(h.id, std::move(*sol));
    }
  }

  for (const std::string& a : u.source.objects()) {
    const std::string ua = apply_ob(u, a);
    const CommaPoint& p = points.at(ua);
    auto it = p.slot.find({a, bcat.identity_of(ua)});
    if (it == p.slot.end()) fail(errc::internal, "identity leg missing from the comma");
    const long d = x.dims.at(a);
    if (side == kan_side::left)
      out.comparison.emplace(a, column_block(p.to_value, p.offset[it->second], d));
    else
      out.comparison.emplace(a, row_block(p.from_value, p.offset[it->second], d));
  }
  if (is_full_embedding(u))
    for (const auto& [a, cmp] : out.comparison)
      if (!inverse(cmp).has_value())
        fail(errc::internal, "full embedding comparison is not invertible at '" + a + "'");

  validate_diagram(out.diagram);
  return out;
}

ExactnessReport exactness_check(const VectDiagram& x, exactness_kind kind) {
  validate_diagram(x);
  switch (kind) {
    case exactness_kind::cocartesian_square:
    case exactness_kind::cartesian_square:
    case exactness_kind::cofiber_square: {
      if (x.base != square_category())
        fail(errc::shape_mismatch, "expected the commutative square as base");
      return check_square_kind(x, kind);
    }
    case exactness_kind::strongly_bicartesian_cube: {
      const long n = power_exponent(x.base.objects().size(), 2);
      if (n < 2 ||
          x.base != product_many(std::vector<FinCat>(n, interval_category())))
        fail(errc::shape_mismatch, "expected a power of the interval as base");
      return check_cube_faces(x, n, {0, 1}, {{0, 1}});
    }
    case exactness_kind::biproduct_conditions: {
      const long n = power_exponent(x.base.objects().size(), 3);
      if (n < 1 ||
          x.base != product_many(std::vector<FinCat>(n, three_chain_category())))
        fail(errc::shape_mismatch, "expected a power of the 3-chain as base");
      return check_biproduct(x, n);
    }
  }
  fail(errc::internal, "unhandled exactness kind");
}

VectDiagram biproduct_cube(const std::vector<long>& inputs, FieldSpec field) {
  const long n = static_cast<long>(inputs.size());
  if (n < 1) fail(errc::bad_input, "at least one input dimension required");
  for (long d : inputs)
    if (d < 0) fail(errc::bad_input, "negative input dimension");

  FinCat cube1 = product_many(std::vector<FinCat>(n, interval_category()));
  FinCat cube2 = product_many(std::vector<FinCat>(n, three_chain_category()));

  std::vector<std::string> star_obs;
  for (long k = 0; k < n; ++k) {
    std::vector<long> t(n, 1);
    t[k] = 0;
    star_obs.push_back(tuple_name(t));
  }
  std::vector<std::string> half_obs = star_obs;
  half_obs.push_back(tuple_name(std::vector<long>(n, 1)));
  std::vector<std::string> mid_obs;
  for (const std::vector<long>& t : all_tuples(n, {1, 2})) mid_obs.push_back(tuple_name(t));
  for (long k = 0; k < n; ++k) {
    std::vector<long> t(n, 2);
    t[k] = 0;
    mid_obs.push_back(tuple_name(t));
  }

  FinCat star_cat = full_subcategory(cube1, star_obs);
  FinCat half_cat = full_subcategory(cube1, half_obs);
  FinCat mid_cat = full_subcategory(cube2, mid_obs);

  CatFunctor w1 = inclusion_functor(star_cat, half_cat);
  CatFunctor w2 = inclusion_functor(half_cat, cube1);
  // The coordinate shift x -> x + 1 embeds the small cube into the middle
  // of the big one.
  CatFunctor w3;
  w3.source = cube1;
  w3.target = mid_cat;
  for (const std::string& o : cube1.objects()) {
    std::vector<long> t = parse_tuple(o);
    for (long& v : t) ++v;
    w3.ob[o] = tuple_name(t);
  }
  const std::map<std::string, std::string> shift_mor{
      {"1_0", "1_1"}, {"1_1", "1_2"}, {"s01", "s12"}};
  for (const Morph& m : cube1.morphisms()) {
    std::vector<std::string> parts = split_tuple(m.id);
    for (std::string& p : parts) p = shift_mor.at(p);
    w3.mor[m.id] = join_tuple(parts);
  }
  check_functor(w3);
  CatFunctor w4 = inclusion_functor(mid_cat, cube2);

  std::map<std::string, long> dims0;
  for (long k = 0; k < n; ++k) dims0[star_obs[k]] = inputs[k];
  VectDiagram x0 = make_diagram(star_cat, field, std::move(dims0), {});

  KanResult r1 = kan_extend(x0, w1, kan_side::right);
  KanResult r2 = kan_extend(r1.diagram, w2, kan_side::right);
  KanResult r3 = kan_extend(r2.diagram, w3, kan_side::left);
  KanResult r4 = kan_extend(r3.diagram, w4, kan_side::right);

  ExactnessReport audit = exactness_check(r4.diagram, exactness_kind::biproduct_conditions);
  if (!audit.ok)
    fail(errc::internal, "biproduct construction failed its own audit: " + audit.detail);
  long centre = 0;
  for (long d : inputs) centre += d;
  if (r4.diagram.dims.at(tuple_name(std::vector<long>(n, 1))) != centre)
    fail(errc::internal, "biproduct centre has the wrong dimension");
  return r4.diagram;
}

VectDiagram invert_cube(const VectDiagram& x, const ReflectionChain& chain) {
  if (x.base != chain.cat1.cat)
    fail(errc::base_mismatch, "diagram does not live over the glued cube category");
  validate_diagram(x);

  // Refuse singular length-two composites before touching anything.
  VectDiagram on_cube = restrict_diagram(x, chain.iota1);
  const long n = chain.valence;
  for (long k = 0; k < n; ++k)
    for (const std::vector<long>& frame : fixed_frames(n, k, -1, {0, 1, 2})) {
      std::vector<long> from = frame, to = frame;
      from[k] = 0;
      to[k] = 2;
      std::vector<std::string> h =
          on_cube.base.hom(tuple_name(from), tuple_name(to));
      if (h.size() != 1)
        fail(errc::internal, "expected a unique length-two composite");
      if (!inverse(on_cube.maps.at(h[0])).has_value())
        fail(errc::not_invertible, "length-two composite '" +
                                       apply_mor(chain.iota1, h[0]) +
                                       "' is not invertible");
    }

  // One matrix per generator of the localized presentation; the adjoined
  // inverses invert the unique composite running the other way.
  std::map<std::string, ExactMatrix> gen;
  for (const auto& [g, mname] : chain.cat2.generator_morphism) {
    if (g.rfind("@inv", 0) == 0) {
      const Morph& mo = chain.cat2.cat.morphism(mname);
      std::vector<std::string> back = chain.cat1.cat.hom(mo.tgt, mo.src);
      if (back.size() != 1)
        fail(errc::internal, "ambiguous composite behind generator '" + g + "'");
      std::optional<ExactMatrix> inv = inverse(x.maps.at(back[0]));
      if (!inv)
        fail(errc::not_invertible,
             "length-two composite '" + back[0] + "' is not invertible");
      gen.emplace(g, std::move(*inv));
    } else {
      auto it = chain.cat1.generator_morphism.find(g);
      if (it == chain.cat1.generator_morphism.end())
        fail(errc::internal, "generator '" + g + "' missing from the glued category");
      gen.emplace(g, x.maps.at(it->second));
    }
  }

  VectDiagram y;
  y.base = chain.cat2.cat;
  y.field = x.field;
  for (const std::string& o : chain.cat2.cat.objects()) {
    auto it = x.dims.find(o);
    if (it == x.dims.end())
      fail(errc::internal, "localized object '" + o + "' is missing upstream");
    y.dims[o] = it->second;
  }
  const std::vector<Morph>& morphs = chain.cat2.cat.morphisms();
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    ExactMatrix acc = ExactMatrix::identity(y.dims.at(morphs[i].src), x.field);
    for (const std::string& g : chain.cat2.words[i]) acc = gen.at(g) * acc;
    y.maps.emplace(morphs[i].id, std::move(acc));
  }
  validate_diagram(y);
  return y;
}

Representation pipeline_reflect(const Representation& m, const std::string& q0,
                                std::vector<PipelineStage>* trace) {
  validate_representation(m);
  ReflectionChain chain = build_reflection_chain(m.quiver, q0);

  auto record = [&](const std::string& stage, const VectDiagram& d, const std::string& note) {
    if (trace != nullptr) trace->push_back({stage, d.dims, note});
  };

  VectDiagram x = representation_diagram(m, chain.tree);
  record("tree", x, "realized over the free category of the input tree");
  KanResult s1 = kan_extend(x, chain.u1, kan_side::right);
  record("apex", s1.diagram, "right extension adding the cube apex");
  KanResult s2 = kan_extend(s1.diagram, chain.u2, kan_side::right);
  record("half-cube", s2.diagram, "right extension through the half cube");
  KanResult s3 = kan_extend(s2.diagram, chain.u3, kan_side::left);
  record("corners", s3.diagram, "left extension creating the outer corners");
  KanResult s4 = kan_extend(s3.diagram, chain.u4, kan_side::right);
  record("cube", s4.diagram, "right extension filling the coordinate cube");

  VectDiagram cube_part = restrict_diagram(s4.diagram, chain.iota1);
  ExactnessReport cube_audit = exactness_check(cube_part, exactness_kind::biproduct_conditions);
  if (!cube_audit.ok) fail(errc::audit_failed, "cube stage audit: " + cube_audit.detail);
  record("cube-audit", cube_part, "biproduct conditions hold");

  VectDiagram inverted = invert_cube(s4.diagram, chain);
  record("invert", inverted, "length-two coordinate composites inverted");
  KanResult s6 = kan_extend(inverted, chain.u6, kan_side::right);
  record("cofiber", s6.diagram, "right extension adding the cofiber object");
  KanResult s7 = kan_extend(s6.diagram, chain.u7, kan_side::left);
  record("square", s7.diagram, "left extension closing the square");

  VectDiagram square_part = restrict_diagram(s7.diagram, chain.iota3);
  ExactnessReport square_audit = exactness_check(square_part, exactness_kind::cofiber_square);
  if (!square_audit.ok)
    fail(errc::audit_failed, "cofiber stage audit: " + square_audit.detail);
  record("square-audit", square_part, "cofiber square is exact");

  VectDiagram reflected = restrict_diagram(s7.diagram, chain.reflected_embed);
  record("reflected", reflected, "restricted to the reflected tree");
  return diagram_representation(reflected, reflect(m.quiver, q0));
}

}  // namespace reflekt
