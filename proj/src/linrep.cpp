#include "reflekt/linrep.hpp"

#include <algorithm>
#include <random>

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

std::vector<Arrow> sorted_arrows_out(const Quiver& q, const std::string& v) {
  std::vector<Arrow> out;
  for (const Arrow* a : q.arrows_out(v)) out.push_back(*a);
  std::sort(out.begin(), out.end(), [](const Arrow& x, const Arrow& y) { return x.id < y.id; });
  return out;
}

std::vector<Arrow> sorted_arrows_in(const Quiver& q, const std::string& v) {
  std::vector<Arrow> out;
  for (const Arrow* a : q.arrows_in(v)) out.push_back(*a);
  std::sort(out.begin(), out.end(), [](const Arrow& x, const Arrow& y) { return x.id < y.id; });
  return out;
}

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

}  // namespace

bool Representation::operator==(const Representation& o) const {
  return quiver == o.quiver && field == o.field && dims == o.dims && maps == o.maps;
}

Representation make_representation(Quiver quiver, FieldSpec field,
                                   std::map<std::string, long> dims,
                                   std::map<std::string, ExactMatrix> maps) {
  Representation m{std::move(quiver), field, std::move(dims), std::move(maps)};
  for (const auto& [v, d] : m.dims) {
    if (!m.quiver.has_vertex(v)) fail(errc::unknown_vertex, "dims mention '" + v + "'");
    if (d < 0) fail(errc::bad_input, "negative dimension at '" + v + "'");
  }
  for (const auto& v : m.quiver.vertices())
    if (!m.dims.count(v)) m.dims[v] = 0;
  for (const auto& [a, mat] : m.maps)
    if (!m.quiver.has_arrow(a)) fail(errc::unknown_arrow, "maps mention '" + a + "'");
  for (const auto& a : m.quiver.arrows())
    if (!m.maps.count(a.id))
      m.maps.emplace(a.id, ExactMatrix(m.dims[a.tgt], m.dims[a.src], field));
  validate_representation(m);
  return m;
}

Representation zero_representation(const Quiver& q, FieldSpec field) {
  return make_representation(q, field, {}, {});
}

void validate_representation(const Representation& m) {
  for (const auto& a : m.quiver.arrows()) {
    auto it = m.maps.find(a.id);
    if (it == m.maps.end()) fail(errc::bad_input, "missing map for arrow '" + a.id + "'");
    const ExactMatrix& mat = it->second;
    if (mat.field() != m.field) fail(errc::bad_field, "map '" + a.id + "' field mismatch");
    if (mat.rows() != m.dims.at(a.tgt) || mat.cols() != m.dims.at(a.src))
      fail(errc::bad_input, "map '" + a.id + "' has shape " + std::to_string(mat.rows()) + "x" +
                                std::to_string(mat.cols()));
  }
}

void validate_morphism(const RepMorphism& f) {
  if (f.source.quiver != f.target.quiver || f.source.field != f.target.field)
    fail(errc::mismatch, "morphism endpoints live on different quivers or fields");
  for (const auto& v : f.source.quiver.vertices()) {
    auto it = f.components.find(v);
    if (it == f.components.end()) fail(errc::bad_morphism, "missing component at '" + v + "'");
    if (it->second.rows() != f.target.dims.at(v) || it->second.cols() != f.source.dims.at(v))
      fail(errc::bad_morphism, "component at '" + v + "' has the wrong shape");
  }
  for (const auto& a : f.source.quiver.arrows()) {
    ExactMatrix lhs = f.components.at(a.tgt) * f.source.maps.at(a.id);
    ExactMatrix rhs = f.target.maps.at(a.id) * f.components.at(a.src);
    if (lhs != rhs) fail(errc::bad_morphism, "intertwining fails at arrow '" + a.id + "'");
  }
}

RepMorphism identity_morphism(const Representation& m) {
  RepMorphism f{m, m, {}};
  for (const auto& [v, d] : m.dims) f.components.emplace(v, ExactMatrix::identity(d, m.field));
  return f;
}

RepMorphism compose(const RepMorphism& g, const RepMorphism& f) {
  if (f.target != g.source) fail(errc::mismatch, "composition endpoints differ");
  RepMorphism h{f.source, g.target, {}};
  for (const auto& [v, mat] : f.components) h.components.emplace(v, g.components.at(v) * mat);
  return h;
}

bool morphism_equal(const RepMorphism& f, const RepMorphism& g) {
  return f.source == g.source && f.target == g.target && f.components == g.components;
}

ExactMatrix morphism_to_vector(const RepMorphism& f) {
  long total = 0;
  for (const auto& [v, mat] : f.components) total += mat.rows() * mat.cols();
  ExactMatrix col(total, 1, f.source.field);
  long at = 0;
  for (const auto& [v, mat] : f.components)
    for (long i = 0; i < mat.rows(); ++i)
      for (long j = 0; j < mat.cols(); ++j) col.set(at++, 0, mat.at(i, j));
  return col;
}

RepMorphism vector_from_coords(const Representation& m, const Representation& n,
                               const ExactMatrix& column) {
  RepMorphism f{m, n, {}};
  long at = 0;
  for (const auto& [v, dn] : n.dims) {
    long dm = m.dims.at(v);
    ExactMatrix mat(dn, dm, m.field);
    for (long i = 0; i < dn; ++i)
      for (long j = 0; j < dm; ++j) mat.set(i, j, column.at(at++, 0));
    f.components[v] = mat;
  }
  if (at != column.rows()) fail(errc::internal, "hom coordinate length mismatch");
  return f;
}

std::vector<RepMorphism> hom_basis(const Representation& m, const Representation& n) {
  if (m.quiver != n.quiver || m.field != n.field)
    fail(errc::mismatch, "hom spaces need a common quiver and field");
  std::map<std::string, long> offset;
  long total = 0;
  for (const auto& [v, dn] : n.dims) {
    offset[v] = total;
    total += dn * m.dims.at(v);
  }
  long rows = 0;
  for (const auto& a : m.quiver.arrows()) rows += n.dims.at(a.tgt) * m.dims.at(a.src);
  ExactMatrix sys(rows, total, m.field);
  long r0 = 0;
  for (const auto& a : m.quiver.arrows()) {
    const std::string &s = a.src, &t = a.tgt;
    const ExactMatrix& ma = m.maps.at(a.id);
    const ExactMatrix& na = n.maps.at(a.id);
    long nt = n.dims.at(t), ms = m.dims.at(s), mt = m.dims.at(t), ns = n.dims.at(s);
    for (long i = 0; i < nt; ++i)
      for (long j = 0; j < ms; ++j) {
        long row = r0 + i * ms + j;
        for (long k = 0; k < mt; ++k) {
          long u = offset[t] + i * mt + k;
          sys.set(row, u, sys.at(row, u) + ma.at(k, j));
        }
        for (long l = 0; l < ns; ++l) {
          long u = offset[s] + l * ms + j;
          sys.set(row, u, sys.at(row, u) - na.at(i, l));
        }
      }
    r0 += nt * ms;
  }
  ExactMatrix ker = kernel_basis(sys);
  std::vector<RepMorphism> basis;
  for (long c = 0; c < ker.cols(); ++c)
    basis.push_back(vector_from_coords(m, n, column_block(ker, c, 1)));
  return basis;
}

KernelResult kernel(const RepMorphism& f) {
  validate_morphism(f);
  const Representation& m = f.source;
  std::map<std::string, ExactMatrix> bases;
  std::map<std::string, long> dims;
  for (const auto& v : m.quiver.vertices()) {
    ExactMatrix k = kernel_basis(f.components.at(v));
    dims[v] = k.cols();
    bases.emplace(v, std::move(k));
  }
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : m.quiver.arrows()) {
    auto sol = solve(bases.at(a.tgt), m.maps.at(a.id) * bases.at(a.src));
    if (!sol) fail(errc::internal, "kernel structure map did not factor");
    maps.emplace(a.id, *sol);
  }
  KernelResult out;
  out.rep = make_representation(m.quiver, m.field, dims, maps);
  out.map = RepMorphism{out.rep, m, bases};
  validate_morphism(out.map);
  return out;
}

CokernelResult cokernel(const RepMorphism& f) {
  validate_morphism(f);
  const Representation& n = f.target;
  std::map<std::string, CokernelData> data;
  std::map<std::string, long> dims;
  for (const auto& v : n.quiver.vertices()) {
    data.emplace(v, cokernel_data(f.components.at(v)));
    dims[v] = data.at(v).proj.rows();
  }
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : n.quiver.arrows())
    maps.emplace(a.id, data.at(a.tgt).proj * n.maps.at(a.id) * data.at(a.src).section);
  CokernelResult out;
  out.rep = make_representation(n.quiver, n.field, dims, maps);
  std::map<std::string, ExactMatrix> projs;
  for (auto& [v, d] : data) projs.emplace(v, d.proj);
  out.map = RepMorphism{n, out.rep, projs};
  validate_morphism(out.map);
  return out;
}

DirectSumResult direct_sum(const std::vector<Representation>& parts, const Quiver& q,
                           FieldSpec field) {
  for (const auto& p : parts)
    if (p.quiver != q || p.field != field) fail(errc::mismatch, "direct sum over mixed bases");
  std::map<std::string, long> dims;
  for (const auto& v : q.vertices()) {
    dims[v] = 0;
    for (const auto& p : parts) dims[v] += p.dims.at(v);
  }
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : q.arrows()) {
    ExactMatrix block(dims[a.tgt], dims[a.src], field);
    long r = 0, c = 0;
    for (const auto& p : parts) {
      const ExactMatrix& pm = p.maps.at(a.id);
      for (long i = 0; i < pm.rows(); ++i)
        for (long j = 0; j < pm.cols(); ++j) block.set(r + i, c + j, pm.at(i, j));
      r += pm.rows();
      c += pm.cols();
    }
    maps.emplace(a.id, std::move(block));
  }
  DirectSumResult out;
  out.rep = make_representation(q, field, dims, maps);
  std::map<std::string, long> at;
  for (const auto& v : q.vertices()) at[v] = 0;
  for (const auto& p : parts) {
    RepMorphism inc{p, out.rep, {}}, prj{out.rep, p, {}};
    for (const auto& v : q.vertices()) {
      ExactMatrix i_mat(dims[v], p.dims.at(v), field), p_mat(p.dims.at(v), dims[v], field);
      for (long i = 0; i < p.dims.at(v); ++i) {
        i_mat.set(at[v] + i, i, 1);
        p_mat.set(i, at[v] + i, 1);
      }
      inc.components.emplace(v, std::move(i_mat));
      prj.components.emplace(v, std::move(p_mat));
      at[v] += p.dims.at(v);
    }
    validate_morphism(inc);
    validate_morphism(prj);
    out.inclusions.push_back(std::move(inc));
    out.projections.push_back(std::move(prj));
  }
  return out;
}

Representation projective(const Quiver& q, const std::string& v, FieldSpec field) {
  auto paths = enumerate_paths(q, v);
  std::map<std::string, long> dims;
  for (const auto& w : q.vertices()) {
    auto it = paths.find(w);
    dims[w] = it == paths.end() ? 0 : static_cast<long>(it->second.size());
  }
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : q.arrows()) {
    ExactMatrix mat(dims[a.tgt], dims[a.src], field);
    if (dims[a.src] > 0 && dims[a.tgt] > 0) {
      const auto& src_paths = paths.at(a.src);
      const auto& tgt_paths = paths.at(a.tgt);
      for (long j = 0; j < static_cast<long>(src_paths.size()); ++j) {
        std::vector<std::string> extended = src_paths[j];
        extended.push_back(a.id);
        auto it = std::find(tgt_paths.begin(), tgt_paths.end(), extended);
        if (it == tgt_paths.end()) fail(errc::internal, "path concatenation left the basis");
        mat.set(static_cast<long>(it - tgt_paths.begin()), j, 1);
      }
    }
    maps.emplace(a.id, std::move(mat));
  }
  return make_representation(q, field, dims, maps);
}

RepMorphism path_morphism(const Quiver& q, const std::string& v, const std::string& w,
                          const std::vector<std::string>& path, FieldSpec field) {
  std::string at = v;
  for (const auto& aid : path) {
    const Arrow& a = q.arrow(aid);
    if (a.src != at) fail(errc::bad_input, "path breaks at arrow '" + aid + "'");
    at = a.tgt;
  }
  if (at != w) fail(errc::bad_input, "path ends at '" + at + "', not '" + w + "'");
  Representation pv = projective(q, v, field);
  Representation pw = projective(q, w, field);
  auto paths_v = enumerate_paths(q, v);
  auto paths_w = enumerate_paths(q, w);
  RepMorphism f{pw, pv, {}};
  for (const auto& x : q.vertices()) {
    ExactMatrix mat(pv.dims.at(x), pw.dims.at(x), field);
    if (pw.dims.at(x) > 0 && pv.dims.at(x) > 0) {
      const auto& from = paths_w.at(x);
      const auto& to = paths_v.at(x);
      for (long j = 0; j < static_cast<long>(from.size()); ++j) {
        std::vector<std::string> prefixed = path;
        prefixed.insert(prefixed.end(), from[j].begin(), from[j].end());
        auto it = std::find(to.begin(), to.end(), prefixed);
        if (it == to.end()) fail(errc::internal, "prefixed path left the basis");
        mat.set(static_cast<long>(it - to.begin()), j, 1);
      }
    }
    f.components.emplace(x, std::move(mat));
  }
  validate_morphism(f);
  return f;
}

Representation reflect_minus(const Representation& m, const std::string& q0) {
  validate_representation(m);
  if (classify_vertex(m.quiver, q0) != VertexClass::source)
    fail(errc::not_a_source, "'" + q0 + "' is not a source");
  auto outs = sorted_arrows_out(m.quiver, q0);
  std::vector<ExactMatrix> blocks;
  long d_total = 0;
  for (const auto& a : outs) {
    blocks.push_back(m.maps.at(a.id));
    d_total += m.dims.at(a.tgt);
  }
  ExactMatrix phi = vstack_all(blocks, m.dims.at(q0), m.field);
  CokernelData cd = cokernel_data(phi);
  Quiver reflected = reflect(m.quiver, q0);
  std::map<std::string, long> dims = m.dims;
  dims[q0] = cd.proj.rows();
  std::map<std::string, ExactMatrix> maps;
  long offset = 0;
  for (const auto& a : outs) {
    maps.emplace(a.id, column_block(cd.proj, offset, m.dims.at(a.tgt)));
    offset += m.dims.at(a.tgt);
  }
  for (const auto& a : m.quiver.arrows())
    if (!maps.count(a.id)) maps.emplace(a.id, m.maps.at(a.id));
  return make_representation(reflected, m.field, dims, maps);
}

Representation reflect_plus(const Representation& n, const std::string& q0) {
  validate_representation(n);
  if (classify_vertex(n.quiver, q0) != VertexClass::sink)
    fail(errc::not_a_sink, "'" + q0 + "' is not a sink");
  auto ins = sorted_arrows_in(n.quiver, q0);
  ExactMatrix psi(n.dims.at(q0), 0, n.field);
  for (const auto& a : ins) psi = hstack(psi, n.maps.at(a.id));
  ExactMatrix k = kernel_basis(psi);
  Quiver reflected = reflect(n.quiver, q0);
  std::map<std::string, long> dims = n.dims;
  dims[q0] = k.cols();
  std::map<std::string, ExactMatrix> maps;
  long offset = 0;
  for (const auto& a : ins) {
    maps.emplace(a.id, row_block(k, offset, n.dims.at(a.src)));
    offset += n.dims.at(a.src);
  }
  for (const auto& a : n.quiver.arrows())
    if (!maps.count(a.id)) maps.emplace(a.id, n.maps.at(a.id));
  return make_representation(reflected, n.field, dims, maps);
}

AdjunctionReport check_adjunction(const Representation& m, const Representation& n,
                                  const std::string& q0) {
  validate_representation(m);
  validate_representation(n);
  if (m.field != n.field) fail(errc::mismatch, "fields differ");
  if (n.quiver != reflect(m.quiver, q0))
    fail(errc::mismatch, "second representation does not live on the reflected quiver");
  Representation sm = reflect_minus(m, q0);
  Representation sn = reflect_plus(n, q0);
  auto h1 = hom_basis(sm, n);
  auto h2 = hom_basis(m, sn);

  auto outs = sorted_arrows_out(m.quiver, q0);
  ExactMatrix psi(n.dims.at(q0), 0, n.field);
  for (const auto& a : outs) psi = hstack(psi, n.maps.at(a.id));
  ExactMatrix k = kernel_basis(psi);

  long d1 = static_cast<long>(h1.size()), d2 = static_cast<long>(h2.size());
  long coord_len = 0;
  for (const auto& [v, dn] : sn.dims) coord_len += dn * m.dims.at(v);
  ExactMatrix b2(coord_len, d2, m.field);
  for (long c = 0; c < d2; ++c) {
    ExactMatrix col = morphism_to_vector(h2[c]);
    for (long i = 0; i < coord_len; ++i) b2.set(i, c, col.at(i, 0));
  }

  AdjunctionReport rep;
  rep.dim_lhs = d1;
  rep.dim_rhs = d2;
  rep.iso = ExactMatrix(d2, d1, m.field);
  for (long c = 0; c < d1; ++c) {
    const RepMorphism& g = h1[c];
    std::vector<ExactMatrix> blocks;
    for (const auto& a : outs) blocks.push_back(g.components.at(a.tgt) * m.maps.at(a.id));
    ExactMatrix stacked = vstack_all(blocks, m.dims.at(q0), m.field);
    auto lifted = solve(k, stacked);
    if (!lifted) fail(errc::internal, "adjunction transfer did not land in the kernel");
    RepMorphism ghat{m, sn, {}};
    for (const auto& v : m.quiver.vertices())
      ghat.components.emplace(v, v == q0 ? *lifted : g.components.at(v));
    validate_morphism(ghat);
    ExactMatrix coords = morphism_to_vector(ghat);
    auto sol = solve(b2, coords);
    if (!sol) fail(errc::internal, "transferred morphism escaped the hom space");
    for (long i = 0; i < d2; ++i) rep.iso.set(i, c, sol->at(i, 0));
  }
  rep.ok = (d1 == d2) && rank_of(rep.iso) == d1;
  return rep;
}

AprReport apr_tilting_check(const Quiver& q, const std::string& q0, FieldSpec field) {
  if (!is_oriented_tree(q)) fail(errc::not_a_tree, "tilting check needs an oriented tree");
  if (classify_vertex(q, q0) != VertexClass::source)
    fail(errc::not_a_source, "'" + q0 + "' is not a source");
  Quiver qr = reflect(q, q0);

  std::map<std::string, Representation> summands;
  for (const auto& v : q.vertices())
    if (v != q0) summands.emplace(v, projective(qr, v, field));

  auto ins = sorted_arrows_in(qr, q0);
  std::vector<Representation> targets;
  for (const auto& a : ins) targets.push_back(projective(qr, a.src, field));
  DirectSumResult sum = direct_sum(targets, qr, field);
  Representation p0 = projective(qr, q0, field);
  RepMorphism canonical{p0, sum.rep, {}};
  for (const auto& x : qr.vertices()) {
    std::vector<ExactMatrix> blocks;
    for (size_t i = 0; i < ins.size(); ++i) {
      RepMorphism yon = path_morphism(qr, ins[i].src, q0, {ins[i].id}, field);
      blocks.push_back(yon.components.at(x));
    }
    canonical.components.emplace(x, vstack_all(blocks, p0.dims.at(x), field));
  }
  validate_morphism(canonical);
  summands.emplace(q0, cokernel(canonical).rep);

  AprReport rep;
  for (const auto& [v, s] : summands) rep.order.push_back(v);
  auto counts = path_count_matrix(q);
  long n = static_cast<long>(rep.order.size());
  rep.hom_matrix.assign(n, std::vector<long>(n, 0));
  rep.path_matrix.assign(n, std::vector<long>(n, 0));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      rep.hom_matrix[i][j] =
          static_cast<long>(hom_basis(summands.at(rep.order[i]), summands.at(rep.order[j])).size());
      rep.path_matrix[i][j] = counts[rep.order[i]][rep.order[j]];
      rep.dim_end += rep.hom_matrix[i][j];
    }
  rep.paths_original = total_path_count(q);
  rep.paths_reflected = total_path_count(qr);
  rep.ok = rep.dim_end == rep.paths_original;
  for (long i = 0; i < n && rep.ok; ++i)
    for (long j = 0; j < n; ++j)
      if (rep.hom_matrix[i][j] != rep.path_matrix[j][i]) {
        rep.ok = false;
        break;
      }
  return rep;
}

long euler_form(const Quiver& q, const std::map<std::string, long>& d,
                const std::map<std::string, long>& e) {
  auto get = [](const std::map<std::string, long>& m, const std::string& v) {
    auto it = m.find(v);
    return it == m.end() ? 0L : it->second;
  };
  long total = 0;
  for (const auto& v : q.vertices()) total += get(d, v) * get(e, v);
  for (const auto& a : q.arrows()) total -= get(d, a.src) * get(e, a.tgt);
  return total;
}

std::map<std::string, long> reflect_dim_vector(const Quiver& q, const std::string& q0,
                                               const std::map<std::string, long>& d) {
  VertexClass c = classify_vertex(q, q0);
  if (c != VertexClass::source && c != VertexClass::sink)
    fail(errc::bad_input, "'" + q0 + "' is neither a source nor a sink");
  auto get = [&](const std::string& v) {
    auto it = d.find(v);
    return it == d.end() ? 0L : it->second;
  };
  std::map<std::string, long> out;
  for (const auto& v : q.vertices()) out[v] = get(v);
  long sum = 0;
  for (const auto& a : q.arrows()) {
    if (a.src == q0) sum += get(a.tgt);
    if (a.tgt == q0) sum += get(a.src);
  }
  out[q0] = sum - get(q0);
  return out;
}

EulerReport euler_reflection_check(const Quiver& q, const std::string& q0,
                                   const std::vector<std::map<std::string, long>>& samples) {
  if (!is_oriented_tree(q)) fail(errc::not_a_tree, "Euler check needs an oriented tree");
  Quiver qr = reflect(q, q0);
  EulerReport rep;
  rep.ok = true;
  for (const auto& d : samples)
    for (const auto& e : samples) {
      ++rep.pairs_checked;
      long lhs = euler_form(q, d, e);
      long rhs = euler_form(qr, reflect_dim_vector(q, q0, d), reflect_dim_vector(q, q0, e));
      if (lhs != rhs && rep.ok) {
        rep.ok = false;
        rep.detail = "pair " + std::to_string(rep.pairs_checked) + ": " + std::to_string(lhs) +
                     " vs " + std::to_string(rhs);
      }
    }
  return rep;
}

std::optional<RepMorphism> iso_search(const Representation& m, const Representation& n,
                                      unsigned seed, int attempts) {
  if (m.quiver != n.quiver || m.field != n.field) return std::nullopt;
  for (const auto& [v, d] : m.dims)
    if (n.dims.at(v) != d) return std::nullopt;
  auto basis = hom_basis(m, n);
  auto invertible = [&](const RepMorphism& f) {
    for (const auto& [v, mat] : f.components)
      if (!inverse(mat)) return false;
    return true;
  };
  RepMorphism zero{m, n, {}};
  for (const auto& [v, d] : m.dims) zero.components.emplace(v, ExactMatrix(d, d, m.field));
  if (basis.empty()) return invertible(zero) ? std::optional<RepMorphism>(zero) : std::nullopt;
  for (const auto& f : basis)
    if (invertible(f)) return f;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (int t = 0; t < attempts; ++t) {
    RepMorphism f = zero;
    for (const auto& b : basis) {
      mpq_class c(coeff(rng));
      for (auto& [v, mat] : f.components) mat = mat + b.components.at(v).scaled(c);
    }
    if (invertible(f)) {
      validate_morphism(f);
      return f;
    }
  }
  return std::nullopt;
}

}  // namespace reflekt
