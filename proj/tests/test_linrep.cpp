#include "reflekt/linrep.hpp"

#include <random>

#include "doctest.h"
#include "reflekt/error.hpp"

using namespace reflekt;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Quiver a2() { return Quiver({"1", "2"}, {{"a", "1", "2"}}); }
Quiver a2_rev() { return Quiver({"1", "2"}, {{"a", "2", "1"}}); }
Quiver star2() { return Quiver({"0", "1", "2"}, {{"a", "0", "1"}, {"b", "0", "2"}}); }

Representation simple(const Quiver& q, const std::string& v, FieldSpec f) {
  return make_representation(q, f, {{v, 1}}, {});
}

Representation arrow_rep_id(const Quiver& q, FieldSpec f) {
  // all dims 1, all maps the 1x1 identity
  std::map<std::string, long> dims;
  for (const auto& v : q.vertices()) dims[v] = 1;
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : q.arrows()) maps.emplace(a.id, ExactMatrix::identity(1, f));
  return make_representation(q, f, dims, maps);
}

Representation random_rep(std::mt19937& rng, const Quiver& q, FieldSpec f, long maxdim) {
  std::uniform_int_distribution<long> dim(0, maxdim);
  std::uniform_int_distribution<int> entry(-3, 3);
  std::map<std::string, long> dims;
  for (const auto& v : q.vertices()) dims[v] = dim(rng);
  std::map<std::string, ExactMatrix> maps;
  for (const auto& a : q.arrows()) {
    ExactMatrix m(dims[a.tgt], dims[a.src], f);
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j) m.set(i, j, entry(rng));
    maps.emplace(a.id, m);
  }
  return make_representation(q, f, dims, maps);
}

Quiver random_tree(std::mt19937& rng, int n) {
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    int j = parent(rng);
    std::string u = "v" + std::to_string(j), w = "v" + std::to_string(i);
    if (rng() % 2) std::swap(u, w);
    as.push_back({"e" + std::to_string(i), u, w});
  }
  return Quiver(vs, as);
}

std::string find_source(const Quiver& q) {
  for (const auto& v : q.vertices())
    if (classify_vertex(q, v) == VertexClass::source) return v;
  return "";
}

// Independent hom-dimension oracle over F_2: enumerate every component
// assignment bit by bit and count the ones satisfying the intertwining
// equations; the count is 2^dim.
long homdim_bruteforce_f2(const Representation& m, const Representation& n) {
  std::vector<std::pair<std::string, std::pair<long, long>>> shapes;
  long bits = 0;
  for (const auto& [v, dn] : n.dims) {
    shapes.push_back({v, {dn, m.dims.at(v)}});
    bits += dn * m.dims.at(v);
  }
  REQUIRE(bits <= 16);
  FieldSpec f2 = FieldSpec::prime(2);
  long solutions = 0;
  for (long mask = 0; mask < (1L << bits); ++mask) {
    RepMorphism f{m, n, {}};
    long at = 0;
    for (const auto& [v, sh] : shapes) {
      ExactMatrix mat(sh.first, sh.second, f2);
      for (long i = 0; i < sh.first; ++i)
        for (long j = 0; j < sh.second; ++j) mat.set(i, j, (mask >> at++) & 1);
      f.components.emplace(v, mat);
    }
    bool good = true;
    for (const auto& a : m.quiver.arrows())
      if (f.components.at(a.tgt) * m.maps.at(a.id) != n.maps.at(a.id) * f.components.at(a.src)) {
        good = false;
        break;
      }
    if (good) ++solutions;
  }
  long dim = 0;
  while ((1L << dim) < solutions) ++dim;
  REQUIRE((1L << dim) == solutions);
  return dim;
}

// Independent path-count oracle: powers of the arrow-count adjacency matrix.
long path_count_oracle(const Quiver& q, const std::string& u, const std::string& w) {
  long n = static_cast<long>(q.vertices().size());
  std::map<std::string, long> idx;
  for (long i = 0; i < n; ++i) idx[q.vertices()[i]] = i;
  std::vector<std::vector<long>> a(n, std::vector<long>(n, 0)), acc(n, std::vector<long>(n, 0)),
      pw(n, std::vector<long>(n, 0));
  for (const auto& ar : q.arrows()) ++a[idx[ar.src]][idx[ar.tgt]];
  for (long i = 0; i < n; ++i) pw[i][i] = 1;
  for (long k = 0; k < n; ++k) {
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) acc[i][j] += pw[i][j];
    std::vector<std::vector<long>> next(n, std::vector<long>(n, 0));
    for (long i = 0; i < n; ++i)
      for (long l = 0; l < n; ++l)
        for (long j = 0; j < n; ++j) next[i][j] += pw[i][l] * a[l][j];
    pw = next;
  }
  return acc[idx[u]][idx[w]];
}

}  // namespace

TEST_CASE("representation validation") {
  CHECK_THROWS_AS(make_representation(a2(), Q, {{"9", 1}}, {}), error);
  CHECK_THROWS_AS(make_representation(a2(), Q, {{"1", 1}, {"2", 1}},
                                      {{"a", ExactMatrix(2, 1, Q)}}),
                  error);
  auto m = make_representation(a2(), Q, {{"1", 2}}, {});
  CHECK(m.dims.at("2") == 0);
  CHECK(m.maps.at("a").rows() == 0);
}

TEST_CASE("hom_basis small cases") {
  auto s1 = simple(a2(), "1", Q);
  auto s2 = simple(a2(), "2", Q);
  auto kk = arrow_rep_id(a2(), Q);
  CHECK(hom_basis(s1, s1).size() == 1);
  CHECK(hom_basis(s2, s2).size() == 1);
  CHECK(hom_basis(kk, s2).size() == 0);  // Yoneda: Hom(P_1, X) = X_1
  CHECK(hom_basis(s1, kk).size() == 0);
  CHECK(hom_basis(s2, kk).size() == 1);
  CHECK(hom_basis(kk, s1).size() == 1);
  for (const auto& f : hom_basis(kk, kk)) validate_morphism(f);
  CHECK_THROWS_AS(hom_basis(s1, simple(a2_rev(), "1", Q)), error);
}

TEST_CASE("hom_basis against the exhaustive oracle") {
  std::mt19937 rng(11);
  FieldSpec f2 = FieldSpec::prime(2);
  for (const Quiver& q : {a2(), star2(), Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}})}) {
    for (int trial = 0; trial < 12; ++trial) {
      auto m = random_rep(rng, q, f2, 2);
      auto n = random_rep(rng, q, f2, 2);
      long bits = 0;
      for (const auto& [v, d] : n.dims) bits += d * m.dims.at(v);
      if (bits > 14) continue;
      CHECK(static_cast<long>(hom_basis(m, n).size()) == homdim_bruteforce_f2(m, n));
    }
  }
}

TEST_CASE("kernel and cokernel") {
  auto kk = arrow_rep_id(a2(), Q);
  auto idm = identity_morphism(kk);
  CHECK(cokernel(idm).rep.dims.at("1") == 0);
  CHECK(cokernel(idm).rep.dims.at("2") == 0);
  CHECK(kernel(idm).rep.dims.at("1") == 0);

  RepMorphism zero{kk, kk, {}};
  for (const auto& v : kk.quiver.vertices()) zero.components.emplace(v, ExactMatrix(1, 1, Q));
  auto c = cokernel(zero);
  CHECK(c.rep.dims == kk.dims);
  CHECK(c.rep.maps.at("a").is_identity());
  auto k = kernel(zero);
  CHECK(k.rep.dims == kk.dims);

  // single-vertex quiver: k -> k^2 via (1 0)^T
  Quiver pt({"x"}, {});
  auto one = make_representation(pt, Q, {{"x", 1}}, {});
  auto two = make_representation(pt, Q, {{"x", 2}}, {});
  RepMorphism inc{one, two, {{"x", ExactMatrix::from_rows({{"1"}, {"0"}}, 1, Q)}}};
  CHECK(cokernel(inc).rep.dims.at("x") == 1);
  CHECK(kernel(inc).rep.dims.at("x") == 0);

  // intertwining violations are rejected
  Quiver q2 = a2();
  auto s1 = simple(q2, "1", Q);
  RepMorphism bad{arrow_rep_id(q2, Q), arrow_rep_id(q2, Q),
                  {{"1", ExactMatrix::identity(1, Q)}, {"2", ExactMatrix(1, 1, Q)}}};
  CHECK_THROWS_AS(validate_morphism(bad), error);
}

TEST_CASE("projectives") {
  auto p1 = projective(a2(), "1", Q);
  CHECK(p1.dims.at("1") == 1);
  CHECK(p1.dims.at("2") == 1);
  CHECK(p1.maps.at("a").is_identity());
  auto p2 = projective(a2(), "2", Q);
  CHECK(p2.dims.at("1") == 0);
  CHECK(p2.dims.at("2") == 1);
  auto p0 = projective(star2(), "0", Q);
  CHECK(p0.dims.at("0") == 1);
  CHECK(p0.dims.at("1") == 1);
  CHECK(p0.dims.at("2") == 1);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    Quiver t = random_tree(rng, 2 + trial % 5);
    for (const auto& v : t.vertices()) {
      auto p = projective(t, v, Q);
      for (const auto& w : t.vertices()) CHECK(p.dims.at(w) == path_count_oracle(t, v, w));
    }
  }

  Quiver cyc({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  CHECK_THROWS_AS(projective(cyc, "1", Q), error);

  // Yoneda: dim Hom(P_u, P_v) = number of paths v ~> u
  Quiver a3({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
  for (const auto& u : a3.vertices())
    for (const auto& v : a3.vertices())
      CHECK(static_cast<long>(hom_basis(projective(a3, u, Q), projective(a3, v, Q)).size()) ==
            path_count_oracle(a3, v, u));
}

TEST_CASE("reflect_minus basics") {
  auto kk = arrow_rep_id(a2(), Q);
  auto r = reflect_minus(kk, "1");
  CHECK(r.quiver == a2_rev());
  CHECK(r.dims.at("1") == 0);
  CHECK(r.dims.at("2") == 1);

  auto s1 = simple(a2(), "1", Q);
  auto rs = reflect_minus(s1, "1");
  CHECK(rs.dims.at("1") == 0);
  CHECK(rs.dims.at("2") == 0);

  auto st = arrow_rep_id(star2(), Q);
  auto rst = reflect_minus(st, "0");
  CHECK(rst.dims.at("0") == 1);
  CHECK(rst.dims.at("1") == 1);
  CHECK(rst.dims.at("2") == 1);
  CHECK_FALSE(rst.maps.at("a").is_zero());
  CHECK_FALSE(rst.maps.at("b").is_zero());

  CHECK_THROWS_AS(reflect_minus(kk, "2"), error);
}

TEST_CASE("reflect_plus basics") {
  auto kk = arrow_rep_id(a2_rev(), Q);
  auto r = reflect_plus(kk, "1");
  CHECK(r.quiver == a2());
  CHECK(r.dims.at("1") == 0);

  auto s = simple(a2(), "2", Q);
  auto rs = reflect_plus(s, "2");
  CHECK(rs.dims.at("1") == 0);
  CHECK(rs.dims.at("2") == 0);

  auto st = arrow_rep_id(star2(), Q);
  auto round = reflect_plus(reflect_minus(st, "0"), "0");
  CHECK(round.dims == st.dims);
  CHECK(iso_search(round, st).has_value());

  CHECK_THROWS_AS(reflect_plus(arrow_rep_id(a2(), Q), "1"), error);
}

TEST_CASE("reflection round trip and rank-nullity") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    Quiver t = random_tree(rng, 2 + trial % 5);
    std::string q0 = find_source(t);
    REQUIRE(!q0.empty());
    auto m = random_rep(rng, t, Q, 3);
    // rank of the canonical map out of q0
    std::vector<ExactMatrix> blocks;
    std::vector<const Arrow*> outs = t.arrows_out(q0);
    std::sort(outs.begin(), outs.end(),
              [](const Arrow* x, const Arrow* y) { return x->id < y->id; });
    long dsum = 0;
    for (const Arrow* a : outs) dsum += m.dims.at(a->tgt);
    for (const Arrow* a : outs) blocks.push_back(m.maps.at(a->id));
    ExactMatrix phi = vstack_all(blocks, m.dims.at(q0), Q);
    long rk = rank_of(phi);
    auto r = reflect_minus(m, q0);
    CHECK(r.dims.at(q0) == dsum - rk);
    auto round = reflect_plus(r, q0);
    long nullity = m.dims.at(q0) - rk;
    CHECK(round.dims.at(q0) == m.dims.at(q0) - nullity);
    if (nullity == 0) CHECK(iso_search(round, m, 7, 128).has_value());
  }
}

TEST_CASE("hom dimension is invariant under vertexwise conjugation") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> entry(-2, 2);
  Quiver q = star2();
  auto m = random_rep(rng, q, Q, 3);
  auto n = random_rep(rng, q, Q, 3);
  long expected = static_cast<long>(hom_basis(m, n).size());
  for (int trial = 0; trial < 5; ++trial) {
    std::map<std::string, ExactMatrix> conj;
    for (const auto& [v, d] : m.dims) {
      ExactMatrix a(d, d, Q);
      do {
        for (long i = 0; i < d; ++i)
          for (long j = 0; j < d; ++j) a.set(i, j, entry(rng));
      } while (!inverse(a));
      conj.emplace(v, a);
    }
    std::map<std::string, ExactMatrix> maps;
    for (const auto& ar : q.arrows())
      maps.emplace(ar.id, conj.at(ar.tgt) * m.maps.at(ar.id) * *inverse(conj.at(ar.src)));
    auto mc = make_representation(q, Q, m.dims, maps);
    CHECK(static_cast<long>(hom_basis(mc, n).size()) == expected);
  }
}

TEST_CASE("rational and prime-field ranks agree on small integer input") {
  std::mt19937 rng(41);
  FieldSpec f997 = FieldSpec::prime(997);
  for (int trial = 0; trial < 15; ++trial) {
    Quiver t = random_tree(rng, 2 + trial % 4);
    auto mq = random_rep(rng, t, Q, 3);
    std::map<std::string, ExactMatrix> maps;
    for (const auto& [a, mat] : mq.maps) {
      ExactMatrix c(mat.rows(), mat.cols(), f997);
      for (long i = 0; i < mat.rows(); ++i)
        for (long j = 0; j < mat.cols(); ++j) c.set(i, j, mat.at(i, j));
      maps.emplace(a, c);
    }
    auto mp = make_representation(t, f997, mq.dims, maps);
    CHECK(hom_basis(mq, mq).size() == hom_basis(mp, mp).size());
    std::string q0 = find_source(t);
    auto rq = reflect_minus(mq, q0);
    auto rp = reflect_minus(mp, q0);
    CHECK(rq.dims == rp.dims);
  }
}

TEST_CASE("adjunction") {
  auto zq = zero_representation(a2(), Q);
  auto zr = zero_representation(a2_rev(), Q);
  auto rep0 = check_adjunction(zq, zr, "1");
  CHECK(rep0.dim_lhs == 0);
  CHECK(rep0.dim_rhs == 0);
  CHECK(rep0.ok);

  auto m = arrow_rep_id(a2(), Q);
  auto n = simple(a2_rev(), "2", Q);
  auto rep = check_adjunction(m, n, "1");
  CHECK(rep.dim_lhs == rep.dim_rhs);
  CHECK(rep.ok);

  std::mt19937 rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    Quiver t = random_tree(rng, 2 + trial % 4);
    std::string q0 = find_source(t);
    auto mm = random_rep(rng, t, Q, 3);
    auto nn = random_rep(rng, reflect(t, q0), Q, 3);
    auto r = check_adjunction(mm, nn, q0);
    CHECK(r.dim_lhs == r.dim_rhs);
    CHECK(r.ok);
  }

  CHECK_THROWS_AS(check_adjunction(m, simple(a2(), "2", Q), "1"), error);
}

TEST_CASE("tilting endomorphism count") {
  auto a2rep = apr_tilting_check(a2(), "1", Q);
  CHECK(a2rep.dim_end == 3);
  CHECK(a2rep.paths_original == 3);
  CHECK(a2rep.ok);
  CHECK(a2rep.hom_matrix == std::vector<std::vector<long>>{{1, 0}, {1, 1}});
  CHECK(a2rep.path_matrix == std::vector<std::vector<long>>{{1, 1}, {0, 1}});

  Quiver a3({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
  auto a3rep = apr_tilting_check(a3, "1", Q);
  CHECK(a3rep.dim_end == 6);
  CHECK(a3rep.paths_original == 6);
  CHECK(a3rep.paths_reflected == 5);
  CHECK(a3rep.ok);

  auto strep = apr_tilting_check(star2(), "0", Q);
  CHECK(strep.dim_end == 5);
  CHECK(strep.ok);

  CHECK_THROWS_AS(apr_tilting_check(a3, "2", Q), error);
  Quiver cyc({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  CHECK_THROWS_AS(apr_tilting_check(cyc, "1", Q), error);
}

TEST_CASE("Euler form reflection invariance") {
  CHECK(euler_form(a2(), {{"1", 1}, {"2", 1}}, {{"1", 1}, {"2", 1}}) == 1);
  auto rep = euler_reflection_check(a2(), "1", {{{"1", 1}, {"2", 1}}, {{"1", 2}, {"2", 0}}});
  CHECK(rep.ok);
  CHECK(rep.pairs_checked == 4);

  std::mt19937 rng(61);
  std::uniform_int_distribution<long> dim(0, 5);
  for (int trial = 0; trial < 10; ++trial) {
    Quiver t = random_tree(rng, 2 + trial % 5);
    std::vector<std::map<std::string, long>> samples;
    for (int s = 0; s < 10; ++s) {
      std::map<std::string, long> d;
      for (const auto& v : t.vertices()) d[v] = dim(rng);
      samples.push_back(d);
    }
    std::string q0 = find_source(t);
    auto r = euler_reflection_check(t, q0, samples);
    CHECK(r.ok);
    CHECK(r.pairs_checked == 100);
    // reflecting twice restores the dimension vector
    for (const auto& d : samples)
      CHECK(reflect_dim_vector(reflect(t, q0), q0, reflect_dim_vector(t, q0, d)) ==
            [&] {
              std::map<std::string, long> full;
              for (const auto& v : t.vertices()) full[v] = d.count(v) ? d.at(v) : 0;
              return full;
            }());
  }
}

TEST_CASE("iso_search") {
  auto kk = arrow_rep_id(a2(), Q);
  CHECK(iso_search(kk, kk).has_value());
  CHECK_FALSE(iso_search(kk, simple(a2(), "1", Q)).has_value());
  auto z = zero_representation(a2(), Q);
  CHECK(iso_search(z, z).has_value());

  // same dims, non-isomorphic: k->k identity vs zero map
  auto zero_map = make_representation(a2(), Q, {{"1", 1}, {"2", 1}}, {});
  CHECK_FALSE(iso_search(kk, zero_map).has_value());
}
