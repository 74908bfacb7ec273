#include "reflekt/diagram.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "reflekt/error.hpp"

using namespace reflekt;

namespace {

template <class F>
errc code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return errc::internal;
}

FieldSpec QQ() { return FieldSpec::rationals(); }

FinCat point_cat() { return free_category(Quiver({"0"}, {})); }

FinCat interval_cat() { return free_category(Quiver({"0", "1"}, {{"s01", "0", "1"}})); }

FinCat three_cat() {
  return free_category(Quiver({"0", "1", "2"}, {{"s01", "0", "1"}, {"s12", "1", "2"}}));
}

FinCat square_cat() {
  FinCat seg = interval_cat();
  return product(seg, seg);
}

Quiver two_chain() { return Quiver({"1", "2"}, {{"f", "1", "2"}}); }

Quiver star2() {
  return Quiver({"0", "1", "2"}, {{"f1", "0", "1"}, {"f2", "0", "2"}});
}

ExactMatrix mat(const std::vector<std::vector<std::string>>& rows, long cols,
                FieldSpec field) {
  return ExactMatrix::from_rows(rows, cols, field);
}

ExactMatrix col_block(const ExactMatrix& m, long col0, long ncols) {
  ExactMatrix out(m.rows(), ncols, m.field());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < ncols; ++j) out.set(i, j, m.at(i, col0 + j));
  return out;
}

// The unique morphism a -> b in a thin base.
std::string only_hom(const FinCat& c, const std::string& a, const std::string& b) {
  std::vector<std::string> h = c.hom(a, b);
  REQUIRE(h.size() == 1);
  return h[0];
}

VectDiagram square_diagram(long da, long db, long dc, long dd, const ExactMatrix& f,
                           const ExactMatrix& g, const ExactMatrix& h,
                           const ExactMatrix& k, FieldSpec field) {
  FinCat sq = square_cat();
  std::map<std::string, long> dims{
      {"(0,0)", da}, {"(1,0)", db}, {"(0,1)", dc}, {"(1,1)", dd}};
  std::map<std::string, ExactMatrix> maps;
  maps.emplace(only_hom(sq, "(0,0)", "(1,0)"), f);
  maps.emplace(only_hom(sq, "(0,0)", "(0,1)"), g);
  maps.emplace(only_hom(sq, "(1,0)", "(1,1)"), h);
  maps.emplace(only_hom(sq, "(0,1)", "(1,1)"), k);
  maps.emplace(only_hom(sq, "(0,0)", "(1,1)"), h * f);
  return make_diagram(std::move(sq), field, std::move(dims), std::move(maps));
}

// Constant diagram with every value d-dimensional and every map an identity.
VectDiagram constant_diagram(const FinCat& base, long d, FieldSpec field) {
  std::map<std::string, long> dims;
  for (const std::string& o : base.objects()) dims[o] = d;
  std::map<std::string, ExactMatrix> maps;
  for (const Morph& m : base.morphisms()) maps.emplace(m.id, ExactMatrix::identity(d, field));
  return make_diagram(base, field, std::move(dims), std::move(maps));
}

CatFunctor endpoint_functor(const std::string& target_object) {
  CatFunctor u;
  u.source = point_cat();
  u.target = interval_cat();
  u.ob["0"] = target_object;
  u.mor["1_0"] = u.target.identity_of(target_object);
  check_functor(u);
  return u;
}

CatFunctor to_point_functor(const FinCat& source) {
  CatFunctor u;
  u.source = source;
  u.target = point_cat();
  for (const std::string& o : source.objects()) u.ob[o] = "0";
  for (const Morph& m : source.morphisms()) u.mor[m.id] = "1_0";
  check_functor(u);
  return u;
}

CatFunctor segment_embedding() {
  CatFunctor u;
  u.source = interval_cat();
  u.target = three_cat();
  u.ob = {{"0", "0"}, {"1", "1"}};
  u.mor = {{"1_0", "1_0"}, {"1_1", "1_1"}, {"s01", "s01"}};
  check_functor(u);
  return u;
}

long hom_dim(const VectDiagram& x, const VectDiagram& y) {
  return static_cast<long>(diagram_hom_basis(x, y).size());
}

ExactMatrix random_matrix(long rows, long cols, std::mt19937_64& rng, FieldSpec field) {
  ExactMatrix m(rows, cols, field);
  std::uniform_int_distribution<int> entry(-2, 2);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m.set(i, j, entry(rng));
  return m;
}

}  // namespace

TEST_CASE("diagram tables are validated exhaustively") {
  FinCat seg = interval_cat();
  VectDiagram x = make_diagram(seg, QQ(), {{"0", 1}, {"1", 1}},
                               {{"s01", mat({{"1"}}, 1, QQ())}});
  CHECK(x.maps.at("1_0").is_identity());
  CHECK(x.maps.at("1_1").is_identity());
  CHECK(zero_diagram(three_cat(), QQ()).dims.at("2") == 0);
  CHECK(zero_diagram(category_R(), QQ()).maps.at("t").rows() == 0);

  CHECK(code_of([&] {
          make_diagram(seg, QQ(), {{"7", 1}}, {});
        }) == errc::unknown_object);
  CHECK(code_of([&] {
          make_diagram(seg, QQ(), {}, {{"nope", ExactMatrix(0, 0, QQ())}});
        }) == errc::unknown_morphism);
  CHECK(code_of([&] {
          make_diagram(seg, QQ(), {{"0", -1}}, {});
        }) == errc::bad_input);
  CHECK(code_of([&] {
          make_diagram(seg, QQ(), {{"0", 1}, {"1", 1}},
                       {{"s01", mat({{"1", "0"}}, 2, QQ())}});
        }) == errc::bad_input);
  CHECK(code_of([&] {
          make_diagram(seg, QQ(), {{"0", 1}, {"1", 1}},
                       {{"s01", mat({{"1"}}, 1, FieldSpec::prime(5))}});
        }) == errc::bad_field);

  // A composition table entry that disagrees with the matrix product.
  FinCat three = three_cat();
  std::map<std::string, ExactMatrix> broken{{"s01", mat({{"1"}}, 1, QQ())},
                                            {"s12", mat({{"1"}}, 1, QQ())},
                                            {"s12*s01", mat({{"0"}}, 1, QQ())}};
  CHECK(code_of([&] {
          make_diagram(three, QQ(), {{"0", 1}, {"1", 1}, {"2", 1}}, broken);
        }) == errc::mismatch);

  // Tampering with an identity matrix.
  VectDiagram bad = x;
  bad.maps.at("1_1") = mat({{"0"}}, 1, QQ());
  CHECK(code_of([&] { validate_diagram(bad); }) == errc::mismatch);
}

TEST_CASE("restriction pulls back along functors") {
  FinCat seg = interval_cat();
  VectDiagram x = make_diagram(seg, QQ(), {{"0", 2}, {"1", 1}},
                               {{"s01", mat({{"1", "0"}}, 2, QQ())}});
  VectDiagram same = restrict_diagram(x, identity_functor(seg));
  CHECK(same == x);

  // Pulling an all-ones diagram on the localized category back along the
  // localization makes the length-two composite invertible.
  VectDiagram ones = constant_diagram(category_R(), 1, QQ());
  VectDiagram pulled = restrict_diagram(ones, localization_q());
  validate_diagram(pulled);
  CHECK(pulled.base == three_cat());
  CHECK(inverse(pulled.maps.at("s12*s01")).has_value());

  CHECK(code_of([&] { restrict_diagram(x, localization_q()); }) == errc::base_mismatch);
  CHECK(code_of([&] {
          kan_extend(x, localization_q(), kan_side::left);
        }) == errc::base_mismatch);
}

TEST_CASE("extensions at the interval endpoints") {
  VectDiagram pt = make_diagram(point_cat(), QQ(), {{"0", 1}}, {});

  // Left extension along the left endpoint spreads the value forward.
  KanResult lan0 = kan_extend(pt, endpoint_functor("0"), kan_side::left);
  CHECK(lan0.diagram.dims.at("0") == 1);
  CHECK(lan0.diagram.dims.at("1") == 1);
  CHECK(inverse(lan0.diagram.maps.at("s01")).has_value());
  CHECK(lan0.comparison.at("0").is_identity());

  // Left extension along the right endpoint is extension by zero.
  KanResult lan1 = kan_extend(pt, endpoint_functor("1"), kan_side::left);
  CHECK(lan1.diagram.dims.at("0") == 0);
  CHECK(lan1.diagram.dims.at("1") == 1);

  // The right extensions mirror both pictures.
  KanResult ran1 = kan_extend(pt, endpoint_functor("1"), kan_side::right);
  CHECK(ran1.diagram.dims.at("0") == 1);
  CHECK(ran1.diagram.dims.at("1") == 1);
  CHECK(inverse(ran1.diagram.maps.at("s01")).has_value());

  KanResult ran0 = kan_extend(pt, endpoint_functor("0"), kan_side::right);
  CHECK(ran0.diagram.dims.at("0") == 1);
  CHECK(ran0.diagram.dims.at("1") == 0);
}

TEST_CASE("extension is adjoint to restriction") {
  VectDiagram pt = make_diagram(point_cat(), QQ(), {{"0", 1}}, {});
  CatFunctor u0 = endpoint_functor("0");
  std::vector<VectDiagram> targets;
  targets.push_back(make_diagram(interval_cat(), QQ(), {{"0", 1}, {"1", 1}},
                                 {{"s01", mat({{"1"}}, 1, QQ())}}));
  targets.push_back(make_diagram(interval_cat(), QQ(), {{"0", 1}, {"1", 0}}, {}));
  targets.push_back(make_diagram(interval_cat(), QQ(), {{"0", 0}, {"1", 1}}, {}));
  targets.push_back(make_diagram(interval_cat(), QQ(), {{"0", 1}, {"1", 2}}, {}));
  KanResult lan = kan_extend(pt, u0, kan_side::left);
  KanResult ran = kan_extend(pt, u0, kan_side::right);
  for (const VectDiagram& y : targets) {
    CHECK(hom_dim(lan.diagram, y) == hom_dim(pt, restrict_diagram(y, u0)));
    CHECK(hom_dim(y, ran.diagram) == hom_dim(restrict_diagram(y, u0), pt));
  }

  // Collapsing the interval to the point: the extension computes the
  // (co)limit, and the counts still match.
  FinCat seg = interval_cat();
  CatFunctor tp = to_point_functor(seg);
  VectDiagram x = make_diagram(seg, QQ(), {{"0", 1}, {"1", 1}},
                               {{"s01", mat({{"2"}}, 1, QQ())}});
  VectDiagram y2 = make_diagram(point_cat(), QQ(), {{"0", 2}}, {});
  KanResult colim = kan_extend(x, tp, kan_side::left);
  KanResult lim = kan_extend(x, tp, kan_side::right);
  CHECK(colim.diagram.dims.at("0") == 1);
  CHECK(lim.diagram.dims.at("0") == 1);
  CHECK(hom_dim(colim.diagram, y2) == hom_dim(x, restrict_diagram(y2, tp)));
  CHECK(hom_dim(y2, lim.diagram) == hom_dim(restrict_diagram(y2, tp), x));

  // A localization target exercises a base with a non-trivial hom structure.
  VectDiagram x3 = constant_diagram(three_cat(), 1, QQ());
  VectDiagram yr = constant_diagram(category_R(), 1, QQ());
  CatFunctor q = localization_q();
  KanResult lanq = kan_extend(x3, q, kan_side::left);
  KanResult ranq = kan_extend(x3, q, kan_side::right);
  CHECK(hom_dim(lanq.diagram, yr) == hom_dim(x3, restrict_diagram(yr, q)));
  CHECK(hom_dim(yr, ranq.diagram) == hom_dim(restrict_diagram(yr, q), x3));
}

TEST_CASE("full embeddings reconstruct their image") {
  CatFunctor u = segment_embedding();
  VectDiagram x = make_diagram(interval_cat(), QQ(), {{"0", 1}, {"1", 1}},
                               {{"s01", mat({{"2"}}, 1, QQ())}});

  KanResult ran = kan_extend(x, u, kan_side::right);
  CHECK(ran.diagram.dims.at("0") == 1);
  CHECK(ran.diagram.dims.at("1") == 1);
  CHECK(ran.diagram.dims.at("2") == 0);
  for (const Morph& m : x.base.morphisms()) {
    const ExactMatrix lhs = ran.comparison.at(m.tgt) * ran.diagram.maps.at(apply_mor(u, m.id));
    const ExactMatrix rhs = x.maps.at(m.id) * ran.comparison.at(m.src);
    CHECK(lhs == rhs);
  }

  KanResult lan = kan_extend(x, u, kan_side::left);
  CHECK(lan.diagram.dims.at("2") == 1);
  CHECK(inverse(lan.diagram.maps.at("s12")).has_value());
  for (const Morph& m : x.base.morphisms()) {
    const ExactMatrix lhs = lan.comparison.at(m.tgt) * x.maps.at(m.id);
    const ExactMatrix rhs = lan.diagram.maps.at(apply_mor(u, m.id)) * lan.comparison.at(m.src);
    CHECK(lhs == rhs);
  }
  for (const std::string& o : x.base.objects()) {
    CHECK(inverse(ran.comparison.at(o)).has_value());
    CHECK(inverse(lan.comparison.at(o)).has_value());
  }
}

TEST_CASE("square exactness verdicts") {
  FieldSpec F = QQ();
  ExactMatrix one = ExactMatrix::identity(1, F);
  ExactMatrix none = ExactMatrix(0, 1, F);
  ExactMatrix from0 = ExactMatrix(1, 0, F);

  // Pushing out along an identity gives the opposite leg.
  VectDiagram collapse =
      square_diagram(1, 1, 0, 0, one, none, ExactMatrix(0, 1, F), ExactMatrix(0, 0, F), F);
  CHECK(exactness_check(collapse, exactness_kind::cocartesian_square).ok);
  CHECK(exactness_check(collapse, exactness_kind::cartesian_square).ok);
  CHECK(exactness_check(collapse, exactness_kind::cofiber_square).ok);

  // The split biproduct square is bicartesian but not a cofiber square.
  VectDiagram biprod = square_diagram(0, 1, 1, 2, from0, from0,
                                      mat({{"1"}, {"0"}}, 1, F), mat({{"0"}, {"1"}}, 1, F), F);
  CHECK(exactness_check(biprod, exactness_kind::cocartesian_square).ok);
  CHECK(exactness_check(biprod, exactness_kind::cartesian_square).ok);
  ExactnessReport not_cofiber = exactness_check(biprod, exactness_kind::cofiber_square);
  CHECK_FALSE(not_cofiber.ok);
  CHECK(not_cofiber.detail == "the cofiber corner '(0,1)' is nonzero");

  // Identity legs everywhere: bicartesian.
  VectDiagram all_id = square_diagram(1, 1, 1, 1, one, one, one, one, F);
  CHECK(exactness_check(all_id, exactness_kind::cocartesian_square).ok);
  CHECK(exactness_check(all_id, exactness_kind::cartesian_square).ok);

  // Two copies of the same line glued over zero: neither verdict holds.
  VectDiagram wedge = square_diagram(0, 1, 1, 1, from0, from0, one, one, F);
  ExactnessReport no_push = exactness_check(wedge, exactness_kind::cocartesian_square);
  CHECK_FALSE(no_push.ok);
  CHECK(no_push.detail == "the induced map from the pushout is not invertible");
  CHECK_FALSE(exactness_check(wedge, exactness_kind::cartesian_square).ok);

  // Everything-zero squares satisfy both universal properties.
  VectDiagram nil = zero_diagram(square_cat(), F);
  CHECK(exactness_check(nil, exactness_kind::cocartesian_square).ok);
  CHECK(exactness_check(nil, exactness_kind::cartesian_square).ok);
  CHECK(exactness_check(nil, exactness_kind::cofiber_square).ok);

  CHECK(code_of([&] {
          exactness_check(zero_diagram(interval_cat(), F), exactness_kind::cocartesian_square);
        }) == errc::shape_mismatch);
}

TEST_CASE("interval cube face checks") {
  FieldSpec F = QQ();
  // The square base doubles as the smallest interval power.
  VectDiagram all_id = square_diagram(1, 1, 1, 1, ExactMatrix::identity(1, F),
                                      ExactMatrix::identity(1, F), ExactMatrix::identity(1, F),
                                      ExactMatrix::identity(1, F), F);
  CHECK(exactness_check(all_id, exactness_kind::strongly_bicartesian_cube).ok);

  VectDiagram wedge = square_diagram(0, 1, 1, 1, ExactMatrix(1, 0, F), ExactMatrix(1, 0, F),
                                     ExactMatrix::identity(1, F), ExactMatrix::identity(1, F), F);
  ExactnessReport bad = exactness_check(wedge, exactness_kind::strongly_bicartesian_cube);
  CHECK_FALSE(bad.ok);
  CHECK(bad.detail == "face (0,0) -> (1,1) is not cocartesian");

  FinCat cube3 = product_many(std::vector<FinCat>(3, interval_cat()));
  CHECK(exactness_check(constant_diagram(cube3, 1, F),
                        exactness_kind::strongly_bicartesian_cube)
            .ok);
  CHECK(exactness_check(zero_diagram(cube3, F), exactness_kind::strongly_bicartesian_cube).ok);

  CHECK(code_of([&] {
          exactness_check(zero_diagram(interval_cat(), F),
                          exactness_kind::strongly_bicartesian_cube);
        }) == errc::shape_mismatch);
  CHECK(code_of([&] {
          exactness_check(zero_diagram(three_cat(), F), exactness_kind::biproduct_conditions);
        }) == errc::shape_mismatch);
}

TEST_CASE("pasted pushout squares stay cocartesian") {
  FinCat grid = product(three_cat(), interval_cat());
  FinCat sq = square_cat();

  auto run_instance = [&](std::uint64_t seed, FieldSpec F) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dim(0, 2);
    const long d0 = dim(rng), d1 = dim(rng), d2 = dim(rng), e0 = dim(rng);
    ExactMatrix p = random_matrix(d1, d0, rng, F);
    ExactMatrix q = random_matrix(d2, d1, rng, F);
    ExactMatrix v0 = random_matrix(e0, d0, rng, F);

    // Build the bottom row as successive pushouts of the top row.
    CokernelData push1 = cokernel_data(vstack(p, v0.negated()));
    const long e1 = push1.proj.rows();
    ExactMatrix v1 = col_block(push1.proj, 0, d1);
    ExactMatrix b1 = col_block(push1.proj, d1, e0);
    CokernelData push2 = cokernel_data(vstack(q, v1.negated()));
    const long e2 = push2.proj.rows();
    ExactMatrix v2 = col_block(push2.proj, 0, d2);
    ExactMatrix b2 = col_block(push2.proj, d2, e1);

    const std::vector<long> top{d0, d1, d2}, bot{e0, e1, e2};
    const std::vector<ExactMatrix> ht{p, q}, hb{b1, b2}, vert{v0, v1, v2};
    auto grid_map = [&](long i, long j, long i2, long j2) {
      ExactMatrix m = ExactMatrix::identity(j == 0 ? top[i] : bot[i], F);
      if (j2 > j) m = vert[i] * m;
      for (long s = i; s < i2; ++s) m = (j2 == 0 ? ht[s] : hb[s]) * m;
      return m;
    };
    std::map<std::string, long> dims;
    std::map<std::string, ExactMatrix> maps;
    for (const std::string& o : grid.objects()) {
      const long i = o[1] - '0', j = o[3] - '0';
      dims[o] = j == 0 ? top[i] : bot[i];
    }
    for (const Morph& m : grid.morphisms()) {
      const long i = m.src[1] - '0', j = m.src[3] - '0';
      const long i2 = m.tgt[1] - '0', j2 = m.tgt[3] - '0';
      maps.emplace(m.id, grid_map(i, j, i2, j2));
    }
    VectDiagram x = make_diagram(grid, F, std::move(dims), std::move(maps));

    // The left, right, and outer squares of the pasting.
    auto column_functor = [&](const std::map<std::string, std::string>& ob_shift,
                              const std::map<std::string, std::string>& mor_shift) {
      CatFunctor u;
      u.source = sq;
      u.target = grid;
      for (const std::string& o : sq.objects())
        u.ob[o] = "(" + ob_shift.at(o.substr(1, 1)) + "," + o.substr(3, 1) + ")";
      for (const Morph& m : sq.morphisms()) {
        const std::string inner = m.id.substr(1, m.id.size() - 2);
        const std::string first = inner.substr(0, inner.find(','));
        const std::string second = inner.substr(inner.find(',') + 1);
        u.mor[m.id] = "(" + mor_shift.at(first) + "," + second + ")";
      }
      check_functor(u);
      return u;
    };
    CatFunctor left = column_functor({{"0", "0"}, {"1", "1"}},
                                     {{"1_0", "1_0"}, {"1_1", "1_1"}, {"s01", "s01"}});
    CatFunctor right = column_functor({{"0", "1"}, {"1", "2"}},
                                      {{"1_0", "1_1"}, {"1_1", "1_2"}, {"s01", "s12"}});
    CatFunctor outer = column_functor({{"0", "0"}, {"1", "2"}},
                                      {{"1_0", "1_0"}, {"1_1", "1_2"}, {"s01", "s12*s01"}});
    CHECK(exactness_check(restrict_diagram(x, left), exactness_kind::cocartesian_square).ok);
    CHECK(exactness_check(restrict_diagram(x, right), exactness_kind::cocartesian_square).ok);
    CHECK(exactness_check(restrict_diagram(x, outer), exactness_kind::cocartesian_square).ok);
  };

  run_instance(11, QQ());
  run_instance(12, QQ());
  run_instance(13, QQ());
  run_instance(14, FieldSpec::prime(5));
}

TEST_CASE("biproduct cubes from corner inputs") {
  VectDiagram line = biproduct_cube({1}, QQ());
  CHECK(line.dims.at("(0)") == 0);
  CHECK(line.dims.at("(1)") == 1);
  CHECK(line.dims.at("(2)") == 0);
  CHECK(exactness_check(line, exactness_kind::biproduct_conditions).ok);

  VectDiagram plane = biproduct_cube({1, 2}, QQ());
  const std::map<std::string, long> expected{
      {"(0,0)", 0}, {"(1,0)", 1}, {"(2,0)", 0}, {"(0,1)", 2}, {"(1,1)", 3},
      {"(2,1)", 2}, {"(0,2)", 0}, {"(1,2)", 1}, {"(2,2)", 0}};
  CHECK(plane.dims == expected);
  CHECK(exactness_check(plane, exactness_kind::biproduct_conditions).ok);
  // The two summands sit over the shifted star corners...
  FinCat corner_pair = full_subcategory(plane.base, {"(1,2)", "(2,1)"});
  CatFunctor incl;
  incl.source = corner_pair;
  incl.target = plane.base;
  for (const std::string& o : corner_pair.objects()) incl.ob[o] = o;
  for (const Morph& m : corner_pair.morphisms()) incl.mor[m.id] = m.id;
  check_functor(incl);
  VectDiagram corners = restrict_diagram(plane, incl);
  CHECK(corners.dims.at("(1,2)") == 1);
  CHECK(corners.dims.at("(2,1)") == 2);
  // ...the crossing composite vanishes, and the straight ones have full rank.
  CHECK(plane.maps.at(only_hom(plane.base, "(0,1)", "(1,2)")).is_zero());
  CHECK(rank_of(plane.maps.at(only_hom(plane.base, "(1,0)", "(1,1)"))) == 1);
  CHECK(rank_of(plane.maps.at(only_hom(plane.base, "(1,1)", "(1,2)"))) == 1);

  VectDiagram empty = biproduct_cube({0, 0}, QQ());
  for (const auto& [o, d] : empty.dims) CHECK(d == 0);

  VectDiagram modp = biproduct_cube({1, 1}, FieldSpec::prime(5));
  CHECK(modp.dims.at("(1,1)") == 2);
  CHECK(exactness_check(modp, exactness_kind::biproduct_conditions).ok);

  VectDiagram solid = biproduct_cube({1, 1, 1}, QQ());
  CHECK(solid.dims.at("(1,1,1)") == 3);
  CHECK(exactness_check(solid, exactness_kind::biproduct_conditions).ok);

  // A constant diagram on the cube shape fails the corner conditions.
  FinCat cube2 = product_many(std::vector<FinCat>(2, three_cat()));
  ExactnessReport corners_bad =
      exactness_check(constant_diagram(cube2, 1, QQ()), exactness_kind::biproduct_conditions);
  CHECK_FALSE(corners_bad.ok);
  CHECK(corners_bad.detail == "nonzero outer corner (0,0)");

  // A lone middle value cannot be glued by bicartesian faces.
  VectDiagram lone = make_diagram(cube2, QQ(), {{"(1,1)", 1}}, {});
  ExactnessReport faces_bad = exactness_check(lone, exactness_kind::biproduct_conditions);
  CHECK_FALSE(faces_bad.ok);
  CHECK(faces_bad.detail == "face (0,0) -> (1,1) is not cocartesian");

  CHECK(code_of([&] { biproduct_cube({}, QQ()); }) == errc::bad_input);
  CHECK(code_of([&] { biproduct_cube({-1}, QQ()); }) == errc::bad_input);
}

TEST_CASE("hom bases agree with representation homs") {
  Presentation p;
  p.objects = {"0", "1", "2"};
  p.generators = {{"f1", "0", "1"}, {"f2", "0", "2"}};
  Realization r = realize(p, 4);

  Representation m = make_representation(
      star2(), QQ(), {{"0", 2}, {"1", 1}, {"2", 1}},
      {{"f1", mat({{"1", "0"}}, 2, QQ())}, {"f2", mat({{"0", "1"}}, 2, QQ())}});
  Representation n = make_representation(
      star2(), QQ(), {{"0", 1}, {"1", 1}, {"2", 2}},
      {{"f1", mat({{"1"}}, 1, QQ())}, {"f2", mat({{"1"}, {"0"}}, 1, QQ())}});
  VectDiagram dm = representation_diagram(m, r);
  VectDiagram dn = representation_diagram(n, r);
  CHECK(hom_dim(dm, dn) == static_cast<long>(hom_basis(m, n).size()));
  CHECK(hom_dim(dn, dm) == static_cast<long>(hom_basis(n, m).size()));
  CHECK(hom_dim(dm, dm) == static_cast<long>(hom_basis(m, m).size()));

  Representation z = zero_representation(star2(), QQ());
  CHECK(hom_dim(representation_diagram(z, r), dm) == 0);

  CHECK(code_of([&] {
          diagram_hom_basis(dm, zero_diagram(interval_cat(), QQ()));
        }) == errc::mismatch);
}

TEST_CASE("realized words evaluate representations") {
  Presentation p;
  p.objects = {"1", "2", "3"};
  p.generators = {{"a", "1", "2"}, {"b", "2", "3"}};
  Realization r = realize(p, 6);
  Quiver path = Quiver({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}});
  Representation m = make_representation(
      path, QQ(), {{"1", 1}, {"2", 1}, {"3", 1}},
      {{"a", mat({{"2"}}, 1, QQ())}, {"b", mat({{"3"}}, 1, QQ())}});
  VectDiagram x = representation_diagram(m, r);
  CHECK(x.maps.at("b*a") == mat({{"6"}}, 1, QQ()));
  CHECK(diagram_representation(x, path) == m);

  Representation wrong = make_representation(two_chain(), QQ(), {{"1", 1}, {"2", 1}}, {});
  CHECK(code_of([&] { representation_diagram(wrong, r); }) == errc::mismatch);
}

TEST_CASE("inverting the cube section property") {
  Representation m = make_representation(two_chain(), QQ(), {{"1", 1}, {"2", 1}},
                                         {{"f", mat({{"1"}}, 1, QQ())}});
  ReflectionChain chain = build_reflection_chain(m.quiver, "1");
  VectDiagram x = representation_diagram(m, chain.tree);
  KanResult s1 = kan_extend(x, chain.u1, kan_side::right);
  KanResult s2 = kan_extend(s1.diagram, chain.u2, kan_side::right);
  KanResult s3 = kan_extend(s2.diagram, chain.u3, kan_side::left);
  KanResult s4 = kan_extend(s3.diagram, chain.u4, kan_side::right);
  CHECK(exactness_check(restrict_diagram(s4.diagram, chain.iota1),
                        exactness_kind::biproduct_conditions)
            .ok);

  VectDiagram inverted = invert_cube(s4.diagram, chain);
  CHECK(restrict_diagram(inverted, chain.u5) == s4.diagram);

  // Dimension one everywhere with zero structure maps: a valid diagram
  // whose length-two composites cannot be inverted.
  VectDiagram flat;
  flat.base = chain.cat1.cat;
  flat.field = QQ();
  for (const std::string& o : flat.base.objects()) flat.dims[o] = 1;
  for (const Morph& mm : flat.base.morphisms())
    flat.maps.emplace(mm.id, flat.base.is_identity(mm.id)
                                 ? ExactMatrix::identity(1, QQ())
                                 : ExactMatrix(1, 1, QQ()));
  validate_diagram(flat);
  CHECK(code_of([&] { invert_cube(flat, chain); }) == errc::not_invertible);

  CHECK(code_of([&] {
          invert_cube(zero_diagram(interval_cat(), QQ()), chain);
        }) == errc::base_mismatch);
}

TEST_CASE("staged reflection matches the cokernel functor") {
  // Identity arrow: the source vertex dies.
  Representation m1 = make_representation(two_chain(), QQ(), {{"1", 1}, {"2", 1}},
                                          {{"f", mat({{"1"}}, 1, QQ())}});
  Representation r1 = pipeline_reflect(m1, "1");
  Representation o1 = reflect_minus(m1, "1");
  CHECK(r1.quiver == o1.quiver);
  CHECK(r1.dims == o1.dims);
  CHECK(r1.dims.at("1") == 0);
  CHECK(r1.dims.at("2") == 1);
  CHECK(iso_search(r1, o1).has_value());

  // The simple at the reflected source is annihilated.
  Representation m2 = make_representation(two_chain(), QQ(), {{"1", 1}, {"2", 0}}, {});
  Representation r2 = pipeline_reflect(m2, "1");
  CHECK(r2.dims.at("1") == 0);
  CHECK(r2.dims.at("2") == 0);

  // A zero structure map: the canonical map is far from injective.
  Representation m3 = make_representation(two_chain(), QQ(), {{"1", 1}, {"2", 1}}, {});
  Representation r3 = pipeline_reflect(m3, "1");
  Representation o3 = reflect_minus(m3, "1");
  CHECK(r3.dims == o3.dims);
  CHECK(r3.dims.at("1") == 1);
  CHECK(iso_search(r3, o3).has_value());

  // Two spokes over the rationals.
  Representation m4 = make_representation(
      star2(), QQ(), {{"0", 1}, {"1", 1}, {"2", 1}},
      {{"f1", mat({{"1"}}, 1, QQ())}, {"f2", mat({{"1"}}, 1, QQ())}});
  Representation r4 = pipeline_reflect(m4, "0");
  Representation o4 = reflect_minus(m4, "0");
  CHECK(r4.dims == o4.dims);
  CHECK(iso_search(r4, o4).has_value());

  // A prime field instance with a higher-dimensional source.
  FieldSpec F5 = FieldSpec::prime(5);
  Representation m5 = make_representation(two_chain(), F5, {{"1", 2}, {"2", 1}},
                                          {{"f", mat({{"1", "0"}}, 2, F5)}});
  Representation r5 = pipeline_reflect(m5, "1");
  Representation o5 = reflect_minus(m5, "1");
  CHECK(r5.dims == o5.dims);
  CHECK(r5.dims.at("1") == 0);
  CHECK(iso_search(r5, o5).has_value());
}

TEST_CASE("random trees agree with the reflection functor") {
  struct Shape {
    Quiver quiver;
    std::string q0;
  };
  std::vector<Shape> shapes;
  shapes.push_back({two_chain(), "1"});
  shapes.push_back({Quiver({"1", "2", "3"}, {{"f", "1", "2"}, {"g", "2", "3"}}), "1"});
  shapes.push_back({Quiver({"1", "2", "3"}, {{"f", "1", "2"}, {"g", "3", "2"}}), "1"});
  shapes.push_back({star2(), "0"});
  shapes.push_back({Quiver({"r", "a1", "a2", "c"},
                           {{"f1", "r", "a1"}, {"f2", "r", "a2"}, {"g", "a2", "c"}}),
                    "r"});
  shapes.push_back({Quiver({"r", "a1", "b1", "a2", "b2"},
                           {{"f1", "r", "a1"},
                            {"g1", "a1", "b1"},
                            {"f2", "r", "a2"},
                            {"g2", "b2", "a2"}}),
                    "r"});

  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<long> dim(0, 2);
  long index = 0;
  for (const Shape& shape : shapes) {
    FieldSpec F = index % 2 == 0 ? QQ() : FieldSpec::prime(5);
    ++index;
    std::map<std::string, long> dims;
    for (const std::string& v : shape.quiver.vertices()) dims[v] = dim(rng);
    std::map<std::string, ExactMatrix> maps;
    for (const Arrow& a : shape.quiver.arrows())
      maps.emplace(a.id, random_matrix(dims[a.tgt], dims[a.src], rng, F));
    Representation m = make_representation(shape.quiver, F, dims, maps);
    Representation got = pipeline_reflect(m, shape.q0);
    Representation want = reflect_minus(m, shape.q0);
    CHECK(got.quiver == want.quiver);
    CHECK(got.dims == want.dims);
    CHECK(iso_search(got, want).has_value());
  }

  // One three-spoke star, kept small.
  Quiver s3({"0", "1", "2", "3"}, {{"f1", "0", "1"}, {"f2", "0", "2"}, {"f3", "0", "3"}});
  Representation m = make_representation(
      s3, QQ(), {{"0", 1}, {"1", 1}, {"2", 1}, {"3", 1}},
      {{"f1", mat({{"1"}}, 1, QQ())}, {"f2", mat({{"0"}}, 1, QQ())},
       {"f3", mat({{"1"}}, 1, QQ())}});
  Representation got = pipeline_reflect(m, "0");
  Representation want = reflect_minus(m, "0");
  CHECK(got.dims == want.dims);
  CHECK(iso_search(got, want).has_value());
}
