#include "reflekt/homotopy.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

// Smith normal form rank and diagonal invariants of an integer matrix.
struct SnfResult {
  long rank = 0;
  std::vector<mpz_class> invariants;
};

SnfResult smith_normal_form(std::vector<std::vector<mpz_class>> m) {
  SnfResult out;
  const long rows = static_cast<long>(m.size());
  const long cols = rows ? static_cast<long>(m[0].size()) : 0;
  long t = 0;
  while (t < rows && t < cols) {
    long pr = -1, pc = -1;
    for (long i = t; i < rows; ++i)
      for (long j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || cmp(abs(m[i][j]), abs(m[pr][pc])) < 0)) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (long i = 0; i < rows; ++i) std::swap(m[i][t], m[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (long i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        if (q != 0)
          for (long j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (long j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        if (q != 0)
          for (long i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (long i = t; i < rows; ++i) std::swap(m[i][t], m[i][j]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (long i = t + 1; i < rows && clean; ++i)
        for (long j = t + 1; j < cols && clean; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (long jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            clean = false;
          }
    }
    out.invariants.push_back(abs(m[t][t]));
    ++t;
  }
  out.rank = static_cast<long>(out.invariants.size());
  return out;
}

std::string describe_group(const HomologyGroup& g) {
  std::vector<std::string> parts;
  if (g.betti == 1)
    parts.push_back("Z");
  else if (g.betti != 0)
    parts.push_back("Z^" + std::to_string(g.betti));
  for (long t : g.torsion) parts.push_back("Z/" + std::to_string(t));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

long component_count(const SimplicialComplexData& k) {
  const long n = k.simplices.empty() ? 0 : static_cast<long>(k.simplices[0].size());
  std::vector<long> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<long(long)> find = [&](long x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  if (k.simplices.size() > 1)
    for (const auto& row : k.faces[1]) parent[find(row[0])] = find(row[1]);
  long roots = 0;
  for (long v = 0; v < n; ++v)
    if (find(v) == v) ++roots;
  return roots;
}

// One incidence entry per (coface, facet position).
std::vector<std::vector<std::vector<long>>> coface_table(const SimplicialComplexData& k) {
  std::vector<std::vector<std::vector<long>>> cof(k.simplices.size());
  for (std::size_t d = 0; d < k.simplices.size(); ++d)
    cof[d].resize(k.simplices[d].size());
  for (std::size_t d = 1; d < k.simplices.size(); ++d)
    for (std::size_t s = 0; s < k.simplices[d].size(); ++s)
      for (long f : k.faces[d][s]) cof[d - 1][f].push_back(static_cast<long>(s));
  return cof;
}

bool greedy_collapse(const SimplicialComplexData& k,
                     const std::vector<std::vector<std::vector<long>>>& cofaces,
                     const std::vector<std::vector<long>>& order,
                     std::vector<CollapseStep>& cert) {
  std::vector<std::vector<char>> alive(k.simplices.size());
  long alive_count = 0;
  for (std::size_t d = 0; d < k.simplices.size(); ++d) {
    alive[d].assign(k.simplices[d].size(), 1);
    alive_count += static_cast<long>(k.simplices[d].size());
  }
  cert.clear();
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t d = 0; d + 1 < k.simplices.size() && !progress; ++d) {
      for (long s : order[d]) {
        if (!alive[d][s]) continue;
        long incidences = 0;
        long tau = -1;
        for (long t : cofaces[d][s]) {
          if (!alive[d + 1][t]) continue;
          ++incidences;
          tau = t;
          if (incidences > 1) break;
        }
        if (incidences != 1) continue;
        alive[d][s] = 0;
        alive[d + 1][tau] = 0;
        alive_count -= 2;
        cert.push_back({static_cast<long>(d), s, tau});
        progress = true;
        break;
      }
    }
  }
  if (alive_count != 1) return false;
  for (std::size_t s = 0; s < k.simplices[0].size(); ++s)
    if (alive[0][s]) return true;
  return false;
}

// Edge-path presentation of the fundamental group relative to a spanning
// tree, followed by a budgeted Tietze simplification.  Words are sequences
// of nonzero entries, sign for orientation, |value| - 1 the generator.
struct Pi1State {
  long generators = 0;
  std::vector<std::vector<long>> relations;
};

void freely_reduce(std::vector<long>& w) {
  std::vector<long> out;
  for (long x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  while (out.size() >= 2 && out.front() == -out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  w = std::move(out);
}

Pi1State pi1_presentation(const SimplicialComplexData& k) {
  Pi1State st;
  const long n = static_cast<long>(k.simplices[0].size());
  const long edges = k.simplices.size() > 1 ? static_cast<long>(k.simplices[1].size()) : 0;
  std::vector<char> in_tree(edges, 0);
  std::vector<char> seen(n, 0);
  std::vector<std::vector<std::pair<long, long>>> adj(n);  // (edge, other endpoint)
  for (long e = 0; e < edges; ++e) {
    long src = k.faces[1][e][1];
    long tgt = k.faces[1][e][0];
    adj[src].push_back({e, tgt});
    adj[tgt].push_back({e, src});
  }
  std::vector<long> queue{0};
  seen[0] = 1;
  for (std::size_t at = 0; at < queue.size(); ++at)
    for (auto [e, w] : adj[queue[at]])
      if (!seen[w]) {
        seen[w] = 1;
        in_tree[e] = 1;
        queue.push_back(w);
      }
  std::vector<long> gen_of(edges, 0);  // signed atom for the edge, 0 when in the tree
  for (long e = 0; e < edges; ++e)
    if (!in_tree[e]) gen_of[e] = ++st.generators;
  if (k.simplices.size() > 2)
    for (const auto& row : k.faces[2]) {
      std::vector<long> w;
      if (gen_of[row[2]]) w.push_back(gen_of[row[2]]);
      if (gen_of[row[0]]) w.push_back(gen_of[row[0]]);
      if (gen_of[row[1]]) w.push_back(-gen_of[row[1]]);
      freely_reduce(w);
      if (!w.empty()) st.relations.push_back(std::move(w));
    }
  return st;
}

// Returns the number of surviving generators after at most `budget`
// elimination steps.
long tietze_simplify(Pi1State& st, long budget) {
  std::vector<char> alive(st.generators + 1, 1);
  long alive_count = st.generators;
  long steps = 0;
  bool changed = true;
  while (changed && steps < budget) {
    changed = false;
    for (auto& w : st.relations) freely_reduce(w);
    st.relations.erase(std::remove_if(st.relations.begin(), st.relations.end(),
                                      [](const std::vector<long>& w) { return w.empty(); }),
                       st.relations.end());
    for (std::size_t r = 0; r < st.relations.size() && steps < budget; ++r) {
      const std::vector<long>& w = st.relations[r];
      if (w.size() == 1) {
        const long g = std::abs(w[0]);
        for (auto& other : st.relations)
          other.erase(std::remove_if(other.begin(), other.end(),
                                     [&](long x) { return std::abs(x) == g; }),
                      other.end());
        st.relations.erase(st.relations.begin() + r);
        alive[g] = 0;
        --alive_count;
        ++steps;
        changed = true;
        break;
      }
      if (w.size() == 2 && std::abs(w[0]) != std::abs(w[1])) {
        // a * b = 1, so b is a word in a; rewrite every occurrence of |b|
        const long a = w[0];
        const long b = w[1];
        const long g = std::abs(b);
        st.relations.erase(st.relations.begin() + r);
        for (auto& other : st.relations) {
          std::vector<long> next;
          for (long x : other) {
            if (std::abs(x) != g) {
              next.push_back(x);
            } else {
              const bool same_sign = (x > 0) == (b > 0);
              next.push_back(same_sign ? -a : a);
            }
          }
          other = std::move(next);
        }
        alive[g] = 0;
        --alive_count;
        ++steps;
        changed = true;
        break;
      }
    }
  }
  return alive_count;
}

ContractibilityResult factor_contractibility(const FinCat& f, std::uint64_t seed,
                                             long restarts) {
  return contractibility(nerve(f), seed, restarts);
}

void fold_case(CheckResult& out, FactorCase fc) {
  if (fc.result.verdict == contractibility_verdict::not_contractible)
    out.verdict = check_verdict::no;
  else if (fc.result.verdict == contractibility_verdict::unknown &&
           out.verdict == check_verdict::yes)
    out.verdict = check_verdict::unknown;
  out.cases.push_back(std::move(fc));
}

}  // namespace

bool is_loopfree(const FinCat& c) {
  for (const Morph& m : c.morphisms()) {
    if (c.is_identity(m.id)) continue;
    if (m.src == m.tgt) return false;
    for (const std::string& g : c.hom(m.tgt, m.src))
      if (c.compose(g, m.id) == c.identity_of(m.src) &&
          c.compose(m.id, g) == c.identity_of(m.tgt))
        return false;
  }
  return true;
}

SimplicialComplexData nerve(const FinCat& c) {
  if (!is_loopfree(c)) fail(errc::not_loopfree, "the nerve needs a loopfree category");
  SimplicialComplexData k;
  std::vector<std::map<std::vector<std::string>, long>> index(1);
  k.simplices.emplace_back();
  k.faces.emplace_back();
  for (const std::string& obj : c.objects()) {
    index[0][{obj}] = static_cast<long>(k.simplices[0].size());
    k.simplices[0].push_back({obj});
  }
  std::map<std::string, std::vector<const Morph*>> out_of;
  for (const Morph& m : c.morphisms())
    if (!c.is_identity(m.id)) out_of[m.src].push_back(&m);
  for (long d = 1;; ++d) {
    std::vector<std::vector<std::string>> level;
    if (d == 1) {
      for (const Morph& m : c.morphisms())
        if (!c.is_identity(m.id)) level.push_back({m.id});
    } else {
      for (const std::vector<std::string>& chain : k.simplices[d - 1]) {
        const std::string& tail = c.morphism(chain.back()).tgt;
        const auto bucket = out_of.find(tail);
        if (bucket == out_of.end()) continue;
        for (const Morph* m : bucket->second) {
          std::vector<std::string> next = chain;
          next.push_back(m->id);
          level.push_back(std::move(next));
        }
      }
    }
    if (level.empty()) break;
    index.emplace_back();
    for (std::size_t s = 0; s < level.size(); ++s)
      index[d][level[s]] = static_cast<long>(s);
    std::vector<std::vector<long>> level_faces;
    for (const std::vector<std::string>& chain : level) {
      std::vector<long> row;
      for (long i = 0; i <= d; ++i) {
        if (d == 1) {
          const Morph& m = c.morphism(chain[0]);
          row.push_back(index[0].at({i == 0 ? m.tgt : m.src}));
        } else {
          std::vector<std::string> facet;
          if (i == 0) {
            facet.assign(chain.begin() + 1, chain.end());
          } else if (i == d) {
            facet.assign(chain.begin(), chain.end() - 1);
          } else {
            facet = chain;
            facet[i - 1] = c.compose(chain[i], chain[i - 1]);
            facet.erase(facet.begin() + i);
          }
          row.push_back(index[d - 1].at(facet));
        }
      }
      level_faces.push_back(std::move(row));
    }
    k.simplices.push_back(std::move(level));
    k.faces.push_back(std::move(level_faces));
  }
  return k;
}

void check_complex(const SimplicialComplexData& k) {
  if (k.simplices.size() != k.faces.size())
    fail(errc::bad_input, "simplex and face tables disagree in length");
  for (std::size_t d = 1; d < k.simplices.size(); ++d) {
    if (k.faces[d].size() != k.simplices[d].size())
      fail(errc::bad_input, "missing face rows in dimension " + std::to_string(d));
    if (k.simplices[d].empty())
      fail(errc::bad_input, "empty dimension " + std::to_string(d) + " below the top");
    for (std::size_t s = 0; s < k.simplices[d].size(); ++s) {
      const std::vector<long>& row = k.faces[d][s];
      if (row.size() != d + 1)
        fail(errc::bad_input, "facet count mismatch in dimension " + std::to_string(d));
      for (long f : row)
        if (f < 0 || f >= static_cast<long>(k.simplices[d - 1].size()))
          fail(errc::bad_input, "facet index out of range");
      for (std::size_t j = 1; j < row.size() && d >= 2; ++j)
        for (std::size_t i = 0; i < j; ++i)
          if (k.faces[d - 1][row[j]][i] != k.faces[d - 1][row[i]][j - 1])
            fail(errc::bad_input, "simplicial identity violated");
    }
  }
}

std::vector<HomologyGroup> reduced_homology(const SimplicialComplexData& k) {
  check_complex(k);
  std::vector<HomologyGroup> out;
  const long top = static_cast<long>(k.simplices.size()) - 1;
  if (top < 0) return out;
  std::vector<SnfResult> snf(top + 2);
  {
    std::vector<std::vector<mpz_class>> aug(
        1, std::vector<mpz_class>(k.simplices[0].size(), 1));
    snf[0] = smith_normal_form(std::move(aug));
  }
  for (long d = 1; d <= top; ++d) {
    std::vector<std::vector<mpz_class>> m(
        k.simplices[d - 1].size(), std::vector<mpz_class>(k.simplices[d].size(), 0));
    for (std::size_t s = 0; s < k.simplices[d].size(); ++s)
      for (long i = 0; i <= d; ++i) m[k.faces[d][s][i]][s] += (i % 2 == 0) ? 1 : -1;
    snf[d] = smith_normal_form(std::move(m));
  }
  for (long d = 0; d <= top; ++d) {
    HomologyGroup g;
    g.degree = d;
    g.betti = static_cast<long>(k.simplices[d].size()) - snf[d].rank - snf[d + 1].rank;
    for (const mpz_class& v : snf[d + 1].invariants)
      if (v > 1) {
        if (!v.fits_slong_p()) fail(errc::internal, "torsion factor exceeds the word size");
        g.torsion.push_back(v.get_si());
      }
    out.push_back(std::move(g));
  }
  return out;
}

ContractibilityResult contractibility(const SimplicialComplexData& k, std::uint64_t seed,
                                      long restarts) {
  check_complex(k);
  ContractibilityResult out;
  const long n0 = k.simplices.empty() ? 0 : static_cast<long>(k.simplices[0].size());
  if (n0 == 0) {
    out.verdict = contractibility_verdict::not_contractible;
    out.witness = "the complex is empty";
    return out;
  }
  const long components = component_count(k);
  if (components > 1) {
    out.verdict = contractibility_verdict::not_contractible;
    out.witness = "disconnected: " + std::to_string(components) + " components";
    out.witness_degree = 0;
    return out;
  }

  // A successful collapse certifies the verdict on its own, and homology
  // can never refute a collapsible complex, so the deterministic attempt
  // runs before the (much costlier) integral homology refutation.
  const auto cofaces = coface_table(k);
  std::vector<std::vector<long>> order(k.simplices.size());
  for (std::size_t d = 0; d < k.simplices.size(); ++d) {
    order[d].resize(k.simplices[d].size());
    std::iota(order[d].begin(), order[d].end(), 0);
  }
  if (greedy_collapse(k, cofaces, order, out.certificate)) {
    out.verdict = contractibility_verdict::contractible;
    return out;
  }

  for (const HomologyGroup& g : reduced_homology(k))
    if (g.betti != 0 || !g.torsion.empty()) {
      out.verdict = contractibility_verdict::not_contractible;
      out.witness = describe_group(g);
      out.witness_degree = g.degree;
      return out;
    }

  for (long attempt = 1; attempt <= restarts; ++attempt) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
    for (auto& level : order) std::shuffle(level.begin(), level.end(), rng);
    if (greedy_collapse(k, cofaces, order, out.certificate)) {
      out.verdict = contractibility_verdict::contractible;
      return out;
    }
  }
  out.certificate.clear();

  Pi1State pi1 = pi1_presentation(k);
  const long remaining = tietze_simplify(pi1, 1000);
  out.verdict = contractibility_verdict::unknown;
  if (remaining == 0)
    out.diagnostics = "homology trivial and pi1 reduced to no generators, but no collapse sequence was found";
  else
    out.diagnostics = "pi1 presentation not trivially simplified: " +
                      std::to_string(remaining) + " generators, " +
                      std::to_string(pi1.relations.size()) + " relations remain";
  return out;
}

bool replay_collapse(const SimplicialComplexData& k,
                     const std::vector<CollapseStep>& certificate) {
  try {
    check_complex(k);
  } catch (const error&) {
    return false;
  }
  const auto cofaces = coface_table(k);
  std::vector<std::vector<char>> alive(k.simplices.size());
  long alive_count = 0;
  for (std::size_t d = 0; d < k.simplices.size(); ++d) {
    alive[d].assign(k.simplices[d].size(), 1);
    alive_count += static_cast<long>(k.simplices[d].size());
  }
  for (const CollapseStep& step : certificate) {
    if (step.dim < 0 || step.dim + 1 >= static_cast<long>(k.simplices.size())) return false;
    if (step.face < 0 || step.face >= static_cast<long>(k.simplices[step.dim].size()))
      return false;
    if (step.coface < 0 ||
        step.coface >= static_cast<long>(k.simplices[step.dim + 1].size()))
      return false;
    if (!alive[step.dim][step.face] || !alive[step.dim + 1][step.coface]) return false;
    long incidences = 0;
    bool matches = false;
    for (long t : cofaces[step.dim][step.face])
      if (alive[step.dim + 1][t]) {
        ++incidences;
        if (t == step.coface) matches = true;
      }
    if (incidences != 1 || !matches) return false;
    alive[step.dim][step.face] = 0;
    alive[step.dim + 1][step.coface] = 0;
    alive_count -= 2;
  }
  if (alive_count != 1) return false;
  for (std::size_t s = 0; s < k.simplices[0].size(); ++s)
    if (alive[0][s]) return true;
  return false;
}

CheckResult is_homotopical_epimorphism(const CatFunctor& u, std::uint64_t seed,
                                       long restarts) {
  check_functor(u);
  if (!is_loopfree(u.source)) fail(errc::not_loopfree, "the source category is not loopfree");
  std::vector<Morph> gammas = u.target.morphisms();
  std::sort(gammas.begin(), gammas.end(),
            [](const Morph& a, const Morph& b) { return a.id < b.id; });
  CheckResult out;
  out.verdict = check_verdict::yes;
  for (const Morph& g : gammas) {
    FinCat f = factor_category(u, g.src, g.tgt, g.id);
    fold_case(out, {g.src, g.tgt, g.id, factor_contractibility(f, seed, restarts)});
  }
  return out;
}

CheckResult is_homotopy_exact(const TwoSidedSquare& square, const ExactnessFilter& filter,
                              std::uint64_t seed, long restarts) {
  check_square(square);
  if (!is_loopfree(square.p.source))
    fail(errc::not_loopfree, "the inner corner category is not loopfree");
  std::vector<std::string> as = square.u.source.objects();
  std::vector<std::string> bs = square.v.source.objects();
  std::sort(as.begin(), as.end());
  std::sort(bs.begin(), bs.end());
  CheckResult out;
  out.verdict = check_verdict::yes;
  for (const std::string& a : as) {
    if (filter.a && *filter.a != a) continue;
    for (const std::string& b : bs) {
      if (filter.b && *filter.b != b) continue;
      std::vector<std::string> gammas =
          square.u.target.hom(apply_ob(square.u, a), apply_ob(square.v, b));
      std::sort(gammas.begin(), gammas.end());
      for (const std::string& g : gammas) {
        if (filter.gamma && *filter.gamma != g) continue;
        FinCat f = two_sided_factor(square, a, b, g);
        fold_case(out, {a, b, g, factor_contractibility(f, seed, restarts)});
      }
    }
  }
  return out;
}

}  // namespace reflekt
