#include "reflekt/exact_matrix.hpp"

#include "reflekt/error.hpp"

namespace reflekt {

ExactMatrix::ExactMatrix(long rows, long cols, FieldSpec field)
    : rows_(rows), cols_(cols), field_(field), e_(rows * cols, mpq_class(0)) {
  if (rows < 0 || cols < 0) fail(errc::bad_input, "negative matrix shape");
}

ExactMatrix ExactMatrix::identity(long n, FieldSpec field) {
  ExactMatrix m(n, n, field);
  for (long i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<std::vector<std::string>>& rows, long cols,
                                   FieldSpec field) {
  ExactMatrix m(static_cast<long>(rows.size()), cols, field);
  for (long i = 0; i < m.rows(); ++i) {
    if (static_cast<long>(rows[i].size()) != cols)
      fail(errc::bad_input, "ragged matrix row " + std::to_string(i));
    for (long j = 0; j < cols; ++j) m.set(i, j, parse_scalar(rows[i][j], field));
  }
  return m;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : e_)
    if (v != 0) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
    fail(errc::mismatch, "matrix addition shape/field mismatch");
  ExactMatrix m(rows_, cols_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) m.set(i, j, at(i, j) + o.at(i, j));
  return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const { return *this + o.negated(); }

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_ || field_ != o.field_)
    fail(errc::mismatch, "matrix product shape/field mismatch");
  ExactMatrix m(rows_, o.cols_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k) {
      const mpq_class& a = at(i, k);
      if (a == 0) continue;
      for (long j = 0; j < o.cols_; ++j) {
        const mpq_class& b = o.at(k, j);
        if (b == 0) continue;
        m.set(i, j, m.at(i, j) + a * b);
      }
    }
  return m;
}

ExactMatrix ExactMatrix::negated() const {
  ExactMatrix m(rows_, cols_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) m.set(i, j, -at(i, j));
  return m;
}

ExactMatrix ExactMatrix::scaled(const mpq_class& c) const {
  ExactMatrix m(rows_, cols_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) m.set(i, j, c * at(i, j));
  return m;
}

ExactMatrix ExactMatrix::transposed() const {
  ExactMatrix m(cols_, rows_, field_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
  return m;
}

std::vector<std::vector<std::string>> ExactMatrix::to_rows() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (long i = 0; i < rows_; ++i) {
    out[i].reserve(cols_);
    for (long j = 0; j < cols_; ++j) out[i].push_back(scalar_to_string(at(i, j)));
  }
  return out;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) fail(errc::mismatch, "hstack mismatch");
  ExactMatrix m(a.rows(), a.cols() + b.cols(), a.field());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
    for (long j = 0; j < b.cols(); ++j) m.set(i, a.cols() + j, b.at(i, j));
  }
  return m;
}

ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.cols() != b.cols() || a.field() != b.field()) fail(errc::mismatch, "vstack mismatch");
  ExactMatrix m(a.rows() + b.rows(), a.cols(), a.field());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) m.set(i, j, a.at(i, j));
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) m.set(a.rows() + i, j, b.at(i, j));
  return m;
}

ExactMatrix vstack_all(const std::vector<ExactMatrix>& blocks, long cols, FieldSpec field) {
  long rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  ExactMatrix m(rows, cols, field);
  long r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols || b.field() != field) fail(errc::mismatch, "vstack_all mismatch");
    for (long i = 0; i < b.rows(); ++i)
      for (long j = 0; j < cols; ++j) m.set(r + i, j, b.at(i, j));
    r += b.rows();
  }
  return m;
}

RrefResult rref(const ExactMatrix& a) {
  RrefResult res{a, {}, 0};
  ExactMatrix& m = res.mat;
  const FieldSpec& f = a.field();
  long r = 0;
  for (long c = 0; c < m.cols() && r < m.rows(); ++c) {
    long pivot = -1;
    for (long i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (long j = 0; j < m.cols(); ++j) {
        mpq_class tmp = m.at(r, j);
        m.set(r, j, m.at(pivot, j));
        m.set(pivot, j, tmp);
      }
    mpq_class inv = finv(m.at(r, c), f);
    for (long j = c; j < m.cols(); ++j) m.set(r, j, inv * m.at(r, j));
    for (long i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      mpq_class k = m.at(i, c);
      for (long j = c; j < m.cols(); ++j) m.set(i, j, m.at(i, j) - k * m.at(r, j));
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

long rank_of(const ExactMatrix& a) { return rref(a).rank; }

ExactMatrix kernel_basis(const ExactMatrix& a) {
  RrefResult r = rref(a);
  std::vector<long> free_cols;
  {
    size_t pi = 0;
    for (long c = 0; c < a.cols(); ++c) {
      if (pi < r.pivot_cols.size() && r.pivot_cols[pi] == c)
        ++pi;
      else
        free_cols.push_back(c);
    }
  }
  ExactMatrix k(a.cols(), static_cast<long>(free_cols.size()), a.field());
  for (size_t idx = 0; idx < free_cols.size(); ++idx) {
    long fc = free_cols[idx];
    k.set(fc, static_cast<long>(idx), 1);
    for (size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
      k.set(r.pivot_cols[pi], static_cast<long>(idx), -r.mat.at(static_cast<long>(pi), fc));
  }
  return k;
}

CokernelData cokernel_data(const ExactMatrix& a) {
  // Column space of `a` in reduced echelon form via the transpose.
  RrefResult rt = rref(a.transposed());
  CokernelData out;
  out.pivot_rows = rt.pivot_cols;  // coordinates of k^rows hit by leading entries
  std::vector<long> rest;
  {
    size_t pi = 0;
    for (long c = 0; c < a.rows(); ++c) {
      if (pi < out.pivot_rows.size() && out.pivot_rows[pi] == c)
        ++pi;
      else
        rest.push_back(c);
    }
  }
  long q = static_cast<long>(rest.size());
  // proj(w) = restriction to `rest` of w - sum_b w[pivot_b] * basis_b
  out.proj = ExactMatrix(q, a.rows(), a.field());
  for (long i = 0; i < q; ++i) {
    out.proj.set(i, rest[i], 1);
    for (long b = 0; b < rt.rank; ++b)
      out.proj.set(i, out.pivot_rows[b], -rt.mat.at(b, rest[i]));
  }
  out.section = ExactMatrix(a.rows(), q, a.field());
  for (long i = 0; i < q; ++i) out.section.set(rest[i], i, 1);
  return out;
}

std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) fail(errc::mismatch, "solve mismatch");
  RrefResult r = rref(hstack(a, b));
  for (long c : r.pivot_cols)
    if (c >= a.cols()) return std::nullopt;  // inconsistent system
  ExactMatrix x(a.cols(), b.cols(), a.field());
  for (size_t pi = 0; pi < r.pivot_cols.size(); ++pi)
    for (long j = 0; j < b.cols(); ++j)
      x.set(r.pivot_cols[pi], j, r.mat.at(static_cast<long>(pi), a.cols() + j));
  return x;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  auto x = solve(a, ExactMatrix::identity(a.rows(), a.field()));
  if (!x) return std::nullopt;
  if (!((*x) * a == ExactMatrix::identity(a.rows(), a.field()))) return std::nullopt;
  if (!(a * (*x) == ExactMatrix::identity(a.rows(), a.field()))) return std::nullopt;
  return x;
}

}  // namespace reflekt
