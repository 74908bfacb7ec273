#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reflekt/field.hpp"

namespace reflekt {

// Dense exact matrix over Q or F_p, row-major. Shapes r x c with r = 0 or
// c = 0 are first-class citizens (empty vector spaces show up constantly).
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(long rows, long cols, FieldSpec field);
  static ExactMatrix identity(long n, FieldSpec field);
  static ExactMatrix from_rows(const std::vector<std::vector<std::string>>& rows, long cols,
                               FieldSpec field);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const FieldSpec& field() const { return field_; }

  const mpq_class& at(long i, long j) const { return e_[i * cols_ + j]; }
  void set(long i, long j, const mpq_class& v) { e_[i * cols_ + j] = fnormalize(v, field_); }

  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;

  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix negated() const;
  ExactMatrix scaled(const mpq_class& c) const;
  ExactMatrix transposed() const;

  std::vector<std::vector<std::string>> to_rows() const;

 private:
  long rows_, cols_;
  FieldSpec field_;
  std::vector<mpq_class> e_;
};

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack_all(const std::vector<ExactMatrix>& blocks, long cols, FieldSpec field);

struct RrefResult {
  ExactMatrix mat;
  std::vector<long> pivot_cols;
  long rank = 0;
};
RrefResult rref(const ExactMatrix& a);
long rank_of(const ExactMatrix& a);

// Columns form a basis of ker(a); the submatrix on the non-pivot (free) rows
// is an identity, which makes lifting through the inclusion trivial.
ExactMatrix kernel_basis(const ExactMatrix& a);

// coker(a) for a : k^c -> k^r presented on the standard vectors e_i with i
// outside the column-space pivot set; proj * section = id, proj * a = 0.
struct CokernelData {
  ExactMatrix proj;     // (r - rank) x r
  ExactMatrix section;  // r x (r - rank)
  std::vector<long> pivot_rows;
};
CokernelData cokernel_data(const ExactMatrix& a);

std::optional<ExactMatrix> solve(const ExactMatrix& a, const ExactMatrix& b);  // a * x = b
std::optional<ExactMatrix> inverse(const ExactMatrix& a);

}  // namespace reflekt
