#pragma once

#include <gmpxx.h>

#include <string>

namespace reflekt {

// Ground field for all linear algebra: the rationals or a prime field F_p.
struct FieldSpec {
  enum class kind_t { rationals, prime };
  kind_t kind = kind_t::rationals;
  long p = 0;

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(long p);

  bool is_rationals() const { return kind == kind_t::rationals; }
  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
  bool operator!=(const FieldSpec& o) const { return !(*this == o); }

  std::string name() const;               // "Q", "F2", "F5", ...
  static FieldSpec parse(const std::string& s);
};

// Scalar helpers. Rational scalars are canonical mpq values; prime-field
// scalars are residues 0..p-1 stored with denominator 1.
mpq_class fnormalize(const mpq_class& v, const FieldSpec& f);
mpq_class fadd(const mpq_class& a, const mpq_class& b, const FieldSpec& f);
mpq_class fsub(const mpq_class& a, const mpq_class& b, const FieldSpec& f);
mpq_class fmul(const mpq_class& a, const mpq_class& b, const FieldSpec& f);
mpq_class fneg(const mpq_class& a, const FieldSpec& f);
mpq_class finv(const mpq_class& a, const FieldSpec& f);
mpq_class fdiv(const mpq_class& a, const mpq_class& b, const FieldSpec& f);

mpq_class parse_scalar(const std::string& s, const FieldSpec& f);
std::string scalar_to_string(const mpq_class& v);

}  // namespace reflekt
