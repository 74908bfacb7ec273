#include "reflekt/field.hpp"

#include "reflekt/error.hpp"

namespace reflekt {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long residue(const mpq_class& v, long p) {
  // v must have a denominator invertible mod p
  mpz_class num = v.get_num(), den = v.get_den();
  mpz_class pz(p);
  mpz_class n = num % pz;
  if (n < 0) n += pz;
  mpz_class d = den % pz;
  if (d == 0) fail(errc::bad_field, "denominator divisible by " + std::to_string(p));
  mpz_class dinv;
  if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pz.get_mpz_t()) == 0)
    fail(errc::bad_field, "denominator not invertible mod " + std::to_string(p));
  mpz_class r = (n * dinv) % pz;
  return r.get_si();
}

}  // namespace

FieldSpec FieldSpec::prime(long p) {
  if (!is_prime(p)) fail(errc::bad_field, "not a prime: " + std::to_string(p));
  FieldSpec f;
  f.kind = kind_t::prime;
  f.p = p;
  return f;
}

std::string FieldSpec::name() const {
  return is_rationals() ? "Q" : "F" + std::to_string(p);
}

FieldSpec FieldSpec::parse(const std::string& s) {
  if (s == "Q") return rationals();
  if (s.size() >= 2 && s[0] == 'F') {
    try {
      return prime(std::stol(s.substr(1)));
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
  }
  fail(errc::bad_field, "unrecognized field: " + s);
}

mpq_class fnormalize(const mpq_class& v, const FieldSpec& f) {
  if (f.is_rationals()) {
    mpq_class r = v;
    r.canonicalize();
    return r;
  }
  return mpq_class(residue(v, f.p));
}

mpq_class fadd(const mpq_class& a, const mpq_class& b, const FieldSpec& f) {
  return fnormalize(a + b, f);
}
mpq_class fsub(const mpq_class& a, const mpq_class& b, const FieldSpec& f) {
  return fnormalize(a - b, f);
}
mpq_class fmul(const mpq_class& a, const mpq_class& b, const FieldSpec& f) {
  return fnormalize(a * b, f);
}
mpq_class fneg(const mpq_class& a, const FieldSpec& f) { return fnormalize(-a, f); }

mpq_class finv(const mpq_class& a, const FieldSpec& f) {
  if (a == 0) fail(errc::not_invertible, "division by zero");
  if (f.is_rationals()) {
    mpq_class r = 1 / a;
    r.canonicalize();
    return r;
  }
  mpz_class az(fnormalize(a, f).get_num()), pz(f.p), inv;
  if (az == 0 || mpz_invert(inv.get_mpz_t(), az.get_mpz_t(), pz.get_mpz_t()) == 0)
    fail(errc::not_invertible, "division by zero in " + f.name());
  return mpq_class(inv);
}

mpq_class fdiv(const mpq_class& a, const mpq_class& b, const FieldSpec& f) {
  return fmul(a, finv(b, f), f);
}

mpq_class parse_scalar(const std::string& s, const FieldSpec& f) {
  if (s.empty()) fail(errc::bad_input, "empty scalar");
  try {
    mpq_class v(s);
    v.canonicalize();
    return fnormalize(v, f);
  } catch (const std::invalid_argument&) {
    fail(errc::bad_input, "bad scalar: " + s);
  }
}

std::string scalar_to_string(const mpq_class& v) { return v.get_str(); }

}  // namespace reflekt
