#pragma once

#include <string>
#include <vector>

#include "pcris/arith.hpp"

namespace pcris {

// x = p^{-d} * sum_{j<M} c_j E^j / p^{floor(j/p)}, c_j in O_F stored mod p^N.
// np: x is known modulo p^np S_F; mv: coefficients j >= mv are unknown.
class SElem {
 public:
  SElem() = default;
  explicit SElem(Ctx ctx);

  static SElem zero(const Ctx& ctx) { return SElem(ctx); }
  static SElem one(const Ctx& ctx);
  static SElem scalar(const OF& a);
  static SElem basis(const Ctx& ctx, int j);    // E^j / p^{floor(j/p)}
  static SElem E_power(const Ctx& ctx, int j);  // E^j
  static SElem from_coeffs(const Ctx& ctx, const std::vector<OF>& c, int d = 0);
  // exact polynomial sum a_i u^i (degree < M) rewritten in E = u + p
  static SElem from_u_polynomial(const Ctx& ctx, const std::vector<OF>& a);

  const Ctx& ctx() const { return ctx_; }
  int d() const { return d_; }
  int nprec() const { return np_; }
  int mprec() const { return mv_; }
  OF coeff(int j) const;
  void set(int j, const OF& a);
  const i64* raw(int j) const { return &c_[(size_t)j * ctx_->r]; }
  i64* raw(int j) { return &c_[(size_t)j * ctx_->r]; }
  bool raw_zero(int j) const { return raw::is_zero(raw(j), ctx_->r); }

  SElem operator+(const SElem& o) const;
  SElem operator-(const SElem& o) const;
  SElem operator*(const SElem& o) const;
  SElem operator-() const;

  bool is_zero() const;  // at precision
  SElem with_prec(int np, int mv = -1) const;
  SElem with_d(int d) const;  // same value, larger denominator exponent

 private:
  Ctx ctx_;
  std::vector<i64> c_;
  int d_ = 0, mv_ = 0, np_ = 0;
  friend SElem s_mul(const SElem&, const SElem&);
  friend SElem s_scale(const OF&, const SElem&);
  friend SElem s_frobenius(const SElem&);
  friend SElem s_frobenius_div(const SElem&, int, int);
  friend SElem s_invert(const SElem&);
  friend SElem normalize_d(const SElem&);
  friend SElem s_div_E(const SElem&, int);
  friend SElem low_part(const SElem&, int);
  friend SElem high_part(const SElem&, int);
};

SElem s_mul(const SElem& x, const SElem& y);
SElem s_scale(const OF& a, const SElem& x);
SElem s_pow(const SElem& x, i64 n);
bool s_equal(const SElem& x, const SElem& y);
Val s_valuation(const SElem& x);  // min over coefficients of the value, d accounted

SElem gamma(const Ctx& ctx);
SElem gamma_power(const Ctx& ctx, int j);  // cached gamma^j
SElem s_frobenius(const SElem& x);
// phi(x)/p^t for x whose coefficients below h are exactly zero; gains precision
SElem s_frobenius_div(const SElem& x, int t, int h);
SElem s_frobenius_iter(const SElem& x, int n);
SElem s_invert(const SElem& x);
SElem normalize_d(const SElem& x);
// x / E^k for x in Fil^k, with denominator ceil(k/p) before normalisation
SElem s_div_E(const SElem& x, int k);
SElem low_part(const SElem& x, int h);   // indices < h
SElem high_part(const SElem& x, int h);  // indices >= h

// integer combination sum c_j phi^j
struct PhiExpPoly {
  std::vector<i64> c;
  PhiExpPoly() = default;
  explicit PhiExpPoly(std::vector<i64> v);
  static PhiExpPoly constant(i64 a) { return PhiExpPoly({a}); }
  static PhiExpPoly monomial(i64 a, int j);
  int degree() const { return (int)c.size() - 1; }
  i64 coeff(int j) const { return j < (int)c.size() ? c[j] : 0; }
  bool is_zero() const { return c.empty(); }
  PhiExpPoly operator+(const PhiExpPoly& o) const;
  PhiExpPoly operator-(const PhiExpPoly& o) const;
  PhiExpPoly operator*(i64 a) const;
  PhiExpPoly shift(int k) const;  // multiply by phi^k
  bool operator==(const PhiExpPoly& o) const { return c == o.c; }
  std::string str() const;
};

struct LambdaB {
  SElem value;
  int b = 0;
  int nstar = 0;  // first n with phi^{bn}(gamma) = 1 at precision
};

LambdaB lambda_b(int b, const Ctx& ctx);
SElem lambda_power(const PhiExpPoly& e, int b, const Ctx& ctx);

bool fil_membership(const SElem& x, int j);
bool in_frak_S(const SElem& x);        // O_F[[u]] inside S_F
bool in_varpi_frak_S(const SElem& x);  // p O_F[[u]]
bool in_p_power(const SElem& x, int c);  // p^c S_F
bool in_Jc(const SElem& x, int c);       // p Fil^{cp} + E Fil^{cp}
bool in_window(const SElem& x, int h);   // zero below h, p | every coefficient

struct IdealSplit {
  SElem integral;  // indices < cp, lies in p O_F[[u]]
  SElem small;     // indices >= cp
  int c = 0;
  bool integral_in_varpi_S = false;
  bool small_in_Jc = false;
};

// x in I_c = p^c S_F (checked when require_member) split as integral + small
IdealSplit ideal_split(const SElem& x, int c, bool require_member = true);

// (E^p/p)-power form: x = sum_m alpha_m(E) (E^p/p)^m with deg alpha_m <= p-1
std::vector<std::vector<OF>> to_ep_form(const SElem& x);
SElem from_ep_form(const Ctx& ctx, const std::vector<std::vector<OF>>& alpha);

// reduction mod p of an element of O_F[[u]]; length min(mv, p*np)
ResidueSeries s_reduce(const SElem& x);

// JSON array of [j, coefficient, floor(j/p)] for nonzero coefficients
std::string s_debug_json(const SElem& x);

}  // namespace pcris
