#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcris {

using i64 = std::int64_t;
using i128 = __int128;
using u128 = unsigned __int128;

enum class ErrKind {
  NotAUnit,
  NotInIdeal,
  IrregularWeights,
  Degenerate,
  PrecisionExhausted,
  DetCheckFailed,
  GateFailed,
  SplitFailed,
  AssumptionViolated,
  NoConvergence,
  HeightMismatch,
  NonMonomial,
  ConfigError,
  InvalidArgument,
};

const char* kind_name(ErrKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrKind k, const std::string& msg);
  ErrKind kind() const { return kind_; }
  const char* kind_str() const { return kind_name(kind_); }

 private:
  ErrKind kind_;
};

struct SCache;  // lazily filled s_ring caches (gamma powers, lambda_b)

// p, f, r and the working precision (M, N). O_F = Z_p[X]/(P) with P a lift of
// an irreducible degree-r polynomial over F_p.
struct Context {
  i64 p = 0;
  int f = 1, r = 1, N = 1, M = 1;
  i64 pN = 1;
  std::vector<i64> ppow;  // p^0 .. p^N
  std::vector<i64> poly;  // monic, size r+1, coefficients in [0, p)
  std::shared_ptr<SCache> cache;

  i64 red(i64 x) const {
    x %= pN;
    return x < 0 ? x + pN : x;
  }
  i64 red128(i128 x) const {
    i64 v = static_cast<i64>(x % pN);
    return v < 0 ? v + pN : v;
  }
  i64 mulmod(i64 a, i64 b) const { return static_cast<i64>((u128)a * (u128)b % (u128)pN); }
  bool same(const Context& o) const;
  std::string poly_str() const;
};
using Ctx = std::shared_ptr<const Context>;

// r = 0 means r = f.
Ctx make_context(i64 p, int f, int N, int M, int r = 0);
bool is_prime(i64 n);
// lexicographically first monic irreducible of degree r over F_p
std::vector<i64> find_irreducible(i64 p, int r);

// integer valuation or ">= bound"
struct Val {
  int v = 0;
  bool ge = false;
  std::string str() const;
  bool operator==(const Val& o) const { return v == o.v && ge == o.ge; }
};

int vp_int(i64 x, i64 p, int cap);

namespace raw {
// out = a*b in O_F mod p^N; out may alias neither input
void of_mul(const Context& c, const i64* a, const i64* b, i64* out);
// fold a reduced length-(2r-1) product modulo the residue polynomial
void fold(const Context& c, i64* tmp, i64* out);
bool is_zero(const i64* a, int r);
int valuation(const Context& c, const i64* a, int cap);
}  // namespace raw

// Element of O_F at absolute precision prec <= N.
class OF {
 public:
  OF() = default;
  OF(Ctx ctx, i64 v);
  OF(Ctx ctx, std::vector<i64> coeffs, int prec = -1);
  static OF zero(const Ctx& ctx) { return OF(ctx, 0); }
  static OF one(const Ctx& ctx) { return OF(ctx, 1); }
  static OF p_power(const Ctx& ctx, int e);

  const Ctx& ctx() const { return ctx_; }
  int prec() const { return prec_; }
  const std::vector<i64>& coeffs() const { return c_; }
  i64 coeff(int i) const { return c_[i]; }

  OF operator+(const OF& o) const;
  OF operator-(const OF& o) const;
  OF operator*(const OF& o) const;
  OF operator-() const;

  bool is_zero() const;
  bool equals(const OF& o) const;  // at the smaller precision
  OF with_prec(int prec) const;
  OF mul_p(int t) const;
  OF div_p(int t) const;  // exact; prec drops by t
  std::vector<i64> residue() const;
  std::string str() const;

 private:
  Ctx ctx_;
  std::vector<i64> c_;
  int prec_ = 0;
};

Val of_valuation(const OF& x);
bool of_is_unit(const OF& x);
OF of_invert(const OF& x);

// k_F[[u]] truncated at u^len; entries are residue-basis vectors mod p
class ResidueSeries {
 public:
  ResidueSeries() = default;
  ResidueSeries(Ctx ctx, int len);
  const Ctx& ctx() const { return ctx_; }
  int len() const { return len_; }
  std::vector<i64> coeff(int j) const;
  void set(int j, const std::vector<i64>& v);
  i64* raw(int j) { return &c_[(size_t)j * ctx_->r]; }
  const i64* raw(int j) const { return &c_[(size_t)j * ctx_->r]; }
  bool is_zero() const;
  int order() const;  // lowest nonzero index or -1
  ResidueSeries operator+(const ResidueSeries& o) const;
  ResidueSeries operator*(const ResidueSeries& o) const;
  bool operator==(const ResidueSeries& o) const;
  std::string str() const;

 private:
  Ctx ctx_;
  int len_ = 0;
  std::vector<i64> c_;
};

// O_F[[u]] truncated at u^M, coefficients mod p^N
class USeries {
 public:
  USeries() = default;
  explicit USeries(Ctx ctx);
  static USeries constant(const OF& a);
  static USeries u(const Ctx& ctx);
  static USeries E(const Ctx& ctx);

  const Ctx& ctx() const { return ctx_; }
  int prec() const { return prec_; }
  OF coeff(int j) const;
  void set(int j, const OF& a);
  i64* raw(int j) { return &c_[(size_t)j * ctx_->r]; }
  const i64* raw(int j) const { return &c_[(size_t)j * ctx_->r]; }

  USeries operator+(const USeries& o) const;
  USeries operator-(const USeries& o) const;
  USeries operator*(const USeries& o) const;
  bool equals(const USeries& o) const;
  USeries with_prec(int prec) const;

 private:
  Ctx ctx_;
  std::vector<i64> c_;
  int prec_ = 0;
};

USeries useries_frobenius(const USeries& s);
ResidueSeries useries_reduce(const USeries& s);

}  // namespace pcris
