#include "pcris/arith.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace pcris {

std::shared_ptr<SCache> make_scache();  // sring.cpp

const char* kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::NotAUnit: return "NotAUnit";
    case ErrKind::NotInIdeal: return "NotInIdeal";
    case ErrKind::IrregularWeights: return "IrregularWeights";
    case ErrKind::Degenerate: return "Degenerate";
    case ErrKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrKind::DetCheckFailed: return "DetCheckFailed";
    case ErrKind::GateFailed: return "GateFailed";
    case ErrKind::SplitFailed: return "SplitFailed";
    case ErrKind::AssumptionViolated: return "AssumptionViolated";
    case ErrKind::NoConvergence: return "NoConvergence";
    case ErrKind::HeightMismatch: return "HeightMismatch";
    case ErrKind::NonMonomial: return "NonMonomial";
    case ErrKind::ConfigError: return "ConfigError";
    case ErrKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrKind k, const std::string& msg)
    : std::runtime_error(std::string(kind_name(k)) + ": " + msg), kind_(k) {}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

using Poly = std::vector<i64>;  // low degree first, over F_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic b over F_p
Poly pmod(Poly a, const Poly& b, i64 p) {
  int db = (int)b.size() - 1;
  trim(a);
  while ((int)a.size() - 1 >= db) {
    i64 lead = a.back();
    int shift = (int)a.size() - 1 - db;
    for (int i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly digits(i64 n, i64 p, int len) {
  Poly d(len);
  for (int i = 0; i < len; ++i) {
    d[i] = n % p;
    n /= p;
  }
  return d;
}

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

bool irreducible(const Poly& P, i64 p) {
  int r = (int)P.size() - 1;
  for (int dg = 1; dg <= r / 2; ++dg) {
    i64 cnt = ipow(p, dg);
    for (i64 n = 0; n < cnt; ++n) {
      Poly q = digits(n, p, dg);
      q.push_back(1);
      if (pmod(P, q, p).empty()) return false;
    }
  }
  return true;
}

i64 inv_mod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1) {
    i64 q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) return -1;
  x %= m;
  return x < 0 ? x + m : x;
}

}  // namespace

std::vector<i64> find_irreducible(i64 p, int r) {
  if (r == 1) return {0, 1};
  i64 cnt = ipow(p, r);
  for (i64 n = 0; n < cnt; ++n) {
    Poly P = digits(n, p, r);
    P.push_back(1);
    if (P[0] == 0) continue;
    if (irreducible(P, p)) return P;
  }
  throw Error(ErrKind::InvalidArgument, "no irreducible polynomial found");
}

bool Context::same(const Context& o) const {
  return this == &o || (p == o.p && r == o.r && N == o.N && M == o.M && poly == o.poly);
}

std::string Context::poly_str() const {
  std::ostringstream os;
  bool first = true;
  for (int i = r; i >= 0; --i) {
    if (poly[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || poly[i] != 1) os << poly[i];
    if (i >= 1) os << (i == 0 || poly[i] != 1 ? "*" : "") << "X";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

Ctx make_context(i64 p, int f, int N, int M, int r) {
  if (r == 0) r = f;
  if (p < 3 || !is_prime(p)) throw Error(ErrKind::InvalidArgument, "p must be an odd prime");
  if (f < 1 || r < f || r % f != 0) throw Error(ErrKind::InvalidArgument, "need f >= 1 and f | r");
  if (N < 1 || M < 1) throw Error(ErrKind::InvalidArgument, "need N >= 1 and M >= 1");
  auto c = std::make_shared<Context>();
  c->p = p;
  c->f = f;
  c->r = r;
  c->N = N;
  c->M = M;
  c->ppow.assign(N + 1, 1);
  for (int i = 1; i <= N; ++i) {
    if (c->ppow[i - 1] > (((i64)1) << 62) / p)
      throw Error(ErrKind::InvalidArgument, "p^N exceeds 2^62");
    c->ppow[i] = c->ppow[i - 1] * p;
  }
  c->pN = c->ppow[N];
  c->poly = find_irreducible(p, r);
  c->cache = make_scache();
  return c;
}

std::string Val::str() const { return ge ? ">=" + std::to_string(v) : std::to_string(v); }

int vp_int(i64 x, i64 p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (v < cap && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

namespace raw {

void fold(const Context& c, i64* tmp, i64* out) {
  const int r = c.r;
  for (int dg = 2 * r - 2; dg >= r; --dg) {
    i64 t = tmp[dg];
    if (!t) continue;
    for (int s = 0; s < r; ++s) {
      if (!c.poly[s]) continue;
      tmp[dg - r + s] = c.red(tmp[dg - r + s] - c.mulmod(t, c.poly[s]));
    }
  }
  for (int s = 0; s < r; ++s) out[s] = tmp[s];
}

void of_mul(const Context& c, const i64* a, const i64* b, i64* out) {
  if (c.r == 1) {
    out[0] = c.mulmod(a[0], b[0]);
    return;
  }
  const int r = c.r;
  i64 tmp[2 * 64];
  if (r > 64) throw Error(ErrKind::InvalidArgument, "r too large");
  for (int i = 0; i < 2 * r - 1; ++i) tmp[i] = 0;
  for (int i = 0; i < r; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < r; ++j)
      if (b[j]) tmp[i + j] = (i64)(((u128)tmp[i + j] + (u128)a[i] * (u128)b[j]) % (u128)c.pN);
  }
  fold(c, tmp, out);
}

bool is_zero(const i64* a, int r) {
  for (int i = 0; i < r; ++i)
    if (a[i]) return false;
  return true;
}

int valuation(const Context& c, const i64* a, int cap) {
  int v = cap;
  for (int i = 0; i < c.r; ++i) v = std::min(v, vp_int(a[i], c.p, cap));
  return v;
}

}  // namespace raw

// ---------------------------------------------------------------- OF

OF::OF(Ctx ctx, i64 v) : ctx_(std::move(ctx)), c_(ctx_->r, 0), prec_(ctx_->N) { c_[0] = ctx_->red(v); }

OF::OF(Ctx ctx, std::vector<i64> coeffs, int prec) : ctx_(std::move(ctx)), c_(ctx_->r, 0) {
  if ((int)coeffs.size() > ctx_->r) throw Error(ErrKind::InvalidArgument, "too many O_F coordinates");
  for (size_t i = 0; i < coeffs.size(); ++i) c_[i] = ctx_->red(coeffs[i]);
  prec_ = prec < 0 ? ctx_->N : std::min(prec, ctx_->N);
}

OF OF::p_power(const Ctx& ctx, int e) {
  if (e >= ctx->N) return OF(ctx, 0);
  return OF(ctx, ctx->ppow[e]);
}

static void check_same(const Ctx& a, const Ctx& b) {
  if (!a || !b || !a->same(*b)) throw Error(ErrKind::InvalidArgument, "mismatched contexts");
}

OF OF::operator+(const OF& o) const {
  check_same(ctx_, o.ctx_);
  OF z = *this;
  for (int i = 0; i < ctx_->r; ++i) z.c_[i] = ctx_->red(c_[i] + o.c_[i]);
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

OF OF::operator-(const OF& o) const {
  check_same(ctx_, o.ctx_);
  OF z = *this;
  for (int i = 0; i < ctx_->r; ++i) z.c_[i] = ctx_->red(c_[i] - o.c_[i]);
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

OF OF::operator-() const {
  OF z = *this;
  for (auto& v : z.c_) v = ctx_->red(-v);
  return z;
}

OF OF::operator*(const OF& o) const {
  check_same(ctx_, o.ctx_);
  OF z = *this;
  raw::of_mul(*ctx_, c_.data(), o.c_.data(), z.c_.data());
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

bool OF::is_zero() const {
  i64 m = ctx_->ppow[std::max(0, prec_)];
  for (auto v : c_)
    if (v % m) return false;
  return true;
}

bool OF::equals(const OF& o) const {
  OF d = *this - o;
  return d.is_zero();
}

OF OF::with_prec(int prec) const {
  OF z = *this;
  z.prec_ = std::min(prec_, prec);
  return z;
}

OF OF::mul_p(int t) const {
  OF z = *this;
  if (t >= ctx_->N) {
    std::fill(z.c_.begin(), z.c_.end(), 0);
  } else {
    for (auto& v : z.c_) v = ctx_->mulmod(v, ctx_->ppow[t]);
  }
  z.prec_ = std::min(ctx_->N, prec_ + t);
  return z;
}

OF OF::div_p(int t) const {
  if (t == 0) return *this;
  OF z = *this;
  if (t > prec_) throw Error(ErrKind::PrecisionExhausted, "division by p^" + std::to_string(t) + " exceeds precision");
  i64 m = ctx_->ppow[t];
  for (auto& v : z.c_) {
    if (v % m) throw Error(ErrKind::NotInIdeal, "element not divisible by p^" + std::to_string(t));
    v /= m;
  }
  z.prec_ = prec_ - t;
  return z;
}

std::vector<i64> OF::residue() const {
  std::vector<i64> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] % ctx_->p;
  return r;
}

std::string OF::str() const {
  std::ostringstream os;
  if (ctx_->r == 1) {
    os << c_[0];
  } else {
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
  }
  os << " + O(p^" << prec_ << ")";
  return os.str();
}

Val of_valuation(const OF& x) {
  int v = raw::valuation(*x.ctx(), x.coeffs().data(), x.prec());
  return v >= x.prec() ? Val{x.prec(), true} : Val{v, false};
}

bool of_is_unit(const OF& x) {
  Val v = of_valuation(x);
  return !v.ge && v.v == 0;
}

OF of_invert(const OF& x) {
  if (!of_is_unit(x)) throw Error(ErrKind::NotAUnit, "valuation " + of_valuation(x).str());
  const Context& c = *x.ctx();
  if (c.r == 1) return OF(x.ctx(), {inv_mod(x.coeff(0), c.pN)}, x.prec());
  // inverse mod p by exponentiation in F_{p^r}, then Newton lifting
  const i64 p = c.p;
  const int r = c.r;
  auto fmul = [&](const Poly& a, const Poly& b) {
    Poly t(2 * r - 1, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) t[i + j] = (t[i + j] + a[i] * b[j]) % p;
    Poly m = pmod(t, c.poly, p);
    m.resize(r, 0);
    return m;
  };
  Poly base(r), acc(r, 0);
  for (int i = 0; i < r; ++i) base[i] = x.coeff(i) % p;
  acc[0] = 1;
  i64 e = ipow(p, r) - 2;
  while (e > 0) {
    if (e & 1) acc = fmul(acc, base);
    base = fmul(base, base);
    e >>= 1;
  }
  OF y(x.ctx(), acc);
  OF two(x.ctx(), 2);
  for (int have = 1; have < c.N; have *= 2) y = y * (two - x * y);
  return y.with_prec(x.prec());
}

// ---------------------------------------------------------------- ResidueSeries

ResidueSeries::ResidueSeries(Ctx ctx, int len) : ctx_(std::move(ctx)), len_(len), c_((size_t)len * ctx_->r, 0) {}

std::vector<i64> ResidueSeries::coeff(int j) const {
  return std::vector<i64>(c_.begin() + (size_t)j * ctx_->r, c_.begin() + (size_t)(j + 1) * ctx_->r);
}

void ResidueSeries::set(int j, const std::vector<i64>& v) {
  for (int i = 0; i < ctx_->r; ++i) {
    i64 t = i < (int)v.size() ? v[i] % ctx_->p : 0;
    c_[(size_t)j * ctx_->r + i] = t < 0 ? t + ctx_->p : t;
  }
}

bool ResidueSeries::is_zero() const { return order() < 0; }

int ResidueSeries::order() const {
  for (int j = 0; j < len_; ++j)
    if (!raw::is_zero(raw(j), ctx_->r)) return j;
  return -1;
}

ResidueSeries ResidueSeries::operator+(const ResidueSeries& o) const {
  int n = std::min(len_, o.len_);
  ResidueSeries z(ctx_, n);
  for (size_t i = 0; i < (size_t)n * ctx_->r; ++i) z.c_[i] = (c_[i] + o.c_[i]) % ctx_->p;
  return z;
}

ResidueSeries ResidueSeries::operator*(const ResidueSeries& o) const {
  int n = std::min(len_, o.len_);
  const int r = ctx_->r;
  const i64 p = ctx_->p;
  ResidueSeries z(ctx_, n);
  std::vector<i64> tmp(2 * r - 1);
  for (int a = 0; a < n; ++a) {
    if (raw::is_zero(raw(a), r)) continue;
    for (int b = 0; a + b < n; ++b) {
      if (raw::is_zero(o.raw(b), r)) continue;
      std::fill(tmp.begin(), tmp.end(), 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) tmp[i + j] = (tmp[i + j] + raw(a)[i] * o.raw(b)[j]) % p;
      Poly m = pmod(tmp, ctx_->poly, p);
      m.resize(r, 0);
      for (int i = 0; i < r; ++i) z.raw(a + b)[i] = (z.raw(a + b)[i] + m[i]) % p;
    }
  }
  return z;
}

bool ResidueSeries::operator==(const ResidueSeries& o) const {
  int n = std::min(len_, o.len_);
  return std::equal(c_.begin(), c_.begin() + (size_t)n * ctx_->r, o.c_.begin());
}

std::string ResidueSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < len_; ++j) {
    if (raw::is_zero(raw(j), ctx_->r)) continue;
    if (!first) os << " + ";
    first = false;
    if (ctx_->r == 1) {
      os << raw(j)[0];
    } else {
      os << "[";
      for (int i = 0; i < ctx_->r; ++i) os << (i ? "," : "") << raw(j)[i];
      os << "]";
    }
    if (j) os << "*u^" << j;
  }
  if (first) os << "0";
  os << " + O(u^" << len_ << ")";
  return os.str();
}

// ---------------------------------------------------------------- USeries

USeries::USeries(Ctx ctx) : ctx_(std::move(ctx)), c_((size_t)ctx_->M * ctx_->r, 0), prec_(ctx_->N) {}

USeries USeries::constant(const OF& a) {
  USeries s(a.ctx());
  s.set(0, a);
  return s;
}

USeries USeries::u(const Ctx& ctx) {
  USeries s(ctx);
  if (ctx->M > 1) s.raw(1)[0] = 1;
  return s;
}

USeries USeries::E(const Ctx& ctx) {
  USeries s = u(ctx);
  s.raw(0)[0] = ctx->red(ctx->p);
  return s;
}

OF USeries::coeff(int j) const {
  return OF(ctx_, std::vector<i64>(raw(j), raw(j) + ctx_->r), prec_);
}

void USeries::set(int j, const OF& a) {
  check_same(ctx_, a.ctx());
  for (int i = 0; i < ctx_->r; ++i) raw(j)[i] = a.coeff(i);
  prec_ = std::min(prec_, a.prec());
}

USeries USeries::operator+(const USeries& o) const {
  check_same(ctx_, o.ctx_);
  USeries z = *this;
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = ctx_->red(c_[i] + o.c_[i]);
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

USeries USeries::operator-(const USeries& o) const {
  check_same(ctx_, o.ctx_);
  USeries z = *this;
  for (size_t i = 0; i < c_.size(); ++i) z.c_[i] = ctx_->red(c_[i] - o.c_[i]);
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

USeries USeries::operator*(const USeries& o) const {
  check_same(ctx_, o.ctx_);
  const Context& c = *ctx_;
  const int M = c.M, r = c.r;
  USeries z(ctx_);
  std::vector<i64> t(r);
  for (int a = 0; a < M; ++a) {
    if (raw::is_zero(raw(a), r)) continue;
    for (int b = 0; a + b < M; ++b) {
      if (raw::is_zero(o.raw(b), r)) continue;
      raw::of_mul(c, raw(a), o.raw(b), t.data());
      for (int i = 0; i < r; ++i) z.raw(a + b)[i] = c.red(z.raw(a + b)[i] + t[i]);
    }
  }
  z.prec_ = std::min(prec_, o.prec_);
  return z;
}

bool USeries::equals(const USeries& o) const {
  USeries d = *this - o;
  i64 m = ctx_->ppow[std::max(0, d.prec_)];
  for (auto v : d.c_)
    if (v % m) return false;
  return true;
}

USeries USeries::with_prec(int prec) const {
  USeries z = *this;
  z.prec_ = std::min(prec_, prec);
  return z;
}

USeries useries_frobenius(const USeries& s) {
  const Context& c = *s.ctx();
  USeries z(s.ctx());
  for (int j = 0; (i64)j * c.p < c.M; ++j)
    for (int i = 0; i < c.r; ++i) z.raw((int)(j * c.p))[i] = s.raw(j)[i];
  return z.with_prec(s.prec());
}

ResidueSeries useries_reduce(const USeries& s) {
  const Context& c = *s.ctx();
  if (s.prec() < 1) throw Error(ErrKind::PrecisionExhausted, "series has no p-adic precision");
  ResidueSeries z(s.ctx(), c.M);
  for (int j = 0; j < c.M; ++j)
    for (int i = 0; i < c.r; ++i) z.raw(j)[i] = s.raw(j)[i] % c.p;
  return z;
}

}  // namespace pcris
