#include "pcris/sring.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace pcris {

struct SCache {
  std::mutex gmu;
  std::vector<SElem> gpow;  // gamma^0, gamma^1, ...
  std::mutex lmu;
  std::map<int, LambdaB> lam;
};

std::shared_ptr<SCache> make_scache() { return std::make_shared<SCache>(); }

namespace {

inline int fl(int j, i64 p) { return (int)(j / p); }

void check_same(const Ctx& a, const Ctx& b) {
  if (!a || !b || !a->same(*b)) throw Error(ErrKind::InvalidArgument, "mismatched contexts");
}

// largest admissible value precision for denominator d
inline int np_cap(const Context& c, int np, int d) { return std::min(np, c.N - d); }

}  // namespace

// ---------------------------------------------------------------- construction

SElem::SElem(Ctx ctx) : ctx_(std::move(ctx)), c_((size_t)ctx_->M * ctx_->r, 0), d_(0), mv_(ctx_->M), np_(ctx_->N) {}

SElem SElem::one(const Ctx& ctx) {
  SElem x(ctx);
  x.raw(0)[0] = 1 % ctx->pN;
  return x;
}

SElem SElem::scalar(const OF& a) {
  SElem x(a.ctx());
  x.set(0, a);
  return x;
}

SElem SElem::basis(const Ctx& ctx, int j) {
  SElem x(ctx);
  if (j < ctx->M) x.raw(j)[0] = 1 % ctx->pN;
  return x;
}

SElem SElem::E_power(const Ctx& ctx, int j) {
  SElem x(ctx);
  int e = fl(j, ctx->p);
  if (j < ctx->M && e < ctx->N) x.raw(j)[0] = ctx->ppow[e];
  return x;
}

SElem SElem::from_coeffs(const Ctx& ctx, const std::vector<OF>& c, int d) {
  if ((int)c.size() > ctx->M) throw Error(ErrKind::InvalidArgument, "more coefficients than M");
  SElem x(ctx);
  x.d_ = d;
  x.np_ = ctx->N - d;
  for (size_t j = 0; j < c.size(); ++j) {
    check_same(ctx, c[j].ctx());
    for (int i = 0; i < ctx->r; ++i) x.raw((int)j)[i] = c[j].coeff(i);
    x.np_ = std::min(x.np_, c[j].prec() - d);
  }
  return x;
}

SElem SElem::from_u_polynomial(const Ctx& ctx, const std::vector<OF>& a) {
  if ((int)a.size() > ctx->M) throw Error(ErrKind::InvalidArgument, "polynomial degree exceeds M");
  const Context& c = *ctx;
  SElem x(ctx);
  // (E - p)^i = sum_j binom(i,j) (-p)^{i-j} E^j; canonical c_j = p^{floor(j/p)} b_j
  std::vector<i64> row{1 % c.pN};
  for (size_t i = 0; i < a.size(); ++i) {
    if (i > 0) {
      row.push_back(0);
      for (size_t j = i; j >= 1; --j) row[j] = c.red(row[j] + row[j - 1]);
    }
    for (size_t j = 0; j <= i; ++j) {
      int e = (int)(i - j) + fl((int)j, c.p);
      if (e >= c.N) continue;
      i64 s = c.mulmod(row[j], c.ppow[e]);
      if ((i - j) % 2) s = c.red(-s);
      for (int k = 0; k < c.r; ++k) x.raw((int)j)[k] = c.red(x.raw((int)j)[k] + c.mulmod(s, a[i].coeff(k)));
    }
    x.np_ = std::min(x.np_, a[i].prec());
  }
  return x;
}

OF SElem::coeff(int j) const {
  return OF(ctx_, std::vector<i64>(raw(j), raw(j) + ctx_->r), np_cap(*ctx_, np_ + d_, 0));
}

void SElem::set(int j, const OF& a) {
  check_same(ctx_, a.ctx());
  for (int i = 0; i < ctx_->r; ++i) raw(j)[i] = a.coeff(i);
  np_ = std::min(np_, a.prec() - d_);
}

SElem SElem::with_prec(int np, int mv) const {
  SElem x = *this;
  x.np_ = std::min(np_, np);
  if (mv >= 0) x.mv_ = std::min(mv_, mv);
  return x;
}

SElem SElem::with_d(int d) const {
  if (d < d_) throw Error(ErrKind::InvalidArgument, "with_d cannot lower the denominator");
  if (d == d_) return *this;
  const Context& c = *ctx_;
  SElem x = *this;
  int t = d - d_;
  for (auto& v : x.c_) v = t >= c.N ? 0 : c.mulmod(v, c.ppow[t]);
  x.d_ = d;
  x.np_ = np_cap(c, np_, d);
  return x;
}

// ---------------------------------------------------------------- ring ops

SElem SElem::operator+(const SElem& o) const {
  check_same(ctx_, o.ctx_);
  int d = std::max(d_, o.d_);
  SElem a = with_d(d), b = o.with_d(d);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = ctx_->red(a.c_[i] + b.c_[i]);
  a.np_ = std::min(a.np_, b.np_);
  a.mv_ = std::min(a.mv_, b.mv_);
  return a;
}

SElem SElem::operator-() const {
  SElem a = *this;
  for (auto& v : a.c_) v = v ? ctx_->pN - v : 0;
  return a;
}

SElem SElem::operator-(const SElem& o) const { return *this + (-o); }

SElem SElem::operator*(const SElem& o) const { return s_mul(*this, o); }

bool SElem::is_zero() const {
  int e = std::max(0, np_ + d_);
  i64 m = ctx_->ppow[std::min(e, ctx_->N)];
  for (int j = 0; j < mv_; ++j)
    for (int i = 0; i < ctx_->r; ++i)
      if (raw(j)[i] % m) return false;
  return true;
}

SElem s_mul(const SElem& x, const SElem& y) {
  check_same(x.ctx_, y.ctx_);
  const Context& c = *x.ctx_;
  const int M = c.M, r = c.r, w = 2 * r - 1;
  const i64 p = c.p;
  SElem z(x.ctx_);
  z.d_ = x.d_ + y.d_;
  z.mv_ = std::min(x.mv_, y.mv_);
  z.np_ = np_cap(c, std::min(x.np_ - y.d_, y.np_ - x.d_), z.d_);
  if (z.d_ >= c.N) {
    z.np_ = std::min(z.np_, 0);
    return z;
  }

  std::vector<int> ia, ib;
  for (int j = 0; j < x.mv_; ++j)
    if (!x.raw_zero(j)) ia.push_back(j);
  for (int j = 0; j < y.mv_; ++j)
    if (!y.raw_zero(j)) ib.push_back(j);
  if (ia.empty() || ib.empty()) return z;

  // accumulate products without carry (acc0) and with one factor p (acc1)
  double bits = 2.0 * std::log2((double)c.pN) + std::log2((double)std::max(ia.size(), ib.size()) * r) + 2.0;
  const bool lazy = bits < 126.0;
  std::vector<u128> acc0((size_t)M * w, 0), acc1((size_t)M * w, 0);
  std::vector<int> bmod(ib.size());
  for (size_t t = 0; t < ib.size(); ++t) bmod[t] = (int)(ib[t] % p);

  for (int i : ia) {
    const i64* a = x.raw(i);
    const int im = (int)(i % p);
    for (size_t t = 0; t < ib.size(); ++t) {
      int j = ib[t];
      int n = i + j;
      if (n >= M) break;
      const i64* b = y.raw(j);
      u128* acc = (im + bmod[t] >= p ? acc1.data() : acc0.data()) + (size_t)n * w;
      if (r == 1) {
        u128 pr = (u128)a[0] * (u128)b[0];
        if (lazy) acc[0] += pr;
        else acc[0] = (acc[0] + pr % (u128)c.pN) % (u128)c.pN;
      } else {
        for (int s = 0; s < r; ++s) {
          if (!a[s]) continue;
          for (int q = 0; q < r; ++q) {
            u128 pr = (u128)a[s] * (u128)b[q];
            if (lazy) acc[s + q] += pr;
            else acc[s + q] = (acc[s + q] + pr % (u128)c.pN) % (u128)c.pN;
          }
        }
      }
    }
  }
  const u128 m = (u128)c.pN;
  std::vector<i64> tmp(w);
  for (int n = 0; n < M; ++n) {
    bool any = false;
    for (int s = 0; s < w; ++s) {
      i64 v0 = (i64)(acc0[(size_t)n * w + s] % m);
      i64 v1 = (i64)(acc1[(size_t)n * w + s] % m);
      tmp[s] = c.red(v0 + c.mulmod(v1, p));
      any |= tmp[s] != 0;
    }
    if (!any) continue;
    if (r == 1) z.raw(n)[0] = tmp[0];
    else raw::fold(c, tmp.data(), z.raw(n));
  }
  return z;
}

SElem s_scale(const OF& a, const SElem& x) {
  check_same(a.ctx(), x.ctx_);
  const Context& c = *x.ctx_;
  SElem z = x;
  std::vector<i64> t(c.r);
  for (int j = 0; j < c.M; ++j) {
    if (x.raw_zero(j)) continue;
    raw::of_mul(c, a.coeffs().data(), x.raw(j), t.data());
    for (int i = 0; i < c.r; ++i) z.raw(j)[i] = t[i];
  }
  z.np_ = np_cap(c, std::min(x.np_, a.prec() - x.d_), x.d_);
  return z;
}

SElem s_pow(const SElem& x, i64 n) {
  if (n < 0) return s_pow(s_invert(x), -n);
  SElem acc = SElem::one(x.ctx()), b = x;
  bool first = true;
  while (n > 0) {
    if (n & 1) {
      acc = first ? b : acc * b;
      first = false;
    }
    n >>= 1;
    if (n) b = b * b;
  }
  return acc;
}

bool s_equal(const SElem& x, const SElem& y) { return (x - y).is_zero(); }

Val s_valuation(const SElem& x) {
  const Context& c = *x.ctx();
  int cap = std::max(0, std::min(c.N, x.nprec() + x.d()));
  int v = cap;
  for (int j = 0; j < x.mprec(); ++j) v = std::min(v, raw::valuation(c, x.raw(j), cap));
  if (v >= cap) return Val{x.nprec(), true};
  return Val{v - x.d(), false};
}

// ---------------------------------------------------------------- gamma, phi

SElem gamma(const Ctx& ctx) {
  const Context& c = *ctx;
  const i64 p = c.p;
  SElem g(ctx);
  // (u^p + p)/p with u = E - p: coefficient of E^i is binom(p,i)(-p)^{p-i}/p, plus 1 at i = 0
  u128 binom = 1;
  for (int i = 0; i <= p && i < c.M; ++i) {
    if (i > 0) binom = binom * (u128)(p - i + 1) / (u128)i;
    int e = (int)(p - i - 1);  // p-adic exponent for i < p
    i64 v;
    if (i == p) {
      v = 1;  // E^p/p exactly
    } else {
      v = e >= c.N ? 0 : c.mulmod((i64)(binom % (u128)c.pN), c.ppow[e]);
      if ((p - i) % 2) v = c.red(-v);
    }
    if (i == 0) v = c.red(v + 1);
    g.raw(i)[0] = v;
  }
  return g;
}

SElem gamma_power(const Ctx& ctx, int j) {
  SCache& cache = *ctx->cache;
  std::lock_guard<std::mutex> lk(cache.gmu);
  if (cache.gpow.empty()) {
    cache.gpow.push_back(SElem::one(ctx));
    cache.gpow.push_back(gamma(ctx));
  }
  while ((int)cache.gpow.size() <= j) cache.gpow.push_back(cache.gpow.back() * cache.gpow[1]);
  return cache.gpow[j];
}

namespace {

// sum_{j >= h} c_j p^{j - floor(j/p) - t} gamma^j, c_j the numerator of x
SElem frob_core(const SElem& x, int t, int h) {
  const Context& c = *x.ctx();
  const i64 p = c.p;
  SElem z(x.ctx());
  std::vector<i64> sc(c.r), tmp(c.r);
  for (int j = h; j < x.mprec(); ++j) {
    int e = j - fl(j, p) - t;
    if (e < 0) throw Error(ErrKind::InvalidArgument, "frobenius division exceeds available p-power");
    if (e >= c.N) break;
    if (x.raw_zero(j)) continue;
    for (int i = 0; i < c.r; ++i) sc[i] = c.mulmod(x.raw(j)[i], c.ppow[e]);
    if (raw::is_zero(sc.data(), c.r)) continue;
    SElem g = gamma_power(x.ctx(), j);
    for (int n = 0; n < c.M; ++n) {
      if (g.raw_zero(n)) continue;
      raw::of_mul(c, sc.data(), g.raw(n), tmp.data());
      for (int i = 0; i < c.r; ++i) z.raw(n)[i] = c.red(z.raw(n)[i] + tmp[i]);
    }
  }
  return z;
}

}  // namespace

SElem s_frobenius(const SElem& x) {
  const Context& c = *x.ctx_;
  SElem z = frob_core(x, 0, 0);
  z.d_ = x.d_;
  int mv = x.mv_;
  z.np_ = np_cap(c, std::min(x.np_, mv - fl(mv, c.p) - x.d_), x.d_);
  z.mv_ = c.M;
  return z;
}

SElem s_frobenius_div(const SElem& x, int t, int h) {
  const Context& c = *x.ctx_;
  for (int j = 0; j < std::min(h, c.M); ++j)
    if (!x.raw_zero(j)) throw Error(ErrKind::InvalidArgument, "coefficients below h must vanish");
  if (h - fl(h, c.p) < t) throw Error(ErrKind::InvalidArgument, "insufficient window for division by p^t");
  SElem z = frob_core(x, t, h);
  z.d_ = x.d_;
  int mv = x.mv_;
  int gain = h - fl(h, c.p) - t;
  z.np_ = np_cap(c, std::min(x.np_ + gain, mv - fl(mv, c.p) - t - x.d_), x.d_);
  z.mv_ = c.M;
  return z;
}

SElem s_frobenius_iter(const SElem& x, int n) {
  SElem z = x;
  for (int i = 0; i < n; ++i) z = s_frobenius(z);
  return z;
}

SElem normalize_d(const SElem& x) {
  if (x.d_ == 0) return x;
  const Context& c = *x.ctx_;
  int cap = std::max(0, std::min(c.N, x.np_ + x.d_));
  int t = x.d_;
  for (int j = 0; j < x.mv_ && t > 0; ++j) t = std::min(t, raw::valuation(c, x.raw(j), cap));
  t = std::min(t, cap);
  if (t == 0) return x;
  SElem z = x;
  i64 m = c.ppow[t];
  for (int j = 0; j < c.M; ++j)
    for (int i = 0; i < c.r; ++i) {
      i64 v = j < x.mv_ ? x.raw(j)[i] : 0;
      z.raw(j)[i] = (v - v % m) / m;
    }
  z.d_ = x.d_ - t;
  return z;
}

SElem s_invert(const SElem& x0) {
  SElem x = normalize_d(x0);
  const Context& c = *x.ctx_;
  if (x.d_ > 0) throw Error(ErrKind::NotAUnit, "element has a p-denominator");
  OF c0 = x.coeff(0);
  if (!of_is_unit(c0)) throw Error(ErrKind::NotAUnit, "constant coefficient has valuation " + of_valuation(c0).str());
  SElem y = SElem::scalar(of_invert(c0));
  SElem two = SElem::scalar(OF(x.ctx_, 2));
  for (int have = 1; have < c.M; have *= 2) y = y * (two - x * y);
  y.np_ = x.np_;
  y.mv_ = x.mv_;
  return y;
}

SElem s_div_E(const SElem& x, int k) {
  const Context& c = *x.ctx_;
  const i64 p = c.p;
  if (k == 0) return x;
  int cap = std::max(0, std::min(c.N, x.np_ + x.d_));
  i64 m = c.ppow[cap];
  for (int j = 0; j < std::min(k, x.mv_); ++j)
    for (int i = 0; i < c.r; ++i)
      if (x.raw(j)[i] % m) throw Error(ErrKind::NotInIdeal, "element not in Fil^" + std::to_string(k));
  int D = (int)((k + p - 1) / p);
  SElem z(x.ctx_);
  z.d_ = x.d_ + D;
  for (int j = k; j < x.mv_; ++j) {
    int s = fl(j, p) - fl(j - k, p);
    int e = D - s;
    for (int i = 0; i < c.r; ++i) z.raw(j - k)[i] = e >= c.N ? 0 : c.mulmod(x.raw(j)[i], c.ppow[e]);
  }
  z.mv_ = std::max(0, x.mv_ - k);
  z.np_ = np_cap(c, x.np_ - D, z.d_);
  return z;
}

SElem low_part(const SElem& x, int h) {
  SElem z = x;
  const Context& c = *x.ctx_;
  for (int j = std::max(0, h); j < c.M; ++j)
    for (int i = 0; i < c.r; ++i) z.raw(j)[i] = 0;
  z.mv_ = x.mv_ >= h ? c.M : x.mv_;
  return z;
}

SElem high_part(const SElem& x, int h) {
  SElem z = x;
  const Context& c = *x.ctx_;
  for (int j = 0; j < std::min(h, c.M); ++j)
    for (int i = 0; i < c.r; ++i) z.raw(j)[i] = 0;
  return z;
}

// ---------------------------------------------------------------- PhiExpPoly

PhiExpPoly::PhiExpPoly(std::vector<i64> v) : c(std::move(v)) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

PhiExpPoly PhiExpPoly::monomial(i64 a, int j) {
  std::vector<i64> v(j + 1, 0);
  v[j] = a;
  return PhiExpPoly(v);
}

PhiExpPoly PhiExpPoly::operator+(const PhiExpPoly& o) const {
  std::vector<i64> v(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = coeff((int)i) + o.coeff((int)i);
  return PhiExpPoly(v);
}

PhiExpPoly PhiExpPoly::operator-(const PhiExpPoly& o) const { return *this + o * -1; }

PhiExpPoly PhiExpPoly::operator*(i64 a) const {
  std::vector<i64> v = c;
  for (auto& x : v) x *= a;
  return PhiExpPoly(v);
}

PhiExpPoly PhiExpPoly::shift(int k) const {
  if (c.empty()) return *this;
  std::vector<i64> v(k, 0);
  v.insert(v.end(), c.begin(), c.end());
  return PhiExpPoly(v);
}

std::string PhiExpPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < c.size(); ++j) {
    i64 a = c[j];
    if (!a) continue;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    i64 m = a < 0 ? -a : a;
    if (j == 0) os << m;
    else {
      if (m != 1) os << m << "*";
      os << "phi";
      if (j > 1) os << "^" << j;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- lambda_b

LambdaB lambda_b(int b, const Ctx& ctx) {
  if (b < 1) throw Error(ErrKind::InvalidArgument, "b must be positive");
  SCache& cache = *ctx->cache;
  {
    std::lock_guard<std::mutex> lk(cache.lmu);
    auto it = cache.lam.find(b);
    if (it != cache.lam.end()) return it->second;
  }
  SElem g = gamma(ctx);
  SElem prod = g, cur = g;
  SElem one = SElem::one(ctx);
  int n = 1;
  for (;; ++n) {
    cur = s_frobenius_iter(cur, b);
    if (s_equal(cur, one)) break;
    prod = prod * cur;
    if (n > 64 * ctx->N + ctx->M) throw Error(ErrKind::NoConvergence, "lambda_b product does not stabilise");
  }
  LambdaB L{prod, b, n};
  std::lock_guard<std::mutex> lk(cache.lmu);
  cache.lam.emplace(b, L);
  return L;
}

SElem lambda_power(const PhiExpPoly& e, int b, const Ctx& ctx) {
  SElem acc = SElem::one(ctx);
  if (e.is_zero()) return acc;
  SElem cur = lambda_b(b, ctx).value;
  for (int j = 0; j <= e.degree(); ++j) {
    if (j > 0) cur = s_frobenius(cur);
    i64 a = e.coeff(j);
    if (a) acc = acc * s_pow(cur, a);
  }
  return acc;
}

// ---------------------------------------------------------------- membership

namespace {

// coefficient j of the numerator is divisible by p^{need} as far as precision allows
bool coeff_at_least(const SElem& x, int j, int need) {
  const Context& c = *x.ctx();
  int cap = std::max(0, std::min(c.N, x.nprec() + x.d()));
  int e = std::min(need + x.d(), cap);
  if (e <= 0) return true;
  i64 m = c.ppow[e];
  for (int i = 0; i < c.r; ++i)
    if (x.raw(j)[i] % m) return false;
  return true;
}

void require_integral(const SElem& x, const char* what) {
  if (x.d() != 0) throw Error(ErrKind::InvalidArgument, std::string(what) + " needs d = 0");
}

}  // namespace

bool fil_membership(const SElem& x0, int j) {
  SElem x = normalize_d(x0);
  require_integral(x, "fil_membership");
  const i64 p = x.ctx()->p;
  for (int i = 0; i < x.mprec(); ++i) {
    int need = i < j ? 1 << 30 : fl(i, p) - fl(i - j, p);
    if (!coeff_at_least(x, i, need)) return false;
  }
  return true;
}

bool in_frak_S(const SElem& x0) {
  SElem x = normalize_d(x0);
  if (x.d() != 0) return false;
  for (int i = 0; i < x.mprec(); ++i)
    if (!coeff_at_least(x, i, fl(i, x.ctx()->p))) return false;
  return true;
}

bool in_varpi_frak_S(const SElem& x0) {
  SElem x = normalize_d(x0);
  if (x.d() != 0) return false;
  for (int i = 0; i < x.mprec(); ++i)
    if (!coeff_at_least(x, i, fl(i, x.ctx()->p) + 1)) return false;
  return true;
}

bool in_p_power(const SElem& x0, int cc) {
  SElem x = normalize_d(x0);
  if (x.d() != 0) return false;
  for (int i = 0; i < x.mprec(); ++i)
    if (!coeff_at_least(x, i, cc)) return false;
  return true;
}

bool in_Jc(const SElem& x0, int cc) {
  SElem x = normalize_d(x0);
  if (x.d() != 0) return false;
  const i64 p = x.ctx()->p;
  for (int i = 0; i < x.mprec(); ++i) {
    int need = i < cc * p ? 1 << 30 : cc + (i % p == 0 ? 1 : 0);
    if (!coeff_at_least(x, i, need)) return false;
  }
  return true;
}

bool in_window(const SElem& x0, int h) {
  SElem x = normalize_d(x0);
  if (x.d() != 0) return false;
  for (int i = 0; i < x.mprec(); ++i)
    if (!coeff_at_least(x, i, i < h ? 1 << 30 : 1)) return false;
  return true;
}

IdealSplit ideal_split(const SElem& x0, int cc, bool require_member) {
  SElem x = normalize_d(x0);
  require_integral(x, "ideal_split");
  if (require_member && !in_p_power(x, cc))
    throw Error(ErrKind::NotInIdeal, "element not in I_" + std::to_string(cc));
  int h = (int)(cc * x.ctx()->p);
  IdealSplit s;
  s.c = cc;
  s.integral = low_part(x, h);
  s.small = high_part(x, h);
  s.integral_in_varpi_S = in_varpi_frak_S(s.integral);
  s.small_in_Jc = in_Jc(s.small, cc);
  return s;
}

// ---------------------------------------------------------------- (E^p/p) form

std::vector<std::vector<OF>> to_ep_form(const SElem& x0) {
  SElem x = normalize_d(x0);
  require_integral(x, "to_ep_form");
  const Context& c = *x.ctx();
  const int p = (int)c.p;
  int blocks = (x.mprec() + p - 1) / p;
  std::vector<std::vector<OF>> alpha(blocks);
  for (int m = 0; m < blocks; ++m)
    for (int t = 0; t < p && m * p + t < x.mprec(); ++t) alpha[m].push_back(x.coeff(m * p + t));
  return alpha;
}

SElem from_ep_form(const Ctx& ctx, const std::vector<std::vector<OF>>& alpha) {
  const int p = (int)ctx->p;
  std::vector<OF> cs;
  for (size_t m = 0; m < alpha.size(); ++m) {
    if ((int)alpha[m].size() > p) throw Error(ErrKind::InvalidArgument, "alpha_m has degree above p-1");
    for (int t = 0; t < p; ++t) {
      if ((int)(m * p + t) >= ctx->M) break;
      cs.push_back(t < (int)alpha[m].size() ? alpha[m][t] : OF::zero(ctx));
    }
  }
  while ((int)cs.size() > ctx->M) cs.pop_back();
  return SElem::from_coeffs(ctx, cs);
}

ResidueSeries s_reduce(const SElem& x0) {
  SElem x = normalize_d(x0);
  const Context& c = *x.ctx();
  if (x.d() != 0 || !in_frak_S(x)) throw Error(ErrKind::NotInIdeal, "element is not in O_F[[u]]");
  if (x.nprec() < 1) throw Error(ErrKind::PrecisionExhausted, "no p-adic precision left to reduce");
  int len = (int)std::min<i64>(x.mprec(), c.p * x.nprec());
  ResidueSeries rs(x.ctx(), len);
  for (int j = 0; j < len; ++j) {
    int e = fl(j, c.p);
    std::vector<i64> v(c.r);
    for (int i = 0; i < c.r; ++i) v[i] = (x.raw(j)[i] / c.ppow[e]) % c.p;
    rs.set(j, v);
  }
  return rs;
}

std::string s_debug_json(const SElem& x) {
  const Context& c = *x.ctx();
  nlohmann::json a = nlohmann::json::array();
  for (int j = 0; j < x.mprec(); ++j) {
    if (x.raw_zero(j)) continue;
    nlohmann::json coef;
    if (c.r == 1) coef = x.raw(j)[0];
    else coef = std::vector<i64>(x.raw(j), x.raw(j) + c.r);
    a.push_back({j, coef, fl(j, c.p)});
  }
  return a.dump();
}

}  // namespace pcris
