#include "pcris/reduction.hpp"

#include <sstream>

namespace pcris {

namespace {

i64 ipow(i64 b, int e) {
  i64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// sum_j p^j x_j
i64 psum(const std::vector<i64>& x, i64 p) {
  i64 s = 0, pj = 1;
  for (i64 v : x) {
    s += pj * v;
    pj *= p;
  }
  return s;
}

i64 mod(i64 a, i64 m) { return ((a % m) + m) % m; }

}  // namespace

const char* shape_name(Shape s) { return s == Shape::I ? "I" : "S"; }

int ReductionData::num_S() const {
  int c = 0;
  for (auto& s : mu) c += s.shape == Shape::S;
  return c;
}

EmbTuple<MatRes> reduce_mod_varpi(const EmbTuple<MatS>& A) {
  EmbTuple<MatRes> out;
  for (auto& m : A) out.push_back(MatRes{s_reduce(m.a11), s_reduce(m.a12), s_reduce(m.a21), s_reduce(m.a22)});
  return out;
}

ReductionData extract_reduction_data(const EmbTuple<MatRes>& red) {
  ReductionData d;
  for (size_t i = 0; i < red.size(); ++i) {
    const MatRes& m = red[i];
    MonomialSlot s;
    const ResidueSeries *x, *y;
    if (m.a12.is_zero() && m.a21.is_zero() && !m.a11.is_zero() && !m.a22.is_zero()) {
      s.shape = Shape::I;
      x = &m.a11;
      y = &m.a22;
    } else if (m.a11.is_zero() && m.a22.is_zero() && !m.a21.is_zero() && !m.a12.is_zero()) {
      s.shape = Shape::S;
      x = &m.a21;
      y = &m.a12;
    } else {
      throw Error(ErrKind::NonMonomial, "slot " + std::to_string(i) + " is neither diagonal nor antidiagonal");
    }
    s.n = x->order();
    s.m = y->order();
    s.unit_n = x->coeff(s.n);
    s.unit_m = y->coeff(s.m);
    d.mu.push_back(s);
  }
  return d;
}

VW assign_vw(const ReductionData& mu) {
  VW r;
  int seen = 0;  // S-shapes strictly before slot i
  for (auto& s : mu.mu) {
    bool swap = (s.shape == Shape::S) == (seen % 2 == 0);
    r.v.push_back(swap ? s.m : s.n);
    r.w.push_back(swap ? s.n : s.m);
    seen += s.shape == Shape::S;
  }
  return r;
}

ExponentMatrix monomial_product(const ReductionData& mu, i64 p) {
  ExponentMatrix acc;
  acc.e[0][0] = acc.e[1][1] = 0;
  i64 pj = 1;
  for (auto& s : mu.mu) {
    ExponentMatrix m;
    if (s.shape == Shape::I) {
      m.e[0][0] = pj * s.n;
      m.e[1][1] = pj * s.m;
    } else {
      m.e[0][1] = pj * s.m;
      m.e[1][0] = pj * s.n;
    }
    ExponentMatrix out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        for (int t = 0; t < 2; ++t)
          if (acc.e[r][t] >= 0 && m.e[t][c] >= 0) out.e[r][c] = acc.e[r][t] + m.e[t][c];
    acc = out;
    pj *= p;
  }
  return acc;
}

CharDesc character_output(const VW& vw, i64 p, int f, bool odd) {
  CharDesc d;
  d.vw = vw;
  d.p = p;
  d.f = f;
  d.odd = odd;
  d.sum_v = psum(vw.v, p);
  d.sum_w = psum(vw.w, p);
  const i64 q = ipow(p, f) - 1;
  if (!odd) {
    d.shape = CharShape::Split;
    d.a = mod(d.sum_v, q);
    d.b = mod(d.sum_w, q);
    return d;
  }
  d.raw_t = p * d.sum_w + d.sum_v;
  if (d.raw_t % q == 0) {
    d.shape = CharShape::Split;
    d.a = d.b = mod(d.raw_t / q, q);
  } else {
    d.shape = CharShape::Induced;
    d.t = mod(d.raw_t, ipow(p, 2 * f) - 1);
  }
  return d;
}

std::string CharDesc::caveat() const {
  return shape == CharShape::Induced ? "up to unramified twist" : "restricted to inertia";
}

std::string CharDesc::str() const {
  std::ostringstream os;
  if (shape == CharShape::Split)
    os << "omega_" << f << "^" << a << " + omega_" << f << "^" << b;
  else
    os << "Ind omega_" << 2 * f << "^" << t;
  os << " (" << caveat() << ")";
  return os.str();
}

}  // namespace pcris
