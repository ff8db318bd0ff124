#pragma once

#include <vector>

#include "pcris/sring.hpp"

namespace pcris {

template <class T>
struct Mat2 {
  T a11, a12, a21, a22;

  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Mat2 operator*(const Mat2& o) const {
    return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22, a21 * o.a11 + a22 * o.a21,
            a21 * o.a12 + a22 * o.a22};
  }
  T det() const { return a11 * a22 - a12 * a21; }
  Mat2 adj() const { return {a22, -a12, -a21, a11}; }
  template <class F>
  Mat2 map(F fn) const {
    return {fn(a11), fn(a12), fn(a21), fn(a22)};
  }
  template <class F>
  bool all(F fn) const {
    return fn(a11) && fn(a12) && fn(a21) && fn(a22);
  }
};

using MatOF = Mat2<OF>;
using MatS = Mat2<SElem>;
template <class T>
using EmbTuple = std::vector<T>;

inline MatOF mat_of(const Ctx& c, i64 a, i64 b, i64 d21, i64 d22) {
  return {OF(c, a), OF(c, b), OF(c, d21), OF(c, d22)};
}
inline MatOF identity_of(const Ctx& c) { return mat_of(c, 1, 0, 0, 1); }
inline MatS identity_s(const Ctx& c) { return {SElem::one(c), SElem::zero(c), SElem::zero(c), SElem::one(c)}; }
inline MatS to_s(const MatOF& m) {
  return {SElem::scalar(m.a11), SElem::scalar(m.a12), SElem::scalar(m.a21), SElem::scalar(m.a22)};
}

inline bool mat_equal(const MatOF& x, const MatOF& y) {
  return x.a11.equals(y.a11) && x.a12.equals(y.a12) && x.a21.equals(y.a21) && x.a22.equals(y.a22);
}
inline bool mat_equal(const MatS& x, const MatS& y) {
  return s_equal(x.a11, y.a11) && s_equal(x.a12, y.a12) && s_equal(x.a21, y.a21) && s_equal(x.a22, y.a22);
}
inline MatS s_frobenius(const MatS& m) { return m.map([](const SElem& x) { return s_frobenius(x); }); }
inline MatS scale(const SElem& s, const MatS& m) { return m.map([&](const SElem& x) { return s * x; }); }

}  // namespace pcris
