#include "pcris/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace pcris {

int WeightData::kmax() const { return k.empty() ? 0 : *std::max_element(k.begin(), k.end()); }
int WeightData::kmin() const { return k.empty() ? 0 : *std::min_element(k.begin(), k.end()); }

WeightData normalize_weights(const std::vector<std::pair<int, int>>& raw) {
  if (raw.empty()) throw Error(ErrKind::InvalidArgument, "no embeddings");
  WeightData w;
  for (size_t i = 0; i < raw.size(); ++i) {
    auto [x, y] = raw[i];
    int lo = std::min(x, y);
    w.k.push_back(std::max(x, y) - lo);
    w.shift.push_back(lo);
    if (w.k.back() == 0)
      throw Error(ErrKind::IrregularWeights, "embedding " + std::to_string(i) + " has equal weights");
  }
  return w;
}

const char* type_name(TypeTag t) { return t == TypeTag::I ? "I" : "II"; }

TypeTag classify_type(const MatOF& A) {
  if (of_is_unit(A.a21)) return TypeTag::I;
  if (of_is_unit(A.a22)) return TypeTag::II;
  throw Error(ErrKind::Degenerate, "bottom row has no unit entry");
}

namespace {

void check_shapes(const LatticeTuple& A, const WeightData& k) {
  if (A.empty() || (int)A.size() != k.f())
    throw Error(ErrKind::InvalidArgument, "tuple length does not match the number of weights");
  for (int x : k.k)
    if (x <= 0) throw Error(ErrKind::IrregularWeights, "weights must be positive");
}

// Delta_k C^{-1} Delta_k^{-1}; integral since only the upper right entry picks up p^k
MatOF twisted_inverse(const MatOF& C, int k) {
  const Ctx& c = C.a11.ctx();
  OF i11 = of_invert(C.a11), i22 = of_invert(C.a22);
  OF up = -(C.a12 * i11 * i22 * OF::p_power(c, k));
  return {i11, up, OF::zero(c), i22};
}

MatOF killer(const MatOF& A, int l) {
  const OF& top = l == 1 ? A.a11 : A.a12;
  const OF& bot = l == 1 ? A.a21 : A.a22;
  OF inv = of_invert(bot);
  return {OF::one(A.a11.ctx()), -(top * inv), OF::zero(A.a11.ctx()), inv};
}

}  // namespace

LatticeTuple parabolic_act(const EmbTuple<MatOF>& C, const LatticeTuple& A, const WeightData& k) {
  int f = (int)A.size();
  LatticeTuple B(f);
  for (int i = 0; i < f; ++i) {
    int prev = (i + f - 1) % f;
    B[i] = C[i] * A[i] * twisted_inverse(C[prev], k.k[prev]);
  }
  return B;
}

ParabolicResult parabolic_normalize(const LatticeTuple& A, const WeightData& k) {
  check_shapes(A, k);
  const int f = (int)A.size();
  const Ctx& ctx = A[0].a11.ctx();
  ParabolicResult res;
  res.B = A;
  res.witness.assign(f, identity_of(ctx));
  for (auto& m : A) res.types.push_back(classify_type(m));

  int r = -1;
  for (int i = 0; i < f; ++i)
    if (res.types[i] == TypeTag::I) {
      r = i;
      break;
    }

  if (r >= 0) {
    res.start = r;
    for (int s = 0; s < f; ++s) {
      int i = (r + s) % f;
      int l = res.types[i] == TypeTag::I ? 1 : 2;
      MatOF C = killer(res.B[i], l);
      int nxt = (i + 1) % f;
      res.B[i] = C * res.B[i];
      res.B[nxt] = res.B[nxt] * twisted_inverse(C, k.k[i]);
      res.witness[i] = C * res.witness[i];
    }
    res.sweeps = 1;
    return res;
  }

  res.all_type_II = true;
  const int N = ctx->N;
  int limit = N / std::max(1, k.kmin()) + 2;
  for (;;) {
    bool done = true;
    for (auto& m : res.B)
      if (!m.a12.is_zero()) done = false;
    if (done) break;
    if (res.sweeps > limit) throw Error(ErrKind::NoConvergence, "all-II sweep failed to clear b12");
    EmbTuple<MatOF> C(f);
    for (int i = 0; i < f; ++i) C[i] = killer(res.B[i], 2);
    res.B = parabolic_act(C, res.B, k);
    for (int i = 0; i < f; ++i) res.witness[i] = C[i] * res.witness[i];
    ++res.sweeps;
  }
  for (auto& m : res.B) m.a12 = OF::zero(ctx);
  return res;
}

bool verify_parabolic_equiv(const LatticeTuple& A, const LatticeTuple& B, const EmbTuple<MatOF>& C,
                            const WeightData& k) {
  check_shapes(A, k);
  if (B.size() != A.size() || C.size() != A.size())
    throw Error(ErrKind::InvalidArgument, "tuple lengths differ");
  const Ctx& ctx = A[0].a11.ctx();
  int prec = ctx->N - k.kmax();
  if (prec <= 0)
    throw Error(ErrKind::PrecisionExhausted,
                "N = " + std::to_string(ctx->N) + " does not exceed max k = " + std::to_string(k.kmax()));
  for (auto& m : C) {
    if (!m.a21.is_zero() || !of_is_unit(m.a11) || !of_is_unit(m.a22)) return false;
  }
  LatticeTuple got = parabolic_act(C, A, k);
  auto cut = [&](const OF& x) { return x.with_prec(prec); };
  for (size_t i = 0; i < A.size(); ++i)
    if (!mat_equal(got[i].map(cut), B[i].map(cut))) return false;
  return true;
}

SlotParams slot_params(const MatOF& B, TypeTag t) {
  SlotParams s;
  s.type = t;
  const Ctx& c = B.a11.ctx();
  if (t == TypeTag::I) {
    if (!B.a11.is_zero() || !B.a21.equals(OF::one(c)))
      throw Error(ErrKind::InvalidArgument, "slot is not in Type I normal form");
    s.a1 = B.a12;
    s.a2 = B.a22;
    s.alpha = OF::one(c);
  } else {
    if (!B.a12.is_zero()) throw Error(ErrKind::InvalidArgument, "slot is not in Type II normal form");
    s.a1 = B.a11;
    s.a2 = B.a21;
    s.alpha = B.a22;
  }
  return s;
}

MatOF type_matrix(const SlotParams& s) {
  const Ctx& c = s.a1.ctx();
  if (s.type == TypeTag::I) return {OF::zero(c), s.a1, OF::one(c), s.a2};
  return {s.a1, OF::zero(c), s.a2, s.alpha};
}

std::string Reducibility::str() const {
  switch (kind) {
    case ReducibleAllII:
      return "ReducibleAllII";
    case ReducibleSubsetSum: {
      std::string s = "ReducibleSubsetSum(w=" + std::to_string(w) + ", J={";
      for (size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + std::to_string(J[i]);
      return s + "})";
    }
    default:
      return "NotDetected";
  }
}

Reducibility reducibility_detect(const LatticeTuple& B, const EmbTuple<TypeTag>& types, const WeightData& k) {
  check_shapes(B, k);
  Reducibility out;
  std::vector<int> S;
  for (int i = 0; i < (int)types.size(); ++i)
    if (types[i] == TypeTag::I) S.push_back(i);
  if (S.empty()) {
    out.kind = Reducibility::ReducibleAllII;
    return out;
  }
  const int N = B[0].a11.ctx()->N;
  int total = 0;
  for (int i : S) {
    Val v = of_valuation(slot_params(B[i], TypeTag::I).a2);
    if (v.ge) throw Error(ErrKind::PrecisionExhausted, "a_2 of slot " + std::to_string(i) + " vanishes at precision");
    total += v.v;
  }
  out.valuation_sum = total;
  if (total >= N) throw Error(ErrKind::PrecisionExhausted, "valuation of the a_2 product reaches N");
  const size_t n = S.size();
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    int w = 0;
    for (size_t b = 0; b < n; ++b)
      if (mask >> b & 1) w += k.k[S[b]];
    if (w != total) continue;
    out.kind = Reducibility::ReducibleSubsetSum;
    out.w = w;
    for (size_t b = 0; b < n; ++b)
      if (mask >> b & 1) out.J.push_back(S[b]);
    return out;
  }
  return out;
}

std::string Slope::str() const {
  return twice % 2 ? std::to_string(twice) + "/2" : std::to_string(twice / 2);
}

FrobeniusProduct frobenius_f_product(const LatticeTuple& A, const WeightData& k) {
  check_shapes(A, k);
  const int f = (int)A.size();
  const Ctx& ctx = A[0].a11.ctx();
  auto step = [&](int i) {
    int prev = (i + f - 1) % f;
    MatOF D = identity_of(ctx);
    D.a11 = OF::p_power(ctx, k.k[prev]);
    return A[i] * D;
  };
  MatOF phi = step(0);
  for (int i = f - 1; i >= 1; --i) phi = phi * step(i);
  FrobeniusProduct out;
  out.phi = phi;
  Val vd = of_valuation(phi.det());
  if (vd.ge) throw Error(ErrKind::PrecisionExhausted, "determinant of phi^f vanishes at precision");
  Val vt = of_valuation(phi.a11 + phi.a22);
  if (!vt.ge && 2 * vt.v < vd.v) {
    out.s1.twice = 2 * vt.v;
    out.s2.twice = 2 * (vd.v - vt.v);
  } else {
    if (vt.ge && vd.v > 2 * vt.v)
      throw Error(ErrKind::PrecisionExhausted, "trace too small to place the Newton polygon");
    out.s1.twice = out.s2.twice = vd.v;
  }
  return out;
}

}  // namespace pcris
