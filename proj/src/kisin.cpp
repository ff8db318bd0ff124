#include "pcris/kisin.hpp"

#include <map>

namespace pcris {

namespace {

struct Node {
  int slot, comp;
  bool operator<(const Node& o) const { return slot != o.slot ? slot < o.slot : comp < o.comp; }
};

// x_{(i, sigma(c))} = gamma^{w} phi(x_{(i-1, c)}); gamma appears only on edges leaving component 1
Node step(const Node& n, const EmbTuple<TypeTag>& types, int f) {
  int i = (n.slot + 1) % f;
  int comp = types[i] == TypeTag::I ? 3 - n.comp : n.comp;
  return {i, comp};
}

}  // namespace

int det_sign(TypeTag t) { return t == TypeTag::I ? -1 : 1; }

ExponentSystem solve_exponent_system(const EmbTuple<TypeTag>& types, const WeightData& k) {
  const int f = (int)types.size();
  if (f == 0 || k.f() != f) throw Error(ErrKind::InvalidArgument, "types and weights disagree in length");
  int nI = 0;
  for (auto t : types) nI += t == TypeTag::I;
  ExponentSystem sys;
  sys.b = nI % 2 == 0 ? f : 2 * f;
  sys.g.assign(f, PhiExpPoly());
  sys.h.assign(f, PhiExpPoly());
  std::map<Node, bool> seen;
  const int b = sys.b;
  for (int s = 0; s < f; ++s)
    for (int c = 1; c <= 2; ++c) {
      Node a{s, c};
      if (seen[a]) continue;
      std::vector<Node> cyc;
      std::vector<i64> w;
      Node cur = a;
      do {
        seen[cur] = true;
        cyc.push_back(cur);
        w.push_back(cur.comp == 1 ? k.k[cur.slot] : 0);
        cur = step(cur, types, f);
      } while (!(cur.slot == a.slot && cur.comp == a.comp));
      if ((int)cyc.size() != b) throw Error(ErrKind::InvalidArgument, "cycle length differs from b");
      sys.anchors.push_back({a.slot, a.comp});
      sys.cycle_lengths.push_back((int)cyc.size());
      // closing the cycle forces P_0 = sum_t w_t phi^{b-1-t}
      PhiExpPoly P;
      for (int t = 0; t < b; ++t) P = P + PhiExpPoly::monomial(w[t], b - 1 - t);
      for (int t = 0; t < b; ++t) {
        auto& dst = cyc[t].comp == 1 ? sys.g : sys.h;
        dst[cyc[t].slot] = P;
        P = P.shift(1) + PhiExpPoly::constant(w[t]) - PhiExpPoly::monomial(w[t], b);
      }
    }
  return sys;
}

bool exponent_recursion_holds(const EmbTuple<TypeTag>& types, const WeightData& k, const ExponentSystem& sys,
                              const Ctx& ctx) {
  const int f = (int)types.size();
  for (int i = 0; i < f; ++i) {
    int prev = (i + f - 1) % f;
    SElem x1p = lambda_power(sys.g[prev], sys.b, ctx), x2p = lambda_power(sys.h[prev], sys.b, ctx);
    SElem x1 = lambda_power(sys.g[i], sys.b, ctx), x2 = lambda_power(sys.h[i], sys.b, ctx);
    SElem gk = gamma_power(ctx, k.k[prev]);
    bool ok;
    if (types[i] == TypeTag::I)
      ok = s_equal(x1, s_frobenius(x2p)) && s_equal(x2, gk * s_frobenius(x1p));
    else
      ok = s_equal(x1, gk * s_frobenius(x1p)) && s_equal(x2, s_frobenius(x2p));
    if (!ok) return false;
  }
  return true;
}

SElem expected_det(const SlotParams& s, int k, const Ctx& ctx) {
  OF c = s.a1 * s.alpha;
  if (det_sign(s.type) < 0) c = -c;
  return s_scale(c, SElem::E_power(ctx, k));
}

KisinFrobenius build_kisin_frobenius(const EmbTuple<SlotParams>& slots, const WeightData& k, const Ctx& ctx) {
  const int f = (int)slots.size();
  if (f == 0 || k.f() != f) throw Error(ErrKind::InvalidArgument, "slots and weights disagree in length");
  KisinFrobenius K;
  K.k = k;
  K.slots = slots;
  K.expo.assign(f, PhiExpPoly());
  for (int i = 0; i < f; ++i) {
    const SlotParams& s = slots[i];
    int kp = k.k[(i + f - 1) % f];
    SElem ginv = s_pow(gamma(ctx), -kp);
    SElem Ek = SElem::E_power(ctx, k.k[i]);
    SElem a1 = SElem::scalar(s.a1), a2 = SElem::scalar(s.a2);
    MatS m;
    if (s.type == TypeTag::I) {
      m = {SElem::zero(ctx), Ek * a1, ginv, a2};
    } else {
      m = {ginv * Ek * a1, SElem::zero(ctx), ginv * a2, SElem::scalar(s.alpha)};
    }
    K.A.push_back(m);
    K.det_sign.push_back(det_sign(s.type));
  }
  return K;
}

KisinFrobenius det_normalize(const KisinFrobenius& raw) {
  const int f = (int)raw.A.size();
  const Ctx& ctx = raw.A[0].a11.ctx();
  EmbTuple<TypeTag> types;
  for (auto& s : raw.slots) types.push_back(s.type);
  ExponentSystem sys = solve_exponent_system(types, raw.k);
  KisinFrobenius out = raw;
  out.b = sys.b;
  out.system = sys;
  for (int i = 0; i < f; ++i) {
    int prev = (i + f - 1) % f;
    SElem x1 = lambda_power(sys.g[i], sys.b, ctx), x2 = lambda_power(sys.h[i], sys.b, ctx);
    SElem y1 = lambda_power(sys.g[prev].shift(1) * -1, sys.b, ctx);  // phi(x_1^{(i-1)})^{-1}
    SElem y2 = lambda_power(sys.h[prev].shift(1) * -1, sys.b, ctx);
    MatS X{x1, SElem::zero(ctx), SElem::zero(ctx), x2};
    MatS Y{y1, SElem::zero(ctx), SElem::zero(ctx), y2};
    MatS B = X * raw.A[i] * Y;

    const SlotParams& s = raw.slots[i];
    PhiExpPoly e = sys.e(i);
    SElem tail = s_scale(s.a2, lambda_power(e, sys.b, ctx));
    SElem Eka1 = s_scale(s.a1, SElem::E_power(ctx, raw.k.k[i]));
    MatS want;
    if (s.type == TypeTag::I)
      want = {SElem::zero(ctx), Eka1, SElem::one(ctx), tail};
    else
      want = {Eka1, SElem::zero(ctx), tail, SElem::scalar(s.alpha)};
    if (!mat_equal(B, want))
      throw Error(ErrKind::DetCheckFailed, "slot " + std::to_string(i) + " did not reach the normalized form");
    if (!s_equal(B.det(), expected_det(s, raw.k.k[i], ctx)))
      throw Error(ErrKind::DetCheckFailed, "determinant of slot " + std::to_string(i) + " is not E^k a_1 up to sign");
    out.A[i] = want;
    out.expo[i] = e;
  }
  out.normalized = true;
  return out;
}

}  // namespace pcris
