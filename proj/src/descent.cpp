#include "pcris/descent.hpp"

#include <algorithm>
#include <sstream>

namespace pcris {

namespace {

bool mat_all(const MatS& m, bool (*pred)(const SElem&)) {
  return pred(m.a11) && pred(m.a12) && pred(m.a21) && pred(m.a22);
}

bool mat_zero(const MatS& m) { return m.a11.is_zero() && m.a12.is_zero() && m.a21.is_zero() && m.a22.is_zero(); }

MatS mat_low(const MatS& m, int h) {
  return {low_part(m.a11, h), low_part(m.a12, h), low_part(m.a21, h), low_part(m.a22, h)};
}

MatS mat_high(const MatS& m, int h) {
  return {high_part(m.a11, h), high_part(m.a12, h), high_part(m.a21, h), high_part(m.a22, h)};
}

std::string min_val(const MatS& m) {
  Val best{1 << 30, true};
  for (const SElem* e : {&m.a11, &m.a12, &m.a21, &m.a22}) {
    Val v = s_valuation(*e);
    if (!v.ge && (best.ge || v.v < best.v)) best = v;
    else if (v.ge && best.ge && v.v < best.v) best = v;
  }
  return best.str();
}

}  // namespace

HeightBudget compute_budget(const WeightData& k, i64 p) {
  if (p < 3) throw Error(ErrKind::InvalidArgument, "height budget needs p >= 3");
  HeightBudget b;
  for (int ki : k.k) {
    int c = ki <= 0 ? 1 : (int)((ki - 1) / (p - 2)) + 1;
    b.c.push_back(c);
    b.cmax = std::max(b.cmax, c);
  }
  return b;
}

std::string GateReport::message() const {
  std::ostringstream os;
  for (size_t i = 0; i < slots.size(); ++i) {
    if (i) os << "; ";
    os << "slot " << i << ": nu(a2) = " << slots[i].nu.str() << ", needs > " << slots[i].bound
       << (slots[i].pass ? " ok" : " FAIL");
  }
  return os.str();
}

GateReport valuation_gate(const EmbTuple<SlotParams>& slots, const HeightBudget& budget) {
  if (slots.size() != budget.c.size()) throw Error(ErrKind::InvalidArgument, "gate: length mismatch");
  GateReport g;
  for (size_t i = 0; i < slots.size(); ++i) {
    GateSlot s;
    s.bound = std::max(budget.c[i] - 1, budget.cmax - budget.c[i] - 1);
    s.nu = of_valuation(slots[i].a2);
    s.pass = s.nu.v > s.bound || (s.nu.ge && s.nu.v > s.bound);
    g.pass = g.pass && s.pass;
    g.slots.push_back(s);
  }
  return g;
}

void require_gate(const GateReport& g) {
  if (!g.pass) throw Error(ErrKind::GateFailed, g.message());
}

PreparedSplit prepare(const KisinFrobenius& K, const HeightBudget& budget) {
  if (!K.normalized) throw Error(ErrKind::InvalidArgument, "prepare needs a det-normalized Frobenius");
  const int f = (int)K.A.size();
  const Ctx& ctx = K.A[0].a11.ctx();
  const i64 p = ctx->p;
  PreparedSplit out;
  out.budget = budget;
  EmbTuple<SElem> low(f), z(f);
  for (int i = 0; i < f; ++i) {
    const SlotParams& s = K.slots[i];
    int cut = (int)(budget.c[i] * p);
    SElem lam = lambda_power(K.expo[i], K.b, ctx);
    auto alpha = to_ep_form(lam);
    for (auto& blk : alpha)
      if ((int)blk.size() > p) throw Error(ErrKind::SplitFailed, "alpha_j exceeds degree p-1");
    out.alpha.push_back(alpha);
    low[i] = low_part(lam, cut);
    z[i] = high_part(lam, cut);
    OF ratio = -(s.a2 * of_invert(s.a1));
    SElem x = s_scale(ratio, s_div_E(z[i], K.k.k[i]));
    out.X1.push_back(MatS{SElem::one(ctx), SElem::zero(ctx), x, SElem::one(ctx)});
    SElem px = s_scale(ratio, s_frobenius_div(z[i], K.k.k[i], cut)) * s_pow(gamma(ctx), -K.k.k[i]);
    out.phi_x.push_back(px);
  }
  for (int i = 0; i < f; ++i) {
    const SlotParams& s = K.slots[i];
    int prev = (i + f - 1) % f;
    SElem Eka1 = s_scale(s.a1, SElem::E_power(ctx, K.k.k[i]));
    SElem tail = s_scale(s.a2, low[i]);
    // row 2 plus x times row 1; x E^k a_1 = -a_2 z exactly
    MatS rowop, A0;
    if (s.type == TypeTag::I) {
      rowop = {SElem::zero(ctx), Eka1, SElem::one(ctx), tail};
      A0 = rowop;
    } else {
      rowop = {Eka1, SElem::zero(ctx), tail, SElem::scalar(s.alpha)};
      A0 = rowop;
    }
    MatS right{SElem::one(ctx), SElem::zero(ctx), -out.phi_x[prev], SElem::one(ctx)};
    MatS full = rowop * right;
    MatS C = full - A0;
    if (!mat_all(A0, in_frak_S))
      throw Error(ErrKind::SplitFailed, "slot " + std::to_string(i) + ": A0 is not integral");
    if (!in_varpi_frak_S(tail))
      throw Error(ErrKind::SplitFailed, "slot " + std::to_string(i) + ": stripped tail is not divisible by p");
    for (const SElem* e : {&C.a11, &C.a12, &C.a21, &C.a22})
      if (!in_p_power(*e, budget.cmax))
        throw Error(ErrKind::SplitFailed,
                    "slot " + std::to_string(i) + ": remainder outside I_" + std::to_string(budget.cmax));
    if (!s_equal((A0 + C).det(), expected_det(s, K.k.k[i], ctx)))
      throw Error(ErrKind::DetCheckFailed, "slot " + std::to_string(i) + ": determinant changed in prepare");
    out.A0.push_back(A0);
    out.C.push_back(C);
  }
  return out;
}

AssumptionReport check_descent_assumptions(const PreparedSplit& split, const KisinFrobenius& K,
                                           const HeightBudget& budget, bool throw_on_fail) {
  AssumptionReport r;
  const i64 p = K.A[0].a11.ctx()->p;
  std::ostringstream os;
  r.a = true;
  for (size_t i = 0; i < K.k.k.size(); ++i)
    if (K.k.k[i] > budget.cmax * (p - 2)) {
      r.a = false;
      os << "(a) k_" << i << " = " << K.k.k[i] << " > " << budget.cmax * (p - 2) << "; ";
    }
  r.b = K.normalized;
  if (!K.normalized) os << "(b) normalization not applied; ";
  for (size_t i = 0; i < split.X1.size(); ++i) {
    const MatS& X = split.X1[i];
    const Ctx& ctx = X.a11.ctx();
    bool ok = s_equal(X.det(), SElem::one(ctx)) && X.a12.is_zero() && s_equal(X.a11, SElem::one(ctx));
    if (!ok) {
      r.b = false;
      os << "(b) X1 of slot " << i << " is not unipotent lower triangular; ";
    }
  }
  r.c = true;
  for (size_t i = 0; i < split.C.size(); ++i) {
    bool ok = mat_all(split.A0[i], in_frak_S);
    for (const SElem* e : {&split.C[i].a11, &split.C[i].a12, &split.C[i].a21, &split.C[i].a22})
      ok = ok && in_p_power(*e, budget.cmax);
    if (!ok) {
      r.c = false;
      os << "(c) slot " << i << " split not certified in I_" << budget.cmax << "; ";
    }
  }
  r.detail = os.str();
  if (throw_on_fail && !r.ok()) throw Error(ErrKind::AssumptionViolated, r.detail);
  return r;
}

HeightPartner height_partner(const MatS& A, int h) {
  SElem det = A.det();
  SElem n = normalize_d(det);
  if (n.d() != 0 || !fil_membership(n, h))
    throw Error(ErrKind::HeightMismatch, "determinant not in Fil^" + std::to_string(h));
  SElem alpha = normalize_d(s_div_E(n, h));
  if (alpha.d() != 0 || !of_is_unit(alpha.coeff(0)))
    throw Error(ErrKind::HeightMismatch, "determinant is not E^" + std::to_string(h) + " times a unit");
  HeightPartner hp{scale(s_invert(alpha), A.adj()), alpha};
  const Ctx& ctx = A.a11.ctx();
  SElem Eh = SElem::E_power(ctx, h);
  MatS want{Eh, SElem::zero(ctx), SElem::zero(ctx), Eh};
  if (!mat_equal(A * hp.B, want) || !mat_equal(hp.B * A, want))
    throw Error(ErrKind::HeightMismatch, "adjugate partner does not multiply to E^h");
  return hp;
}

int gain_step(int h, int k, i64 p) { return (int)(p * (h - k - h / p + 1)); }

std::vector<int> DescentCertificate::h_sequence(int slot) const {
  std::vector<int> s;
  for (auto& st : log) s.push_back(st.h[slot]);
  return s;
}

bool DescentCertificate::gain_law_ok() const {
  const int f = (int)k.size();
  for (size_t n = 0; n + 1 < log.size(); ++n)
    for (int i = 0; i < f; ++i) {
      int prev = (i + f - 1) % f;
      int next = log[n + 1].h[i];
      if (next < gain_step(log[n].h[prev], k[prev], p)) return false;
      if (next <= log[n].h[i]) return false;
    }
  return true;
}

DescentCertificate descend(const PreparedSplit& split, const KisinFrobenius& K, int max_iter) {
  const int f = (int)split.A0.size();
  const Ctx& ctx = split.A0[0].a11.ctx();
  const i64 p = ctx->p;
  const int h0 = (int)(split.budget.cmax * p);
  DescentCertificate cert;
  cert.p = p;
  cert.k = K.k.k;
  EmbTuple<MatS> A(f), C(f);
  EmbTuple<SElem> u(f);
  std::vector<int> h(f, h0);
  for (int i = 0; i < f; ++i) {
    MatS lowC = mat_low(split.C[i], h0);
    if (!mat_all(lowC, in_varpi_frak_S))
      throw Error(ErrKind::SplitFailed, "slot " + std::to_string(i) + ": integral part not divisible by p");
    A[i] = split.A0[i] + lowC;
    C[i] = mat_high(split.C[i], h0);
    for (const SElem* e : {&C[i].a11, &C[i].a12, &C[i].a21, &C[i].a22})
      if (!in_window(*e, h0)) throw Error(ErrKind::SplitFailed, "slot " + std::to_string(i) + ": tail outside window");
    u[i] = height_partner(A[i], K.k.k[i]).alpha;
  }

  auto record = [&](int n) {
    DescentStep st;
    st.n = n;
    st.h = h;
    for (int i = 0; i < f; ++i) {
      st.c_val.push_back(min_val(C[i]));
      SElem want = SElem::E_power(ctx, K.k.k[i]) * u[i];
      st.det_ok.push_back(s_equal(A[i].det(), want));
      if (!st.det_ok.back())
        throw Error(ErrKind::DetCheckFailed, "slot " + std::to_string(i) + ": determinant drifted at step " +
                                                 std::to_string(n));
      if (!mat_all(A[i] - split.A0[i], in_varpi_frak_S))
        throw Error(ErrKind::PrecisionExhausted, "slot " + std::to_string(i) + ": lost congruence to A0 at step " +
                                                     std::to_string(n));
    }
    cert.log.push_back(st);
  };
  record(1);

  auto done = [&] {
    for (int i = 0; i < f; ++i)
      if (!mat_zero(C[i])) return false;
    return true;
  };

  int n = 1;
  while (!done()) {
    if (n > max_iter) throw Error(ErrKind::NoConvergence, "remainder still nonzero after max_iter steps");
    EmbTuple<MatS> Anew(f), Cnew(f);
    EmbTuple<SElem> unew(f);
    std::vector<int> hnew(f);
    for (int i = 0; i < f; ++i) {
      int k = K.k.k[i], dst = (i + 1) % f;
      int ell = h[i] - k - (int)(h[i] / p);
      if (ell < 0) throw Error(ErrKind::NoConvergence, "window too short for division by E^k");
      int H = (int)(p * (ell + 1));
      if (H <= h[i] && !mat_zero(C[i])) throw Error(ErrKind::NoConvergence, "gain law stalled");
      MatS B = scale(s_invert(u[i]), A[i].adj());
      MatS y = C[i] * B;
      SElem gk = s_pow(gamma(ctx), -k);
      MatS Phi = y.map([&](const SElem& e) { return s_frobenius_div(e, k, h[i]) * gk; });
      MatS D = mat_low(Phi, H), Dp = mat_high(Phi, H);
      if (!mat_all(D, in_varpi_frak_S))
        throw Error(ErrKind::NoConvergence, "slot " + std::to_string(i) + ": correction is not divisible by p");
      MatS I = identity_s(ctx);
      Anew[dst] = A[dst] * (I + D);
      Cnew[dst] = A[dst] * Dp;
      for (const SElem* e : {&Cnew[dst].a11, &Cnew[dst].a12, &Cnew[dst].a21, &Cnew[dst].a22})
        if (!in_window(*e, H))
          throw Error(ErrKind::NoConvergence, "slot " + std::to_string(dst) + ": remainder left its window");
      unew[dst] = u[dst] * (I + D).det();
      hnew[dst] = H;
    }
    A = Anew;
    C = Cnew;
    u = unew;
    h = hnew;
    ++n;
    record(n);
  }
  for (int i = 0; i < f; ++i)
    if (!mat_all(A[i], in_frak_S)) throw Error(ErrKind::PrecisionExhausted, "final matrix not integral");
  cert.A_final = A;
  cert.unit = u;
  cert.iterations = n - 1;
  cert.converged = true;
  cert.mod_p_ok = true;
  return cert;
}

}  // namespace pcris
