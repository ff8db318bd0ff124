#pragma once

#include <string>
#include <vector>

#include "pcris/kisin.hpp"

namespace pcris {

struct HeightBudget {
  std::vector<int> c;  // smallest c with k_i <= c (p - 2)
  int cmax = 0;
};

HeightBudget compute_budget(const WeightData& k, i64 p);

struct GateSlot {
  int bound = 0;
  Val nu;
  bool pass = false;
};

struct GateReport {
  std::vector<GateSlot> slots;
  bool pass = true;
  std::string message() const;
};

// nu_p(a_2^{(i)}) > max(c_i - 1, c_max - c_i - 1), strictly
GateReport valuation_gate(const EmbTuple<SlotParams>& slots, const HeightBudget& budget);
void require_gate(const GateReport& g);

struct PreparedSplit {
  EmbTuple<MatS> A0;  // over O_F[[u]]
  EmbTuple<MatS> C;   // entries in I_{c_max}
  EmbTuple<MatS> X1;  // [[1, 0], [x, 1]], x carries p-denominators
  EmbTuple<SElem> phi_x;
  EmbTuple<std::vector<std::vector<OF>>> alpha;  // (E^p/p)-form of lambda_b^{e_i}
  HeightBudget budget;
};

PreparedSplit prepare(const KisinFrobenius& K, const HeightBudget& budget);

struct AssumptionReport {
  bool a = false, b = false, c = false;
  std::string detail;
  bool ok() const { return a && b && c; }
};

AssumptionReport check_descent_assumptions(const PreparedSplit& split, const KisinFrobenius& K,
                                           const HeightBudget& budget, bool throw_on_fail = true);

struct HeightPartner {
  MatS B;
  SElem alpha;  // det(A) = E^h alpha
};

// B = alpha^{-1} adj(A) with A B = B A = E^h Id
HeightPartner height_partner(const MatS& A, int h);

struct DescentStep {
  int n = 0;
  std::vector<int> h;          // certified window start of C_n per slot
  std::vector<std::string> c_val;  // p-adic valuation of C_n per slot
  std::vector<bool> det_ok;
};

struct DescentCertificate {
  EmbTuple<MatS> A_final;
  EmbTuple<SElem> unit;  // det(A_final) = sign E^{k_i} unit
  std::vector<DescentStep> log;
  int iterations = 0;
  bool converged = false;
  bool mod_p_ok = false;
  // h_{n+1}^{(i)} >= p (h_n^{(i-1)} - k_{i-1} - floor(h_n^{(i-1)}/p) + 1) and strictly increasing
  bool gain_law_ok() const;
  std::vector<int> h_sequence(int slot) const;
  i64 p = 0;
  std::vector<int> k;
};

DescentCertificate descend(const PreparedSplit& split, const KisinFrobenius& K, int max_iter = 64);

// closed form of one gain step
int gain_step(int h, int k, i64 p);

}  // namespace pcris
