#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcris/lattice.hpp"

namespace pcris {

// x_1^{(i)} = lambda_b^{g_i}, x_2^{(i)} = lambda_b^{h_i}
struct ExponentSystem {
  int b = 0;
  EmbTuple<PhiExpPoly> g, h;
  std::vector<std::pair<int, int>> anchors;  // (slot, component) starting each cycle
  std::vector<int> cycle_lengths;
  PhiExpPoly e(int i) const { return h[i] - g[i]; }
};

ExponentSystem solve_exponent_system(const EmbTuple<TypeTag>& types, const WeightData& k);
// substitutes the solution back into the slot recursion inside S_F
bool exponent_recursion_holds(const EmbTuple<TypeTag>& types, const WeightData& k, const ExponentSystem& sys,
                              const Ctx& ctx);

struct KisinFrobenius {
  EmbTuple<MatS> A;
  WeightData k;
  EmbTuple<SlotParams> slots;
  int b = 0;
  EmbTuple<PhiExpPoly> expo;  // e_i = h_i - g_i, zero before det_normalize
  ExponentSystem system;
  EmbTuple<int> det_sign;      // det = sign * E^{k_i} a_1 alpha
  bool normalized = false;
};

KisinFrobenius build_kisin_frobenius(const EmbTuple<SlotParams>& slots, const WeightData& k, const Ctx& ctx);
KisinFrobenius det_normalize(const KisinFrobenius& raw);

// sign * E^k a_1 alpha for a slot
SElem expected_det(const SlotParams& s, int k, const Ctx& ctx);
int det_sign(TypeTag t);

}  // namespace pcris
