#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcris/matrix.hpp"

namespace pcris {

// labelled Hodge-Tate weights (k_i, 0) after twisting the smaller weight away
struct WeightData {
  std::vector<int> k;
  std::vector<int> shift;
  int f() const { return (int)k.size(); }
  int kmax() const;
  int kmin() const;
};

WeightData normalize_weights(const std::vector<std::pair<int, int>>& raw);

enum class TypeTag { I, II };
const char* type_name(TypeTag t);
TypeTag classify_type(const MatOF& A);

using LatticeTuple = EmbTuple<MatOF>;

struct ParabolicResult {
  LatticeTuple B;
  EmbTuple<MatOF> witness;  // upper triangular, unit diagonal entries
  EmbTuple<TypeTag> types;
  bool all_type_II = false;
  int start = -1;   // first slot of the mixed-case sweep
  int sweeps = 0;   // passes over all slots (all-II case)
};

// (C) *_P (A): B_i = C_i A_i Delta_{k_{i-1}} C_{i-1}^{-1} Delta_{k_{i-1}}^{-1}
LatticeTuple parabolic_act(const EmbTuple<MatOF>& C, const LatticeTuple& A, const WeightData& k);
ParabolicResult parabolic_normalize(const LatticeTuple& A, const WeightData& k);
bool verify_parabolic_equiv(const LatticeTuple& A, const LatticeTuple& B, const EmbTuple<MatOF>& C,
                            const WeightData& k);

// a_1, a_2 (and alpha for Type II) read off a normalized slot
struct SlotParams {
  TypeTag type = TypeTag::I;
  OF a1, a2, alpha;
};
SlotParams slot_params(const MatOF& B, TypeTag t);
MatOF type_matrix(const SlotParams& s);

struct Reducibility {
  enum Kind { ReducibleAllII, ReducibleSubsetSum, NotDetected } kind = NotDetected;
  int w = 0;
  std::vector<int> J;
  int valuation_sum = 0;
  bool reducible() const { return kind != NotDetected; }
  std::string str() const;
};

Reducibility reducibility_detect(const LatticeTuple& B, const EmbTuple<TypeTag>& types, const WeightData& k);

// slope as num/2 so half-integral slopes stay exact
struct Slope {
  int twice = 0;
  std::string str() const;
  bool operator==(const Slope& o) const { return twice == o.twice; }
};

struct FrobeniusProduct {
  MatOF phi;
  Slope s1, s2;  // s1 <= s2
};

// phi^f = phi^{(0)} phi^{(f-1)} ... phi^{(1)}, phi^{(i)} = A_i Delta_{k_{i-1}}
FrobeniusProduct frobenius_f_product(const LatticeTuple& A, const WeightData& k);

}  // namespace pcris
