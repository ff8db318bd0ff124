#pragma once

#include <string>
#include <vector>

#include "pcris/descent.hpp"

namespace pcris {

using MatRes = Mat2<ResidueSeries>;

enum class Shape { I, S };  // I = diagonal, S = antidiagonal
const char* shape_name(Shape s);

// I-shape: Diag(u^n, u^m); S-shape: [[0, u^m], [u^n, 0]]
struct MonomialSlot {
  Shape shape = Shape::I;
  int n = 0, m = 0;
  std::vector<i64> unit_n, unit_m;  // leading coefficients in k_F
};

struct ReductionData {
  EmbTuple<MonomialSlot> mu;
  int num_S() const;
};

EmbTuple<MatRes> reduce_mod_varpi(const EmbTuple<MatS>& A);
inline EmbTuple<MatRes> reduce_mod_varpi(const DescentCertificate& cert) { return reduce_mod_varpi(cert.A_final); }

ReductionData extract_reduction_data(const EmbTuple<MatRes>& red);

struct VW {
  std::vector<i64> v, w;
};
VW assign_vw(const ReductionData& mu);

// exponents of A0 phi(A1) ... phi^{f-1}(A_{f-1}); e[r][c] is -1 where the entry vanishes
struct ExponentMatrix {
  i64 e[2][2] = {{-1, -1}, {-1, -1}};
  bool diagonal() const { return e[0][1] < 0 && e[1][0] < 0; }
};
ExponentMatrix monomial_product(const ReductionData& mu, i64 p);

enum class CharShape { Split, Induced };

struct CharDesc {
  CharShape shape = CharShape::Split;
  i64 a = 0, b = 0;  // Split: omega_f^a + omega_f^b
  i64 t = 0;         // Induced: Ind omega_{2f}^t
  i64 sum_v = 0, sum_w = 0, raw_t = 0;
  bool odd = false;
  VW vw;
  i64 p = 0;
  int f = 0;
  std::string caveat() const;
  std::string str() const;
};

CharDesc character_output(const VW& vw, i64 p, int f, bool odd);

}  // namespace pcris
