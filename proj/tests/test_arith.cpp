#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pcris/arith.hpp"

using namespace pcris;

TEST_CASE("of_valuation basic values") {
  auto ctx = make_context(5, 1, 5, 8);
  CHECK(of_valuation(OF(ctx, 1)) == Val{0, false});
  CHECK(of_valuation(OF(ctx, 25 * 3)) == Val{2, false});
  auto c4 = make_context(5, 1, 4, 8);
  CHECK(of_valuation(OF(c4, 0)).str() == ">=4");
}

TEST_CASE("of_invert matches brute-force search") {
  auto ctx = make_context(5, 1, 3, 4);
  OF y = of_invert(OF(ctx, 2));
  CHECK(y.coeff(0) == 63);
  for (i64 a = 1; a < 125; ++a) {
    if (a % 5 == 0) continue;
    i64 want = -1;
    for (i64 t = 0; t < 125; ++t)
      if (a * t % 125 == 1) want = t;
    CHECK(of_invert(OF(ctx, a)).coeff(0) == want);
  }
  CHECK(of_invert(OF(ctx, 1)).coeff(0) == 1);
  CHECK_THROWS_AS(of_invert(OF(ctx, 5)), Error);
}

TEST_CASE("residue polynomial is irreducible and inverses work for r > 1") {
  for (i64 p : {3, 5, 7}) {
    for (int r = 1; r <= 4; ++r) {
      auto ctx = make_context(p, r, 6, 4);
      REQUIRE((int)ctx->poly.size() == r + 1);
      CHECK(ctx->poly[r] == 1);
      std::mt19937_64 rng(p * 10 + r);
      for (int t = 0; t < 20; ++t) {
        OF a = oracle::random_unit(ctx, rng);
        CHECK((a * of_invert(a)).equals(OF::one(ctx)));
      }
    }
  }
  // x^2 + 1 is reducible mod 5, so it must not be chosen
  auto c = make_context(5, 2, 3, 2);
  bool has_root = false;
  for (i64 x = 0; x < 5; ++x)
    if ((c->poly[0] + c->poly[1] * x + x * x) % 5 == 0) has_root = true;
  CHECK_FALSE(has_root);
}

TEST_CASE("O_F ring axioms and valuation additivity on random triples") {
  std::mt19937_64 rng(7);
  for (int r : {1, 2, 3}) {
    for (int N : {1, 4, 9}) {
      auto ctx = make_context(7, r, N, 4);
      for (int t = 0; t < 50; ++t) {
        OF a = oracle::random_of(ctx, rng), b = oracle::random_of(ctx, rng), c = oracle::random_of(ctx, rng);
        CHECK(((a * b) * c).equals(a * (b * c)));
        CHECK((a * (b + c)).equals(a * b + a * c));
        CHECK((a * b).equals(b * a));
        CHECK((a + b - b).equals(a));
        int va = t % 3, vb = (t / 3) % 3;
        OF x = oracle::random_unit(ctx, rng).mul_p(va), y = oracle::random_unit(ctx, rng).mul_p(vb);
        if (va < N && vb < N && va + vb < N) CHECK(of_valuation(x * y).v == va + vb);
      }
    }
  }
}

TEST_CASE("USeries: ring axioms, Frobenius homomorphism, reduction") {
  std::mt19937_64 rng(11);
  auto ctx = make_context(3, 2, 5, 12);
  auto rnd = [&] {
    USeries s(ctx);
    for (int j = 0; j < ctx->M; ++j) s.set(j, oracle::random_of(ctx, rng));
    return s;
  };
  for (int t = 0; t < 10; ++t) {
    USeries a = rnd(), b = rnd(), c = rnd();
    CHECK(((a * b) * c).equals(a * (b * c)));
    CHECK((a * (b + c)).equals(a * b + a * c));
    CHECK(useries_frobenius(a * b).equals(useries_frobenius(a) * useries_frobenius(b)));
    CHECK(useries_reduce(a * b) == useries_reduce(a) * useries_reduce(b));
  }
  USeries u = USeries::u(ctx);
  USeries up = useries_frobenius(u);
  for (int j = 0; j < ctx->M; ++j) CHECK(up.coeff(j).is_zero() == (j != 3));
  USeries E = USeries::E(ctx);
  CHECK(of_valuation(E.coeff(0)).v == 1);
  CHECK(E.coeff(1).equals(OF::one(ctx)));
  USeries fE = useries_frobenius(E);
  CHECK(fE.coeff(0).equals(OF(ctx, 3)));
  CHECK(fE.coeff(3).equals(OF::one(ctx)));
  USeries cst = USeries::constant(OF(ctx, 4));
  CHECK(useries_frobenius(cst).equals(cst));
}
