#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invgen/unitary.hpp"
#include "invgen/util.hpp"

using namespace invgen;

template <class F>
static Matrix<F> random_square(const F& K, int n, CounterRng& rng, uint64_t tag) {
  Matrix<F> m(K, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = K.elem_at(rng.below(K.order(), tag, i * 31 + j));
  return m;
}

template <class F>
static Matrix<F> random_invertible(const F& K, int n, CounterRng& rng, uint64_t tag) {
  for (uint64_t t = 0;; ++t) {
    auto m = random_square(K, n, rng, tag * 1000 + t);
    if (invertible(m)) return m;
  }
}

TEST_CASE("model dimensions and involution") {
  const PrimeField& F3 = prime_field(3);
  auto m1 = UnitaryModel<PrimeField>::make(F3, 1);
  CHECK(m1.dim() == 2);

  const Rationals& Q = rationals();
  auto m2 = UnitaryModel<Rationals>::make(Q, 2);
  CHECK(m2.dim() == 8);
  // (a, b)* = (b^t, a^t) and the involution squares to the identity.
  CounterRng rng{3};
  Matrix<Rationals> a = Matrix<Rationals>::from_ints(Q, 2, 2, {1, 2, 3, 4});
  Matrix<Rationals> b = Matrix<Rationals>::from_ints(Q, 2, 2, {5, 6, 7, 8});
  auto x = m2.embed_pair(a, b);
  auto sx = m2.algebra().apply_sigma(x);
  CHECK(m2.first(sx) == b.transpose());
  CHECK(m2.second(sx) == a.transpose());
  auto ssx = m2.algebra().apply_sigma(sx);
  CHECK(ssx == x);

  const ExtField& F4 = extension_field(2, 2);
  auto m3 = UnitaryModel<ExtField>::make(F4, 3);
  CHECK(m3.dim() == 18);
}

TEST_CASE("stabilizer subalgebra spans") {
  const PrimeField& F5 = prime_field(5);
  auto m2 = UnitaryModel<PrimeField>::make(F5, 2);
  CHECK(m2.subalg_AV(coordinate_subspace(F5, 2, 1)).dim() == 6);

  auto m3 = UnitaryModel<PrimeField>::make(F5, 3);
  CHECK(m3.subalg_AV(coordinate_subspace(F5, 3, 1)).dim() == 14);  // 2(9-2)
  CHECK(m3.subalg_AV(coordinate_subspace(F5, 3, 2)).dim() == 14);  // i <-> n-i symmetry

  CHECK_THROWS_AS((void)m2.subalg_AV(Subspace<PrimeField>::zero(F5, 2)), error);
  CHECK_THROWS_AS((void)m2.subalg_AV(Subspace<PrimeField>::full(F5, 2)), error);
}

TEST_CASE("graph subalgebra spans") {
  const PrimeField& F5 = prime_field(5);
  auto m2 = UnitaryModel<PrimeField>::make(F5, 2);
  auto id = Matrix<PrimeField>::identity(F5, 2);
  auto bi = m2.subalg_Bp(id);
  CHECK(bi.dim() == 4);
  // Graph of the identity: both components agree on every basis vector.
  for (int t = 0; t < bi.dim(); ++t) {
    Vec<PrimeField> v(bi.basis().row(t).begin(), bi.basis().row(t).end());
    CHECK(m2.first(v) == m2.second(v));
  }
  CHECK(m2.subalg_Bp(m2.omega()).dim() == 4);
  auto swap01 = Matrix<PrimeField>::from_ints(F5, 2, 2, {0, 1, 1, 0});
  CHECK(m2.subalg_Bp(swap01).dim() == 4);

  Matrix<PrimeField> singular(F5, 2, 2);
  CHECK_THROWS_AS((void)m2.subalg_Bp(singular), error);
  auto neither = Matrix<PrimeField>::from_ints(F5, 2, 2, {1, 2, 3, 4});
  CHECK(symmetry_kind(neither) == SymmetryKind::Neither);
  CHECK_THROWS_AS((void)m2.subalg_Bp(neither), error);
}

TEST_CASE("the projective action is an automorphism with the expected group law") {
  const PrimeField& F7 = prime_field(7);
  auto model = UnitaryModel<PrimeField>::make(F7, 2);
  CounterRng rng{13};

  auto gid = make_action(model, Matrix<PrimeField>::identity(F7, 2));
  Vec<PrimeField> x = model.embed_pair(random_square(F7, 2, rng, 1), random_square(F7, 2, rng, 2));
  CHECK(gid.apply(x) == x);

  for (int t = 0; t < 10; ++t) {
    auto c = random_invertible(F7, 2, rng, 10 + t);
    auto g = make_action(model, c);
    auto ginv = make_action(model, *inverse(c));
    Vec<PrimeField> y =
        model.embed_pair(random_square(F7, 2, rng, 100 + t), random_square(F7, 2, rng, 200 + t));
    CHECK(ginv.apply(g.apply(y)) == y);
    CHECK(is_automorphism(model, g));
  }
  Matrix<PrimeField> z(F7, 2, 2);
  CHECK_THROWS_AS(make_action(model, z), error);
}

TEST_CASE("component swap is an involutive automorphism commuting with *") {
  const PrimeField& F7 = prime_field(7);
  auto model = UnitaryModel<PrimeField>::make(F7, 2);
  CounterRng rng{47};
  for (int t = 0; t < 10; ++t) {
    auto a = random_square(F7, 2, rng, 2 * t);
    auto b = random_square(F7, 2, rng, 2 * t + 1);
    auto x = model.embed_pair(a, b);
    auto y = model.embed_pair(b, a);
    CHECK(model.act_swap(x) == y);
    CHECK(model.act_swap(model.act_swap(x)) == x);
    // Multiplicative and compatible with the involution.
    auto z = model.embed_pair(random_square(F7, 2, rng, 500 + t), random_square(F7, 2, rng, 700 + t));
    CHECK(model.act_swap(model.algebra().mul(x, z)) ==
          model.algebra().mul(model.act_swap(x), model.act_swap(z)));
    CHECK(model.act_swap(model.algebra().apply_sigma(x)) ==
          model.algebra().apply_sigma(model.act_swap(x)));
    // Closure dimension is unchanged.
    std::vector<Vec<PrimeField>> T = {x}, sT = {model.act_swap(x)};
    CHECK(model.algebra().closure(T).dim() == model.algebra().closure(sT).dim());
  }
}

TEST_CASE("action moves stabilizer and graph subalgebras as expected") {
  const PrimeField& F7 = prime_field(7);
  CounterRng rng{19};
  for (int n : {2, 3}) {
    auto model = UnitaryModel<PrimeField>::make(F7, n);
    for (int t = 0; t < 10; ++t) {
      auto c = random_invertible(F7, n, rng, t + 1000 * n);
      auto g = make_action(model, c);
      // Random nontrivial subspace: d < n rows, redrawn while degenerate.
      Subspace<PrimeField> V;
      for (uint64_t attempt = 0; V.dim() == 0; ++attempt) {
        int d = 1 + static_cast<int>(rng.below(n - 1, t, 7 + attempt));
        Matrix<PrimeField> vm(F7, d, n);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < n; ++j)
            vm.at(i, j) = rng.below(7, t * 31 + 5 + attempt, i * n + j);
        V = Subspace<PrimeField>::row_space(vm);
      }
      // cV as the row space of V c^t (rows transform by right multiplication).
      auto cV = Subspace<PrimeField>::row_space(V.basis() * c.transpose());
      CHECK(g.apply_span(model.subalg_AV(V)) == model.subalg_AV(cV));

      Matrix<PrimeField> p = random_invertible(F7, n, rng, t * 77 + 3);
      p = p + p.transpose();  // symmetric; retry if singular or alternating
      if (!invertible(p) || symmetry_kind(p) != SymmetryKind::SymmetricNonAlternating) continue;
      auto cinvt = inverse(c)->transpose();
      auto moved = cinvt * p * *inverse(c);
      CHECK(g.apply_span(model.subalg_Bp(p)) == model.subalg_Bp(moved));
    }
  }
}

TEST_CASE("explicit generators reach their targets") {
  const PrimeField& F5 = prime_field(5);
  auto m2 = UnitaryModel<PrimeField>::make(F5, 2);
  CHECK(m2.algebra().closure({full_generator(m2)}).dim() == 8);

  const PrimeField& F7 = prime_field(7);
  auto m3 = UnitaryModel<PrimeField>::make(F7, 3);
  auto g = av_generator(m3, 1, F7.from_int(2));
  auto cl = m3.algebra().closure({g});
  CHECK(cl.dim() == 14);
  CHECK(cl == m3.subalg_AV(coordinate_subspace(F7, 3, 1)));

  CHECK_THROWS_AS((void)av_generator(m3, 1, F7.from_int(1)), error);
  CHECK_THROWS_AS((void)av_generator(m3, 1, F7.from_int(-1)), error);
  CHECK_THROWS_AS((void)av_generator(m3, 1, F7.zero()), error);
  CHECK_THROWS_AS((void)av_generator(m3, 3, F7.from_int(2)), error);

  CHECK(m2.algebra().closure({bi_generator(m2)}).dim() == 4);
  auto m4 = UnitaryModel<PrimeField>::make(F5, 4);
  CHECK(m4.algebra().closure({bomega_generator(m4)}).dim() == 16);
  CHECK_THROWS_AS((void)bomega_generator(m2), error);

  auto pr = bomega2_pair(m2);
  CHECK(m2.algebra().closure({pr.first, pr.second}).dim() == 4);

  // Quadratic-extension scalar plus shift over F_q^2 as an F_q-algebra.
  for (uint64_t q : {2ull, 3ull}) {
    for (int n : {2, 3}) {
      HermitianAlgebra h = hermitian_algebra(q, n);
      CHECK(h.alg.dim() == 2 * n * n);
      CHECK(h.alg.closure({h.generator}).dim() == 2 * n * n);
    }
  }
}

TEST_CASE("identity suite: stated instances and full sweeps") {
  const PrimeField& F5 = prime_field(5);
  // 1-based statements: u^1 e_{2,2} u^1 = e_{1,3} at n = 3.
  {
    int n = 3;
    auto u = upper_shift(F5, n);
    CHECK(u * matrix_unit(F5, n, 1, 1) * u == matrix_unit(F5, n, 0, 2));
  }
  // d_{1,3}^5 = d_{1,3} at n = 4.
  {
    int n = 4;
    auto d = sym_unit(F5, n, 0, 2);
    CHECK(d.pow(5) == d);
  }
  // d_{1,3} u^2 d_{1,3} u^2 d_{1,3} = e_{3,1} at n = 3.
  {
    int n = 3;
    auto d = sym_unit(F5, n, 0, 2);
    auto u2 = upper_shift(F5, n).pow(2);
    CHECK(d * u2 * d * u2 * d == matrix_unit(F5, n, 2, 0));
  }
  for (int n = 2; n <= 4; ++n) {
    CHECK(identity_suite(F5, n).all_pass());
    CHECK(identity_suite(rationals(), n).all_pass());
  }
  CHECK_THROWS_AS(identity_suite(F5, 1), error);
}

TEST_CASE("no repetitions among the maximal subalgebra spans at n = 2 over F2") {
  const PrimeField& F2 = prime_field(2);
  auto model = UnitaryModel<PrimeField>::make(F2, 2);
  std::vector<Subspace<PrimeField>> avs;
  std::vector<Subspace<PrimeField>> vs;
  for_each_subspace(F2, 2, 1, 100, [&](const Subspace<PrimeField>& V) {
    vs.push_back(V);
    avs.push_back(model.subalg_AV(V));
    return true;
  });
  CHECK(avs.size() == 3);
  for (size_t i = 0; i < avs.size(); ++i)
    for (size_t j = i + 1; j < avs.size(); ++j) CHECK(avs[i] != avs[j]);

  // Invertible symmetric-or-alternating 2x2 matrices over F2.
  std::vector<Matrix<PrimeField>> ps;
  std::vector<Subspace<PrimeField>> bps;
  for (uint64_t bits = 0; bits < 16; ++bits) {
    Matrix<PrimeField> p(F2, 2, 2);
    p.at(0, 0) = bits & 1;
    p.at(0, 1) = (bits >> 1) & 1;
    p.at(1, 0) = (bits >> 2) & 1;
    p.at(1, 1) = (bits >> 3) & 1;
    if (!invertible(p) || symmetry_kind(p) == SymmetryKind::Neither) continue;
    ps.push_back(p);
    bps.push_back(model.subalg_Bp(p));
  }
  CHECK(ps.size() == 4);  // I, the swap, and two further symmetric units
  for (size_t i = 0; i < bps.size(); ++i)
    for (size_t j = i + 1; j < bps.size(); ++j) {
      // In PGL_2(F2) proportional means equal, so all four spans differ.
      CHECK(ps[i] != ps[j]);
      CHECK(bps[i] != bps[j]);
    }
  for (const auto& av : avs)
    for (const auto& bp : bps) CHECK(av != bp);
}

TEST_CASE("dimension bookkeeping") {
  DimRecord d21 = dims(2, 1, 0);
  CHECK(d21.dim_Zr == 7);
  CHECK(d21.ambient == 8);
  CHECK(d21.codim == 1);
  CHECK(d21.dim_X == std::vector<long long>{7});
  CHECK(d21.dim_Y == 6);
  CHECK(d21.dim_Y_exact);
  REQUIRE(d21.dim_Yprime.has_value());
  CHECK(*d21.dim_Yprime == 4);
  CHECK(d21.dim_G == 3);
  CHECK(d21.stab_AV == std::vector<long long>{2});
  CHECK(d21.s_i == std::vector<long long>{4});

  CHECK(dims(3, 2, 0).dim_Zr == 30);
  CHECK(dims(1, 5, 0).dim_Zr == 5);

  DimRecord dc2 = dims(2, 1, 2);
  CHECK_FALSE(dc2.dim_Y_exact);
  CHECK_FALSE(dc2.stab_BI_exact);

  // Component dimensions agree with the bound calculator fed the orbit data,
  // and the closed forms tie together: dim X_i = dim G + s(i, r), with the
  // locus dimension attained at i = 1.
  for (int n : {2, 3, 4})
    for (int r : {1, 2, 3}) {
      DimRecord d = dims(n, r, 0);
      auto orbits = unitary_orbit_data(n, r, 0);
      auto bound = general_dim_Zr(d.dim_G, orbits, r);
      CHECK(bound.bound == d.dim_Zr);
      CHECK(bound.exact);
      for (size_t i = 0; i < d.dim_X.size(); ++i)
        CHECK(d.dim_X[i] == d.dim_G + d.s_i[i]);
      CHECK(d.dim_Zr == d.dim_G + d.s_i[0]);
      CHECK(d.dim_Zr == d.dim_X[0]);
      CHECK(d.dim_X[0] == d.dim_X[d.dim_X.size() - 1]);  // i <-> n-i symmetry
      CHECK(d.codim == d.ambient - d.dim_Zr);
    }
}

TEST_CASE("orbit-data bound calculator") {
  // n = 3, r = 2: the maximum sits at the 1-dimensional stabilizer orbit.
  auto orbits = unitary_orbit_data(3, 2, 0);
  auto b = general_dim_Zr(8, orbits, 2);
  CHECK(b.bound == 30);
  CHECK(b.exact);
  REQUIRE(!b.maximizers.empty());
  CHECK(b.maximizers.front().find("A_V(1)") != std::string::npos);

  // n = 2, r = 1: the alternating graph needs two generators, but the
  // maximizer is the stabilizer orbit, so the bound stays exact.
  auto orbits21 = unitary_orbit_data(2, 1, 0);
  bool bomega_gen1 = false;
  for (const auto& o : orbits21)
    if (o.label == "B[Omega]") bomega_gen1 = o.generated_by_r;
  CHECK_FALSE(bomega_gen1);
  auto b21 = general_dim_Zr(3, orbits21, 1);
  CHECK(b21.bound == 7);
  CHECK(b21.exact);

  std::vector<OrbitDatum> tiny = {{"point", 0, 0, true}};
  CHECK(general_dim_Zr(0, tiny, 4).bound == 0);
  std::vector<OrbitDatum> none;
  CHECK_THROWS_AS(general_dim_Zr(0, none, 1), error);
}

TEST_CASE("brute-force generator counts") {
  const PrimeField& F3 = prime_field(3);
  auto m2 = UnitaryModel<PrimeField>::make(F3, 2);
  auto bomega = m2.subalg_Bp(m2.omega());
  auto rep = gen_count_bruteforce(m2, bomega, 2);
  CHECK(rep.target_dim == 4);
  CHECK(rep.minimal_r == 2);
  REQUIRE(rep.per_r.size() == 3);
  CHECK(rep.per_r[1].tuples_tested == 81);
  CHECK_FALSE(rep.per_r[1].found);
  CHECK(rep.per_r[1].max_closure_dim <= 2);
  CHECK(rep.per_r[2].found);
  CHECK(m2.algebra().closure(rep.per_r[2].witness).dim() == 4);

  // n = 1: the empty tuple spans only the scalars, one element suffices.
  auto m1 = UnitaryModel<PrimeField>::make(F3, 1);
  auto full = Subspace<PrimeField>::full(F3, 2);
  auto rep1 = gen_count_bruteforce(m1, full, 1);
  CHECK_FALSE(rep1.per_r[0].found);
  CHECK(rep1.per_r[0].max_closure_dim == 1);
  CHECK(rep1.minimal_r == 1);
}

TEST_CASE("deformation family: conjugate for alpha != 1, obstructed at alpha = 1") {
  const PrimeField& F5 = prime_field(5);
  for (int n : {2, 3}) {
    auto embed = [&](std::initializer_list<long long> two_by_two) {
      Matrix<PrimeField> m = Matrix<PrimeField>::identity(F5, n);
      auto it = two_by_two.begin();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m.at(i, j) = F5.from_int(*it++);
      return m;
    };
    for (long long alpha = 0; alpha < 5; ++alpha) {
      if (alpha == 1) continue;
      auto a = embed({alpha, 1, 0, 1});
      auto b = embed({1, 0, 0, alpha});
      Matrix<PrimeField> p = Matrix<PrimeField>::identity(F5, n);
      p.at(0, 0) = 0;
      p.at(0, 1) = F5.from_int(alpha - 1);
      p.at(1, 0) = F5.from_int(alpha - 1);
      p.at(1, 1) = F5.one();
      REQUIRE(invertible(p));
      CHECK(symmetry_kind(p) == SymmetryKind::SymmetricNonAlternating);
      CHECK(p * a * *inverse(p) == b);
    }
    // At alpha = 1 the intertwiner space contains no invertible element:
    // p a = b p forces the first column of p to vanish.
    auto a1 = embed({1, 1, 0, 1});
    auto b1 = Matrix<PrimeField>::identity(F5, n);
    std::vector<Matrix<PrimeField>> sol;
    Matrix<PrimeField> constraints(F5, n * n, n * n);
    int row = 0;
    for (int u = 0; u < n * n; ++u) {
      auto e = matrix_unit(F5, n, u / n, u % n);
      auto res = e * a1 - b1 * e;
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) constraints.at(x * n + y, u) = res.at(x, y);
      ++row;
    }
    auto nullsp = kernel(constraints);
    REQUIRE(nullsp.dim() >= 1);
    uint64_t total = 1;
    for (int t = 0; t < nullsp.dim(); ++t) total *= 5;
    for (uint64_t it = 1; it < total; ++it) {
      Matrix<PrimeField> p(F5, n, n);
      uint64_t v = it;
      for (int t = 0; t < nullsp.dim(); ++t) {
        uint64_t cdig = v % 5;
        v /= 5;
        if (!cdig) continue;
        for (int u = 0; u < n * n; ++u)
          p.at(u / n, u % n) =
              F5.add(p.at(u / n, u % n), F5.mul(cdig, nullsp.basis().at(t, u)));
      }
      CHECK_FALSE(invertible(p));
    }
  }
}

TEST_CASE("shifted graph elements admit a symmetric conjugator") {
  const PrimeField& F5 = prime_field(5);
  CounterRng rng{53};
  const PrimeField::Elem inv2 = F5.inv(2);
  int checked2 = 0, checked4 = 0;
  auto m2model = UnitaryModel<PrimeField>::make(F5, 2);
  auto m4model = UnitaryModel<PrimeField>::make(F5, 4);
  for (int t = 0; t < 100; ++t) {
    // n = 2: arbitrary matrix.
    auto m = random_square(F5, 2, rng, t);
    auto gamma = F5.neg(F5.mul(m.trace(), inv2));
    auto ug = m + Matrix<PrimeField>::identity(F5, 2).scaled(gamma);
    if (invertible(ug)) {
      auto p = m2model.omega() * ug;
      CHECK(symmetry_kind(p) == SymmetryKind::SymmetricNonAlternating);
      CHECK(p * m * *inverse(p) == m2model.omega() * m * *inverse(m2model.omega()));
      ++checked2;
    }
    // n = 4: doubled 2x2 blocks, matching the block structure of the
    // alternating form.
    Matrix<PrimeField> big(F5, 4, 4);
    auto small = random_square(F5, 2, rng, 1000 + t);
    for (int blk = 0; blk < 2; ++blk)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) big.at(2 * blk + i, 2 * blk + j) = small.at(i, j);
    auto gamma4 = F5.neg(F5.mul(small.trace(), inv2));
    auto ug4 = big + Matrix<PrimeField>::identity(F5, 4).scaled(gamma4);
    if (invertible(ug4)) {
      auto p4 = m4model.omega() * ug4;
      CHECK(symmetry_kind(p4) == SymmetryKind::SymmetricNonAlternating);
      CHECK(p4 * big * *inverse(p4) == m4model.omega() * big * *inverse(m4model.omega()));
      ++checked4;
    }
  }
  CHECK(checked2 >= 60);
  CHECK(checked4 >= 60);
}
