#include <doctest.h>

#include "fixfnm/error.hpp"
#include "fixfnm/product.hpp"
#include "support/brute.hpp"
#include "support/random_endos.hpp"

using namespace fixfnm;
using namespace fixfnm::testing;

namespace {

const Alphabet A2 = a_alphabet(2);
const Alphabet B2 = b_alphabet(2);

Word aw(std::string_view s) { return parse_word(s, A2); }
Word bw(std::string_view s) { return parse_word(s, B2); }
ProductElement pe(std::string_view x, std::string_view y) { return {aw(x), bw(y)}; }

// Closed formula of each type, written out independently of rebuild.
ProductElement closed_form(const EndoType& t, const ProductElement& g) {
  const auto& [x, y] = g;
  auto pw = [](const Word& u, const Integer& e) { return power(u, static_cast<std::int64_t>(e)); };
  switch (t.tag()) {
    case EndoTag::I: {
      const auto& p = t.as<TypeI>();
      return {pw(p.u, weighted_sum(x, p.p) + weighted_sum(y, p.r)),
              pw(p.v, weighted_sum(x, p.q) + weighted_sum(y, p.s))};
    }
    case EndoTag::II: {
      const auto& p = t.as<TypeII>();
      return {apply(p.theta, y), pw(p.v, weighted_sum(x, p.q) + weighted_sum(y, p.s))};
    }
    case EndoTag::III_1:
    case EndoTag::III_2: {
      const auto& p = t.as<TypeIII>();
      return {pw(p.u, weighted_sum(x, p.p) + weighted_sum(y, p.r)), apply(p.theta, y)};
    }
    case EndoTag::IV: {
      const auto& p = t.as<TypeIV>();
      return {apply(p.theta, y), apply(p.sigma, y)};
    }
    case EndoTag::V: {
      const auto& p = t.as<TypeV>();
      return {Word(x.alphabet()), pw(p.v, weighted_sum(x, p.q) + weighted_sum(y, p.s))};
    }
    case EndoTag::VI: {
      const auto& p = t.as<TypeVI>();
      return {apply(p.phi, x), apply(p.psi, y)};
    }
    case EndoTag::VII: {
      const auto& p = t.as<TypeVII>();
      return {apply(p.psi, y), apply(p.phi, x)};
    }
  }
  return g;
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK_NOTHROW(validate(2, 2, {pe("a1 a2", "1"), pe("a2^3", "1")},
                         {pe("1", "b2"), pe("1", "b1 b2^-1")}));
  try {
    validate(2, 2, {pe("a1", "b1"), pe("1", "1")}, {pe("a2", "b1"), pe("1", "1")});
    FAIL("expected violation");
  } catch (const CommutationViolation& e) {
    CHECK(e.a_index() == 1);
    CHECK(e.b_index() == 1);
    CHECK(e.component() == 1);
  }
  CHECK_THROWS_AS(validate(1, 2, {pe("1", "1")}, {pe("1", "1"), pe("1", "1")}), Error);
  CHECK_THROWS_AS(validate(2, 2, {pe("1", "1")}, {pe("1", "1"), pe("1", "1")}), Error);

  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const EndoType t = random_type(rng, EndoTag::I, 2, 3);
    CHECK_NOTHROW(rebuild(t));
  }
}

TEST_CASE("validate agrees with the relation check") {
  // Components drawn from a small pool mixing powers of a shared root with
  // unrelated words, so both outcomes occur.
  Rng rng(42);
  const std::vector<Word> apool = {Word(A2), aw("a1"), aw("a1^2"), aw("a1^-1"), aw("a2"),
                                   aw("a1 a2"), aw("a1 a2 a1 a2")};
  const std::vector<Word> bpool = {Word(B2), bw("b1"), bw("b1^3"), bw("b2 b1"),
                                   bw("b2 b1 b2 b1"), bw("b2")};
  int valid = 0, invalid = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<ProductElement> as, bs;
    for (int i = 0; i < 2; ++i) {
      as.push_back({apool[rng.uniform(0, 6)], bpool[rng.uniform(0, 5)]});
      bs.push_back({apool[rng.uniform(0, 6)], bpool[rng.uniform(0, 5)]});
    }
    bool relations_hold = true;
    for (const auto& a : as) {
      for (const auto& b : bs) {
        relations_hold &= a.first * b.first == b.first * a.first;
        relations_hold &= a.second * b.second == b.second * a.second;
      }
    }
    bool accepted = true;
    try {
      validate(2, 2, as, bs);
    } catch (const CommutationViolation&) {
      accepted = false;
    }
    CHECK(accepted == relations_hold);
    (accepted ? valid : invalid)++;
  }
  CHECK(valid > 50);
  CHECK(invalid > 50);
}

TEST_CASE("apply_endo") {
  const ProductEndo id = ProductEndo::identity(2, 2);
  CHECK(apply_endo(id, pe("a1 a2^-1", "b2")) == pe("a1 a2^-1", "b2"));
  const FreeHom phi(A2, B2, {bw("b1 b2"), bw("b2")});
  const FreeHom psi(B2, A2, {aw("a2"), aw("1")});
  const ProductEndo vii = rebuild(EndoType(TypeVII{phi, psi}));
  CHECK(apply_endo(vii, pe("a1", "1")) == pe("1", "b1 b2"));
  CHECK(apply_endo(vii, pe("a1^-1", "b1 b2")) == pe("a2", "b2^-1 b1^-1"));
  CHECK_THROWS_AS(apply_endo(id, ProductElement{parse_word("a1", a_alphabet(3)), bw("1")}),
                  AlphabetMismatch);
}

TEST_CASE("apply_endo agrees with the closed formulas") {
  Rng rng(43);
  for (const EndoTag tag : kAllTags) {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = rng.uniform(2, 3), m = rng.uniform(2, 3);
      const EndoType t = random_type(rng, tag, n, m);
      const ProductEndo e = rebuild(t);
      for (int k = 0; k < 10; ++k) {
        const ProductElement g = random_element(rng, n, m, 6);
        CHECK(apply_endo(e, g) == closed_form(t, g));
      }
    }
  }
}

TEST_CASE("classify examples") {
  const FreeHom phi(A2, A2, {aw("a2"), aw("a1 a2")});
  const FreeHom psi(B2, B2, {bw("b1^2"), bw("1")});
  const EndoType vi = classify(rebuild(EndoType(TypeVI{phi, psi})));
  CHECK(vi.tag() == EndoTag::VI);
  CHECK(vi.as<TypeVI>().phi == phi);
  CHECK(vi.as<TypeVI>().psi == psi);

  const FreeHom theta(B2, A2, {aw("a1"), aw("a2 a1")});
  const FreeHom sigma(B2, B2, {bw("b2"), bw("b1")});
  const EndoType iv = classify(
      validate(2, 2, {pe("1", "1"), pe("1", "1")}, {pe("a1", "b2"), pe("a2 a1", "b1")}));
  CHECK(iv.tag() == EndoTag::IV);
  CHECK(iv.as<TypeIV>() == TypeIV{theta, sigma});

  const ProductEndo e1 =
      validate(2, 2, {pe("a1^2", "b1"), pe("1", "1")}, {pe("a1", "b1^3"), pe("1", "1")});
  const EndoType i = classify(e1);
  REQUIRE(i.tag() == EndoTag::I);
  const auto& p = i.as<TypeI>();
  CHECK(p.u == aw("a1"));
  CHECK(p.v == bw("b1"));
  CHECK(p.p == ExponentWeights({2, 0}));
  CHECK(p.q == ExponentWeights({1, 0}));
  CHECK(p.r == ExponentWeights({1, 0}));
  CHECK(p.s == ExponentWeights({3, 0}));
  CHECK(rebuild(i) == e1);

  // Roots are oriented: a1^-1 is stored as a1 with negated exponents.
  const EndoType neg = classify(
      validate(2, 2, {pe("a1^-2", "b1"), pe("1", "1")}, {pe("a1^-1", "b1"), pe("1", "1")}));
  CHECK(neg.as<TypeI>().u == aw("a1"));
  CHECK(neg.as<TypeI>().p == ExponentWeights({-2, 0}));

  const EndoType v = classify(
      validate(2, 2, {pe("1", "b2"), pe("1", "1")}, {pe("1", "b2^-1"), pe("1", "1")}));
  CHECK(v.tag() == EndoTag::V);

  const EndoType iii1 = classify(
      validate(2, 2, {pe("a1^2", "1"), pe("1", "1")}, {pe("a1", "b2"), pe("1", "b1")}));
  CHECK(iii1.tag() == EndoTag::III_1);
  const EndoType iii2 = classify(
      validate(2, 2, {pe("a1", "1"), pe("1", "1")}, {pe("a1", "b2"), pe("1", "b1")}));
  CHECK(iii2.tag() == EndoTag::III_2);

  const EndoType ii = classify(
      validate(2, 2, {pe("1", "b1"), pe("1", "1")}, {pe("a2", "b1"), pe("1", "1")}));
  CHECK(ii.tag() == EndoTag::II);

  // The zero map is reported as VI.
  CHECK(classify(validate(2, 2, {pe("1", "1"), pe("1", "1")}, {pe("1", "1"), pe("1", "1")}))
            .tag() == EndoTag::VI);
}

TEST_CASE("valid shapes outside the seven types are rejected with a diagnostic") {
  // (x, y) -> (x phi, v^(x^Q + y^S))
  CHECK_THROWS_AS(classify(validate(2, 2, {pe("a2", "b1"), pe("a1", "1")},
                                    {pe("1", "b1"), pe("1", "1")})),
                  UnclassifiableEndo);
  // (x, y) -> (u^(x^P + y^R), 1)
  try {
    classify(validate(2, 2, {pe("a1", "1"), pe("1", "1")}, {pe("a1", "1"), pe("1", "1")}));
    FAIL("expected unclassifiable");
  } catch (const UnclassifiableEndo& e) {
    CHECK(std::string(e.what()).find("u^(x^P+y^R), 1") != std::string::npos);
  }
}

TEST_CASE("side conditions") {
  CHECK_THROWS_AS(EndoType(TypeI{aw("a1^2"), bw("b1"), ExponentWeights({1, 0}),
                                 ExponentWeights({1, 0}), ExponentWeights({1, 0}),
                                 ExponentWeights({1, 0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EndoType(TypeI{aw("a1"), bw("b1"), ExponentWeights({0, 0}),
                                 ExponentWeights({1, 0}), ExponentWeights({1, 0}),
                                 ExponentWeights({1, 0})}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EndoType(TypeIV{FreeHom::trivial(B2, A2), FreeHom::identity(B2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(EndoType(TypeV{Word(B2), ExponentWeights({1, 0}), ExponentWeights({1, 0})}),
                  std::invalid_argument);
}

TEST_CASE("classify inverts rebuild") {
  Rng rng(44);
  for (const EndoTag tag : kAllTags) {
    for (int trial = 0; trial < 60; ++trial) {
      const EndoType t = random_type(rng, tag, rng.uniform(2, 3), rng.uniform(2, 3));
      const ProductEndo e = rebuild(t);
      const EndoType back = classify(e);
      CHECK(back == t);
      CHECK(rebuild(back) == e);
    }
  }
}

TEST_CASE("matrix_M and int_kernel examples") {
  const EndoType i = classify(
      validate(2, 2, {pe("a1^2", "b1"), pe("1", "1")}, {pe("a1", "b1^3"), pe("1", "1")}));
  const Matrix2 m = matrix_M(i);
  CHECK(m == Matrix2{{{1, 1}, {1, 2}}});
  CHECK(int_kernel(m).is_trivial());

  const EndoType j(TypeI{aw("a1"), bw("b1"), ExponentWeights({2, 0}), ExponentWeights({-1, 0}),
                         ExponentWeights({1, 0}), ExponentWeights({0, 1})});
  const Matrix2 mj = matrix_M(j);
  CHECK(mj == Matrix2{{{1, 1}, {-1, -1}}});
  const Vec2 gen[] = {Vec2{1, -1}};
  CHECK(int_kernel(mj) == IntLattice2::from_generators(gen));

  const EndoType z(TypeI{aw("a1"), bw("b1"), ExponentWeights({1, 0}), ExponentWeights({0, 1}),
                         ExponentWeights({0, 1}), ExponentWeights({1, 0})});
  CHECK(matrix_M(z) == Matrix2{});
  CHECK(int_kernel(matrix_M(z)) == IntLattice2::whole());
  CHECK(IntLattice2::whole().basis() == std::vector<Vec2>{Vec2{1, 0}, Vec2{0, 1}});

  CHECK_THROWS_AS(matrix_M(EndoType(TypeVI{FreeHom::identity(A2), FreeHom::identity(B2)})),
                  std::invalid_argument);
}

TEST_CASE("int_kernel agrees with brute force") {
  Rng rng(45);
  for (int trial = 0; trial < 300; ++trial) {
    Matrix2 m;
    for (auto& row : m) {
      for (auto& x : row) x = rng.uniform(-4, 4);
    }
    const IntLattice2 k = int_kernel(m);
    for (const auto& w : k.basis()) {
      CHECK(m[0][0] * w[0] + m[0][1] * w[1] == 0);
      CHECK(m[1][0] * w[0] + m[1][1] * w[1] == 0);
    }
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        const bool in_kernel = m[0][0] * a + m[0][1] * b == 0 && m[1][0] * a + m[1][1] * b == 0;
        CHECK(k.contains(Vec2{a, b}) == in_kernel);
      }
    }
  }
}

TEST_CASE("endo file") {
  const std::string text =
      "endo 2 2\n"
      "# type I\n"
      "a1 -> ( a1^2 , b1 )\n"
      "a2 -> ( 1 , 1 )\n"
      "b1 -> ( a1 , b1^3 )\n"
      "b2 -> (1,1)\n";
  const ProductEndo e = parse_endo(text);
  CHECK(e.a_image(1) == pe("a1^2", "b1"));
  CHECK(parse_endo(render_endo(e)) == e);
  CHECK(describe(classify(e)).starts_with("type I\nu = a1\n"));

  CHECK_THROWS_AS(parse_endo("endo 2 2\na1 -> (1, 1)\n"), ParseError);
  CHECK_THROWS_AS(parse_endo("endo 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_endo("endo 2 2\na1 -> 1, 1\n"), ParseError);
  try {
    parse_endo("endo 2 2\na1 -> ( a1 , b1 )\na2 -> ( 1 , b3 )\n");
    FAIL("expected parse error");
  } catch (const ParseError& err) {
    CHECK(err.line() == 3);
    CHECK(std::string(err.what()).find("'b3'") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_endo("endo 2 2\na1 -> (a1, b1)\na2 -> (1,1)\nb1 -> (a2, 1)\n"
                             "b2 -> (1,1)\n"),
                  CommutationViolation);

  Rng rng(46);
  for (const EndoTag tag : kAllTags) {
    const ProductEndo r = rebuild(random_type(rng, tag, 3, 2));
    CHECK(parse_endo(render_endo(r)) == r);
  }
}
