#include <doctest.h>

#include <map>

#include "fixfnm/error.hpp"
#include "fixfnm/fixpoints.hpp"
#include "fixfnm/oracle.hpp"
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

SubgroupGraph span(Alphabet alphabet, std::vector<Word> gens) {
  return SubgroupGraph::from_generators(alphabet, gens);
}

}  // namespace

TEST_CASE("fix_free examples") {
  CHECK(fix_free(SupportedEndo::inner(aw("a1^2"))) == span(A2, {aw("a1")}));
  CHECK(fix_free(SupportedEndo::permutation(A2, {2, 1})).is_trivial());
  CHECK(fix_free(SupportedEndo::permutation(A2, {1, -2})) == span(A2, {aw("a1")}));
  CHECK(fix_free(SupportedEndo::identity(A2)) == SubgroupGraph::whole(A2));
  CHECK(fix_free(SupportedEndo::zero(A2)).is_trivial());
  CHECK_THROWS_AS(SupportedEndo::permutation(A2, {1, 1}), std::invalid_argument);

  // Brute force: a word is fixed by conjugation with a1^2 iff it is a power of a1.
  for (const auto& x : all_words(A2, 6)) {
    CHECK(is_fixed(FreeHom::inner(aw("a1^2")), x) == power_exponent(x, aw("a1")).has_value());
  }
}

TEST_CASE("fix_free agrees with brute force") {
  Rng rng(61);
  const auto ball = all_words(A2, 6);
  FixOracle oracle;
  for (int trial = 0; trial < 60; ++trial) {
    const FreeHom h = random_supported(rng, A2, 3);
    const auto e = oracle.recognize(h);
    REQUIRE(e);
    CHECK(e->hom() == h);
    const SubgroupGraph fix = fix_free(*e);
    for (const auto& x : ball) CHECK(fix.contains(x) == is_fixed(h, x));
    if (const auto* inner = std::get_if<SupportedEndo::Inner>(&e->kind())) {
      CHECK(fix.contains(inner->z));
    }
  }
}

TEST_CASE("recognition") {
  FixOracle oracle;
  const FreeHom twist(A2, A2, {aw("a1"), aw("a2 a1")});
  CHECK_FALSE(oracle.recognize(twist));
  try {
    oracle.fix(twist, "theta");
    FAIL("expected MissingOracle");
  } catch (const MissingOracle& e) {
    CHECK(e.component().starts_with("theta"));
  }
  CHECK_FALSE(oracle.recognize(FreeHom::relabel(A2, B2)));

  // Composites of inner automorphisms are inner.
  const FreeHom c = compose(FreeHom::inner(aw("a1 a2")), FreeHom::inner(aw("a2^2")));
  const auto e = oracle.recognize(c);
  REQUIRE(e);
  CHECK(std::get<SupportedEndo::Inner>(e->kind()).z == aw("a2^2 a1 a2"));

  Rng rng(62);
  for (int trial = 0; trial < 200; ++trial) {
    const Alphabet alphabet{rng.uniform(1, 3), 'a'};
    const Word z = rng.nontrivial_word(alphabet, 6);
    const auto r = oracle.recognize(FreeHom::inner(z));
    REQUIRE(r);
    CHECK(r->hom() == FreeHom::inner(z));
  }
}

TEST_CASE("declared fixed subgroups") {
  const FreeHom twist(A2, A2, {aw("a1"), aw("a2 a1")});
  CHECK_THROWS_AS(SupportedEndo::declared(twist, {aw("a2")}), DeclaredFixError);
  // a1 alone is fixed but misses a2 a1 a2^-1; the audit finds it.
  try {
    SupportedEndo::declared(twist, {aw("a1")});
    FAIL("expected audit failure");
  } catch (const DeclaredFixError& e) {
    CHECK(std::string(e.what()).find("a2 a1 a2^-1") != std::string::npos);
  }
  CHECK_NOTHROW(SupportedEndo::declared(twist, {aw("a1")}, std::nullopt));

  FixOracle oracle;
  oracle.declare(twist, {aw("a1"), aw("a2 a1 a2^-1")});
  CHECK(oracle.fix(twist, "theta") == span(A2, {aw("a1"), aw("a2 a1 a2^-1")}));
  CHECK_THROWS_AS(oracle.declare(SupportedEndo::identity(A2)), std::invalid_argument);
}

TEST_CASE("fix_product examples") {
  const FixOracle oracle;
  // Type V with v = b1, S = (1, 0).
  const EndoType v(TypeV{bw("b1"), ExponentWeights({1, 0}), ExponentWeights({1, 0})});
  const FixDescriptor dv = fix_product(v, oracle);
  CHECK(contains(dv, pe("1", "b1^4")));
  CHECK_FALSE(contains(dv, pe("a1", "b1")));
  CHECK(sample_witness(dv) == pe("1", "b1"));
  CHECK(render(dv) == "Fix = {(1, b1^b) : (a, b) in <(0,1)>}");

  const EndoType i(TypeI{aw("a1"), bw("b1"), ExponentWeights({2, 0}), ExponentWeights({1, 0}),
                         ExponentWeights({1, 0}), ExponentWeights({3, 0})});
  CHECK(is_trivial(fix_product(i, oracle)));

  const EndoType id(TypeVI{FreeHom::identity(A2), FreeHom::identity(B2)});
  const FixDescriptor did = fix_product(id, oracle);
  CHECK(std::holds_alternative<FactorSubgroups>(did));
  CHECK(contains(did, pe("a1 a2^3", "b2 b1")));

  const FreeHom twist(B2, B2, {bw("b1"), bw("b2 b1")});
  const EndoType iv(TypeIV{FreeHom(B2, A2, {aw("a1"), aw("a2")}), twist});
  CHECK_THROWS_AS(fix_product(iv, oracle), MissingOracle);
  FixOracle declared;
  declared.declare(twist, {bw("b1"), bw("b2 b1 b2^-1")});
  CHECK(contains(fix_product(iv, declared), pe("a2 a1 a2^-1", "b2 b1 b2^-1")));
}

TEST_CASE("descriptors agree with direct fixed-point checks") {
  Rng rng(63);
  const FixOracle oracle;
  const auto ball = product_ball(2, 2, {4});
  std::map<EndoTag, std::pair<int, int>> seen;  // tag -> (trivial, nontrivial)
  for (int trial = 0; trial < 140; ++trial) {
    const EndoTag tag = kAllTags[trial % 7];
    const EndoType t = random_supported_type(rng, tag, 2, 2, 2);
    const ProductEndo e = rebuild(t);
    const FixDescriptor d = fix_product(t, oracle);
    int disagreements = 0;
    bool found = false;
    for (const auto& g : ball) {
      const bool fixed = is_fixed(e, g);
      if (contains(d, g) != fixed) ++disagreements;
      found |= fixed && !g.is_identity();
    }
    CHECK(disagreements == 0);
    const auto w = sample_witness(d);
    if (w) {
      CHECK_FALSE(w->is_identity());
      CHECK(is_fixed(e, *w));
      CHECK(contains(d, *w));
    } else {
      CHECK_FALSE(found);
    }
    auto& [trivial, nontrivial] = seen[t.tag()];
    (w ? nontrivial : trivial)++;
  }
  for (const EndoTag tag : {EndoTag::I, EndoTag::II, EndoTag::III_1, EndoTag::III_2,
                            EndoTag::IV, EndoTag::V, EndoTag::VI, EndoTag::VII}) {
    INFO("tag " << to_string(tag));
    CHECK(seen[tag].second > 0);
  }
}
