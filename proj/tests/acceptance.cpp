// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "fixfnm/decision.hpp"
#include "fixfnm/error.hpp"
#include "fixfnm/fixpoints.hpp"
#include "fixfnm/oracle.hpp"
#include "fixfnm/stallings.hpp"
#include "support/brute.hpp"
#include "support/curated.hpp"
#include "support/naive_fold.hpp"
#include "support/random_endos.hpp"

using namespace fixfnm;
using namespace fixfnm::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass &= ok;
  }
};

const Alphabet A2 = a_alphabet(2);
const Alphabet B2 = b_alphabet(2);

void subcase_coverage(Outcome& out) {
  const auto start = std::chrono::steady_clock::now();
  std::set<std::string> labels;
  int pairs = 0, nontrivial = 0;
  for (const auto& c : curated_pairs()) {
    const std::string tag = c.label + " " + c.name;
    const Verdict v = decide(c.phi, c.psi);
    for (const auto& l : v.trace()) labels.insert(l);
    out.require(std::find(v.trace().begin(), v.trace().end(), c.label) != v.trace().end(),
                tag + ": label missing from trace");
    out.require(v.is_trivial() != c.nontrivial, tag + ": unexpected verdict");
    const auto found = common_fixed_points(c.phi, c.psi, {5});
    if (v.is_trivial()) {
      if (!found.empty()) out.require(false, tag + ": oracle found " + to_string(found.front()));
    } else {
      const ProductElement& w = *v.witness();
      out.require(!w.is_identity() && is_fixed(c.phi, w) && is_fixed(c.psi, w),
                  tag + ": witness does not verify");
      ++nontrivial;
    }
    ++pairs;
  }
  for (const char* l : kTraceLabels) out.require(labels.count(l) == 1, std::string("label ") + l);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 60, "runtime over 60 s");
  out.detail << pairs << " pairs (" << nontrivial << " nontrivial), " << labels.size()
             << "/16 labels, oracle radius 5, " << secs << " s";
}

void fix_formulas(Outcome& out) {
  Rng rng(1001);
  const FixOracle oracle;
  const auto ball = product_ball(2, 2, {5});
  std::set<EndoTag> tags;
  long disagreements = 0, checked = 0;
  const int trials = 280;
  for (int trial = 0; trial < trials; ++trial) {
    const EndoType t = random_supported_type(rng, kAllTags[trial % 7], 2, 2, 2);
    const ProductEndo e = rebuild(t);
    const FixDescriptor d = fix_product(t, oracle);
    for (const auto& g : ball) {
      ++checked;
      if (contains(d, g) != is_fixed(e, g)) ++disagreements;
    }
    tags.insert(t.tag());
  }
  out.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  out.require(tags.size() == 8, "not all eight tags drawn");
  out.detail << trials << " endomorphisms, " << tags.size() << " tags, " << checked
             << " membership checks, " << disagreements << " disagreements";
}

void fixed_powers(Outcome& out) {
  Rng rng(1002);
  int instances = 0, counterexamples = 0, trials = 0;
  while (instances < 500 && trials < 200000) {
    ++trials;
    FreeHom h;
    Word u = rng.nontrivial_word(A2, 5);
    switch (trials % 5) {
      case 0: h = FreeHom::identity(A2); break;
      case 1: {
        const Word z = rng.nontrivial_word(A2, 3);
        h = FreeHom::inner(z);
        if (rng.coin()) u = power(root(z).z, rng.uniform(1, 2));
        break;
      }
      case 2:
        h = random_supported(rng, A2, 3);
        if (rng.coin()) u = Word::generator(A2, rng.uniform(1, 2)) * u * invert(u);
        break;
      case 3: {
        // Retraction onto <a1>: fixes exactly the powers of a1.
        h = FreeHom(A2, A2, {Word::generator(A2, 1), power(Word::generator(A2, 1), rng.uniform(-2, 2))});
        if (rng.coin()) u = power(Word::generator(A2, 1), rng.uniform(1, 3));
        break;
      }
      default: h = random_hom(rng, A2, A2, 3); break;
    }
    const int a = rng.coin() ? rng.uniform(2, 6) : -rng.uniform(1, 6);
    if (!is_fixed(h, power(u, a))) continue;
    ++instances;
    if (!is_fixed(h, u)) ++counterexamples;
  }
  out.require(instances >= 500, "only " + std::to_string(instances) + " instances");
  out.require(counterexamples == 0, std::to_string(counterexamples) + " counterexamples");
  out.detail << instances << " instances with u^a fixed, " << counterexamples << " counterexamples";
}

void mihailova_instance(Outcome& out) {
  Rng rng(1003);
  long checked = 0;
  for (int instance = 0; instance < 10; ++instance) {
    const int k = instance < 7 ? 2 : 3;
    Presentation p{Alphabet{k, 'x'}, {}};
    for (int r = rng.uniform(0, 2); r > 0; --r) p.relators.push_back(rng.nontrivial_word(p.generators, 4));
    Word w = rng.nontrivial_word(p.generators, 3);
    if (instance % 3 == 0) w = power(w, rng.uniform(2, 3));
    const MihailovaInstance inst = build_mihailova_instance(p, w);
    const std::string tag = render_presentation(p) + " w=" + to_string(w);
    out.require(inst.z == root(w).z, tag + ": z is not the root");
    const Word zb = inst.z.relabeled(b_alphabet(k));
    out.require(inst.fix_generator == ProductElement{Word(a_alphabet(k)), zb},
                tag + ": fix generator");
    const FixDescriptor d = fix_product(inst.phi, FixOracle());
    for (const auto& g : product_ball(k, k, {5})) {
      const bool in_cyclic = g.first.is_identity() && power_exponent(g.second, zb).has_value();
      out.require(contains(d, g) == in_cyclic, tag + ": " + to_string(g));
      ++checked;
    }
  }
  out.detail << "10 instances, " << checked << " ball elements checked";
}

void typeIV_reduction(Outcome& out) {
  Rng rng(1004);
  int pairs = 0, with_witness = 0;
  long matched = 0;
  while (pairs < 20) {
    const FreeHom theta1 = random_nontrivial_hom(rng, B2, A2, 2);
    FreeHom theta2 = random_nontrivial_hom(rng, B2, A2, 2);
    if (pairs % 2 == 0) theta2 = FreeHom(B2, A2, {theta1.image(1), theta2.image(2)});
    if (pairs % 5 == 0) theta2 = theta1;
    const FreeHom sigma1 = pairs % 3 == 0 ? random_supported_nontrivial(rng, B2, 2)
                                          : FreeHom::identity(B2);
    const FreeHom sigma2 = pairs % 4 == 1 ? random_supported_nontrivial(rng, B2, 2) : sigma1;
    const ProductEndo phi = rebuild(EndoType(TypeIV{theta1, sigma1}));
    const ProductEndo psi = rebuild(EndoType(TypeIV{theta2, sigma2}));
    ++pairs;
    const EqualizerProblem r = reduce_typeIV_to_equalizer(phi, psi);
    const std::string tag = "pair " + std::to_string(pairs);
    const auto common = common_fixed_points(phi, psi, {5});
    if (r.basis.empty()) {
      out.require(common.empty(), tag + ": K trivial but oracle found points");
      continue;
    }
    const TrackedSubgroup k(B2, r.basis);
    const auto eq = bounded_equalizer(r.phi_k, r.theta_k, {5});
    const std::set<Word> eq_set(eq.begin(), eq.end());
    std::set<ProductElement> common_set(common.begin(), common.end());
    // Eq -> Fix cap Fix.
    std::set<Word> images;
    for (const auto& e : eq) {
      const Word y = k.evaluate(e);
      const ProductElement g{apply(theta2, y), y};
      out.require(!y.is_identity() && is_fixed(phi, g) && is_fixed(psi, g),
                  tag + ": image of " + to_string(e) + " not a common fixed point");
      out.require(images.insert(y).second, tag + ": map not injective");
      if (y.length() + g.first.length() <= 5) {
        out.require(common_set.count(g) == 1, tag + ": oracle missed " + to_string(g));
        ++matched;
      }
    }
    // Fix cap Fix -> Eq.
    for (const auto& g : common) {
      const auto e = k.express(g.second);
      out.require(e.has_value(), tag + ": " + to_string(g) + " outside K");
      if (!e) continue;
      out.require(g.first == apply(theta2, g.second), tag + ": first component");
      out.require(apply(r.phi_k, *e) == apply(r.theta_k, *e), tag + ": not in Eq");
      if (e->length() <= 5) out.require(eq_set.count(*e) == 1, tag + ": equalizer search missed");
    }
    with_witness += !common.empty();
  }
  out.detail << pairs << " pairs, " << with_witness << " with common fixed points, " << matched
             << " elements matched in both searches";
}

void stallings_engine(Outcome& out) {
  Rng rng(1005);
  const auto ball = all_words(A2, 4);
  auto gens = [&] {
    std::vector<Word> g;
    for (int i = rng.uniform(1, 3); i > 0; --i) g.push_back(rng.word(A2, 4));
    return g;
  };
  int finite = 0;
  for (int pair = 0; pair < 200; ++pair) {
    const auto gg = gens(), hg = gens();
    const SubgroupGraph g = SubgroupGraph::from_generators(A2, gg);
    const SubgroupGraph h = SubgroupGraph::from_generators(A2, hg);
    const NaiveGraph ng(A2, gg), nh(A2, hg);
    const SubgroupGraph both = intersect(g, h);
    const std::string tag = "pair " + std::to_string(pair);
    out.require(g.rank() == ng.rank() && h.rank() == nh.rank(), tag + ": rank");
    for (const auto& x : ball) {
      out.require(g.contains(x) == ng.contains(x), tag + ": membership " + to_string(x));
      out.require(both.contains(x) == (ng.contains(x) && nh.contains(x)),
                  tag + ": intersection " + to_string(x));
    }
    for (const SubgroupGraph* s : {&g, &h, &both}) {
      if (const auto index = s->index()) {
        ++finite;
        out.require(s->rank() - 1 == static_cast<std::int64_t>(*index) * (A2.rank - 1),
                    tag + ": Nielsen-Schreier");
      }
    }
    out.require(g.index().has_value() == ng.index().has_value(), tag + ": finite index");
  }
  // Congruence subgroups give finite-index instances in quantity.
  for (int trial = 0; trial < 100; ++trial) {
    const ExponentWeights w({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const SubgroupGraph s = intersect(congruence_subgroup(A2, w, rng.uniform(1, 6)),
                                      SubgroupGraph::from_generators(A2, gens()));
    if (const auto index = s.index()) {
      ++finite;
      out.require(s.rank() - 1 == static_cast<std::int64_t>(*index) * (A2.rank - 1),
                  "congruence: Nielsen-Schreier");
    }
  }
  out.require(finite > 0, "no finite-index instance");
  out.detail << "200 pairs over the radius-4 ball, " << finite << " finite-index instances";
}

Integer exponent_sum_by_hand(const Word& w, const ExponentWeights& weights) {
  Integer total = 0;
  for (const Letter l : w.letters()) total += l > 0 ? weights[l - 1] : -weights[-l - 1];
  return total;
}

void lattice_kernel(Outcome& out) {
  Rng rng(1006);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix2 m;
    for (auto& row : m) {
      for (auto& x : row) x = rng.uniform(-4, 4);
    }
    const IntLattice2 k = int_kernel(m);
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        const bool zero = m[0][0] * a + m[0][1] * b == 0 && m[1][0] * a + m[1][1] * b == 0;
        out.require(k.contains(Vec2{a, b}) == zero, "int_kernel at (" + std::to_string(a) + "," +
                                                         std::to_string(b) + ")");
      }
    }
  }
  for (int trial = 0; trial < 100; ++trial) {
    const EndoType t = random_type(rng, EndoTag::I, 2, 2);
    const auto& p = t.as<TypeI>();
    const Matrix2 expected{{{-1 + exponent_sum_by_hand(p.u, p.p), exponent_sum_by_hand(p.v, p.r)},
                            {exponent_sum_by_hand(p.u, p.q), -1 + exponent_sum_by_hand(p.v, p.s)}}};
    out.require(matrix_M(t) == expected, "M formula on " + describe(t));
  }
  out.detail << "100 matrices over |a|,|b| <= 10, 100 M matrices";
}

void classifier_round_trip(Outcome& out) {
  Rng rng(1007);
  for (int trial = 0; trial < 100; ++trial) {
    const EndoType t = random_type(rng, kAllTags[trial % 7], rng.uniform(2, 3), rng.uniform(2, 3));
    const EndoType back = classify(rebuild(t));
    out.require(back.tag() == t.tag() && back == t, "round trip of " + describe(t));
  }
  const std::vector<Word> apool = {Word(A2), parse_word("a1", A2), parse_word("a1^2", A2),
                                   parse_word("a2", A2), parse_word("a1 a2", A2)};
  const std::vector<Word> bpool = {Word(B2), parse_word("b1", B2), parse_word("b1^-2", B2),
                                   parse_word("b2 b1", B2), parse_word("b2", B2)};
  int rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<ProductElement> as, bs;
    for (int i = 0; i < 2; ++i) {
      as.push_back({apool[rng.uniform(0, 4)], bpool[rng.uniform(0, 4)]});
      bs.push_back({apool[rng.uniform(0, 4)], bpool[rng.uniform(0, 4)]});
    }
    bool violated = false;
    for (const auto& a : as) {
      for (const auto& b : bs) {
        violated |= !(a.first * b.first * invert(a.first) * invert(b.first)).is_identity();
        violated |= !(a.second * b.second * invert(a.second) * invert(b.second)).is_identity();
      }
    }
    try {
      validate(2, 2, as, bs);
      out.require(!violated, "accepted a table violating the relations");
    } catch (const CommutationViolation&) {
      ++rejected;
      out.require(violated, "rejected a table satisfying the relations");
    }
  }
  out.require(rejected > 0, "no rejection exercised");
  out.detail << "100 round trips, 1000 tables (" << rejected << " rejected)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"subcase coverage", subcase_coverage},
      {"fix formulas", fix_formulas},
      {"fixed powers", fixed_powers},
      {"Mihailova instance", mihailova_instance},
      {"type IV reduction", typeIV_reduction},
      {"Stallings engine", stallings_engine},
      {"lattice kernel", lattice_kernel},
      {"classifier round trip", classifier_round_trip},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].second(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << " (" << criteria[i].first
              << "): " << (out.pass ? "PASS" : "FAIL") << "  " << out.detail.str() << "\n";
    all &= out.pass;
  }
  return all ? 0 : 1;
}
