#include "fixfnm/decision.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

#include "fixfnm/error.hpp"
#include "fixfnm/text.hpp"

namespace fixfnm {

namespace {

using Trace = std::vector<std::string>;

std::int64_t small(const Integer& x) {
  if (x > std::numeric_limits<std::int32_t>::max() ||
      x < std::numeric_limits<std::int32_t>::min()) {
    throw std::overflow_error("exponent " + x.str() + " too large for a word power");
  }
  return static_cast<std::int64_t>(x);
}

SubgroupGraph cyclic(const Word& w) {
  return SubgroupGraph::from_generators(w.alphabet(), std::span<const Word>(&w, 1));
}

// Substitutes `basis` into a word over Alphabet{basis.size(), 'x'}.
Word substitute(const Word& expression, const std::vector<Word>& basis, Alphabet target) {
  return apply(FreeHom(expression.alphabet(), target, basis), expression);
}

struct GraphPoint {
  Word x;  // in the domain subgroup
  Word j;  // x h, in the target subgroup, nontrivial
};

// Some x in k with x h in `target` and x h != 1, or nullopt if k h meets
// `target` trivially. Callers guarantee x h = 1 forces x = 1 on k, so
// nullopt means no nontrivial x qualifies.
std::optional<GraphPoint> graph_meets(const SubgroupGraph& k, const FreeHom& h,
                                      const SubgroupGraph& target) {
  if (k.is_trivial()) return std::nullopt;
  const auto basis = k.basis();
  std::vector<Word> images;
  for (const auto& b : basis) images.push_back(apply(h, b));
  const TrackedSubgroup image(h.target(), images);
  const SubgroupGraph j = intersect(image.graph(), target);
  if (j.is_trivial()) return std::nullopt;
  const Word jw = j.basis().front();
  const auto expression = image.express(jw);
  if (!expression) throw std::logic_error("image element without a preimage");
  return GraphPoint{substitute(*expression, basis, k.alphabet()), jw};
}

class Decider {
 public:
  Decider(const ProductEndo& phi, const ProductEndo& psi, const FixOracle& oracle)
      : phi_(phi), psi_(psi), oracle_(oracle), a_(phi.first_alphabet()), b_(phi.second_alphabet()) {}

  Verdict run() {
    const EndoType outer = classify(phi_);
    if (outer.tag() != EndoTag::VI && outer.tag() != EndoTag::VII) {
      throw UnsupportedShape("the first endomorphism is of type " + to_string(outer.tag()) +
                             "; only types VI and VII are decided");
    }
    const EndoType inner = classify(psi_);
    if (outer.tag() == EndoTag::VI) return case_vi(outer.as<TypeVI>(), inner);
    return case_vii(outer.as<TypeVII>(), inner);
  }

 private:
  Verdict trivial() { return Verdict::trivial(trace_); }
  Verdict found(ProductElement g) { return Verdict::nontrivial(phi_, psi_, std::move(g), trace_); }
  Verdict found(Word x, Word y) { return found(ProductElement{std::move(x), std::move(y)}); }
  Word one_a() const { return Word(a_); }
  Word one_b() const { return Word(b_); }

  Verdict case_vi(const TypeVI& f, const EndoType& t) {
    switch (t.tag()) {
      case EndoTag::I: return s11(f, t);
      case EndoTag::II: return s12(f, t.as<TypeII>());
      case EndoTag::III_1: return s13(f, t.as<TypeIII>());
      case EndoTag::III_2: return s14(f, t.as<TypeIII>());
      case EndoTag::IV: return s15(f, t.as<TypeIV>());
      case EndoTag::V: return s16(f, t.as<TypeV>());
      case EndoTag::VI: return s17(f, t.as<TypeVI>());
      case EndoTag::VII: return s18(f, t.as<TypeVII>());
    }
    throw std::logic_error("unknown tag");
  }

  Verdict case_vii(const TypeVII& f, const EndoType& t) {
    switch (t.tag()) {
      case EndoTag::I: return s21(f, t);
      case EndoTag::II: return s22(f, t.as<TypeII>());
      case EndoTag::III_1: return s23(f, t.as<TypeIII>());
      case EndoTag::III_2: return s24(f, t.as<TypeIII>());
      case EndoTag::IV: return s25(f, t.as<TypeIV>());
      case EndoTag::V: return s26(f, t.as<TypeV>());
      case EndoTag::VI: return s27(f, t.as<TypeVI>());
      case EndoTag::VII: return s28(f, t.as<TypeVII>());
    }
    throw std::logic_error("unknown tag");
  }

  // VI vs I: (u^a, v^b) with (a, b) in Ker M, u^a in Fix(phi), v^b in Fix(psi).
  Verdict s11(const TypeVI& f, const EndoType& t) {
    trace_.push_back("1.1");
    const auto& p = t.as<TypeI>();
    const bool u_fixed = is_fixed(f.phi, p.u);
    const bool v_fixed = is_fixed(f.psi, p.v);
    if (u_fixed && v_fixed) {
      const IntLattice2 kernel = int_kernel(matrix_M(t));
      if (kernel.is_trivial()) return trivial();
      const Vec2& k = kernel.basis().front();
      return found(power(p.u, small(k[0])), power(p.v, small(k[1])));
    }
    if (!u_fixed && !v_fixed) return trivial();
    if (v_fixed) {
      // a = 0: need v^R = 0 and v^S = 1.
      if (weighted_sum(p.v, p.r) != 0 || weighted_sum(p.v, p.s) != 1) return trivial();
      return found(one_a(), p.v);
    }
    if (weighted_sum(p.u, p.p) != 1 || weighted_sum(p.u, p.q) != 0) return trivial();
    return found(p.u, one_b());
  }

  // VI vs II: Fix(Psi) = {(v^b theta, v^b)} under the guard.
  Verdict s12(const TypeVI& f, const TypeII& p) {
    trace_.push_back("1.2");
    const Word vt = apply(p.theta, p.v);
    if (weighted_sum(vt, p.q) + weighted_sum(p.v, p.s) != 1) return trivial();
    if (!is_fixed(f.psi, p.v)) return trivial();
    if (vt.is_identity()) return found(one_a(), p.v);
    const SubgroupGraph j = intersect(cyclic(vt), oracle_.fix(f.phi, "phi"));
    if (j.is_trivial()) return trivial();
    const Word g = j.basis().front();
    const auto k = power_exponent(g, vt);
    if (!k) throw std::logic_error("element of <v theta> that is not a power");
    return found(g, power(p.v, *k));
  }

  // VI vs III.1: y in H cap Fix(psi), u^(y^R/(1-u^P)) in Fix(phi).
  Verdict s13(const TypeVI& f, const TypeIII& p) {
    trace_.push_back("1.3");
    const Integer d = 1 - weighted_sum(p.u, p.p);
    const SubgroupGraph h =
        intersect(oracle_.fix(p.theta, "theta"), congruence_subgroup(b_, p.r, abs(d)));
    const SubgroupGraph k = intersect(h, oracle_.fix(f.psi, "psi"));
    if (k.is_trivial()) return trivial();
    if (is_fixed(f.phi, p.u)) {
      const Word y = k.basis().front();
      return found(power(p.u, small(weighted_sum(y, p.r) / d)), y);
    }
    const KernelCheck check = restricted_kernel_trivial(k, p.r);
    if (check.trivial) return trivial();
    return found(one_a(), *check.witness);
  }

  // VI vs III.2: (u^a, y), y in Fix(theta), y^R = 0.
  Verdict s14(const TypeVI& f, const TypeIII& p) {
    trace_.push_back("1.4");
    if (is_fixed(f.phi, p.u)) return found(p.u, one_b());
    const SubgroupGraph k = intersect(oracle_.fix(p.theta, "theta"), oracle_.fix(f.psi, "psi"));
    const KernelCheck check = restricted_kernel_trivial(k, p.r);
    if (check.trivial) return trivial();
    return found(one_a(), *check.witness);
  }

  // VI vs IV: (y theta, y) with y in Fix(sigma) cap Fix(psi), y theta in Fix(phi).
  Verdict s15(const TypeVI& f, const TypeIV& p) {
    trace_.push_back("1.5");
    const SubgroupGraph k = intersect(oracle_.fix(p.sigma, "sigma"), oracle_.fix(f.psi, "psi"));
    if (k.is_trivial()) return trivial();
    const auto basis = k.basis();
    std::vector<Word> images;
    for (const auto& y : basis) images.push_back(apply(p.theta, y));
    const TrackedSubgroup image(a_, images);
    const SubgroupGraph j = intersect(image.graph(), oracle_.fix(f.phi, "phi"));
    if (!j.is_trivial()) {
      const Word g = j.basis().front();
      const auto expression = image.express(g);
      if (!expression) throw std::logic_error("image element without a preimage");
      return found(g, substitute(*expression, basis, b_));
    }
    // Only y in the kernel of theta on k remain; free groups are hopfian, so
    // theta is injective on k iff the image has the same rank.
    if (image.graph().rank() == k.rank()) return trivial();
    if (!image.relation()) throw std::logic_error("rank drop without a relation");
    return found(one_a(), substitute(*image.relation(), basis, b_));
  }

  // VI vs V: Fix(Psi) = {(1, v^b)} when v^S = 1.
  Verdict s16(const TypeVI& f, const TypeV& p) {
    trace_.push_back("1.6");
    if (weighted_sum(p.v, p.s) != 1) return trivial();
    if (!is_fixed(f.psi, p.v)) return trivial();
    return found(one_a(), p.v);
  }

  // VI vs VI: (Fix(phi) cap Fix(theta)) x (Fix(psi) cap Fix(sigma)).
  Verdict s17(const TypeVI& f, const TypeVI& p) {
    trace_.push_back("1.7");
    const SubgroupGraph first = intersect(oracle_.fix(f.phi, "phi"), oracle_.fix(p.phi, "theta"));
    if (!first.is_trivial()) return found(first.basis().front(), one_b());
    const SubgroupGraph second =
        intersect(oracle_.fix(f.psi, "psi"), oracle_.fix(p.psi, "sigma"));
    if (!second.is_trivial()) return found(one_a(), second.basis().front());
    return trivial();
  }

  // VI(phi, psi) vs VII(theta, sigma): (x, x theta) with x in
  // Fix(theta sigma) cap Fix(phi) and x theta in Fix(psi).
  Verdict s18(const TypeVI& f, const TypeVII& p) {
    trace_.push_back("1.8");
    return graph_case(oracle_.fix(compose(p.phi, p.psi), "theta sigma"), oracle_.fix(f.phi, "phi"),
                      p.phi, oracle_.fix(f.psi, "psi"));
  }

  // K = fix_a cap fix_b; a nontrivial x in K with x h in target.
  Verdict graph_case(const SubgroupGraph& fix_a, const SubgroupGraph& fix_b, const FreeHom& h,
                     const SubgroupGraph& target) {
    const auto point = graph_meets(intersect(fix_a, fix_b), h, target);
    if (!point) return trivial();
    return found(point->x, point->j);
  }

  // VII vs I: (x, x phi) = (u^a, v^b), x in Fix(phi psi), (a, b) in Ker M.
  Verdict s21(const TypeVII& f, const EndoType& t) {
    trace_.push_back("2.1");
    const auto& p = t.as<TypeI>();
    if (!is_fixed(compose(f.phi, f.psi), p.u)) return trivial();
    // {(b, a) : v^b = (u phi)^a}, read as (a, b).
    const IntLattice2 line = solve_power_equation(p.v, apply(f.phi, p.u)).swapped();
    const IntLattice2 both = lattice_intersect(int_kernel(matrix_M(t)), line);
    if (both.is_trivial()) return trivial();
    const Vec2& k = both.basis().front();
    return found(power(p.u, small(k[0])), power(p.v, small(k[1])));
  }

  // VII vs II: (v^b theta, v^b) fixed by Phi iff v in Fix(psi phi) and
  // v theta = v psi.
  Verdict s22(const TypeVII& f, const TypeII& p) {
    trace_.push_back("2.2");
    const Word vt = apply(p.theta, p.v);
    if (weighted_sum(vt, p.q) + weighted_sum(p.v, p.s) != 1) return trivial();
    if (!is_fixed(compose(f.psi, f.phi), p.v)) return trivial();
    if (vt != apply(f.psi, p.v)) return trivial();
    return found(vt, p.v);
  }

  // VII vs III.1: (u^k, u^k phi) with u in Fix(phi psi), u phi in Fix(theta)
  // and (u phi)^R = 1 - u^P.
  Verdict s23(const TypeVII& f, const TypeIII& p) {
    trace_.push_back("2.3");
    if (!is_fixed(compose(f.phi, f.psi), p.u)) return trivial();
    const Word up = apply(f.phi, p.u);
    if (!is_fixed(p.theta, up)) return trivial();
    if (weighted_sum(up, p.r) != 1 - weighted_sum(p.u, p.p)) return trivial();
    return found(p.u, up);
  }

  // VII vs III.2: (u^a, u^a phi) with u in Fix(phi psi), (u phi)^R = 0,
  // u phi in Fix(theta).
  Verdict s24(const TypeVII& f, const TypeIII& p) {
    trace_.push_back("2.4");
    if (!is_fixed(compose(f.phi, f.psi), p.u)) return trivial();
    const Word up = apply(f.phi, p.u);
    if (weighted_sum(up, p.r) != 0) return trivial();
    if (!is_fixed(p.theta, up)) return trivial();
    return found(p.u, up);
  }

  // VII(phi, psi) vs IV(theta, sigma): (x, x phi) with x in
  // Fix(phi psi) cap Fix(phi theta) and x phi in Fix(sigma).
  Verdict s25(const TypeVII& f, const TypeIV& p) {
    trace_.push_back("2.5");
    return graph_case(oracle_.fix(compose(f.phi, f.psi), "phi psi"),
                      oracle_.fix(compose(f.phi, p.theta), "phi theta"), f.phi,
                      oracle_.fix(p.sigma, "sigma"));
  }

  // VII vs V: Fix(Psi) lies in 1 x F_m, and (1, y) is fixed by Phi only
  // for y = 1 phi = 1.
  Verdict s26(const TypeVII&, const TypeV&) {
    trace_.push_back("2.6");
    return trivial();
  }

  // VII(phi, psi) vs VI(theta, sigma): the 1.8 computation with the roles
  // of the two maps exchanged.
  Verdict s27(const TypeVII& f, const TypeVI& p) {
    trace_.push_back("2.7");
    trace_.push_back("1.8");
    return graph_case(oracle_.fix(compose(f.phi, f.psi), "phi psi"), oracle_.fix(p.phi, "theta"),
                      f.phi, oracle_.fix(p.psi, "sigma"));
  }

  // VII(phi, psi) vs VII(theta, sigma): (y sigma, y) with y in
  // Fix(sigma theta) cap Fix(sigma phi) and y sigma in Fix(phi psi).
  Verdict s28(const TypeVII& f, const TypeVII& p) {
    trace_.push_back("2.8");
    const auto point =
        graph_meets(intersect(oracle_.fix(compose(p.psi, p.phi), "sigma theta"),
                              oracle_.fix(compose(p.psi, f.phi), "sigma phi")),
                    p.psi, oracle_.fix(compose(f.phi, f.psi), "phi psi"));
    if (!point) return trivial();
    return found(point->j, point->x);
  }

  const ProductEndo& phi_;
  const ProductEndo& psi_;
  const FixOracle& oracle_;
  Alphabet a_, b_;
  Trace trace_;
};

}  // namespace

Verdict Verdict::trivial(std::vector<std::string> trace) {
  Verdict v;
  v.trace_ = std::move(trace);
  return v;
}

Verdict Verdict::nontrivial(const ProductEndo& phi, const ProductEndo& psi,
                            ProductElement witness, std::vector<std::string> trace) {
  if (witness.is_identity() || !is_fixed(phi, witness) || !is_fixed(psi, witness)) {
    throw std::logic_error("witness " + to_string(witness) + " is not a nontrivial common fixed point");
  }
  Verdict v;
  v.witness_ = std::move(witness);
  v.trace_ = std::move(trace);
  return v;
}

Verdict decide(const ProductEndo& phi, const ProductEndo& psi, const FixOracle& oracle) {
  if (phi.n() != psi.n() || phi.m() != psi.m()) {
    throw AlphabetMismatch("endomorphisms of different products");
  }
  return Decider(phi, psi, oracle).run();
}

Presentation parse_presentation(std::string_view content) {
  const auto lines = text::significant_lines(content);
  if (lines.size() != 1) throw ParseError("expected one line '<generators> | <relators>'");
  const auto& line = lines.front();
  const std::string_view s = line.content;
  const auto bar = s.find('|');
  const std::string_view head = bar == std::string_view::npos ? s : s.substr(0, bar);
  const auto gens = text::tokens(head);
  if (gens.size() < 2) throw ParseError("need at least two generators", line.number, line.offset + 1);
  const Alphabet x{static_cast<int>(gens.size()), 'x'};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i] != "x" + std::to_string(i + 1)) {
      throw ParseError("generators must be x1 .. x" + std::to_string(gens.size()) + ", found '" +
                           std::string(gens[i]) + "'",
                       line.number, line.offset + static_cast<int>(gens[i].data() - s.data()) + 1);
    }
  }
  Presentation out{x, {}};
  if (bar == std::string_view::npos) return out;
  std::size_t start = bar + 1;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    int offset = line.offset + static_cast<int>(start);
    const std::string_view piece = text::trim(s.substr(start, end - start), &offset);
    if (piece.empty()) {
      if (comma == std::string_view::npos && out.relators.empty()) break;
      throw ParseError("empty relator", line.number, offset + 1);
    }
    out.relators.push_back(parse_word(piece, x, line.number, offset));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string render_presentation(const Presentation& p) {
  std::ostringstream os;
  for (int i = 1; i <= p.generators.rank; ++i) os << (i > 1 ? " " : "") << 'x' << i;
  os << " |";
  for (std::size_t i = 0; i < p.relators.size(); ++i) os << (i ? ", " : " ") << p.relators[i];
  return os.str();
}

MihailovaInstance build_mihailova_instance(const Presentation& p, const Word& w) {
  const int r = p.generators.rank;
  if (r < 2) throw std::invalid_argument("need at least two generators");
  if (w.alphabet() != p.generators) throw AlphabetMismatch("word is not over the presentation");
  if (w.is_identity()) throw std::invalid_argument("the word must be nontrivial");
  const Alphabet a = a_alphabet(r), b = b_alphabet(r);
  const Word z = root(w).z;
  const Word zb = z.relabeled(b);
  std::vector<Word> shift;
  for (int i = 1; i <= r; ++i) shift.push_back(Word::generator(a, i % r + 1));
  const ProductEndo phi =
      rebuild(EndoType(TypeVI{FreeHom(a, a, shift), FreeHom::inner(zb)}));
  std::vector<ProductElement> h;
  for (int i = 1; i <= r; ++i) h.push_back({Word::generator(a, i), Word::generator(b, i)});
  for (const auto& rel : p.relators) h.push_back({Word(a), rel.relabeled(b)});
  return MihailovaInstance{phi, h, z, ProductElement{Word(a), zb}};
}

EqualizerProblem reduce_typeIV_to_equalizer(const ProductEndo& phi, const ProductEndo& psi,
                                            const FixOracle& oracle) {
  const EndoType s = classify(phi), t = classify(psi);
  if (s.tag() != EndoTag::IV || t.tag() != EndoTag::IV) {
    throw UnsupportedShape("equalizer reduction needs two type IV maps, got " + to_string(s.tag()) +
                           " and " + to_string(t.tag()));
  }
  const auto& f = s.as<TypeIV>();
  const auto& g = t.as<TypeIV>();
  SubgroupGraph k = intersect(oracle.fix(f.sigma, "psi"), oracle.fix(g.sigma, "sigma"));
  std::vector<Word> basis = k.basis();
  const Alphabet x{static_cast<int>(basis.size()), 'x'};
  std::vector<Word> on_phi, on_theta;
  for (const auto& y : basis) {
    on_phi.push_back(apply(f.theta, y));
    on_theta.push_back(apply(g.theta, y));
  }
  const Alphabet a = phi.first_alphabet();
  return EqualizerProblem{std::move(k), std::move(basis), FreeHom(x, a, on_phi),
                          FreeHom(x, a, on_theta)};
}

std::pair<ProductEndo, ProductEndo> embed_equalizer_as_typeIV(const FreeHom& phi,
                                                              const FreeHom& psi) {
  if (phi.source() != psi.source() || phi.target() != psi.target()) {
    throw AlphabetMismatch("equalizer needs maps with the same source and target");
  }
  const int m = phi.source().rank, n = phi.target().rank;
  const Alphabet a = a_alphabet(n), b = b_alphabet(m);
  auto relabeled = [&](const FreeHom& h) {
    std::vector<Word> images;
    for (const auto& w : h.images()) images.push_back(w.relabeled(a));
    return FreeHom(b, a, images);
  };
  const FreeHom id = FreeHom::identity(b);
  return {rebuild(EndoType(TypeIV{relabeled(phi), id})),
          rebuild(EndoType(TypeIV{relabeled(psi), id}))};
}

}  // namespace fixfnm
