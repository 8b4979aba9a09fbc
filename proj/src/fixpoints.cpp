#include "fixfnm/fixpoints.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "fixfnm/error.hpp"
#include "fixfnm/oracle.hpp"

namespace fixfnm {

namespace {

std::optional<std::vector<Letter>> as_permutation(const FreeHom& h) {
  std::vector<Letter> images;
  std::vector<char> hit(h.source().rank + 1, 0);
  for (const auto& w : h.images()) {
    if (w.length() != 1) return std::nullopt;
    const Letter l = w.letters()[0];
    if (hit[std::abs(l)]++) return std::nullopt;
    images.push_back(l);
  }
  return images;
}

// z with h(x) = z x z^-1 for every generator, if h is inner.
std::optional<Word> inner_conjugator(const FreeHom& h) {
  const Alphabet alphabet = h.source();
  const Word a1 = Word::generator(alphabet, 1);
  const auto [core, c] = cyclic_reduce(h.image(1));
  if (core != a1) return std::nullopt;
  // z = c a1^k for some k, pinned down by the image of a2.
  std::int64_t k = 0;
  if (alphabet.rank >= 2) {
    const Word w = invert(c) * h.image(2) * c;
    const auto& letters = w.letters();
    if (!letters.empty() && std::abs(letters[0]) == 1) {
      const Letter lead = letters[0];
      while (k < static_cast<std::int64_t>(letters.size()) && letters[k] == lead) ++k;
      if (lead < 0) k = -k;
    }
  }
  const Word z = c * power(a1, k);
  for (int i = 1; i <= alphabet.rank; ++i) {
    const Word g = Word::generator(alphabet, i);
    if (h.image(i) != z * g * invert(z)) return std::nullopt;
  }
  return z;
}

std::string join_words(const std::vector<Word>& ws) {
  std::string out;
  for (const auto& w : ws) out += (out.empty() ? "" : ", ") + to_string(w);
  return out;
}

std::string render_subgroup(const SubgroupGraph& g) {
  if (g.is_trivial()) return "1";
  return "<" + join_words(g.basis()) + ">";
}

std::string hom_summary(const FreeHom& h) {
  std::string s;
  for (int i = 1; i <= h.source().rank; ++i) {
    s += (i > 1 ? "; " : "") + std::string(1, h.source().symbol) + std::to_string(i) +
         " -> " + to_string(h.image(i));
  }
  return s;
}

}  // namespace

SupportedEndo SupportedEndo::identity(Alphabet alphabet) {
  return SupportedEndo(FreeHom::identity(alphabet), Identity{});
}

SupportedEndo SupportedEndo::zero(Alphabet alphabet) {
  return SupportedEndo(FreeHom::trivial(alphabet, alphabet), Zero{});
}

SupportedEndo SupportedEndo::inner(const Word& z) {
  return SupportedEndo(FreeHom::inner(z), Inner{z});
}

SupportedEndo SupportedEndo::permutation(Alphabet alphabet, std::vector<Letter> images) {
  std::vector<Word> words;
  for (Letter l : images) words.push_back(Word::generator(alphabet, std::abs(l), l > 0 ? 1 : -1));
  FreeHom h(alphabet, alphabet, std::move(words));
  if (!as_permutation(h)) throw std::invalid_argument("images are not a signed permutation");
  return SupportedEndo(std::move(h), BasisPermutation{std::move(images)});
}

SupportedEndo SupportedEndo::declared(FreeHom h, std::vector<Word> fix_basis,
                                      std::optional<int> audit_radius) {
  if (!h.is_endomorphism()) throw DeclaredFixError("declared map is not an endomorphism");
  for (const auto& b : fix_basis) {
    if (b.alphabet() != h.source()) {
      throw DeclaredFixError("declared basis element " + to_string(b) + " is over the wrong alphabet");
    }
    if (!is_fixed(h, b)) {
      throw DeclaredFixError("declared basis element " + to_string(b) + " is not fixed");
    }
  }
  if (audit_radius) {
    const SubgroupGraph span = SubgroupGraph::from_generators(h.source(), fix_basis);
    for_each_in_ball(h.source(), BallSpec{*audit_radius}, [&](const Word& x) {
      if (!span.contains(x) && is_fixed(h, x)) {
        throw DeclaredFixError("audit: " + to_string(x) +
                               " is fixed but not in the declared subgroup");
      }
    });
  }
  return SupportedEndo(std::move(h), Declared{std::move(fix_basis)});
}

std::string SupportedEndo::describe() const {
  struct Visitor {
    std::string operator()(const Identity&) const { return "identity"; }
    std::string operator()(const Zero&) const { return "zero map"; }
    std::string operator()(const Inner& i) const { return "inner by " + to_string(i.z); }
    std::string operator()(const BasisPermutation&) const { return "basis permutation"; }
    std::string operator()(const Declared& d) const {
      return "declared, Fix = <" + join_words(d.fix_basis) + ">";
    }
  };
  return std::visit(Visitor{}, kind_);
}

SubgroupGraph fix_free(const SupportedEndo& e) {
  const Alphabet alphabet = e.hom().source();
  struct Visitor {
    Alphabet alphabet;
    SubgroupGraph operator()(const SupportedEndo::Identity&) const {
      return SubgroupGraph::whole(alphabet);
    }
    SubgroupGraph operator()(const SupportedEndo::Zero&) const {
      return SubgroupGraph::trivial(alphabet);
    }
    SubgroupGraph operator()(const SupportedEndo::Inner& i) const {
      if (i.z.is_identity()) return SubgroupGraph::whole(alphabet);
      const Word r = root(i.z).z;
      return SubgroupGraph::from_generators(alphabet, std::span<const Word>(&r, 1));
    }
    SubgroupGraph operator()(const SupportedEndo::BasisPermutation& p) const {
      std::vector<Word> fixed;
      for (int i = 1; i <= alphabet.rank; ++i) {
        if (p.images[i - 1] == i) fixed.push_back(Word::generator(alphabet, i));
      }
      return SubgroupGraph::from_generators(alphabet, fixed);
    }
    SubgroupGraph operator()(const SupportedEndo::Declared& d) const {
      return SubgroupGraph::from_generators(alphabet, d.fix_basis);
    }
  };
  return std::visit(Visitor{alphabet}, e.kind());
}

void FixOracle::declare(SupportedEndo declared) {
  if (!std::holds_alternative<SupportedEndo::Declared>(declared.kind())) {
    throw std::invalid_argument("only declared endomorphisms can be registered");
  }
  declared_.push_back(std::move(declared));
}

void FixOracle::declare(FreeHom h, std::vector<Word> fix_basis,
                        std::optional<int> audit_radius) {
  declare(SupportedEndo::declared(std::move(h), std::move(fix_basis), audit_radius));
}

std::optional<SupportedEndo> FixOracle::recognize(const FreeHom& h) const {
  if (!h.is_endomorphism()) return std::nullopt;
  const Alphabet alphabet = h.source();
  if (h == FreeHom::identity(alphabet)) return SupportedEndo::identity(alphabet);
  if (h.is_trivial()) return SupportedEndo::zero(alphabet);
  if (auto p = as_permutation(h)) return SupportedEndo::permutation(alphabet, *p);
  if (auto z = inner_conjugator(h)) return SupportedEndo::inner(*z);
  for (const auto& d : declared_) {
    if (d.hom() == h) return d;
  }
  return std::nullopt;
}

SubgroupGraph FixOracle::fix(const FreeHom& h, std::string_view role) const {
  if (auto e = recognize(h)) return fix_free(*e);
  throw MissingOracle(std::string(role) + " (" + hom_summary(h) + ")");
}

bool contains(const FixDescriptor& d, const ProductElement& g) {
  struct Visitor {
    const ProductElement& g;
    bool operator()(const TrivialFix&) const { return g.is_identity(); }
    bool operator()(const FactorSubgroups& f) const {
      return f.first.contains(g.first) && f.second.contains(g.second);
    }
    bool operator()(const PairedPowers& p) const {
      // An exponent is free when its base is 1 and the component is 1.
      const bool a_free = p.u.is_identity() && g.first.is_identity();
      const bool b_free = p.v.is_identity() && g.second.is_identity();
      const auto a = power_exponent(g.first, p.u);
      const auto b = power_exponent(g.second, p.v);
      if ((!a_free && !a) || (!b_free && !b)) return false;
      if (a_free && b_free) return true;
      if (a_free) return p.lattice.has_second(*b);
      if (b_free) return p.lattice.has_first(*a);
      return p.lattice.contains(Vec2{*a, *b});
    }
    bool operator()(const GraphOfHom& h) const {
      if (h.side == GraphSide::first_from_second) {
        return h.domain.contains(g.second) && apply(h.h, g.second) == g.first;
      }
      return h.domain.contains(g.first) && apply(h.h, g.first) == g.second;
    }
    bool operator()(const CylinderOverKernel& c) const {
      return c.fix_theta.contains(g.second) && weighted_sum(g.second, c.r) == 0 &&
             power_exponent(g.first, c.u).has_value();
    }
    bool operator()(const GraphOverDivisibility& c) const {
      if (!c.h.contains(g.second)) return false;
      const Integer a = weighted_sum(g.second, c.r) / (1 - c.u_p);
      return g.first == power(c.u, static_cast<std::int64_t>(a));
    }
  };
  return std::visit(Visitor{g}, d);
}

std::optional<ProductElement> sample_witness(const FixDescriptor& d) {
  struct Visitor {
    std::optional<ProductElement> operator()(const TrivialFix&) const { return std::nullopt; }
    std::optional<ProductElement> operator()(const FactorSubgroups& f) const {
      if (!f.first.is_trivial()) {
        return ProductElement{f.first.basis().front(), Word(f.second.alphabet())};
      }
      if (!f.second.is_trivial()) {
        return ProductElement{Word(f.first.alphabet()), f.second.basis().front()};
      }
      return std::nullopt;
    }
    std::optional<ProductElement> operator()(const PairedPowers& p) const {
      for (const auto& v : p.lattice.basis()) {
        ProductElement g{power(p.u, static_cast<std::int64_t>(v[0])),
                         power(p.v, static_cast<std::int64_t>(v[1]))};
        if (!g.is_identity()) return g;
      }
      return std::nullopt;
    }
    std::optional<ProductElement> operator()(const GraphOfHom& h) const {
      if (h.domain.is_trivial()) return std::nullopt;
      const Word b = h.domain.basis().front();
      if (h.side == GraphSide::first_from_second) return ProductElement{apply(h.h, b), b};
      return ProductElement{b, apply(h.h, b)};
    }
    std::optional<ProductElement> operator()(const CylinderOverKernel& c) const {
      if (!c.u.is_identity()) return ProductElement{c.u, Word(c.fix_theta.alphabet())};
      const auto k = restricted_kernel_trivial(c.fix_theta, c.r);
      if (!k.witness) return std::nullopt;
      return ProductElement{c.u, *k.witness};
    }
    std::optional<ProductElement> operator()(const GraphOverDivisibility& c) const {
      if (c.h.is_trivial()) return std::nullopt;
      const Word y = c.h.basis().front();
      const Integer a = weighted_sum(y, c.r) / (1 - c.u_p);
      return ProductElement{power(c.u, static_cast<std::int64_t>(a)), y};
    }
  };
  return std::visit(Visitor{}, d);
}

bool is_trivial(const FixDescriptor& d) { return !sample_witness(d).has_value(); }

std::string render(const FixDescriptor& d) {
  struct Visitor {
    std::string operator()(const TrivialFix&) const { return "Fix = 1"; }
    std::string operator()(const FactorSubgroups& f) const {
      return "Fix = " + render_subgroup(f.first) + " x " + render_subgroup(f.second);
    }
    std::string operator()(const PairedPowers& p) const {
      auto power_of = [](const Word& w, const char* e) {
        return w.is_identity() ? std::string("1") : to_string(w) + "^" + e;
      };
      return "Fix = {(" + power_of(p.u, "a") + ", " + power_of(p.v, "b") +
             ") : (a, b) in " + p.lattice.to_string() + "}";
    }
    std::string operator()(const GraphOfHom& h) const {
      std::ostringstream os;
      os << "Fix = ";
      if (h.side == GraphSide::first_from_second) {
        os << "{(y h, y) : y in " << render_subgroup(h.domain) << "}";
      } else {
        os << "{(x, x h) : x in " << render_subgroup(h.domain) << "}";
      }
      os << ", h:";
      for (int i = 1; i <= h.h.source().rank; ++i) {
        os << (i > 1 ? ";" : "") << ' ' << h.h.source().symbol << i << " -> " << h.h.image(i);
      }
      return os.str();
    }
    std::string operator()(const CylinderOverKernel& c) const {
      return "Fix = {(" + to_string(c.u) + "^a, y) : y in " + render_subgroup(c.fix_theta) +
             ", y^R = 0}, R = " + c.r.to_string();
    }
    std::string operator()(const GraphOverDivisibility& c) const {
      const Integer d = 1 - c.u_p;
      return "Fix = {(" + to_string(c.u) + "^(y^R / " + d.str() + "), y) : y in " +
             render_subgroup(c.h) + "}, R = " + c.r.to_string();
    }
  };
  return std::visit(Visitor{}, d);
}

FixDescriptor fix_product(const EndoType& t, const FixOracle& oracle) {
  switch (t.tag()) {
    case EndoTag::I: {
      const auto& p = t.as<TypeI>();
      return PairedPowers{p.u, p.v, int_kernel(matrix_M(t))};
    }
    case EndoTag::II: {
      const auto& p = t.as<TypeII>();
      if (weighted_sum(apply(p.theta, p.v), p.q) + weighted_sum(p.v, p.s) != 1) return TrivialFix{};
      return GraphOfHom{SubgroupGraph::from_generators(p.v.alphabet(), std::span(&p.v, 1)),
                        p.theta, GraphSide::first_from_second};
    }
    case EndoTag::III_1: {
      const auto& p = t.as<TypeIII>();
      const Integer u_p = weighted_sum(p.u, p.p);
      const Alphabet b = p.theta.source();
      const SubgroupGraph h = intersect(oracle.fix(p.theta, "theta"),
                                        congruence_subgroup(b, p.r, abs(1 - u_p)));
      return GraphOverDivisibility{p.u, u_p, p.r, h};
    }
    case EndoTag::III_2: {
      const auto& p = t.as<TypeIII>();
      return CylinderOverKernel{p.u, p.r, oracle.fix(p.theta, "theta")};
    }
    case EndoTag::IV: {
      const auto& p = t.as<TypeIV>();
      return GraphOfHom{oracle.fix(p.sigma, "sigma"), p.theta, GraphSide::first_from_second};
    }
    case EndoTag::V: {
      const auto& p = t.as<TypeV>();
      if (weighted_sum(p.v, p.s) != 1) return TrivialFix{};
      const Vec2 gen[] = {Vec2{0, 1}};
      return PairedPowers{Word(a_alphabet(static_cast<int>(p.q.size()))), p.v,
                          IntLattice2::from_generators(gen)};
    }
    case EndoTag::VI: {
      const auto& p = t.as<TypeVI>();
      return FactorSubgroups{oracle.fix(p.phi, "phi"), oracle.fix(p.psi, "psi")};
    }
    case EndoTag::VII: {
      const auto& p = t.as<TypeVII>();
      return GraphOfHom{oracle.fix(compose(p.phi, p.psi), "phi psi"), p.phi,
                        GraphSide::second_from_first};
    }
  }
  throw std::logic_error("unknown tag");
}

FixDescriptor fix_product(const ProductEndo& e, const FixOracle& oracle) {
  return fix_product(classify(e), oracle);
}

}  // namespace fixfnm
