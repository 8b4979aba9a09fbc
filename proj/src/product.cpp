#include "fixfnm/product.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "fixfnm/error.hpp"
#include "fixfnm/text.hpp"

namespace fixfnm {

namespace {

std::int64_t to_exponent(const Integer& x) {
  if (x > std::numeric_limits<std::int32_t>::max() ||
      x < std::numeric_limits<std::int32_t>::min()) {
    throw std::overflow_error("exponent " + x.str() + " too large for a word power");
  }
  return static_cast<std::int64_t>(x);
}

void require(bool condition, const std::string& what) {
  if (!condition) throw std::invalid_argument(what);
}

void require_alphabet(const Word& w, const Alphabet& expected, const char* name) {
  require(w.alphabet() == expected, std::string(name) + " must be a word over " +
                                        to_string(expected));
}

void require_hom(const FreeHom& h, const Alphabet& source, const Alphabet& target,
                 const char* name) {
  require(h.source() == source && h.target() == target,
          std::string(name) + " must map " + to_string(source) + " to " +
              to_string(target));
}

void require_oriented_root(const Word& w, const char* name) {
  require(!w.is_identity(), std::string(name) + " must be nontrivial");
  const Root r = oriented_root(w);
  require(r.k == 1, std::string(name) + " must be an oriented root (not a proper "
                                        "power, smaller than its inverse)");
}

void require_weights(const ExponentWeights& w, int rank, const char* name) {
  require(static_cast<int>(w.size()) == rank,
          std::string(name) + " must have " + std::to_string(rank) + " entries");
  require(!w.is_zero(), std::string(name) + " must be nonzero");
}

// All nontrivial entries as powers of one oriented root. Returns the root and
// the exponents (0 for trivial entries), or nullopt if they share no root.
struct CommonPower {
  Word base;
  std::vector<std::int64_t> exponents;
};

std::optional<CommonPower> common_power(const std::vector<Word>& words,
                                        Alphabet alphabet) {
  CommonPower out{Word(alphabet), {}};
  for (const auto& w : words) {
    if (!w.is_identity()) {
      out.base = oriented_root(w).z;
      break;
    }
  }
  for (const auto& w : words) {
    const auto e = power_exponent(w, out.base);
    if (!e) return std::nullopt;
    out.exponents.push_back(*e);
  }
  return out;
}

ExponentWeights weights_of(std::span<const std::int64_t> exps) {
  std::vector<Integer> v;
  for (auto e : exps) v.emplace_back(e);
  return ExponentWeights(std::move(v));
}

bool all_trivial(const std::vector<Word>& ws) {
  return std::all_of(ws.begin(), ws.end(), [](const Word& w) { return w.is_identity(); });
}

std::string hom_line(const char* name, const FreeHom& h) {
  std::ostringstream os;
  os << name << ":";
  for (int i = 1; i <= h.source().rank; ++i) {
    os << (i == 1 ? " " : "; ") << h.source().symbol << i << " -> " << h.image(i);
  }
  return os.str();
}

}  // namespace

std::string to_string(const ProductElement& g) {
  return "(" + to_string(g.first) + ", " + to_string(g.second) + ")";
}

ProductElement multiply(const ProductElement& g, const ProductElement& h) {
  return {g.first * h.first, g.second * h.second};
}

ProductElement invert(const ProductElement& g) {
  return {invert(g.first), invert(g.second)};
}

ProductEndo::ProductEndo(int n, int m, std::vector<ProductElement> a_images,
                         std::vector<ProductElement> b_images)
    : n_(n), m_(m), a_images_(std::move(a_images)), b_images_(std::move(b_images)) {
  if (n < 2 || m < 2) throw Error("F_n x F_m needs n, m >= 2");
  if (static_cast<int>(a_images_.size()) != n || static_cast<int>(b_images_.size()) != m) {
    throw Error("expected " + std::to_string(n) + " a-images and " +
                std::to_string(m) + " b-images");
  }
  for (const auto* images : {&a_images_, &b_images_}) {
    for (const auto& g : *images) {
      if (g.first.alphabet() != a_alphabet(n) || g.second.alphabet() != b_alphabet(m)) {
        throw AlphabetMismatch("image components must lie in " +
                               to_string(a_alphabet(n)) + " x " +
                               to_string(b_alphabet(m)));
      }
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      if (!commute(a_image(i).first, b_image(j).first)) throw CommutationViolation(i, j, 1);
      if (!commute(a_image(i).second, b_image(j).second)) throw CommutationViolation(i, j, 2);
    }
  }
}

ProductEndo ProductEndo::identity(int n, int m) {
  std::vector<ProductElement> as, bs;
  for (int i = 1; i <= n; ++i) as.push_back({Word::generator(a_alphabet(n), i), Word(b_alphabet(m))});
  for (int j = 1; j <= m; ++j) bs.push_back({Word(a_alphabet(n)), Word::generator(b_alphabet(m), j)});
  return ProductEndo(n, m, std::move(as), std::move(bs));
}

ProductEndo validate(int n, int m, std::vector<ProductElement> a_images,
                     std::vector<ProductElement> b_images) {
  return ProductEndo(n, m, std::move(a_images), std::move(b_images));
}

ProductElement apply_endo(const ProductEndo& e, const ProductElement& g) {
  if (g.first.alphabet() != e.first_alphabet() || g.second.alphabet() != e.second_alphabet()) {
    throw AlphabetMismatch("element of the wrong product for F_" +
                           std::to_string(e.n()) + " x F_" + std::to_string(e.m()));
  }
  std::vector<Letter> first, second;
  auto append = [](std::vector<Letter>& out, const Word& w, bool inverse) {
    if (!inverse) {
      out.insert(out.end(), w.letters().begin(), w.letters().end());
    } else {
      for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out.push_back(-*it);
    }
  };
  for (Letter l : g.first.letters()) {
    const auto& img = e.a_image(std::abs(l));
    append(first, img.first, l < 0);
    append(second, img.second, l < 0);
  }
  for (Letter l : g.second.letters()) {
    const auto& img = e.b_image(std::abs(l));
    append(first, img.first, l < 0);
    append(second, img.second, l < 0);
  }
  return {Word::reduce(e.first_alphabet(), first), Word::reduce(e.second_alphabet(), second)};
}

bool is_fixed(const ProductEndo& e, const ProductElement& g) {
  return apply_endo(e, g) == g;
}

std::string to_string(EndoTag tag) {
  switch (tag) {
    case EndoTag::I: return "I";
    case EndoTag::II: return "II";
    case EndoTag::III_1: return "III.1";
    case EndoTag::III_2: return "III.2";
    case EndoTag::IV: return "IV";
    case EndoTag::V: return "V";
    case EndoTag::VI: return "VI";
    case EndoTag::VII: return "VII";
  }
  return "?";
}

EndoType::EndoType(EndoPayload payload) : payload_(std::move(payload)) {
  struct Checker {
    EndoTag operator()(const TypeI& t) const {
      const int n = t.u.alphabet().rank;
      const int m = t.v.alphabet().rank;
      require_alphabet(t.u, a_alphabet(n), "u");
      require_alphabet(t.v, b_alphabet(m), "v");
      require_oriented_root(t.u, "u");
      require_oriented_root(t.v, "v");
      require_weights(t.p, n, "P");
      require_weights(t.q, n, "Q");
      require_weights(t.r, m, "R");
      require_weights(t.s, m, "S");
      return EndoTag::I;
    }
    EndoTag operator()(const TypeII& t) const {
      const int n = t.theta.target().rank;
      const int m = t.theta.source().rank;
      require_hom(t.theta, b_alphabet(m), a_alphabet(n), "theta");
      require(!t.theta.is_trivial(), "theta must be nontrivial");
      require_alphabet(t.v, b_alphabet(m), "v");
      require_oriented_root(t.v, "v");
      require_weights(t.q, n, "Q");
      require_weights(t.s, m, "S");
      return EndoTag::II;
    }
    EndoTag operator()(const TypeIII& t) const {
      const int n = t.u.alphabet().rank;
      const int m = t.theta.source().rank;
      require_alphabet(t.u, a_alphabet(n), "u");
      require_oriented_root(t.u, "u");
      require_hom(t.theta, b_alphabet(m), b_alphabet(m), "theta");
      require(!t.theta.is_trivial(), "theta must be nontrivial");
      require_weights(t.p, n, "P");
      require_weights(t.r, m, "R");
      return weighted_sum(t.u, t.p) != 1 ? EndoTag::III_1 : EndoTag::III_2;
    }
    EndoTag operator()(const TypeIV& t) const {
      const int n = t.theta.target().rank;
      const int m = t.theta.source().rank;
      require_hom(t.theta, b_alphabet(m), a_alphabet(n), "theta");
      require_hom(t.sigma, b_alphabet(m), b_alphabet(m), "sigma");
      require(!t.theta.is_trivial(), "theta must be nontrivial");
      require(!t.sigma.is_trivial(), "sigma must be nontrivial");
      return EndoTag::IV;
    }
    EndoTag operator()(const TypeV& t) const {
      const int n = static_cast<int>(t.q.size());
      const int m = t.v.alphabet().rank;
      require_alphabet(t.v, b_alphabet(m), "v");
      require_oriented_root(t.v, "v");
      require_weights(t.q, n, "Q");
      require_weights(t.s, m, "S");
      return EndoTag::V;
    }
    EndoTag operator()(const TypeVI& t) const {
      const int n = t.phi.source().rank;
      const int m = t.psi.source().rank;
      require_hom(t.phi, a_alphabet(n), a_alphabet(n), "phi");
      require_hom(t.psi, b_alphabet(m), b_alphabet(m), "psi");
      return EndoTag::VI;
    }
    EndoTag operator()(const TypeVII& t) const {
      const int n = t.phi.source().rank;
      const int m = t.psi.source().rank;
      require_hom(t.phi, a_alphabet(n), b_alphabet(m), "phi");
      require_hom(t.psi, b_alphabet(m), a_alphabet(n), "psi");
      return EndoTag::VII;
    }
  };
  tag_ = std::visit(Checker{}, payload_);
}

EndoType classify(const ProductEndo& e) {
  const int n = e.n();
  const int m = e.m();
  const Alphabet an = a_alphabet(n);
  const Alphabet bm = b_alphabet(m);
  std::vector<Word> alpha, beta, gamma, delta;  // a_i -> (alpha, beta), b_j -> (gamma, delta)
  for (const auto& g : e.a_images()) {
    alpha.push_back(g.first);
    beta.push_back(g.second);
  }
  for (const auto& g : e.b_images()) {
    gamma.push_back(g.first);
    delta.push_back(g.second);
  }
  const bool alpha0 = all_trivial(alpha), beta0 = all_trivial(beta);
  const bool gamma0 = all_trivial(gamma), delta0 = all_trivial(delta);

  if (beta0 && gamma0) return EndoType(TypeVI{FreeHom(an, an, alpha), FreeHom(bm, bm, delta)});
  if (alpha0 && delta0) return EndoType(TypeVII{FreeHom(an, bm, beta), FreeHom(bm, an, gamma)});
  if (alpha0 && beta0) return EndoType(TypeIV{FreeHom(bm, an, gamma), FreeHom(bm, bm, delta)});

  // Remaining shapes: a component is either a power map w^(x^P + y^R) (both
  // generator families nontrivial), or depends on one factor only.
  auto powers = [](const std::vector<Word>& from_a, const std::vector<Word>& from_b,
                   Alphabet alphabet) -> std::optional<CommonPower> {
    std::vector<Word> all = from_a;
    all.insert(all.end(), from_b.begin(), from_b.end());
    return common_power(all, alphabet);
  };
  const bool first_is_power = !alpha0 && !gamma0;
  const bool second_is_power = !beta0 && !delta0;
  std::optional<CommonPower> first, second;
  if (first_is_power) first = powers(alpha, gamma, an);
  if (second_is_power) second = powers(beta, delta, bm);
  if ((first_is_power && !first) || (second_is_power && !second)) {
    throw UnclassifiableEndo(
        "image components that commute across the factors do not share a "
        "common root; the table is not a valid endomorphism");
  }
  auto split = [](const CommonPower& c, int n) {
    std::span<const std::int64_t> all(c.exponents);
    return std::pair{weights_of(all.subspan(0, n)), weights_of(all.subspan(n))};
  };

  if (first_is_power && second_is_power) {
    auto [p, r] = split(*first, n);
    auto [q, s] = split(*second, n);
    return EndoType(TypeI{first->base, second->base, p, q, r, s});
  }
  if (alpha0 && second_is_power) {
    auto [q, s] = split(*second, n);
    if (gamma0) return EndoType(TypeV{second->base, q, s});
    return EndoType(TypeII{FreeHom(bm, an, gamma), second->base, q, s});
  }
  if (first_is_power && beta0 && !delta0) {
    auto [p, r] = split(*first, n);
    return EndoType(TypeIII{first->base, FreeHom(bm, bm, delta), p, r});
  }

  std::string first_shape = alpha0 && gamma0 ? "1"
                            : first_is_power ? "u^(x^P+y^R)"
                            : gamma0         ? "x phi"
                                             : "y theta";
  std::string second_shape = beta0 && delta0 ? "1"
                             : second_is_power ? "v^(x^Q+y^S)"
                             : delta0          ? "x phi'"
                                               : "y psi";
  throw UnclassifiableEndo("valid endomorphism of shape (x, y) -> (" + first_shape +
                           ", " + second_shape +
                           ") matches none of the types I-VII under their side "
                           "conditions");
}

ProductEndo rebuild(const EndoType& t) {
  struct Builder {
    ProductEndo operator()(const TypeI& p) const {
      const int n = p.u.alphabet().rank, m = p.v.alphabet().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({power(p.u, to_exponent(p.p[i])), power(p.v, to_exponent(p.q[i]))});
      for (int j = 0; j < m; ++j) bs.push_back({power(p.u, to_exponent(p.r[j])), power(p.v, to_exponent(p.s[j]))});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeII& p) const {
      const int n = p.theta.target().rank, m = p.theta.source().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({Word(a_alphabet(n)), power(p.v, to_exponent(p.q[i]))});
      for (int j = 0; j < m; ++j) bs.push_back({p.theta.image(j + 1), power(p.v, to_exponent(p.s[j]))});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeIII& p) const {
      const int n = p.u.alphabet().rank, m = p.theta.source().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({power(p.u, to_exponent(p.p[i])), Word(b_alphabet(m))});
      for (int j = 0; j < m; ++j) bs.push_back({power(p.u, to_exponent(p.r[j])), p.theta.image(j + 1)});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeIV& p) const {
      const int n = p.theta.target().rank, m = p.theta.source().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({Word(a_alphabet(n)), Word(b_alphabet(m))});
      for (int j = 0; j < m; ++j) bs.push_back({p.theta.image(j + 1), p.sigma.image(j + 1)});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeV& p) const {
      const int n = static_cast<int>(p.q.size()), m = p.v.alphabet().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({Word(a_alphabet(n)), power(p.v, to_exponent(p.q[i]))});
      for (int j = 0; j < m; ++j) bs.push_back({Word(a_alphabet(n)), power(p.v, to_exponent(p.s[j]))});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeVI& p) const {
      const int n = p.phi.source().rank, m = p.psi.source().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({p.phi.image(i + 1), Word(b_alphabet(m))});
      for (int j = 0; j < m; ++j) bs.push_back({Word(a_alphabet(n)), p.psi.image(j + 1)});
      return ProductEndo(n, m, as, bs);
    }
    ProductEndo operator()(const TypeVII& p) const {
      const int n = p.phi.source().rank, m = p.psi.source().rank;
      std::vector<ProductElement> as, bs;
      for (int i = 0; i < n; ++i) as.push_back({Word(a_alphabet(n)), p.phi.image(i + 1)});
      for (int j = 0; j < m; ++j) bs.push_back({p.psi.image(j + 1), Word(b_alphabet(m))});
      return ProductEndo(n, m, as, bs);
    }
  };
  return std::visit(Builder{}, t.payload());
}

std::string describe(const EndoType& t) {
  std::ostringstream os;
  os << "type " << to_string(t.tag()) << '\n';
  struct Printer {
    std::ostringstream& os;
    void operator()(const TypeI& p) const {
      os << "u = " << p.u << "\nv = " << p.v << "\nP = " << p.p.to_string()
         << "\nQ = " << p.q.to_string() << "\nR = " << p.r.to_string()
         << "\nS = " << p.s.to_string() << '\n';
    }
    void operator()(const TypeII& p) const {
      os << hom_line("theta", p.theta) << "\nv = " << p.v << "\nQ = " << p.q.to_string()
         << "\nS = " << p.s.to_string() << '\n';
    }
    void operator()(const TypeIII& p) const {
      os << "u = " << p.u << '\n' << hom_line("theta", p.theta) << "\nP = " << p.p.to_string()
         << "\nR = " << p.r.to_string() << "\nu^P = " << weighted_sum(p.u, p.p) << '\n';
    }
    void operator()(const TypeIV& p) const {
      os << hom_line("theta", p.theta) << '\n' << hom_line("sigma", p.sigma) << '\n';
    }
    void operator()(const TypeV& p) const {
      os << "v = " << p.v << "\nQ = " << p.q.to_string() << "\nS = " << p.s.to_string() << '\n';
    }
    void operator()(const TypeVI& p) const {
      os << hom_line("phi", p.phi) << '\n' << hom_line("psi", p.psi) << '\n';
    }
    void operator()(const TypeVII& p) const {
      os << hom_line("phi", p.phi) << '\n' << hom_line("psi", p.psi) << '\n';
    }
  };
  std::visit(Printer{os}, t.payload());
  return os.str();
}

Matrix2 matrix_M(const EndoType& t) {
  if (t.tag() != EndoTag::I) {
    throw std::invalid_argument("matrix_M needs a type I endomorphism, got " +
                                to_string(t.tag()));
  }
  const auto& p = t.as<TypeI>();
  return Matrix2{{{weighted_sum(p.u, p.p) - 1, weighted_sum(p.v, p.r)},
                  {weighted_sum(p.u, p.q), weighted_sum(p.v, p.s) - 1}}};
}

ProductEndo parse_endo(std::string_view content) {
  const auto lines = text::significant_lines(content);
  if (lines.empty()) throw ParseError("empty endomorphism file");
  const auto& head = lines.front();
  const auto header = text::tokens(head.content);
  auto rank = [&](std::string_view tok) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v < 2) {
      throw ParseError("expected rank >= 2, found '" + std::string(tok) + "'",
                       head.number, head.offset + 1);
    }
    return v;
  };
  if (header.size() != 3 || header[0] != "endo") {
    throw ParseError("expected header 'endo <n> <m>'", head.number, head.offset + 1);
  }
  const int n = rank(header[1]);
  const int m = rank(header[2]);
  const Alphabet an = a_alphabet(n), bm = b_alphabet(m);

  std::vector<std::optional<ProductElement>> as(n), bs(m);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    const std::string_view s = line.content;
    const auto arrow = s.find("->");
    const auto open = s.find('(');
    const auto comma = s.find(',');
    const auto close = s.rfind(')');
    if (arrow == std::string_view::npos || open == std::string_view::npos ||
        comma == std::string_view::npos || close == std::string_view::npos ||
        !(arrow < open && open < comma && comma < close) ||
        !text::trim(s.substr(arrow + 2, open - arrow - 2)).empty() ||
        !text::trim(s.substr(close + 1)).empty()) {
      throw ParseError("expected '<generator> -> ( <word> , <word> )'", line.number,
                       line.offset + 1);
    }
    int gen_offset = line.offset;
    const std::string_view gen = text::trim(s.substr(0, arrow), &gen_offset);
    if (gen.empty() || (gen[0] != 'a' && gen[0] != 'b')) {
      throw ParseError("expected a generator a<i> or b<j>, found '" + std::string(gen) + "'",
                       line.number, gen_offset + 1);
    }
    const Alphabet own = gen[0] == 'a' ? an : bm;
    const Word g = parse_word(gen, own, line.number, gen_offset);
    if (g.length() != 1 || g.letters()[0] < 0) {
      throw ParseError("left side must be a single generator, found '" + std::string(gen) + "'",
                       line.number, gen_offset + 1);
    }
    const int idx = g.letters()[0];
    auto& slot = gen[0] == 'a' ? as[idx - 1] : bs[idx - 1];
    if (slot) {
      throw ParseError("generator " + std::string(gen) + " listed twice", line.number,
                       gen_offset + 1);
    }
    const int base = line.offset;
    slot = ProductElement{
        parse_word(s.substr(open + 1, comma - open - 1), an, line.number,
                   base + static_cast<int>(open) + 1),
        parse_word(s.substr(comma + 1, close - comma - 1), bm, line.number,
                   base + static_cast<int>(comma) + 1)};
  }
  std::vector<ProductElement> a_out, b_out;
  for (int i = 0; i < n; ++i) {
    if (!as[i]) throw ParseError("generator a" + std::to_string(i + 1) + " has no image");
    a_out.push_back(*as[i]);
  }
  for (int j = 0; j < m; ++j) {
    if (!bs[j]) throw ParseError("generator b" + std::to_string(j + 1) + " has no image");
    b_out.push_back(*bs[j]);
  }
  return ProductEndo(n, m, std::move(a_out), std::move(b_out));
}

std::string render_endo(const ProductEndo& e) {
  std::ostringstream os;
  os << "endo " << e.n() << ' ' << e.m() << '\n';
  for (int i = 1; i <= e.n(); ++i) {
    os << 'a' << i << " -> ( " << e.a_image(i).first << " , " << e.a_image(i).second << " )\n";
  }
  for (int j = 1; j <= e.m(); ++j) {
    os << 'b' << j << " -> ( " << e.b_image(j).first << " , " << e.b_image(j).second << " )\n";
  }
  return os.str();
}

}  // namespace fixfnm
