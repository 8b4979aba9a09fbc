#pragma once

#include <array>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fixfnm/homs.hpp"
#include "fixfnm/lattice.hpp"
#include "fixfnm/words.hpp"

namespace fixfnm {

/// (x, y) in F_n x F_m; x over the a-alphabet, y over the b-alphabet.
struct ProductElement {
  Word first;
  Word second;

  bool is_identity() const { return first.is_identity() && second.is_identity(); }
  std::size_t length() const { return first.length() + second.length(); }
  friend bool operator==(const ProductElement&, const ProductElement&) = default;
  friend auto operator<=>(const ProductElement& l, const ProductElement& r) {
    if (auto c = l.first <=> r.first; c != 0) return c;
    return l.second <=> r.second;
  }
};

std::string to_string(const ProductElement& g);
ProductElement multiply(const ProductElement& g, const ProductElement& h);
ProductElement invert(const ProductElement& g);

inline Alphabet a_alphabet(int n) { return Alphabet{n, 'a'}; }
inline Alphabet b_alphabet(int m) { return Alphabet{m, 'b'}; }

/// Endomorphism of F_n x F_m (n, m >= 2) given by generator images. The
/// constructor enforces [a_i phi, b_j phi] = 1 componentwise.
class ProductEndo {
 public:
  ProductEndo(int n, int m, std::vector<ProductElement> a_images,
              std::vector<ProductElement> b_images);

  static ProductEndo identity(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  Alphabet first_alphabet() const { return a_alphabet(n_); }
  Alphabet second_alphabet() const { return b_alphabet(m_); }
  const ProductElement& a_image(int i) const { return a_images_.at(i - 1); }
  const ProductElement& b_image(int j) const { return b_images_.at(j - 1); }
  const std::vector<ProductElement>& a_images() const { return a_images_; }
  const std::vector<ProductElement>& b_images() const { return b_images_; }

  friend bool operator==(const ProductEndo&, const ProductEndo&) = default;

 private:
  int n_;
  int m_;
  std::vector<ProductElement> a_images_;
  std::vector<ProductElement> b_images_;
};

/// Same as the constructor; named for symmetry with the file parser.
ProductEndo validate(int n, int m, std::vector<ProductElement> a_images,
                     std::vector<ProductElement> b_images);

ProductElement apply_endo(const ProductEndo& e, const ProductElement& g);
bool is_fixed(const ProductEndo& e, const ProductElement& g);

enum class EndoTag { I, II, III_1, III_2, IV, V, VI, VII };
std::string to_string(EndoTag tag);

// Payloads. In the formulas x ranges over F_n, y over F_m; x^P denotes
// weighted_sum(x, P).

/// (x, y) -> (u^(x^P + y^R), v^(x^Q + y^S)).
struct TypeI {
  Word u, v;
  ExponentWeights p, q, r, s;
  friend bool operator==(const TypeI&, const TypeI&) = default;
};
/// (x, y) -> (y theta, v^(x^Q + y^S)), theta: F_m -> F_n.
struct TypeII {
  FreeHom theta;
  Word v;
  ExponentWeights q, s;
  friend bool operator==(const TypeII&, const TypeII&) = default;
};
/// (x, y) -> (u^(x^P + y^R), y theta), theta in End(F_m).
struct TypeIII {
  Word u;
  FreeHom theta;
  ExponentWeights p, r;
  friend bool operator==(const TypeIII&, const TypeIII&) = default;
};
/// (x, y) -> (y theta, y sigma).
struct TypeIV {
  FreeHom theta, sigma;
  friend bool operator==(const TypeIV&, const TypeIV&) = default;
};
/// (x, y) -> (1, v^(x^Q + y^S)).
struct TypeV {
  Word v;
  ExponentWeights q, s;
  friend bool operator==(const TypeV&, const TypeV&) = default;
};
/// (x, y) -> (x phi, y psi).
struct TypeVI {
  FreeHom phi, psi;
  friend bool operator==(const TypeVI&, const TypeVI&) = default;
};
/// (x, y) -> (y psi, x phi), phi: F_n -> F_m, psi: F_m -> F_n.
struct TypeVII {
  FreeHom phi, psi;
  friend bool operator==(const TypeVII&, const TypeVII&) = default;
};

using EndoPayload =
    std::variant<TypeI, TypeII, TypeIII, TypeIV, TypeV, TypeVI, TypeVII>;

/// A classified endomorphism. Power bases (u, v) are stored as oriented roots
/// (see oriented_root), which makes the payload of a given map unique.
class EndoType {
 public:
  /// Checks the side conditions of the tag; III_1 vs III_2 is derived.
  explicit EndoType(EndoPayload payload);

  EndoTag tag() const { return tag_; }
  const EndoPayload& payload() const { return payload_; }
  template <class T>
  const T& as() const {
    return std::get<T>(payload_);
  }

  friend bool operator==(const EndoType&, const EndoType&) = default;

 private:
  EndoTag tag_;
  EndoPayload payload_;
};

EndoType classify(const ProductEndo& e);
ProductEndo rebuild(const EndoType& t);

/// Human-readable payload dump (deterministic).
std::string describe(const EndoType& t);

using Matrix2 = std::array<std::array<Integer, 2>, 2>;

/// [[-1 + u^P, v^R], [u^Q, -1 + v^S]] for a type I payload.
Matrix2 matrix_M(const EndoType& t);

/// Endomorphism file: header `endo <n> <m>` then one line per generator,
/// `a<i> -> ( <word over a> , <word over b> )` and likewise for b<j>.
ProductEndo parse_endo(std::string_view text);
std::string render_endo(const ProductEndo& e);

}  // namespace fixfnm
