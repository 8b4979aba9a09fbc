#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fixfnm/homs.hpp"
#include "fixfnm/lattice.hpp"
#include "fixfnm/product.hpp"
#include "fixfnm/stallings.hpp"

namespace fixfnm {

/// Free-group endomorphisms whose fixed subgroup we can write down.
class SupportedEndo {
 public:
  struct Identity {};
  /// The map sending everything to 1.
  struct Zero {};
  /// x -> z x z^-1.
  struct Inner {
    Word z;
  };
  /// Generator i -> images[i-1], a signed letter; |images| is a permutation.
  struct BasisPermutation {
    std::vector<Letter> images;
  };
  /// Any endomorphism with a caller-supplied basis of its fixed subgroup.
  struct Declared {
    std::vector<Word> fix_basis;
  };
  using Kind = std::variant<Identity, Zero, Inner, BasisPermutation, Declared>;

  static SupportedEndo identity(Alphabet alphabet);
  static SupportedEndo zero(Alphabet alphabet);
  static SupportedEndo inner(const Word& z);
  static SupportedEndo permutation(Alphabet alphabet, std::vector<Letter> images);
  /// Checks every basis element is fixed (DeclaredFixError otherwise). With an
  /// audit radius, also scans that ball for fixed words outside the span.
  static SupportedEndo declared(FreeHom h, std::vector<Word> fix_basis,
                                std::optional<int> audit_radius = 5);

  const FreeHom& hom() const { return hom_; }
  const Kind& kind() const { return kind_; }
  std::string describe() const;

 private:
  SupportedEndo(FreeHom hom, Kind kind) : hom_(std::move(hom)), kind_(std::move(kind)) {}
  FreeHom hom_;
  Kind kind_;
};

SubgroupGraph fix_free(const SupportedEndo& e);

/// Recognizes supported maps from their images and holds declarations.
class FixOracle {
 public:
  void declare(SupportedEndo declared);
  void declare(FreeHom h, std::vector<Word> fix_basis, std::optional<int> audit_radius = 5);

  /// Identity, zero, signed basis permutations and inner automorphisms are
  /// recognized structurally; anything else must have been declared.
  std::optional<SupportedEndo> recognize(const FreeHom& h) const;

  /// Fix(h); MissingOracle(role) when h is neither recognized nor declared.
  SubgroupGraph fix(const FreeHom& h, std::string_view role) const;

 private:
  std::vector<SupportedEndo> declared_;
};

enum class GraphSide {
  first_from_second,  // {(y h, y) : y in domain}
  second_from_first,  // {(x, x h) : x in domain}
};

struct TrivialFix {};
/// Fix(phi) x Fix(psi).
struct FactorSubgroups {
  SubgroupGraph first, second;
};
/// {(u^a, v^b) : (a, b) in lattice}; u or v may be 1.
struct PairedPowers {
  Word u, v;
  IntLattice2 lattice;
};
struct GraphOfHom {
  SubgroupGraph domain;
  FreeHom h;
  GraphSide side;
};
/// {(u^a, y) : a in Z, y in fix_theta, y^R = 0}.
struct CylinderOverKernel {
  Word u;
  ExponentWeights r;
  SubgroupGraph fix_theta;
};
/// {(u^(y^R / (1 - u^P)), y) : y in h}, h = Fix(theta) cap {y : (1 - u^P) | y^R}.
struct GraphOverDivisibility {
  Word u;
  Integer u_p;
  ExponentWeights r;
  SubgroupGraph h;
};

using FixDescriptor = std::variant<TrivialFix, FactorSubgroups, PairedPowers, GraphOfHom,
                                   CylinderOverKernel, GraphOverDivisibility>;

bool contains(const FixDescriptor& d, const ProductElement& g);
bool is_trivial(const FixDescriptor& d);
/// A nontrivial element, when there is one.
std::optional<ProductElement> sample_witness(const FixDescriptor& d);
std::string render(const FixDescriptor& d);

FixDescriptor fix_product(const EndoType& t, const FixOracle& oracle);
FixDescriptor fix_product(const ProductEndo& e, const FixOracle& oracle);

}  // namespace fixfnm
