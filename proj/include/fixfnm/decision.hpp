#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixfnm/fixpoints.hpp"
#include "fixfnm/product.hpp"
#include "fixfnm/stallings.hpp"

namespace fixfnm {

/// Outcome of decide. A nontrivial verdict always carries a witness that was
/// checked to be a nontrivial common fixed point when the verdict was made.
class Verdict {
 public:
  static Verdict trivial(std::vector<std::string> trace);
  /// Throws std::logic_error if `witness` is 1 or not fixed by both maps.
  static Verdict nontrivial(const ProductEndo& phi, const ProductEndo& psi,
                            ProductElement witness, std::vector<std::string> trace);

  bool is_trivial() const { return !witness_; }
  const std::optional<ProductElement>& witness() const { return witness_; }
  const std::vector<std::string>& trace() const { return trace_; }

 private:
  Verdict() = default;
  std::optional<ProductElement> witness_;
  std::vector<std::string> trace_;
};

/// Whether Fix(phi) and Fix(psi) meet nontrivially, for phi of type VI or
/// VII. Throws UnsupportedShape for other phi, MissingOracle when a needed
/// fixed subgroup is unavailable.
Verdict decide(const ProductEndo& phi, const ProductEndo& psi,
               const FixOracle& oracle = FixOracle());

/// <x1, ..., xk | r1, ...>; text form `x1 x2 | x1^2, x1 x2 x1^-1 x2^-1`.
struct Presentation {
  Alphabet generators;
  std::vector<Word> relators;
};
Presentation parse_presentation(std::string_view text);
std::string render_presentation(const Presentation& p);

/// Type VI map (x, y) -> (x phi, z y z^-1) on F_X x F_X with phi a cyclic
/// shift of the basis, together with the generators of the subgroup
/// {(u, v) : u = v in the presented group}. Fix(phi) = (1, z).
struct MihailovaInstance {
  ProductEndo phi;
  std::vector<ProductElement> h_gens;
  Word z;                       // over the presentation's alphabet
  ProductElement fix_generator;  // (1, z) in F_X x F_X
};
MihailovaInstance build_mihailova_instance(const Presentation& p, const Word& w);

/// Fix(Phi) cap Fix(Psi) for two type IV maps (yphi, ypsi) and (ytheta, ysigma)
/// is {(y theta, y) : y in k, y phi_k = y theta_k}, with phi_k, theta_k the
/// restrictions to k = Fix(psi) cap Fix(sigma), written on `basis`.
struct EqualizerProblem {
  SubgroupGraph k;
  std::vector<Word> basis;
  FreeHom phi_k;    // from Alphabet{basis.size(), 'x'}
  FreeHom theta_k;
};
EqualizerProblem reduce_typeIV_to_equalizer(const ProductEndo& phi, const ProductEndo& psi,
                                            const FixOracle& oracle = FixOracle());

/// For phi, psi: F_m -> F_n, the type IV maps (x, y) -> (y phi, y) and
/// (x, y) -> (y psi, y); their common fixed points are (y phi, y) for y in
/// Eq(phi, psi).
std::pair<ProductEndo, ProductEndo> embed_equalizer_as_typeIV(const FreeHom& phi,
                                                              const FreeHom& psi);

}  // namespace fixfnm
