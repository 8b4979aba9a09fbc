#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fixfnm/homs.hpp"
#include "fixfnm/product.hpp"
#include "fixfnm/words.hpp"

namespace fixfnm {

inline constexpr int kRadiusCap = 8;

/// Ball radius. For product elements the radius bounds |x| + |y|.
struct BallSpec {
  int radius = 0;
  int cap = kRadiusCap;
};

/// Throws RadiusOverCap (or std::invalid_argument for negative radii).
void check_radius(const BallSpec& spec);

/// 1 + sum_{k=1..radius} 2r(2r-1)^(k-1).
std::uint64_t ball_size(int rank, int radius);

/// Reduced words of length <= radius in shortlex order.
std::vector<Word> enumerate_ball(Alphabet alphabet, BallSpec spec);
void for_each_in_ball(Alphabet alphabet, BallSpec spec,
                      const std::function<void(const Word&)>& visit);

/// Ordered by total length, then by first-component length, then shortlex.
std::vector<ProductElement> product_ball(int n, int m, BallSpec spec);

/// Nontrivial ball elements fixed by both. `threads` > 1 splits the scan;
/// the result does not depend on it.
std::vector<ProductElement> common_fixed_points(const ProductEndo& phi,
                                                const ProductEndo& psi,
                                                BallSpec spec,
                                                unsigned threads = 1);

/// Nontrivial ball elements x with apply(phi, x) == apply(psi, x).
std::vector<Word> bounded_equalizer(const FreeHom& phi, const FreeHom& psi,
                                    BallSpec spec);

}  // namespace fixfnm
