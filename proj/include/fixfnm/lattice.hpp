#pragma once

#include <array>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace fixfnm {

using Integer = boost::multiprecision::cpp_int;
using Vec2 = std::array<Integer, 2>;
using IntMatrix = std::vector<std::vector<Integer>>;

/// Basis of {x in Z^cols : M x = 0}, computed by unimodular column reduction.
/// Each returned vector has length `cols`.
std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m,
                                                 std::size_t cols);

/// A subgroup of Z^2, kept in Hermite normal form:
///   rank 2: (g, b), (0, h) with g, h > 0 and 0 <= b < h
///   rank 1: a single vector whose first nonzero entry is positive
///   rank 0: empty basis
class IntLattice2 {
 public:
  IntLattice2() = default;

  static IntLattice2 from_generators(std::span<const Vec2> gens);
  static IntLattice2 whole();
  static IntLattice2 zero() { return {}; }

  const std::vector<Vec2>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  bool is_trivial() const { return basis_.empty(); }
  bool contains(const Vec2& v) const;

  /// Coordinates with the first entry equal to `a` form a coset of the
  /// second projection; true iff some lattice vector has first entry `a`.
  bool has_first(const Integer& a) const;
  bool has_second(const Integer& b) const;

  IntLattice2 swapped() const;

  std::string to_string() const;

  friend bool operator==(const IntLattice2&, const IntLattice2&) = default;

 private:
  std::vector<Vec2> basis_;
};

std::ostream& operator<<(std::ostream& os, const IntLattice2& lattice);

IntLattice2 lattice_intersect(const IntLattice2& lhs, const IntLattice2& rhs);

/// Integer kernel of a 2x2 matrix.
IntLattice2 int_kernel(const std::array<std::array<Integer, 2>, 2>& m);

}  // namespace fixfnm
