#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fixfnm/lattice.hpp"

namespace fixfnm {

/// A free basis {symbol1, ..., symbol<rank>}. The symbol is 'a' for the first
/// factor of F_n x F_m, 'b' for the second; other letters name auxiliary
/// groups (presentations, subgroup bases).
struct Alphabet {
  int rank = 0;
  char symbol = 'a';

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

std::string to_string(const Alphabet& alphabet);

/// A signed generator: +i is the i-th generator, -i its inverse.
using Letter = int;

/// Freely reduced word over an alphabet. Every constructor reduces, so
/// structural equality is group equality.
class Word {
 public:
  Word() = default;
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}

  /// Free reduction of an arbitrary letter sequence.
  static Word reduce(Alphabet alphabet, std::span<const Letter> raw);
  static Word generator(Alphabet alphabet, int index, int sign = 1);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  /// Same letters read over another alphabet of at least the needed rank.
  Word relabeled(Alphabet alphabet) const;

  /// Letter order used for deterministic output: s1 < s1^-1 < s2 < ...
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs);
  friend bool operator==(const Word& lhs, const Word& rhs) {
    return lhs.alphabet_ == rhs.alphabet_ && lhs.letters_ == rhs.letters_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

Word multiply(const Word& u, const Word& v);
Word invert(const Word& u);
Word power(const Word& u, std::int64_t k);
inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word core;
  Word conjugator;
};
CyclicDecomposition cyclic_reduce(const Word& w);

/// w = z^k with z not a proper power; root(1) = (1, 0).
struct Root {
  Word z;
  std::int64_t k = 0;
};
Root root(const Word& w);

/// Like root, but z is the smaller of {z, z^-1} in the word order and k
/// carries the sign, so two words sharing a cyclic subgroup get the same z.
Root oriented_root(const Word& w);

/// a with x = u^a, if any. For u = 1 only x = 1 qualifies (returns 0).
std::optional<std::int64_t> power_exponent(const Word& x, const Word& u);

bool commute(const Word& u, const Word& v);

/// Integer weights attached to the generators of one alphabet.
class ExponentWeights {
 public:
  ExponentWeights() = default;
  explicit ExponentWeights(std::vector<Integer> weights)
      : weights_(std::move(weights)) {}
  static ExponentWeights zeros(int rank) {
    return ExponentWeights(std::vector<Integer>(rank, 0));
  }

  std::size_t size() const { return weights_.size(); }
  const Integer& operator[](std::size_t i) const { return weights_[i]; }
  Integer& operator[](std::size_t i) { return weights_[i]; }
  const std::vector<Integer>& values() const { return weights_; }
  bool is_zero() const;

  std::string to_string() const;
  friend bool operator==(const ExponentWeights&,
                         const ExponentWeights&) = default;

 private:
  std::vector<Integer> weights_;
};

/// Signed occurrence count of each generator.
std::vector<std::int64_t> exponent_sums(const Word& w);

/// sum_i (exponent sum of generator i in w) * weights[i].
Integer weighted_sum(const Word& w, const ExponentWeights& weights);

/// {(m, k) in Z^2 : v^m = w^k}.
IntLattice2 solve_power_equation(const Word& v, const Word& w);

/// Word syntax: whitespace separated `<symbol><index>[^<integer>]` tokens,
/// or `1` for the identity.
Word parse_word(std::string_view text, Alphabet alphabet, int line = 0,
                int column_offset = 0);
std::string to_string(const Word& w);
std::ostream& operator<<(std::ostream& os, const Word& w);

}  // namespace fixfnm
