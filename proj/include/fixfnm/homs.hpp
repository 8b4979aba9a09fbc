#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fixfnm/words.hpp"

namespace fixfnm {

/// Homomorphism F(source) -> F(target) given by the images of the source
/// generators. Maps act on the right in the usual notation (x phi), so
/// compose(g, h) means "g, then h".
class FreeHom {
 public:
  FreeHom() = default;
  FreeHom(Alphabet source, Alphabet target, std::vector<Word> images);

  static FreeHom identity(Alphabet alphabet);
  static FreeHom trivial(Alphabet source, Alphabet target);
  /// x -> z x z^-1.
  static FreeHom inner(const Word& z);
  /// Generator i goes to the i-th generator of `target` (ranks must agree).
  static FreeHom relabel(Alphabet source, Alphabet target);

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }
  const std::vector<Word>& images() const { return images_; }
  const Word& image(int index) const { return images_.at(index - 1); }

  bool is_endomorphism() const { return source_ == target_; }
  bool is_trivial() const;

  friend bool operator==(const FreeHom&, const FreeHom&) = default;

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Word> images_;
};

Word apply(const FreeHom& h, const Word& w);

/// apply(compose(g, h), w) == apply(h, apply(g, w)).
FreeHom compose(const FreeHom& g, const FreeHom& h);

bool is_fixed(const FreeHom& h, const Word& w);

/// Hom file: header `hom <src-rank> <tgt-rank> <src-letter> <tgt-letter>`
/// followed by one `<gen> -> <word>` line per source generator.
FreeHom parse_hom(std::string_view text);
std::string render_hom(const FreeHom& h);

}  // namespace fixfnm
