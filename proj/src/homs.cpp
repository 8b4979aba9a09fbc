#include "fixfnm/homs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "fixfnm/error.hpp"
#include "fixfnm/text.hpp"

namespace fixfnm {

FreeHom::FreeHom(Alphabet source, Alphabet target, std::vector<Word> images)
    : source_(source), target_(target), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.rank) {
    throw AlphabetMismatch("homomorphism from " + to_string(source_) +
                           " needs " + std::to_string(source_.rank) +
                           " images, got " + std::to_string(images_.size()));
  }
  for (const auto& w : images_) {
    if (w.alphabet() != target_) {
      throw AlphabetMismatch("image over " + to_string(w.alphabet()) +
                             ", expected " + to_string(target_));
    }
  }
}

FreeHom FreeHom::identity(Alphabet alphabet) {
  std::vector<Word> images;
  for (int i = 1; i <= alphabet.rank; ++i) {
    images.push_back(Word::generator(alphabet, i));
  }
  return FreeHom(alphabet, alphabet, std::move(images));
}

FreeHom FreeHom::trivial(Alphabet source, Alphabet target) {
  return FreeHom(source, target, std::vector<Word>(source.rank, Word(target)));
}

FreeHom FreeHom::inner(const Word& z) {
  const Alphabet alphabet = z.alphabet();
  const Word z_inv = invert(z);
  std::vector<Word> images;
  for (int i = 1; i <= alphabet.rank; ++i) {
    images.push_back(z * Word::generator(alphabet, i) * z_inv);
  }
  return FreeHom(alphabet, alphabet, std::move(images));
}

FreeHom FreeHom::relabel(Alphabet source, Alphabet target) {
  if (source.rank != target.rank) {
    throw AlphabetMismatch("relabel between " + to_string(source) + " and " +
                           to_string(target));
  }
  std::vector<Word> images;
  for (int i = 1; i <= source.rank; ++i) {
    images.push_back(Word::generator(target, i));
  }
  return FreeHom(source, target, std::move(images));
}

bool FreeHom::is_trivial() const {
  return std::all_of(images_.begin(), images_.end(),
                     [](const Word& w) { return w.is_identity(); });
}

Word apply(const FreeHom& h, const Word& w) {
  if (w.alphabet() != h.source()) {
    throw AlphabetMismatch("applying a map on " + to_string(h.source()) +
                           " to a word over " + to_string(w.alphabet()));
  }
  std::vector<Letter> raw;
  for (Letter l : w.letters()) {
    const Word& img = h.image(std::abs(l));
    if (l > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        raw.push_back(-*it);
      }
    }
  }
  return Word::reduce(h.target(), raw);
}

FreeHom compose(const FreeHom& g, const FreeHom& h) {
  if (g.target() != h.source()) {
    throw AlphabetMismatch("cannot compose a map into " + to_string(g.target()) +
                           " with a map from " + to_string(h.source()));
  }
  std::vector<Word> images;
  images.reserve(g.images().size());
  for (const auto& w : g.images()) images.push_back(apply(h, w));
  return FreeHom(g.source(), h.target(), std::move(images));
}

bool is_fixed(const FreeHom& h, const Word& w) {
  if (!h.is_endomorphism()) {
    throw AlphabetMismatch("fixed points need an endomorphism, got " +
                           to_string(h.source()) + " -> " +
                           to_string(h.target()));
  }
  return apply(h, w) == w;
}

namespace {

int parse_positive(std::string_view token, int line, int column,
                   const char* what) {
  int value = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || p != token.data() + token.size() || value < 1) {
    throw ParseError(std::string("expected positive ") + what + ", found '" +
                         std::string(token) + "'",
                     line, column);
  }
  return value;
}

char parse_symbol(std::string_view token, int line, int column) {
  if (token != "a" && token != "b") {
    throw ParseError("expected alphabet letter a or b, found '" +
                         std::string(token) + "'",
                     line, column);
  }
  return token[0];
}

}  // namespace

FreeHom parse_hom(std::string_view content) {
  const auto lines = text::significant_lines(content);
  if (lines.empty()) throw ParseError("empty hom file");
  const auto& head = lines.front();
  const auto header = text::tokens(head.content);
  if (header.size() != 5 || header[0] != "hom") {
    throw ParseError(
        "expected header 'hom <source-rank> <target-rank> <a|b> <a|b>'",
        head.number, head.offset + 1);
  }
  const int col = head.offset + 1;
  const Alphabet source{parse_positive(header[1], head.number, col, "rank"),
                        parse_symbol(header[3], head.number, col)};
  const Alphabet target{parse_positive(header[2], head.number, col, "rank"),
                        parse_symbol(header[4], head.number, col)};

  std::vector<std::optional<Word>> images(source.rank);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto arrow = line.content.find("->");
    if (arrow == std::string_view::npos) {
      throw ParseError("expected '<generator> -> <word>'", line.number,
                       line.offset + 1);
    }
    int gen_offset = line.offset;
    const std::string_view gen = text::trim(line.content.substr(0, arrow), &gen_offset);
    const Word g = parse_word(gen, source, line.number, gen_offset);
    if (g.length() != 1 || g.letters()[0] < 0) {
      throw ParseError("left side must be a single generator, found '" +
                           std::string(gen) + "'",
                       line.number, gen_offset + 1);
    }
    const int index = g.letters()[0];
    if (images[index - 1]) {
      throw ParseError("generator " + std::string(gen) + " listed twice",
                       line.number, gen_offset + 1);
    }
    const int word_offset = line.offset + static_cast<int>(arrow) + 2;
    images[index - 1] = parse_word(line.content.substr(arrow + 2), target,
                                   line.number, word_offset);
  }
  std::vector<Word> out;
  for (int i = 0; i < source.rank; ++i) {
    if (!images[i]) {
      throw ParseError(std::string("generator ") + source.symbol +
                       std::to_string(i + 1) + " has no image");
    }
    out.push_back(*images[i]);
  }
  return FreeHom(source, target, std::move(out));
}

std::string render_hom(const FreeHom& h) {
  std::ostringstream os;
  os << "hom " << h.source().rank << ' ' << h.target().rank << ' '
     << h.source().symbol << ' ' << h.target().symbol << '\n';
  for (int i = 1; i <= h.source().rank; ++i) {
    os << h.source().symbol << i << " -> " << h.image(i) << '\n';
  }
  return os.str();
}

}  // namespace fixfnm
