#include "fixfnm/words.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

#include "fixfnm/error.hpp"

namespace fixfnm {

namespace {

int letter_key(Letter l) { return 2 * (std::abs(l) - 1) + (l < 0 ? 1 : 0); }

void check_same(const Word& u, const Word& v) {
  if (u.alphabet() != v.alphabet()) {
    throw AlphabetMismatch("words over " + to_string(u.alphabet()) + " and " +
                           to_string(v.alphabet()));
  }
}

// Appends `l` to a reduced stack, cancelling if needed.
void push_reduced(std::vector<Letter>& stack, Letter l) {
  if (!stack.empty() && stack.back() == -l) {
    stack.pop_back();
  } else {
    stack.push_back(l);
  }
}

}  // namespace

std::string to_string(const Alphabet& alphabet) {
  return std::string("F(") + alphabet.symbol + ", " +
         std::to_string(alphabet.rank) + ")";
}

Word Word::reduce(Alphabet alphabet, std::span<const Letter> raw) {
  Word w(alphabet);
  w.letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0 || std::abs(l) > alphabet.rank) {
      throw std::out_of_range("generator index " + std::to_string(l) +
                              " out of range for " + to_string(alphabet));
    }
    push_reduced(w.letters_, l);
  }
  return w;
}

Word Word::generator(Alphabet alphabet, int index, int sign) {
  const Letter l = sign < 0 ? -index : index;
  return reduce(alphabet, std::span<const Letter>(&l, 1));
}

Word Word::relabeled(Alphabet alphabet) const {
  return reduce(alphabet, letters_);
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
  if (auto c = lhs.alphabet_.rank <=> rhs.alphabet_.rank; c != 0) return c;
  if (auto c = lhs.alphabet_.symbol <=> rhs.alphabet_.symbol; c != 0) return c;
  if (auto c = lhs.letters_.size() <=> rhs.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < lhs.letters_.size(); ++i) {
    const int a = letter_key(lhs.letters_[i]);
    const int b = letter_key(rhs.letters_[i]);
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

Word multiply(const Word& u, const Word& v) {
  check_same(u, v);
  std::vector<Letter> raw = u.letters();
  raw.insert(raw.end(), v.letters().begin(), v.letters().end());
  return Word::reduce(u.alphabet(), raw);
}

Word invert(const Word& u) {
  std::vector<Letter> raw(u.letters().rbegin(), u.letters().rend());
  for (auto& l : raw) l = -l;
  return Word::reduce(u.alphabet(), raw);
}

Word power(const Word& u, std::int64_t k) {
  if (k < 0) return power(invert(u), -k);
  if (k == 0 || u.is_identity()) return Word(u.alphabet());
  const auto [core, conj] = cyclic_reduce(u);
  std::vector<Letter> raw;
  raw.reserve(conj.length() * 2 + core.length() * static_cast<std::size_t>(k));
  raw.insert(raw.end(), conj.letters().begin(), conj.letters().end());
  for (std::int64_t i = 0; i < k; ++i) {
    raw.insert(raw.end(), core.letters().begin(), core.letters().end());
  }
  const Word conj_inv = invert(conj);
  raw.insert(raw.end(), conj_inv.letters().begin(), conj_inv.letters().end());
  return Word::reduce(u.alphabet(), raw);
}

CyclicDecomposition cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t i = 0;
  std::size_t j = l.size();
  while (j - i >= 2 && l[i] == -l[j - 1]) {
    ++i;
    --j;
  }
  std::span<const Letter> all(l);
  return {Word::reduce(w.alphabet(), all.subspan(i, j - i)),
          Word::reduce(w.alphabet(), all.subspan(0, i))};
}

Root root(const Word& w) {
  if (w.is_identity()) return {Word(w.alphabet()), 0};
  const auto [core, conj] = cyclic_reduce(w);
  const auto& c = core.letters();
  const std::size_t n = c.size();
  for (std::size_t period = 1; period <= n; ++period) {
    if (n % period != 0) continue;
    bool periodic = true;
    for (std::size_t i = period; i < n && periodic; ++i) {
      periodic = c[i] == c[i - period];
    }
    if (!periodic) continue;
    std::span<const Letter> prefix(c.data(), period);
    Word z = conj * Word::reduce(w.alphabet(), prefix) * invert(conj);
    return {std::move(z), static_cast<std::int64_t>(n / period)};
  }
  return {w, 1};  // unreachable: period n always matches
}

Root oriented_root(const Word& w) {
  Root r = root(w);
  if (r.k == 0) return r;
  Word inv = invert(r.z);
  if (inv < r.z) {
    r.z = std::move(inv);
    r.k = -r.k;
  }
  return r;
}

std::optional<std::int64_t> power_exponent(const Word& x, const Word& u) {
  check_same(x, u);
  if (x.is_identity()) return 0;
  if (u.is_identity()) return std::nullopt;
  const Root rx = oriented_root(x);
  const Root ru = oriented_root(u);
  if (rx.z != ru.z || rx.k % ru.k != 0) return std::nullopt;
  return rx.k / ru.k;
}

bool commute(const Word& u, const Word& v) { return u * v == v * u; }

bool ExponentWeights::is_zero() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const Integer& x) { return x == 0; });
}

std::string ExponentWeights::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) os << ",";
    os << weights_[i];
  }
  os << ")";
  return os.str();
}

std::vector<std::int64_t> exponent_sums(const Word& w) {
  std::vector<std::int64_t> sums(w.alphabet().rank, 0);
  for (Letter l : w.letters()) sums[std::abs(l) - 1] += l > 0 ? 1 : -1;
  return sums;
}

Integer weighted_sum(const Word& w, const ExponentWeights& weights) {
  if (static_cast<int>(weights.size()) != w.alphabet().rank) {
    throw AlphabetMismatch("weight vector of length " +
                           std::to_string(weights.size()) + " for " +
                           to_string(w.alphabet()));
  }
  Integer total = 0;
  const auto sums = exponent_sums(w);
  for (std::size_t i = 0; i < sums.size(); ++i) total += sums[i] * weights[i];
  return total;
}

IntLattice2 solve_power_equation(const Word& v, const Word& w) {
  check_same(v, w);
  if (v.is_identity() && w.is_identity()) return IntLattice2::whole();
  if (v.is_identity()) {
    const Vec2 g[] = {Vec2{1, 0}};
    return IntLattice2::from_generators(g);
  }
  if (w.is_identity()) {
    const Vec2 g[] = {Vec2{0, 1}};
    return IntLattice2::from_generators(g);
  }
  const Root rv = oriented_root(v);
  const Root rw = oriented_root(w);
  if (rv.z != rw.z) return IntLattice2::zero();
  // v = z^c, w = z^d: v^m = w^k iff m c = k d.
  const Integer c = rv.k;
  const Integer d = rw.k;
  const Integer g = gcd(c, d);
  const Vec2 gen[] = {Vec2{d / g, c / g}};
  return IntLattice2::from_generators(gen);
}

Word parse_word(std::string_view text, Alphabet alphabet, int line,
                int column_offset) {
  std::vector<Letter> raw;
  std::size_t pos = 0;
  bool saw_identity = false;
  bool saw_letter = false;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
      continue;
    }
    const std::size_t start = pos;
    while (pos < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    const std::string_view token = text.substr(start, pos - start);
    const int column = column_offset + static_cast<int>(start) + 1;
    auto fail = [&](const std::string& why) -> ParseError {
      return ParseError(why + " '" + std::string(token) + "'", line, column);
    };

    if (token == "1") {
      saw_identity = true;
      continue;
    }
    if (token.front() != alphabet.symbol) {
      throw fail("expected a generator " + std::string(1, alphabet.symbol) +
                 "<i> but found token");
    }
    const std::size_t caret = token.find('^');
    const std::string_view index_part = token.substr(1, caret == std::string_view::npos
                                                           ? std::string_view::npos
                                                           : caret - 1);
    int index = 0;
    auto [ip, iec] = std::from_chars(index_part.data(),
                                     index_part.data() + index_part.size(), index);
    if (index_part.empty() || iec != std::errc() ||
        ip != index_part.data() + index_part.size() || index_part[0] == '+' ||
        index_part[0] == '-') {
      throw fail("malformed token");
    }
    if (index < 1 || index > alphabet.rank) {
      throw fail("generator index out of range (rank " +
                 std::to_string(alphabet.rank) + ") in token");
    }
    std::int64_t exponent = 1;
    if (caret != std::string_view::npos) {
      const std::string_view exp_part = token.substr(caret + 1);
      auto [ep, eec] = std::from_chars(exp_part.data(),
                                       exp_part.data() + exp_part.size(), exponent);
      if (exp_part.empty() || eec != std::errc() ||
          ep != exp_part.data() + exp_part.size()) {
        throw fail("malformed exponent in token");
      }
      if (exponent > 1'000'000 || exponent < -1'000'000) {
        throw fail("exponent too large in token");
      }
    }
    const Letter l = exponent < 0 ? -index : index;
    for (std::int64_t i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) {
      raw.push_back(l);
    }
    saw_letter = true;
  }
  if (saw_identity && saw_letter) {
    throw ParseError("identity token '1' must stand alone", line,
                     column_offset + 1);
  }
  if (!saw_identity && !saw_letter) {
    throw ParseError("empty word (write 1 for the identity)", line,
                     column_offset + 1);
  }
  return Word::reduce(alphabet, raw);
}

std::string to_string(const Word& w) {
  if (w.is_identity()) return "1";
  std::ostringstream os;
  const auto& l = w.letters();
  std::size_t i = 0;
  bool first = true;
  while (i < l.size()) {
    std::size_t j = i;
    while (j < l.size() && l[j] == l[i]) ++j;
    const std::int64_t run = static_cast<std::int64_t>(j - i);
    if (!first) os << ' ';
    first = false;
    os << w.alphabet().symbol << std::abs(l[i]);
    const std::int64_t exponent = l[i] < 0 ? -run : run;
    if (exponent != 1) os << '^' << exponent;
    i = j;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << to_string(w);
}

}  // namespace fixfnm
