#include "fixfnm/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "fixfnm/error.hpp"

namespace fixfnm {

void check_radius(const BallSpec& spec) {
  if (spec.radius < 0) throw std::invalid_argument("negative radius");
  if (spec.radius > spec.cap) {
    throw RadiusOverCap("radius " + std::to_string(spec.radius) + " exceeds the cap " +
                        std::to_string(spec.cap));
  }
}

std::uint64_t ball_size(int rank, int radius) {
  std::uint64_t total = 1, sphere = 2 * static_cast<std::uint64_t>(rank);
  for (int k = 1; k <= radius; ++k) {
    total += sphere;
    sphere *= 2 * static_cast<std::uint64_t>(rank) - 1;
  }
  return total;
}

void for_each_in_ball(Alphabet alphabet, BallSpec spec,
                      const std::function<void(const Word&)>& visit) {
  check_radius(spec);
  std::vector<Letter> order;
  for (int i = 1; i <= alphabet.rank; ++i) {
    order.push_back(i);
    order.push_back(-i);
  }
  // Level by level; extending each word of a sphere in letter order keeps the
  // next sphere in shortlex order.
  std::vector<std::vector<Letter>> sphere{{}};
  visit(Word(alphabet));
  for (int k = 1; k <= spec.radius; ++k) {
    std::vector<std::vector<Letter>> next;
    for (const auto& w : sphere) {
      for (Letter l : order) {
        if (!w.empty() && w.back() == -l) continue;
        auto x = w;
        x.push_back(l);
        visit(Word::reduce(alphabet, x));
        next.push_back(std::move(x));
      }
    }
    sphere = std::move(next);
  }
}

std::vector<Word> enumerate_ball(Alphabet alphabet, BallSpec spec) {
  std::vector<Word> out;
  for_each_in_ball(alphabet, spec, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<ProductElement> product_ball(int n, int m, BallSpec spec) {
  check_radius(spec);
  std::vector<std::vector<Word>> first(spec.radius + 1), second(spec.radius + 1);
  for (const auto& w : enumerate_ball(a_alphabet(n), spec)) first[w.length()].push_back(w);
  for (const auto& w : enumerate_ball(b_alphabet(m), spec)) second[w.length()].push_back(w);
  std::vector<ProductElement> out;
  for (int total = 0; total <= spec.radius; ++total) {
    for (int i = 0; i <= total; ++i) {
      for (const auto& x : first[i]) {
        for (const auto& y : second[total - i]) out.push_back({x, y});
      }
    }
  }
  return out;
}

std::vector<ProductElement> common_fixed_points(const ProductEndo& phi,
                                                const ProductEndo& psi, BallSpec spec,
                                                unsigned threads) {
  if (phi.n() != psi.n() || phi.m() != psi.m()) {
    throw AlphabetMismatch("endomorphisms of different products");
  }
  const auto ball = product_ball(phi.n(), phi.m(), spec);
  threads = std::max(1u, std::min<unsigned>(threads, 64));
  std::vector<std::vector<ProductElement>> found(threads);
  auto scan = [&](unsigned part) {
    for (std::size_t k = part; k < ball.size(); k += threads) {
      const auto& g = ball[k];
      if (!g.is_identity() && is_fixed(phi, g) && is_fixed(psi, g)) found[part].push_back(g);
    }
  };
  if (threads == 1) {
    scan(0);
    return found[0];
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(scan, t);
  for (auto& t : pool) t.join();
  // Strided partition: element k went to part k % threads, in increasing k.
  std::vector<ProductElement> out;
  std::vector<std::size_t> pos(threads, 0);
  for (std::size_t k = 0; k < ball.size(); ++k) {
    auto& part = found[k % threads];
    auto& p = pos[k % threads];
    if (p < part.size() && part[p] == ball[k]) {
      out.push_back(part[p]);
      ++p;
    }
  }
  return out;
}

std::vector<Word> bounded_equalizer(const FreeHom& phi, const FreeHom& psi, BallSpec spec) {
  if (phi.source() != psi.source() || phi.target() != psi.target()) {
    throw AlphabetMismatch("equalizer needs maps with the same source and target");
  }
  std::vector<Word> out;
  for_each_in_ball(phi.source(), spec, [&](const Word& x) {
    if (!x.is_identity() && apply(phi, x) == apply(psi, x)) out.push_back(x);
  });
  return out;
}

}  // namespace fixfnm
