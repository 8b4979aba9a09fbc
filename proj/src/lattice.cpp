#include "fixfnm/lattice.hpp"

#include <sstream>
#include <utility>

namespace fixfnm {

namespace {

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

// Column operation: col_j -= q * col_k on both matrices.
void sub_column(IntMatrix& a, IntMatrix& u, std::size_t j, std::size_t k,
                const Integer& q) {
  for (auto& row : a) row[j] -= q * row[k];
  for (auto& row : u) row[j] -= q * row[k];
}

void swap_columns(IntMatrix& a, IntMatrix& u, std::size_t j, std::size_t k) {
  for (auto& row : a) std::swap(row[j], row[k]);
  for (auto& row : u) std::swap(row[j], row[k]);
}

}  // namespace

std::vector<std::vector<Integer>> integer_kernel(const IntMatrix& m,
                                                 std::size_t cols) {
  IntMatrix a = m;
  IntMatrix u(cols, std::vector<Integer>(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < a.size() && pivot < cols; ++i) {
    // Euclid across columns pivot..cols-1 of row i until only the pivot
    // column is nonzero.
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = pivot; j < cols; ++j) {
        if (a[i][j] != 0 &&
            (best == cols || abs(a[i][j]) < abs(a[i][best]))) {
          best = j;
        }
      }
      if (best == cols) break;
      if (best != pivot) swap_columns(a, u, best, pivot);
      bool done = true;
      for (std::size_t j = pivot + 1; j < cols; ++j) {
        if (a[i][j] != 0) {
          Integer q = a[i][j] / a[i][pivot];
          sub_column(a, u, j, pivot, q);
          if (a[i][j] != 0) done = false;
        }
      }
      if (done) break;
    }
    if (a[i][pivot] != 0) ++pivot;
  }

  std::vector<std::vector<Integer>> kernel;
  for (std::size_t j = pivot; j < cols; ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

IntLattice2 IntLattice2::from_generators(std::span<const Vec2> gens) {
  std::vector<Vec2> rows;
  for (const auto& g : gens) {
    if (g[0] != 0 || g[1] != 0) rows.push_back(g);
  }

  // Row Euclid on the first coordinate.
  for (;;) {
    std::size_t best = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][0] != 0 &&
          (best == rows.size() || abs(rows[i][0]) < abs(rows[best][0]))) {
        best = i;
      }
    }
    if (best == rows.size()) break;
    bool done = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == best || rows[i][0] == 0) continue;
      Integer q = rows[i][0] / rows[best][0];
      rows[i][0] -= q * rows[best][0];
      rows[i][1] -= q * rows[best][1];
      if (rows[i][0] != 0) done = false;
    }
    if (done) break;
  }

  Vec2 lead{0, 0};
  Integer h = 0;
  for (const auto& r : rows) {
    if (r[0] != 0) {
      lead = r;
    } else {
      h = gcd(h, abs(r[1]));
    }
  }

  IntLattice2 out;
  if (lead[0] != 0) {
    if (lead[0] < 0) {
      lead[0] = -lead[0];
      lead[1] = -lead[1];
    }
    if (h != 0) lead[1] = floor_mod(lead[1], h);
    out.basis_.push_back(lead);
  }
  if (h != 0) out.basis_.push_back(Vec2{0, h});
  return out;
}

IntLattice2 IntLattice2::whole() {
  const Vec2 gens[] = {Vec2{1, 0}, Vec2{0, 1}};
  return from_generators(gens);
}

bool IntLattice2::contains(const Vec2& v) const {
  if (v[0] == 0 && v[1] == 0) return true;
  if (basis_.empty()) return false;
  const Vec2& first = basis_.front();
  if (first[0] == 0) {
    // Single vector (0, h).
    return v[0] == 0 && v[1] % first[1] == 0;
  }
  if (v[0] % first[0] != 0) return false;
  Integer t = v[0] / first[0];
  Integer rest = v[1] - t * first[1];
  if (basis_.size() == 1) return rest == 0;
  return rest % basis_[1][1] == 0;
}

bool IntLattice2::has_first(const Integer& a) const {
  if (a == 0) return true;
  if (basis_.empty() || basis_.front()[0] == 0) return false;
  return a % basis_.front()[0] == 0;
}

bool IntLattice2::has_second(const Integer& b) const {
  if (b == 0) return true;
  Integer g = 0;
  for (const auto& v : basis_) g = gcd(g, abs(v[1]));
  if (g == 0) return false;
  return b % g == 0;
}

IntLattice2 IntLattice2::swapped() const {
  std::vector<Vec2> gens;
  for (const auto& v : basis_) gens.push_back(Vec2{v[1], v[0]});
  return from_generators(gens);
}

std::string IntLattice2::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (i) os << ", ";
    os << "(" << basis_[i][0] << "," << basis_[i][1] << ")";
  }
  os << ">";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntLattice2& lattice) {
  return os << lattice.to_string();
}

IntLattice2 lattice_intersect(const IntLattice2& lhs, const IntLattice2& rhs) {
  const auto& b1 = lhs.basis();
  const auto& b2 = rhs.basis();
  if (b1.empty() || b2.empty()) return IntLattice2::zero();

  // Solve sum_i alpha_i b1_i - sum_j beta_j b2_j = 0.
  const std::size_t cols = b1.size() + b2.size();
  IntMatrix m(2, std::vector<Integer>(cols, 0));
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < b1.size(); ++i) m[c][i] = b1[i][c];
    for (std::size_t j = 0; j < b2.size(); ++j) {
      m[c][b1.size() + j] = -b2[j][c];
    }
  }
  std::vector<Vec2> gens;
  for (const auto& k : integer_kernel(m, cols)) {
    Vec2 v{0, 0};
    for (std::size_t i = 0; i < b1.size(); ++i) {
      v[0] += k[i] * b1[i][0];
      v[1] += k[i] * b1[i][1];
    }
    gens.push_back(v);
  }
  return IntLattice2::from_generators(gens);
}

IntLattice2 int_kernel(const std::array<std::array<Integer, 2>, 2>& m) {
  IntMatrix rows = {{m[0][0], m[0][1]}, {m[1][0], m[1][1]}};
  std::vector<Vec2> gens;
  for (const auto& k : integer_kernel(rows, 2)) gens.push_back(Vec2{k[0], k[1]});
  return IntLattice2::from_generators(gens);
}

}  // namespace fixfnm
