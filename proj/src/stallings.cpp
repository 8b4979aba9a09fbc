#include "fixfnm/stallings.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fixfnm/error.hpp"

namespace fixfnm {

namespace {

int slot(Letter l) { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }
Letter letter_of_slot(int s) { return s % 2 == 0 ? s / 2 + 1 : -(s / 2 + 1); }

// Renumbering of a folded transition table: hanging trees away from `base`
// are dropped, survivors are numbered breadth-first. Entry -1 = removed.
std::vector<int> core_numbering(int rank, const std::vector<std::vector<int>>& out,
                                int base) {
  const int n = static_cast<int>(out.size());
  std::vector<std::vector<int>> in(n, std::vector<int>(rank, -1));
  std::vector<int> degree(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int g = 0; g < rank; ++g) {
      if (out[v][g] >= 0) {
        in[out[v][g]][g] = v;
        ++degree[v];
        ++degree[out[v][g]];
      }
    }
  }
  std::vector<char> removed(n, 0);
  std::vector<int> queue;
  for (int v = 0; v < n; ++v) {
    if (v != base && degree[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const int v = queue.back();
    queue.pop_back();
    if (removed[v]) continue;
    removed[v] = 1;
    auto drop = [&](int w) {
      if (w < 0 || removed[w]) return;
      if (--degree[w] <= 1 && w != base) queue.push_back(w);
    };
    for (int g = 0; g < rank; ++g) {
      drop(out[v][g]);
      drop(in[v][g]);
    }
  }

  std::vector<int> number(n, -1);
  std::deque<int> bfs{base};
  number[base] = 0;
  int next = 1;
  while (!bfs.empty()) {
    const int v = bfs.front();
    bfs.pop_front();
    for (int s = 0; s < 2 * rank; ++s) {
      const int g = s / 2;
      const int w = s % 2 == 0 ? out[v][g] : in[v][g];
      if (w >= 0 && !removed[w] && number[w] < 0) {
        number[w] = next++;
        bfs.push_back(w);
      }
    }
  }
  return number;
}

// Stallings folding over an edge list. Each edge optionally carries a word in
// the generator alphabet ("annotation") such that every closed path at the
// basepoint spells W(gens) where W is the product of annotations along the
// path. Identifying two distinct vertices keeps that invariant after a gauge
// change at the vertex being merged away; identifying two parallel edges
// yields a relation among the generators.
class Folder {
 public:
  struct Edge {
    int from = 0;
    int to = 0;
    int label = 0;  // positive generator index
    Word ann;
    bool alive = true;
  };

  Folder(Alphabet alphabet, Alphabet labels, bool track)
      : alphabet_(alphabet), labels_(labels), track_(track) {
    add_vertex();
  }

  int add_vertex() {
    adj_.emplace_back();
    alive_.push_back(1);
    return static_cast<int>(adj_.size()) - 1;
  }

  void add_edge(int from, int to, Letter l, Word ann) {
    if (l < 0) {
      std::swap(from, to);
      l = -l;
      if (track_) ann = invert(ann);
    }
    edges_.push_back({from, to, l, std::move(ann), true});
    const int id = static_cast<int>(edges_.size()) - 1;
    adj_[from].push_back(id);
    adj_[to].push_back(id);
  }

  // Closed path at the basepoint spelling w; its first edge carries `ann`.
  void add_petal(const Word& w, const Word& ann) {
    if (w.is_identity()) {
      if (track_ && !relation_ && !ann.is_identity()) relation_ = ann;
      return;
    }
    int prev = 0;
    const auto& l = w.letters();
    for (std::size_t i = 0; i < l.size(); ++i) {
      const int next = i + 1 == l.size() ? 0 : add_vertex();
      add_edge(prev, next, l[i], i == 0 ? ann : Word(labels_));
      prev = next;
    }
  }

  void fold() {
    std::vector<int> work;
    for (int v = 0; v < static_cast<int>(adj_.size()); ++v) work.push_back(v);
    while (!work.empty()) {
      const int u = work.back();
      work.pop_back();
      while (alive_[u]) {
        auto conflict = find_conflict(u);
        if (!conflict) break;
        resolve(u, conflict->first, conflict->second, work);
      }
    }
  }

  // Transition table over the surviving vertex ids (dead ones get -1 rows).
  std::vector<std::vector<int>> table() const {
    std::vector<std::vector<int>> out(adj_.size(),
                                      std::vector<int>(alphabet_.rank, -1));
    for (const auto& e : edges_) {
      if (e.alive) out[e.from][e.label - 1] = e.to;
    }
    return out;
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::optional<Word>& relation() const { return relation_; }

 private:
  // Edge `edge` seen from vertex u; forward means it leaves u via +label.
  struct Half {
    int edge = -1;
    bool forward = true;
  };

  int other(const Half& h) const {
    const auto& e = edges_[h.edge];
    return h.forward ? e.to : e.from;
  }
  Letter letter(const Half& h) const {
    const int l = edges_[h.edge].label;
    return h.forward ? l : -l;
  }
  Word half_ann(const Half& h) const {
    const auto& a = edges_[h.edge].ann;
    return h.forward ? a : invert(a);
  }

  std::optional<std::pair<Half, Half>> find_conflict(int u) {
    auto& list = adj_[u];
    std::erase_if(list, [&](int id) { return !edges_[id].alive; });
    std::vector<Half> seen(2 * alphabet_.rank);
    std::unordered_set<int> visited;
    for (int id : list) {
      if (!visited.insert(id).second) continue;
      const auto& e = edges_[id];
      Half halves[2];
      int count = 0;
      if (e.from == u) halves[count++] = {id, true};
      if (e.to == u) halves[count++] = {id, false};
      for (int i = 0; i < count; ++i) {
        const int s = slot(letter(halves[i]));
        if (seen[s].edge < 0) {
          seen[s] = halves[i];
        } else {
          return std::make_pair(seen[s], halves[i]);
        }
      }
    }
    return std::nullopt;
  }

  void resolve(int u, Half h1, Half h2, std::vector<int>& work) {
    if (other(h1) == other(h2)) {
      if (track_ && !relation_) {
        const auto pot = potentials();
        Word r = pot[u] * half_ann(h2) * invert(half_ann(h1)) * invert(pot[u]);
        if (!r.is_identity()) relation_ = std::move(r);
      }
      edges_[h2.edge].alive = false;
      work.push_back(u);
      return;
    }
    if (other(h2) == 0) std::swap(h1, h2);
    const int merged = other(h2);
    const int kept = other(h1);
    if (track_) {
      gauge(merged, invert(half_ann(h2)) * half_ann(h1));
    }
    edges_[h2.edge].alive = false;
    for (int id : adj_[merged]) {
      auto& e = edges_[id];
      if (!e.alive) continue;
      if (e.from == merged) e.from = kept;
      if (e.to == merged) e.to = kept;
      adj_[kept].push_back(id);
    }
    adj_[merged].clear();
    alive_[merged] = 0;
    work.push_back(kept);
    if (u != merged) work.push_back(u);
  }

  // Closed paths are unchanged when every edge leaving x is premultiplied by
  // g^-1 and every edge entering x is postmultiplied by g.
  void gauge(int x, const Word& g) {
    if (g.is_identity()) return;
    const Word g_inv = invert(g);
    std::unordered_set<int> visited;
    for (int id : adj_[x]) {
      auto& e = edges_[id];
      if (!e.alive || !visited.insert(id).second) continue;
      if (e.from == x) e.ann = g_inv * e.ann;
      if (e.to == x) e.ann = e.ann * g;
    }
  }

  // Annotation of some path from the basepoint to each vertex.
  std::vector<Word> potentials() const {
    std::vector<Word> pot(adj_.size(), Word(labels_));
    std::vector<char> seen(adj_.size(), 0);
    std::deque<int> q{0};
    seen[0] = 1;
    while (!q.empty()) {
      const int v = q.front();
      q.pop_front();
      for (int id : adj_[v]) {
        const auto& e = edges_[id];
        if (!e.alive) continue;
        if (e.from == v && !seen[e.to]) {
          seen[e.to] = 1;
          pot[e.to] = pot[v] * e.ann;
          q.push_back(e.to);
        }
        if (e.to == v && !seen[e.from]) {
          seen[e.from] = 1;
          pot[e.from] = pot[v] * invert(e.ann);
          q.push_back(e.from);
        }
      }
    }
    return pot;
  }

  Alphabet alphabet_;
  Alphabet labels_;
  bool track_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<char> alive_;
  std::optional<Word> relation_;
};

void check_alphabet(const Alphabet& expected, const Word& w) {
  if (w.alphabet() != expected) {
    throw AlphabetMismatch("word over " + to_string(w.alphabet()) +
                           " in a subgroup of " + to_string(expected));
  }
}

}  // namespace

SubgroupGraph SubgroupGraph::from_transitions(
    Alphabet alphabet, const std::vector<std::vector<int>>& out, int base) {
  const auto number = core_numbering(alphabet.rank, out, base);
  const int count = static_cast<int>(
      std::count_if(number.begin(), number.end(), [](int x) { return x >= 0; }));
  SubgroupGraph g;
  g.alphabet_ = alphabet;
  g.out_.assign(count, std::vector<int>(alphabet.rank, -1));
  g.in_.assign(count, std::vector<int>(alphabet.rank, -1));
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (number[v] < 0) continue;
    for (int k = 0; k < alphabet.rank; ++k) {
      const int w = out[v][k];
      if (w < 0 || number[w] < 0) continue;
      g.out_[number[v]][k] = number[w];
      g.in_[number[w]][k] = number[v];
    }
  }
  return g;
}

SubgroupGraph SubgroupGraph::from_generators(Alphabet alphabet,
                                             std::span<const Word> gens) {
  Folder folder(alphabet, Alphabet{static_cast<int>(gens.size()), 'x'}, false);
  const Word none(Alphabet{static_cast<int>(gens.size()), 'x'});
  for (const auto& w : gens) {
    check_alphabet(alphabet, w);
    folder.add_petal(w, none);
  }
  folder.fold();
  return from_transitions(alphabet, folder.table(), 0);
}

SubgroupGraph SubgroupGraph::trivial(Alphabet alphabet) {
  return from_generators(alphabet, {});
}

SubgroupGraph SubgroupGraph::whole(Alphabet alphabet) {
  std::vector<std::vector<int>> out{std::vector<int>(alphabet.rank, 0)};
  return from_transitions(alphabet, out, 0);
}

std::size_t SubgroupGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& row : out_) {
    count += static_cast<std::size_t>(
        std::count_if(row.begin(), row.end(), [](int x) { return x >= 0; }));
  }
  return count;
}

int SubgroupGraph::target(int v, Letter l) const {
  return l > 0 ? out_[v][l - 1] : in_[v][-l - 1];
}

bool SubgroupGraph::contains(const Word& w) const {
  check_alphabet(alphabet_, w);
  int v = 0;
  for (Letter l : w.letters()) {
    v = target(v, l);
    if (v < 0) return false;
  }
  return v == 0;
}

std::optional<std::size_t> SubgroupGraph::index() const {
  for (std::size_t v = 0; v < out_.size(); ++v) {
    for (int k = 0; k < alphabet_.rank; ++k) {
      if (out_[v][k] < 0 || in_[v][k] < 0) return std::nullopt;
    }
  }
  return out_.size();
}

std::vector<Word> SubgroupGraph::basis() const {
  const int n = static_cast<int>(out_.size());
  std::vector<Word> path(n, Word(alphabet_));
  std::vector<char> seen(n, 0);
  // Tree edges are recorded as (vertex, positive generator) of the out-edge.
  std::vector<std::vector<char>> tree(n, std::vector<char>(alphabet_.rank, 0));
  std::deque<int> q{0};
  seen[0] = 1;
  while (!q.empty()) {
    const int v = q.front();
    q.pop_front();
    for (int s = 0; s < 2 * alphabet_.rank; ++s) {
      const Letter l = letter_of_slot(s);
      const int w = target(v, l);
      if (w < 0 || seen[w]) continue;
      seen[w] = 1;
      path[w] = path[v] * Word::generator(alphabet_, std::abs(l), l > 0 ? 1 : -1);
      if (l > 0) {
        tree[v][l - 1] = 1;
      } else {
        tree[w][-l - 1] = 1;
      }
      q.push_back(w);
    }
  }
  std::vector<Word> out;
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < alphabet_.rank; ++k) {
      const int w = out_[v][k];
      if (w < 0 || tree[v][k]) continue;
      out.push_back(path[v] * Word::generator(alphabet_, k + 1) * invert(path[w]));
    }
  }
  return out;
}

std::string SubgroupGraph::dump() const {
  std::ostringstream os;
  os << "graph " << alphabet_.symbol << alphabet_.rank
     << " vertices=" << vertex_count() << " edges=" << edge_count()
     << " rank=" << rank() << '\n';
  for (std::size_t v = 0; v < out_.size(); ++v) {
    os << v << ':';
    for (int k = 0; k < alphabet_.rank; ++k) {
      if (out_[v][k] >= 0) {
        os << ' ' << alphabet_.symbol << (k + 1) << "->" << out_[v][k];
      }
    }
    os << '\n';
  }
  return os.str();
}

bool membership(const SubgroupGraph& g, const Word& w) { return g.contains(w); }

SubgroupGraph intersect(const SubgroupGraph& g, const SubgroupGraph& h) {
  if (g.alphabet() != h.alphabet()) {
    throw AlphabetMismatch("intersecting subgroups of " +
                           to_string(g.alphabet()) + " and " +
                           to_string(h.alphabet()));
  }
  const int rank = g.alphabet().rank;
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> states;
  std::vector<std::vector<int>> out;
  auto id_of = [&](int a, int b) {
    auto [it, inserted] = ids.try_emplace({a, b}, static_cast<int>(states.size()));
    if (inserted) {
      states.emplace_back(a, b);
      out.emplace_back(rank, -1);
    }
    return it->second;
  };
  id_of(0, 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [a, b] = states[i];
    for (int s = 0; s < 2 * rank; ++s) {
      const Letter l = letter_of_slot(s);
      const int a2 = g.target(a, l);
      const int b2 = h.target(b, l);
      if (a2 < 0 || b2 < 0) continue;
      const int j = id_of(a2, b2);
      if (l > 0) {
        out[i][l - 1] = j;
      } else {
        out[j][-l - 1] = static_cast<int>(i);
      }
    }
  }
  return SubgroupGraph::from_transitions(g.alphabet(), out, 0);
}

SubgroupGraph image(const SubgroupGraph& g, const FreeHom& h) {
  if (g.alphabet() != h.source()) {
    throw AlphabetMismatch("image of a subgroup of " + to_string(g.alphabet()) +
                           " under a map from " + to_string(h.source()));
  }
  std::vector<Word> gens;
  for (const auto& b : g.basis()) gens.push_back(apply(h, b));
  return SubgroupGraph::from_generators(h.target(), gens);
}

SubgroupGraph congruence_subgroup(Alphabet alphabet,
                                  const ExponentWeights& weights,
                                  const Integer& d) {
  if (d < 1) throw std::invalid_argument("congruence modulus must be >= 1");
  if (static_cast<int>(weights.size()) != alphabet.rank) {
    throw AlphabetMismatch("weight vector length does not match " +
                           to_string(alphabet));
  }
  if (d > 1'000'000) {
    throw std::invalid_argument("congruence modulus too large to materialize");
  }
  const int modulus = static_cast<int>(d);
  std::vector<int> step(alphabet.rank);
  for (int k = 0; k < alphabet.rank; ++k) {
    Integer r = weights[k] % d;
    if (r < 0) r += d;
    step[k] = static_cast<int>(r);
  }
  std::vector<std::vector<int>> out(modulus, std::vector<int>(alphabet.rank));
  for (int r = 0; r < modulus; ++r) {
    for (int k = 0; k < alphabet.rank; ++k) out[r][k] = (r + step[k]) % modulus;
  }
  return SubgroupGraph::from_transitions(alphabet, out, 0);
}

KernelCheck restricted_kernel_trivial(const SubgroupGraph& g,
                                      const ExponentWeights& weights) {
  const auto basis = g.basis();
  if (basis.empty()) return {true, std::nullopt};
  const Integer c1 = weighted_sum(basis[0], weights);
  if (c1 == 0) return {false, basis[0]};
  if (basis.size() == 1) return {true, std::nullopt};
  const Integer c2 = weighted_sum(basis[1], weights);
  if (c2 == 0) return {false, basis[1]};
  // g1^(c2/e) g2^(-c1/e) has weight 0 and is nontrivial since g1, g2 are
  // part of a free basis.
  const Integer e = gcd(c1, c2);
  const auto p = static_cast<std::int64_t>(c2 / e);
  const auto q = static_cast<std::int64_t>(c1 / e);
  return {false, power(basis[0], p) * power(basis[1], -q)};
}

TrackedSubgroup::TrackedSubgroup(Alphabet alphabet, std::vector<Word> gens)
    : gens_(std::move(gens)) {
  const Alphabet labels = generator_alphabet();
  Folder folder(alphabet, labels, true);
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    check_alphabet(alphabet, gens_[i]);
    folder.add_petal(gens_[i], Word::generator(labels, static_cast<int>(i) + 1));
  }
  folder.fold();
  relation_ = folder.relation();

  const auto table = folder.table();
  graph_ = SubgroupGraph::from_transitions(alphabet, table, 0);
  const auto number = core_numbering(alphabet.rank, table, 0);
  arcs_.assign(graph_.vertex_count(), std::vector<Arc>(2 * alphabet.rank));
  for (const auto& e : folder.edges()) {
    if (!e.alive || number[e.from] < 0 || number[e.to] < 0) continue;
    arcs_[number[e.from]][slot(e.label)] = {number[e.to], e.ann};
    arcs_[number[e.to]][slot(-e.label)] = {number[e.from], invert(e.ann)};
  }
}

std::optional<Word> TrackedSubgroup::express(const Word& w) const {
  check_alphabet(graph_.alphabet(), w);
  Word acc(generator_alphabet());
  int v = 0;
  for (Letter l : w.letters()) {
    const Arc& arc = arcs_[v][slot(l)];
    if (arc.to < 0) return std::nullopt;
    acc = acc * arc.label;
    v = arc.to;
  }
  if (v != 0) return std::nullopt;
  return acc;
}

Word TrackedSubgroup::evaluate(const Word& expression) const {
  return apply(FreeHom(generator_alphabet(), graph_.alphabet(), gens_),
               expression);
}

}  // namespace fixfnm
