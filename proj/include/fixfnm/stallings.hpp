#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fixfnm/homs.hpp"
#include "fixfnm/words.hpp"

namespace fixfnm {

/// Folded core graph of a finitely generated subgroup of a free group.
///
/// Vertices are numbered in breadth-first order from the basepoint (0),
/// exploring letters in the order s1, s1^-1, s2, s2^-1, ...; two graphs are
/// equal exactly when they represent the same subgroup.
class SubgroupGraph {
 public:
  SubgroupGraph() = default;

  static SubgroupGraph from_generators(Alphabet alphabet,
                                       std::span<const Word> gens);
  static SubgroupGraph trivial(Alphabet alphabet);
  static SubgroupGraph whole(Alphabet alphabet);

  /// Builds from a deterministic, co-deterministic transition table rooted at
  /// `base`. Unreachable parts and hanging trees are discarded.
  static SubgroupGraph from_transitions(Alphabet alphabet,
                                        const std::vector<std::vector<int>>& out,
                                        int base);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return out_.size(); }
  std::size_t edge_count() const;

  /// Endpoint of the edge leaving `v` reading `l`, or -1.
  int target(int v, Letter l) const;

  bool contains(const Word& w) const;
  std::int64_t rank() const {
    return static_cast<std::int64_t>(edge_count()) -
           static_cast<std::int64_t>(vertex_count()) + 1;
  }
  bool is_trivial() const { return edge_count() == 0; }
  /// The index in the ambient free group when the transition map is total.
  std::optional<std::size_t> index() const;

  /// Free basis read off the breadth-first spanning tree.
  std::vector<Word> basis() const;

  /// Deterministic adjacency dump, one vertex per line.
  std::string dump() const;

  friend bool operator==(const SubgroupGraph&, const SubgroupGraph&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<int>> out_;  // out_[v][g - 1]
  std::vector<std::vector<int>> in_;
};

bool membership(const SubgroupGraph& g, const Word& w);
inline std::int64_t rank(const SubgroupGraph& g) { return g.rank(); }

/// Pullback of the two graphs at the paired basepoints.
SubgroupGraph intersect(const SubgroupGraph& g, const SubgroupGraph& h);

/// Subgroup generated by the images of a basis of `g`.
SubgroupGraph image(const SubgroupGraph& g, const FreeHom& h);

/// {y : d divides weighted_sum(y, weights)}; throws std::invalid_argument
/// for d < 1.
SubgroupGraph congruence_subgroup(Alphabet alphabet,
                                  const ExponentWeights& weights,
                                  const Integer& d);

struct KernelCheck {
  bool trivial = true;
  std::optional<Word> witness;  // nontrivial, in the subgroup, weight 0
};

/// Whether {w in subgroup : weighted_sum(w, weights) = 0} is trivial.
KernelCheck restricted_kernel_trivial(const SubgroupGraph& g,
                                      const ExponentWeights& weights);

/// Subgroup generated by a list of words, folded with bookkeeping that
/// records how each edge is spelled in the generators. Lets callers write a
/// member as a word in the generators and exposes a nontrivial relation among
/// the generators when they are not a free basis of what they generate.
class TrackedSubgroup {
 public:
  TrackedSubgroup(Alphabet alphabet, std::vector<Word> gens);

  const SubgroupGraph& graph() const { return graph_; }
  const std::vector<Word>& generators() const { return gens_; }
  /// Alphabet whose i-th letter stands for the i-th generator.
  Alphabet generator_alphabet() const {
    return Alphabet{static_cast<int>(gens_.size()), 'x'};
  }

  /// W over generator_alphabet() with W(gens) == w, if w is a member.
  std::optional<Word> express(const Word& w) const;

  /// Substitutes the generators into a word over generator_alphabet().
  Word evaluate(const Word& expression) const;

  /// A nontrivial W with W(gens) == 1, if one exists.
  const std::optional<Word>& relation() const { return relation_; }

 private:
  struct Arc {
    int to = -1;
    Word label;  // over generator_alphabet()
  };

  std::vector<Word> gens_;
  SubgroupGraph graph_;
  std::vector<std::vector<Arc>> arcs_;  // arcs_[v][slot(letter)]
  std::optional<Word> relation_;
};

}  // namespace fixfnm
