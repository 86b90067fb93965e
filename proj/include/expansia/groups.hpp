#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "expansia/linalg.hpp"
#include "expansia/verdict.hpp"
#include "expansia/word.hpp"

namespace expansia {

struct Generator {
  GeneratorId id = 0;
  GeneratorId inverse_id = 0;
  std::string name;
};

/// Value of a word under the faithful representation: a matrix or a permutation.
class Element {
 public:
  Element() = default;
  Element(IntMatrix m) : v_(std::move(m)) {}
  Element(Permutation p) : v_(std::move(p)) {}

  bool is_matrix() const noexcept { return std::holds_alternative<IntMatrix>(v_); }
  const IntMatrix& matrix() const { return std::get<IntMatrix>(v_); }
  const Permutation& permutation() const { return std::get<Permutation>(v_); }

  Element operator*(const Element& rhs) const;
  Element inverse() const;
  bool is_identity() const;

  bool operator==(const Element&) const = default;
  auto operator<=>(const Element&) const = default;

 private:
  std::variant<IntMatrix, Permutation> v_;
};

std::string to_string(const Element& e);

enum class RepKind { Matrix, Permutation };

/// Symmetric generating set with a faithful matrix or permutation representation.
class GroupPresentation {
 public:
  GroupPresentation() = default;

  /// Each named matrix must be unimodular; an inverse generator "name^-1" is added
  /// unless the matrix is its own inverse.
  static GroupPresentation from_matrices(const std::vector<std::pair<std::string, IntMatrix>>& gens);
  static GroupPresentation from_permutations(const std::vector<std::pair<std::string, Permutation>>& gens);

  /// Raw tables with caller-supplied inverse ids; nothing is checked beyond shapes.
  /// Exists so that faulty tables can reach check_axioms.
  static GroupPresentation unchecked(std::vector<Generator> gens, std::vector<Element> images);

  RepKind kind() const noexcept { return kind_; }
  /// Matrix dimension or permutation degree.
  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  const Element& image(GeneratorId id) const { return images_.at(id); }
  Element identity() const;

  /// Number of generators up to formal inversion.
  std::size_t rank() const;

  GeneratorId find(std::string_view name) const;
  /// Letters separated by whitespace; "e" or an empty string denote the identity.
  Word parse_word(std::string_view text) const;
  std::string format_word(const Word& w) const;
  std::vector<std::string> word_names(const Word& w) const;
  Word inverse(const Word& w) const;
  void validate_word(const Word& w) const;

 private:
  RepKind kind_ = RepKind::Matrix;
  std::size_t degree_ = 0;
  std::vector<Generator> gens_;
  std::vector<Element> images_;
};

/// Representation image of a word. Throws std::out_of_range on an unknown letter.
Element canonicalize(const GroupPresentation& g, const Word& w);

struct BallEntry {
  Element element;
  Word witness;
};

struct CayleyBall {
  std::size_t radius = 0;
  std::vector<BallEntry> entries;  // shortlex order of witnesses
  /// True when the next layer adds nothing, i.e. the entries are the whole image group.
  bool exhausted = false;

  bool contains(const Element& e) const;
};

CayleyBall cayley_ball(const GroupPresentation& g, std::size_t radius);

/// Breadth-first closure of the image group, or nullopt if it exceeds max_elements.
std::optional<CayleyBall> image_group(const GroupPresentation& g, std::size_t max_elements = 1u << 20);

struct Subgroup {
  GroupPresentation parent;
  std::vector<Word> gens;

  Subgroup(GroupPresentation parent, std::vector<Word> gens);
  /// Presentation whose generators are the images of gens (inverses added).
  GroupPresentation as_presentation() const;
  /// True when every parent generator is among the subgroup generators' images.
  bool is_whole_group() const;
};

struct SyndeticWitness {
  std::vector<Word> elements;

  /// K closed under formal inversion.
  SyndeticWitness symmetrized(const GroupPresentation& g) const;
};

struct SyndeticOptions {
  std::size_t depth = 4;
  /// Ball radius of H searched for membership in the matrix case.
  std::size_t membership_depth = 8;
};

Verdict verify_syndetic_witness(const Subgroup& h, const SyndeticWitness& k, const SyndeticOptions& opts);

struct CosetTransversal {
  std::vector<Word> representatives;  // first is the identity
  bool exact = false;                 // true when the index is known exactly
};

/// Left coset representatives of H in G, or nullopt when the count does not settle
/// within `bound` Cayley-ball layers.
std::optional<CosetTransversal> coset_transversal(const Subgroup& h, std::size_t bound);

}  // namespace expansia

template <>
struct std::hash<expansia::Element> {
  std::size_t operator()(const expansia::Element& e) const noexcept;
};
