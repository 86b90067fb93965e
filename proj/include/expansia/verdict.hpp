#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "expansia/point.hpp"
#include "expansia/rational.hpp"
#include "expansia/word.hpp"

namespace expansia {

enum class VerdictKind { Certified, Falsified, Inconclusive };

std::string to_string(VerdictKind k);

struct PairWitness {
  Point x;
  Point y;
  /// Largest distance observed between the two orbits over the searched elements.
  Rational max_separation;
};

/// Three-valued outcome shared by every bounded search.
struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  std::size_t depth = 0;
  std::optional<Rational> constant;
  std::optional<Word> word;
  std::optional<PairWitness> pair;
  /// Falsified: the witness is proven rather than a bounded-search candidate.
  bool exact = true;
  /// Certified through floating-point eigenvalues rather than exact arithmetic.
  bool numeric = false;
  std::string reason;

  bool certified() const noexcept { return kind == VerdictKind::Certified; }
  bool falsified() const noexcept { return kind == VerdictKind::Falsified; }
  bool inconclusive() const noexcept { return kind == VerdictKind::Inconclusive; }
};

/// 0 Certified, 1 Falsified, 2 Inconclusive.
int exit_code(VerdictKind k);

}  // namespace expansia
