#pragma once

#include <cstddef>
#include <vector>

namespace expansia {

using GeneratorId = std::size_t;

/// Finite sequence of generator ids; the empty word is the identity.
struct Word {
  std::vector<GeneratorId> letters;

  std::size_t length() const noexcept { return letters.size(); }
  bool empty() const noexcept { return letters.empty(); }
  Word operator*(const Word& rhs) const
  {
    Word out = *this;
    out.letters.insert(out.letters.end(), rhs.letters.begin(), rhs.letters.end());
    return out;
  }

  bool operator==(const Word&) const = default;
  /// Shortlex: length first, then lexicographic by generator id.
  bool operator<(const Word& rhs) const
  {
    if (letters.size() != rhs.letters.size())
      return letters.size() < rhs.letters.size();
    return letters < rhs.letters;
  }
};

}  // namespace expansia
