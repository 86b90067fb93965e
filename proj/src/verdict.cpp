#include "expansia/verdict.hpp"

namespace expansia {

std::string to_string(VerdictKind k)
{
  switch (k) {
    case VerdictKind::Certified:
      return "Certified";
    case VerdictKind::Falsified:
      return "Falsified";
    case VerdictKind::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

int exit_code(VerdictKind k)
{
  switch (k) {
    case VerdictKind::Certified:
      return 0;
    case VerdictKind::Falsified:
      return 1;
    case VerdictKind::Inconclusive:
      return 2;
  }
  return 2;
}

}  // namespace expansia
