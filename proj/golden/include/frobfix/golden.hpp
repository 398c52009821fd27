#pragma once

#include "frobfix/abgroup.hpp"

#include <map>
#include <optional>
#include <utility>

// Expected tables, kept apart from the library so that computed values are
// never read back from them.
namespace frobfix::golden {

/// pi_n of the Frobenius fixed points of K(F_p-bar).
LocalizedGroup frobenius_k(const Integer& p, int n);
LocalizedGroup frobenius_k_rational(int n);

/// A cell of the Frobenius stable homotopy table: either a group, or a pair
/// of extension pieces (sub, quot) when the table lists them separately.
struct PiCell {
  std::optional<LocalizedGroup> group;
  std::optional<std::pair<LocalizedGroup, LocalizedGroup>> pieces;
};

/// Rows r = 0, -1 and columns n = -1..2, keyed by (r, n).
std::map<std::pair<int, int>, PiCell> frobenius_pi(const Integer& p);

}  // namespace frobfix::golden
