#include "frobfix/golden.hpp"

namespace frobfix::golden {

LocalizedGroup frobenius_k(const Integer& p, int n) {
  if (n == -1 || n == 0) return LocalizedGroup(FgAbGroup::free(1));
  if (n > 0 && n % 2 == 1) return LocalizedGroup(FgAbGroup::cyclic(ipow(p, static_cast<unsigned long>((n + 1) / 2)) - 1));
  return {};
}

LocalizedGroup frobenius_k_rational(int n) {
  if (n == -1 || n == 0) return LocalizedGroup(FgAbGroup::free(1), Localization::rational());
  return {};
}

std::map<std::pair<int, int>, PiCell> frobenius_pi(const Integer& p) {
  const Localization inv = Localization::invert({p});
  const LocalizedGroup zero;
  std::map<std::pair<int, int>, PiCell> t;
  for (int r : {0, -1})
    for (int n = -1; n <= 2; ++n) t[{r, n}] = PiCell{zero, std::nullopt};
  t[{0, -1}].group = LocalizedGroup(FgAbGroup::cyclic(p - 1));
  t[{0, 0}] = PiCell{std::nullopt, std::pair{LocalizedGroup(FgAbGroup(0, {2, 2}), inv), LocalizedGroup(FgAbGroup::free(1), inv)}};
  t[{0, 1}].group = LocalizedGroup(FgAbGroup::cyclic(2), inv);
  t[{0, 2}].group = LocalizedGroup(FgAbGroup::cyclic(24), inv);
  t[{-1, 0}].group = LocalizedGroup(FgAbGroup::free(1), inv);
  return t;
}

}  // namespace frobfix::golden
