#include "frobfix/integer.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <stdexcept>

namespace frobfix {

Integer inverse_mod(const Integer& a, const Integer& n) {
  Integer old_r = mod(a, n), r = n;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw std::domain_error("inverse_mod: not invertible");
  return mod(old_s, n);
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (unsigned d = 2; d < (1u << 20); ++d) {
    Integer dd = d;
    if (dd * dd > n) return true;
    if (n % d == 0) return n == d;
  }
  return boost::multiprecision::miller_rabin_test(n, 25);
}

std::vector<Integer> prime_factors(Integer n) {
  n = abs(n);
  if (n == 0) throw std::domain_error("prime_factors: zero");
  std::vector<Integer> out;
  for (std::uint64_t d = 2; d <= 10'000'000; ++d) {
    Integer dd = d;
    if (dd * dd > n) break;
    if (n % d == 0) {
      out.push_back(dd);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) {
    if (!is_prime(n)) throw std::domain_error("prime_factors: cofactor too large to split");
    out.push_back(n);
  }
  return out;
}

unsigned valuation(Integer n, const Integer& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t factorial(unsigned m) {
  if (m > 20) throw std::overflow_error("factorial: argument above 20");
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace frobfix
