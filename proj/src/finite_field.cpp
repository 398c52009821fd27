#include "frobfix/finite_field.hpp"

#include "frobfix/errors.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace frobfix {

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first

std::uint64_t checked_power(std::uint32_t p, unsigned m, std::uint64_t ceiling) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > ceiling)
      throw ResourceError("field of order " + std::to_string(p) + "^" + std::to_string(m) +
                          " exceeds the ceiling " + std::to_string(ceiling));
  }
  return q;
}

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i)
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * b[i]) % p);
    trim(a);
  }
  return a;
}

bool irreducible_by_trial_division(const Poly& f, std::uint32_t p) {
  const unsigned m = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly g(d + 1);
      std::uint64_t r = t;
      for (unsigned i = 0; i < d; ++i, r /= p) g[i] = static_cast<std::uint32_t>(r % p);
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const FiniteField> FiniteField::get(std::uint32_t p, unsigned m, std::uint64_t ceiling) {
  checked_power(p, m, ceiling);
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, std::shared_ptr<const FiniteField>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, m}); it != cache.end()) return it->second;
  }
  auto field = std::make_shared<const FiniteField>(p, m, ceiling);
  std::lock_guard lock(mutex);
  return cache.try_emplace({p, m}, std::move(field)).first->second;
}

FiniteField::FiniteField(std::uint32_t p, unsigned m, std::uint64_t ceiling) : p_(p), m_(m) {
  if (p < 2 || m < 1) throw std::invalid_argument("FiniteField: need p >= 2 and m >= 1");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("FiniteField: p must be prime");
  q_ = static_cast<std::uint32_t>(checked_power(p, m, ceiling));
  for (std::uint32_t i = 0, v = 1; i < m; ++i, v *= p) pow_p_.push_back(v);

  // First primitive monic polynomial in the order of its encoded lower
  // coefficients; x is then a generator of the multiplicative group.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  for (std::uint32_t t = 1; t < q_; ++t) {
    Poly f(m + 1);
    for (unsigned i = 0; i < m; ++i) f[i] = (t / pow_p_[i]) % p;
    f[m] = 1;
    if (f[0] == 0) continue;
    // Powers of x (for m = 1, of the root -f_0) until they return to 1.
    Poly a(m, 0);
    a[0] = 1;
    std::vector<bool> seen(q_, false);
    bool primitive = true;
    for (std::uint32_t k = 0; k < q_ - 1; ++k) {
      Elem e = 0;
      for (unsigned i = 0; i < m; ++i) e += a[i] * pow_p_[i];
      if (seen[e]) {
        primitive = false;
        break;
      }
      seen[e] = true;
      exp_[k] = e;
      log_[e] = k;
      const std::uint64_t c = a[m - 1];
      for (unsigned i = m - 1; i > 0; --i) a[i] = static_cast<std::uint32_t>((a[i - 1] + (p - c) * f[i]) % p);
      a[0] = static_cast<std::uint32_t>(((p - c) * f[0]) % p);
    }
    if (!primitive) continue;
    if (!irreducible_by_trial_division(f, p)) throw std::logic_error("FiniteField: primitive modulus not irreducible");
    modulus_ = f;
    return;
  }
  throw std::logic_error("FiniteField: no primitive polynomial found");
}

FiniteField::Elem FiniteField::from_int(std::int64_t k) const {
  std::int64_t r = k % static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r < 0 ? r + p_ : r);
}

FiniteField::Elem FiniteField::add(Elem a, Elem b) const {
  if (p_ == 2) return a ^ b;
  Elem r = 0;
  for (unsigned i = 0; i < m_; ++i, a /= p_, b /= p_) r += ((a % p_ + b % p_) % p_) * pow_p_[i];
  return r;
}

FiniteField::Elem FiniteField::neg(Elem a) const {
  if (p_ == 2) return a;
  Elem r = 0;
  for (unsigned i = 0; i < m_; ++i, a /= p_) r += ((p_ - a % p_) % p_) * pow_p_[i];
  return r;
}

FiniteField::Elem FiniteField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FiniteField::Elem FiniteField::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  std::uint32_t s = log_[a] + log_[b];
  if (s >= q_ - 1) s -= q_ - 1;
  return exp_[s];
}

FiniteField::Elem FiniteField::inv(Elem a) const {
  if (a == 0) throw std::domain_error("FiniteField: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FiniteField::Elem FiniteField::pow(Elem a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

FiniteField::Elem FiniteField::frobenius(Elem a, unsigned k) const {
  std::uint64_t e = 1;
  for (unsigned i = 0; i < k % m_; ++i) e *= p_;
  return pow(a, e);
}

bool FiniteField::is_square(Elem a) const { return a == 0 || p_ == 2 || log_[a] % 2 == 0; }

FiniteField::Elem FiniteField::sqrt(Elem a) const {
  if (a == 0) return 0;
  if (p_ == 2) return pow(a, q_ / 2);
  if (log_[a] % 2) throw std::domain_error("FiniteField: not a square");
  return exp_[log_[a] / 2];
}

FiniteField::Elem FiniteField::trace(Elem a) const {
  Elem t = 0, x = a;
  for (unsigned i = 0; i < m_; ++i, x = frobenius(x)) t = add(t, x);
  return t;
}

std::vector<std::uint32_t> FiniteField::digits(Elem a) const {
  std::vector<std::uint32_t> d(m_);
  for (unsigned i = 0; i < m_; ++i, a /= p_) d[i] = a % p_;
  return d;
}

FiniteField::Elem FiniteField::from_digits(const std::vector<std::uint32_t>& d) const {
  Elem r = 0;
  for (unsigned i = 0; i < m_ && i < d.size(); ++i) r += (d[i] % p_) * pow_p_[i];
  return r;
}

FieldEmbedding::FieldEmbedding(std::shared_ptr<const FiniteField> small, std::shared_ptr<const FiniteField> large)
    : small_(std::move(small)), large_(std::move(large)) {
  if (small_->characteristic() != large_->characteristic() || large_->degree() % small_->degree() != 0)
    throw std::invalid_argument("FieldEmbedding: degrees must divide");
  const FiniteField& L = *large_;
  const auto& f = small_->modulus();
  auto eval = [&](FiniteField::Elem x) {
    FiniteField::Elem v = 0;
    for (std::size_t i = f.size(); i-- > 0;) v = L.add(L.mul(v, x), f[i]);
    return v;
  };
  FiniteField::Elem root = 0;
  for (FiniteField::Elem x = 1; x < L.order(); ++x)
    if (eval(x) == 0) {
      root = x;
      break;
    }
  if (root == 0) throw std::logic_error("FieldEmbedding: no root of the modulus");
  table_.resize(small_->order());
  for (FiniteField::Elem a = 0; a < small_->order(); ++a) {
    FiniteField::Elem v = 0;
    auto d = small_->digits(a);
    for (std::size_t i = d.size(); i-- > 0;) v = L.add(L.mul(v, root), d[i]);
    table_[a] = v;
  }
}

}  // namespace frobfix
