#include "frobfix/thh.hpp"

#include "frobfix/integer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>

namespace frobfix {

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t TruncatedOmega::dimension_in_degree(unsigned e) const {
  if (j > d || e > D) return 0;
  if (d == 0) return e == 0 ? 1 : 0;
  return binomial(d, j) * binomial(e + d - 1, d - 1);
}

TruncatedOmega omega(unsigned d, unsigned j, unsigned D) { return {d, j, D}; }

std::uint64_t HkrThh::dimension() const {
  std::uint64_t s = 0;
  for (const auto& h : summands) s += h.omega.dimension();
  return s;
}

HkrThh hkr_thh(unsigned d, unsigned n, unsigned D) {
  HkrThh h{d, n, D, {}};
  for (unsigned i = 0; 2 * i <= n; ++i) h.summands.push_back({i, omega(d, n - 2 * i, D)});
  return h;
}

// ---------------------------------------------------------------------------
// Polynomials over F_p, coefficients low to high.

namespace {

using Poly = std::vector<std::int64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, e = p - 2;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

// a mod b, b nonzero.
Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::int64_t lead = inv_mod(b.back(), p);
  while (a.size() > db) {
    const std::int64_t c = a.back() * lead % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(c), f, p);
}

Poly poly_powmod(Poly a, std::uint64_t e, const Poly& f, std::int64_t p) {
  Poly r{1};
  a = poly_mod(std::move(a), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, a, f, p);
    e >>= 1;
    if (e) a = poly_mulmod(a, a, f, p);
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

bool is_irreducible(const std::vector<std::int64_t>& f, std::int64_t p) {
  Poly g = f;
  trim(g);
  if (g.size() < 2) return false;
  const std::size_t deg = g.size() - 1;
  Poly x{0, 1};
  Poly h = x;
  for (std::size_t j = 1; 2 * j <= deg; ++j) {
    h = poly_powmod(h, static_cast<std::uint64_t>(p), g, p);
    Poly diff = h;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    if (poly_gcd(g, diff, p).size() > 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ambient field

AmbientField::AmbientField(std::int64_t p, unsigned degree, Elem modulus) : p_(p), m_(degree), f_(std::move(modulus)) {
  // column j is (x^j)^p = (x^p)^j
  Elem x_to_p = one();
  if (m_ > 1) {
    Elem x = zero();
    x[1] = 1;
    x_to_p = pow(x, static_cast<std::uint64_t>(p_));
  }
  frob_ = fp::Mat::Zero(m_, m_);
  Elem col = one();
  for (unsigned j = 0; j < m_; ++j) {
    frob_.col(j) = to_vec(col);
    col = mul(col, x_to_p);
  }
}

std::shared_ptr<const AmbientField> AmbientField::get(std::int64_t p, unsigned degree) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, unsigned>, std::shared_ptr<const AmbientField>> cache;
  if (p < 2 || !is_prime(Integer(p))) throw std::invalid_argument("AmbientField: p must be prime");
  if (degree == 0) throw std::invalid_argument("AmbientField: degree must be positive");
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, degree});
    if (it != cache.end()) return it->second;
  }
  Elem f;
  if (degree == 1) {
    f = {0, 1};
  } else {
    std::mt19937_64 rng(static_cast<std::uint64_t>(p) * 1000003u + degree);
    std::uniform_int_distribution<std::int64_t> coeff(0, p - 1);
    do {
      f.assign(degree + 1, 0);
      f[degree] = 1;
      for (unsigned i = 0; i < degree; ++i) f[i] = coeff(rng);
    } while (f[0] == 0 || !is_irreducible(f, p));
  }
  auto field = std::make_shared<const AmbientField>(p, degree, f);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_pair(p, degree), field).first->second;
}

AmbientField::Elem AmbientField::one() const {
  Elem e = zero();
  e[0] = 1;
  return e;
}

AmbientField::Elem AmbientField::add(const Elem& a, const Elem& b) const {
  Elem c(m_);
  for (unsigned i = 0; i < m_; ++i) c[i] = (a[i] + b[i]) % p_;
  return c;
}

AmbientField::Elem AmbientField::sub(const Elem& a, const Elem& b) const {
  Elem c(m_);
  for (unsigned i = 0; i < m_; ++i) c[i] = ((a[i] - b[i]) % p_ + p_) % p_;
  return c;
}

AmbientField::Elem AmbientField::mul(const Elem& a, const Elem& b) const {
  Poly c = poly_mulmod(a, b, f_, p_);
  c.resize(m_, 0);
  return c;
}

AmbientField::Elem AmbientField::pow(Elem a, std::uint64_t e) const {
  Poly c = poly_powmod(std::move(a), e, f_, p_);
  c.resize(m_, 0);
  return c;
}

fp::Vec AmbientField::to_vec(const Elem& a) {
  fp::Vec v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  return v;
}

AmbientField::Elem AmbientField::from_vec(const fp::Vec& v) const {
  Elem e(m_);
  for (unsigned i = 0; i < m_; ++i) e[i] = ((v(i) % p_) + p_) % p_;
  return e;
}

fp::Mat AmbientField::subfield_basis(unsigned k) const {
  if (k == 0 || m_ % k != 0) throw std::invalid_argument("subfield_basis: degree must divide the ambient degree");
  fp::Mat fk = fp::power(frob_, k, p_);
  return fp::nullspace(fk - fp::identity(m_), p_);
}

// ---------------------------------------------------------------------------
// Tower

FieldTower::FieldTower(std::int64_t p, unsigned top) : top_(top) {
  if (top == 0) throw std::invalid_argument("FieldTower: top level must be positive");
  if (top > 6 || factorial(top) > kMaxAmbientDegree)
    throw ResourceError("FieldTower: ambient degree " + std::to_string(top) + "! exceeds " +
                        std::to_string(kMaxAmbientDegree));
  ambient_ = AmbientField::get(p, static_cast<unsigned>(factorial(top)));
  for (unsigned m = 1; m <= top; ++m) {
    fp::Mat b = ambient_->subfield_basis(static_cast<unsigned>(factorial(m)));
    if (b.cols() != static_cast<Eigen::Index>(factorial(m))) throw std::logic_error("FieldTower: subfield has wrong degree");
    fp::Mat fb = fp::multiply(ambient_->frobenius_matrix(), b, p);
    frob_.push_back(fp::solve_columns(b, fb, p));
    basis_.push_back(std::move(b));
  }
}

void FieldTower::check(unsigned level) const {
  if (level == 0) throw std::invalid_argument("FieldTower: levels start at 1");
  if (level > top_) throw ResourceError("FieldTower: level " + std::to_string(level) + " above the ambient top " +
                                        std::to_string(top_));
}

unsigned FieldTower::degree(unsigned level) const {
  check(level);
  return static_cast<unsigned>(factorial(level));
}

const fp::Mat& FieldTower::basis(unsigned level) const {
  check(level);
  return basis_[level - 1];
}

const fp::Mat& FieldTower::frobenius(unsigned level) const {
  check(level);
  return frob_[level - 1];
}

fp::Mat FieldTower::inclusion(unsigned m, unsigned n) const {
  if (m > n) throw std::invalid_argument("FieldTower: inclusion goes up");
  return fp::solve_columns(basis(n), basis(m), characteristic());
}

unsigned witness_level(std::int64_t p, unsigned c) {
  const std::uint64_t need = static_cast<std::uint64_t>(p) * factorial(c);
  for (unsigned m = c + 1; m <= 20; ++m)
    if (factorial(m) % need == 0) return m;
  throw ResourceError("witness_level: beyond 20!");
}

// ---------------------------------------------------------------------------
// Artin-Schreier

ArtinSchreierResult artin_schreier_fixed(std::uint64_t module_dim, const FieldTower& tower, unsigned level) {
  const std::int64_t p = tower.characteristic();
  ArtinSchreierResult r;
  r.level = level;
  r.field_degree = tower.degree(level);
  r.module_dim = module_dim;
  const fp::Mat one_minus = fp::reduce(fp::identity(r.field_degree) - tower.frobenius(level), p);
  r.op = fp::block_diagonal(one_minus, static_cast<Eigen::Index>(module_dim));
  r.kernel = fp::nullspace(r.op, p);
  r.ker_dim = r.kernel.cols();
  r.coker_dim = r.op.rows() - fp::rank(r.op, p);
  return r;
}

// ---------------------------------------------------------------------------
// Rigidity report

bool ThhReport::dims_match() const {
  if (ker_dims.empty()) return false;
  for (std::size_t i = 0; i < ker_dims.size(); ++i)
    if (static_cast<std::uint64_t>(ker_dims[i]) != expected_dim || coker_dims[i] != ker_dims[i]) return false;
  return true;
}

bool ThhReport::coker_certified() const {
  return std::all_of(certificates.begin(), certificates.end(),
                     [](const ThhClassCertificate& c) { return c.dies_at && c.verified; });
}

ThhReport frobenius_thh_rigidity(std::int64_t p, unsigned d, unsigned n, unsigned D, std::vector<unsigned> levels,
                                 unsigned certify_level) {
  if (levels.empty()) throw std::invalid_argument("frobenius_thh_rigidity: no levels");
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  ThhReport r;
  r.p = p;
  r.d = d;
  r.n = n;
  r.D = D;
  r.levels = levels;
  const HkrThh h = hkr_thh(d, n, D);
  r.expected_dim = h.dimension();

  unsigned top = levels.back();
  for (unsigned m : levels)
    if (m <= certify_level) top = std::max(top, witness_level(p, m));
  FieldTower tower(p, top);

  std::vector<ArtinSchreierResult> per;
  for (unsigned m : levels) {
    per.push_back(artin_schreier_fixed(r.expected_dim, tower, m));
    r.ker_dims.push_back(per.back().ker_dim);
    r.coker_dims.push_back(per.back().coker_dim);
  }

  r.transitions_iso = true;
  const auto N = static_cast<Eigen::Index>(r.expected_dim);
  for (std::size_t i = 0; i + 1 < per.size(); ++i) {
    const fp::Mat t = fp::block_diagonal(tower.inclusion(per[i].level, per[i + 1].level), N);
    const fp::Mat image = fp::multiply(t, per[i].kernel, p);
    const bool inside = fp::multiply(per[i + 1].op, image, p).isZero();
    if (!inside || fp::rank(image, p) != per[i + 1].ker_dim) r.transitions_iso = false;
  }

  // Cokernel classes e_b (x) a: the block structure reduces the witness search
  // to the field, y - y^p = a.
  const AmbientField& K = tower.ambient();
  for (const auto& lvl : per) {
    if (lvl.level > certify_level) continue;
    const fp::Mat field_op = fp::reduce(fp::identity(lvl.field_degree) - tower.frobenius(lvl.level), p);
    for (Eigen::Index j : fp::complement_coordinates(field_op, p)) {
      ThhClassCertificate proto{lvl.level, j, std::nullopt, false};
      const fp::Vec a = fp::Vec::Unit(lvl.field_degree, j);
      for (unsigned m = lvl.level + 1; m <= tower.top() && !proto.dies_at; ++m) {
        const fp::Mat big = fp::reduce(fp::identity(tower.degree(m)) - tower.frobenius(m), p);
        const fp::Vec pushed = fp::multiply(tower.inclusion(lvl.level, m), a, p);
        auto y = fp::solve(big, pushed, p);
        if (!y) continue;
        proto.dies_at = m;
        const auto ya = K.from_vec(fp::multiply(tower.basis(m), *y, p));
        const auto aa = K.from_vec(fp::multiply(tower.basis(lvl.level), a, p));
        proto.verified = K.sub(ya, K.frobenius(ya)) == aa;
      }
      for (Eigen::Index b = 0; b < N; ++b) {
        ThhClassCertificate c = proto;
        c.generator = b * lvl.field_degree + j;
        r.certificates.push_back(c);
      }
    }
  }
  return r;
}

}  // namespace frobfix
