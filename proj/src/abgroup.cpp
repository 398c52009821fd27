#include "frobfix/abgroup.hpp"

#include "frobfix/smith.hpp"

#include <sstream>
#include <stdexcept>

namespace frobfix {

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup::FgAbGroup(Eigen::Index free_rank, std::vector<Integer> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  if (free_rank_ < 0) throw std::invalid_argument("FgAbGroup: negative free rank");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw std::invalid_argument("FgAbGroup: invariant factor below 2");
    if (i + 1 < factors_.size() && factors_[i + 1] % factors_[i] != 0)
      throw std::invalid_argument("FgAbGroup: invariant factors do not form a divisibility chain");
  }
}

FgAbGroup FgAbGroup::cyclic(const Integer& n) {
  Integer a = abs(n);
  if (a == 0) return free(1);
  if (a == 1) return {};
  return FgAbGroup(0, {a});
}

Integer FgAbGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : factors_) o *= d;
  return o;
}

Integer FgAbGroup::order() const {
  if (free_rank_ != 0) throw std::domain_error("order of an infinite group");
  return torsion_order();
}

Integer FgAbGroup::torsion_exponent() const { return factors_.empty() ? Integer(1) : factors_.back(); }

const Presentation& FgAbGroup::presentation() const {
  // benign race: two threads may build equal presentations
  auto p = std::atomic_load(&presentation_);
  if (!p) {
    p = std::make_shared<const Presentation>(Presentation::canonical(*this));
    std::atomic_store(&presentation_, p);
  }
  return *p;
}

IntVector FgAbGroup::reduce(const IntVector& x) const {
  if (x.size() != generator_count()) throw std::invalid_argument("FgAbGroup::reduce: dimension mismatch");
  IntVector y = x;
  for (Eigen::Index i = 0; i < torsion_count(); ++i) y(i) = mod(y(i), factors_[i]);
  return y;
}

bool FgAbGroup::is_zero(const IntVector& x) const {
  if (x.size() != generator_count()) throw std::invalid_argument("FgAbGroup::is_zero: dimension mismatch");
  for (Eigen::Index i = 0; i < torsion_count(); ++i)
    if (x(i) % factors_[i] != 0) return false;
  for (Eigen::Index i = torsion_count(); i < generator_count(); ++i)
    if (x(i) != 0) return false;
  return true;
}

IntVector FgAbGroup::basis_vector(Eigen::Index j) const {
  IntVector e = zero();
  e(j) = 1;
  return e;
}

std::string FgAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  std::size_t i = 0;
  while (i < factors_.size()) {
    std::size_t j = i;
    while (j < factors_.size() && factors_[j] == factors_[i]) ++j;
    if (!first) os << " + ";
    first = false;
    os << "Z/" << factors_[i];
    if (j - i > 1) os << "^" << (j - i);
    i = j;
  }
  if (free_rank_ > 0) {
    if (!first) os << " + ";
    os << "Z";
    if (free_rank_ > 1) os << "^" << free_rank_;
  }
  return os.str();
}

FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  const Eigen::Index k = a.torsion_count() + b.torsion_count();
  IntMatrix rel = IntMatrix::Zero(k, k);
  Eigen::Index i = 0;
  for (const auto& d : a.invariant_factors()) rel(i, i) = d, ++i;
  for (const auto& d : b.invariant_factors()) rel(i, i) = d, ++i;
  FgAbGroup torsion = Presentation(k, rel).group();
  return FgAbGroup(a.free_rank() + b.free_rank(), torsion.invariant_factors());
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(Eigen::Index generator_count, IntMatrix relations) {
  if (relations.size() == 0) relations.resize(0, generator_count);
  if (relations.cols() != generator_count)
    throw std::invalid_argument("Presentation: relation matrix has wrong column count");
  auto d = std::make_shared<Data>();
  d->generators = generator_count;
  d->relations = std::move(relations);

  // U R V = D; normal coordinates are y = V^T x, and x = V^{-T} y.
  auto snf = smith_normal_form(d->relations);
  std::vector<Eigen::Index> keep;
  std::vector<Integer> factors;
  for (Eigen::Index i = 0; i < snf.rank; ++i)
    if (snf.D(i, i) != 1) {
      keep.push_back(i);
      factors.push_back(snf.D(i, i));
    }
  const Eigen::Index free = generator_count - snf.rank;
  for (Eigen::Index i = snf.rank; i < generator_count; ++i) keep.push_back(i);
  d->group = FgAbGroup(free, factors);

  const auto k = static_cast<Eigen::Index>(keep.size());
  d->to_normal.resize(k, generator_count);
  d->from_normal.resize(generator_count, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    d->to_normal.row(r) = snf.V.col(keep[r]).transpose();
    d->from_normal.col(r) = snf.V_inverse.row(keep[r]).transpose();
  }
  data_ = std::move(d);
}

Presentation Presentation::canonical(const FgAbGroup& group) {
  auto d = std::make_shared<Data>();
  const Eigen::Index n = group.generator_count(), k = group.torsion_count();
  d->generators = n;
  d->relations = IntMatrix::Zero(k, n);
  for (Eigen::Index i = 0; i < k; ++i) d->relations(i, i) = group.invariant_factors()[i];
  d->group = group;
  d->to_normal = identity_matrix(n);
  d->from_normal = identity_matrix(n);
  return Presentation(std::shared_ptr<const Data>(std::move(d)));
}

IntVector Presentation::normalize(const IntVector& x) const { return group().reduce(to_normal() * x); }

bool operator==(const Presentation& a, const Presentation& b) {
  if (a.data_ == b.data_) return true;
  return a.generator_count() == b.generator_count() &&
         a.relations().rows() == b.relations().rows() && a.relations() == b.relations();
}

Presentation direct_sum(const Presentation& a, const Presentation& b) {
  const Eigen::Index n = a.generator_count() + b.generator_count();
  IntMatrix rel = IntMatrix::Zero(a.relations().rows() + b.relations().rows(), n);
  rel.topLeftCorner(a.relations().rows(), a.generator_count()) = a.relations();
  rel.bottomRightCorner(b.relations().rows(), b.generator_count()) = b.relations();
  return Presentation(n, rel);
}

// ---------------------------------------------------------------------------
// GroupHom

GroupHom::GroupHom(Presentation source, Presentation target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.size() == 0) matrix_.resize(target_.generator_count(), source_.generator_count());
  if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
    throw std::invalid_argument("GroupHom: matrix shape does not match presentations");
  // every source relation must land in the target relation lattice
  const IntMatrix images = matrix_ * source_.relations().transpose();
  for (Eigen::Index j = 0; j < images.cols(); ++j)
    if (!target_.is_zero(images.col(j)))
      throw std::invalid_argument("GroupHom: source relations do not map to target relations");
}

GroupHom GroupHom::identity(const Presentation& p) { return GroupHom(p, p, identity_matrix(p.generator_count())); }

GroupHom GroupHom::zero(const Presentation& source, const Presentation& target) {
  return GroupHom(source, target, IntMatrix::Zero(target.generator_count(), source.generator_count()));
}

GroupHom GroupHom::scalar(const Presentation& p, const Integer& c) {
  IntMatrix m = identity_matrix(p.generator_count());
  for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, i) = c;
  return GroupHom(p, p, m);
}

IntVector GroupHom::apply_normal(const IntVector& y) const {
  return target_.normalize(matrix_ * (source_.from_normal() * y));
}

IntMatrix GroupHom::normal_matrix() const {
  IntMatrix m = target_.to_normal() * matrix_ * source_.from_normal();
  for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = target_.group().reduce(m.col(j));
  return m;
}

bool GroupHom::is_zero() const {
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.col(j))) return false;
  return true;
}

bool GroupHom::equals(const GroupHom& other) const {
  if (!(source_ == other.source_) || !(target_ == other.target_)) return false;
  for (Eigen::Index j = 0; j < matrix_.cols(); ++j)
    if (!target_.is_zero(matrix_.col(j) - other.matrix_.col(j))) return false;
  return true;
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  if (!(f.target() == g.source())) throw std::invalid_argument("compose: presentations do not match");
  return GroupHom(f.source(), g.target(), g.matrix() * f.matrix());
}

GroupHom operator-(const GroupHom& a, const GroupHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw std::invalid_argument("GroupHom difference: presentations do not match");
  return GroupHom(a.source(), a.target(), a.matrix() - b.matrix());
}

GroupHom operator+(const GroupHom& a, const GroupHom& b) {
  if (!(a.source() == b.source()) || !(a.target() == b.target()))
    throw std::invalid_argument("GroupHom sum: presentations do not match");
  return GroupHom(a.source(), a.target(), a.matrix() + b.matrix());
}

namespace {

// Diagonal relation matrix of a normal form, as columns d_i e_i (free
// coordinates contribute a zero column).
IntMatrix relation_columns(const FgAbGroup& g) {
  IntMatrix m = IntMatrix::Zero(g.generator_count(), g.torsion_count());
  for (Eigen::Index i = 0; i < g.torsion_count(); ++i) m(i, i) = g.invariant_factors()[i];
  return m;
}

IntMatrix drop_zero_columns(const IntMatrix& m) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    if (!m.col(j).isZero()) keep.push_back(j);
  IntMatrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = m.col(keep[j]);
  return out;
}

}  // namespace

KernelResult kernel(const GroupHom& f) {
  const FgAbGroup& src = f.source().group();
  const FgAbGroup& tgt = f.target().group();
  const IntMatrix F = f.normal_matrix();
  const Eigen::Index a = src.generator_count();

  // x lies in the kernel iff F x = Dt w for some w
  const IntMatrix Dt = relation_columns(tgt);
  IntMatrix A(F.rows(), a + Dt.cols());
  A << F, -Dt;
  IntMatrix K = integer_kernel(A);
  IntMatrix G = drop_zero_columns(IntMatrix(K.topRows(a)));
  const Eigen::Index s = G.cols();

  // relations among the generators G, modulo the source relations
  const IntMatrix Ds = relation_columns(src);
  IntMatrix B(a, s + Ds.cols());
  B << G, -Ds;
  IntMatrix R = integer_kernel(B).topRows(s);
  Presentation pk(s, R.transpose());

  IntMatrix incl = f.source().from_normal() * G * pk.from_normal();
  const FgAbGroup& kg = pk.group();
  return {kg, GroupHom(kg.presentation(), f.source(), incl)};
}

CokernelResult cokernel(const GroupHom& f) {
  const FgAbGroup& tgt = f.target().group();
  const IntMatrix F = f.normal_matrix();
  const Eigen::Index b = tgt.generator_count();
  IntMatrix rel(tgt.torsion_count() + F.cols(), b);
  rel << relation_columns(tgt).transpose(), F.transpose();
  Presentation pc(b, rel);
  const FgAbGroup& cg = pc.group();
  GroupHom proj(f.target(), cg.presentation(), pc.to_normal() * f.target().to_normal());
  IntMatrix section = f.target().from_normal() * pc.from_normal();
  return {cg, std::move(proj), std::move(section)};
}

FgAbGroup group_from_presentation(const Presentation& p) { return p.group(); }

bool is_injective(const GroupHom& f) { return kernel(f).group.is_trivial(); }
bool is_surjective(const GroupHom& f) { return cokernel(f).group.is_trivial(); }
bool is_isomorphism(const GroupHom& f) { return is_injective(f) && is_surjective(f); }

std::optional<IntVector> lift(const GroupHom& injection, const IntVector& target_vector) {
  const FgAbGroup& tgt = injection.target().group();
  const IntMatrix F = injection.normal_matrix();
  const IntMatrix Dt = relation_columns(tgt);
  IntMatrix A(F.rows(), F.cols() + Dt.cols());
  A << F, Dt;
  IntVector y = injection.target().to_normal() * target_vector;
  auto sol = solve_integer(A, y);
  if (!sol) return std::nullopt;
  return injection.source().group().reduce(sol->head(F.cols()));
}

GroupHom lift_hom(const GroupHom& injection, const GroupHom& f) {
  if (!(injection.target() == f.target())) throw std::invalid_argument("lift_hom: targets differ");
  const Presentation& ip = injection.source();
  IntMatrix m(ip.generator_count(), f.source().generator_count());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    auto x = lift(injection, f.matrix().col(j));
    if (!x) throw std::invalid_argument("lift_hom: image not contained in the subgroup");
    m.col(j) = ip.from_normal() * *x;
  }
  return GroupHom(f.source(), ip, m);
}

std::vector<IntVector> enumerate_elements(const FgAbGroup& g, const Integer& bound) {
  if (!g.is_finite()) throw ResourceError("enumerate_elements: infinite group " + g.to_string());
  if (g.order() > bound)
    throw ResourceError("enumerate_elements: order " + g.order().str() + " exceeds bound " + bound.str());
  std::vector<IntVector> out;
  const auto n = static_cast<std::size_t>(g.order());
  out.reserve(n);
  IntVector x = g.zero();
  for (std::size_t idx = 0; idx < n; ++idx) {
    out.push_back(x);
    for (Eigen::Index i = g.torsion_count() - 1; i >= 0; --i) {
      x(i) += 1;
      if (x(i) < g.invariant_factors()[i]) break;
      x(i) = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Localization

Localization Localization::invert(std::set<Integer> primes) {
  for (const auto& p : primes)
    if (!is_prime(p)) throw std::invalid_argument("Localization: " + p.str() + " is not prime");
  Localization l;
  l.primes_ = std::move(primes);
  return l;
}

Localization Localization::at_prime(const Integer& p) {
  if (!is_prime(p)) throw std::invalid_argument("Localization: " + p.str() + " is not prime");
  Localization l;
  l.cofinite_ = true;
  l.primes_ = {p};
  return l;
}

Localization Localization::rational() {
  Localization l;
  l.cofinite_ = true;
  return l;
}

bool Localization::inverts(const Integer& prime) const {
  return cofinite_ != (primes_.count(prime) > 0);
}

Integer Localization::strip(const Integer& n) const {
  if (n == 0) return 0;
  Integer m = abs(n);
  if (!cofinite_) {
    for (const auto& p : primes_)
      while (m % p == 0) m /= p;
    return m;
  }
  Integer keep = 1;
  for (const auto& p : primes_)
    while (m % p == 0) {
      m /= p;
      keep *= p;
    }
  return keep;
}

Localization Localization::join(const Localization& other) const {
  Localization out;
  if (!cofinite_ && !other.cofinite_) {
    out.primes_ = primes_;
    out.primes_.insert(other.primes_.begin(), other.primes_.end());
    return out;
  }
  out.cofinite_ = true;
  if (cofinite_ && other.cofinite_) {
    for (const auto& p : primes_)
      if (other.primes_.count(p)) out.primes_.insert(p);
    return out;
  }
  const Localization& co = cofinite_ ? *this : other;
  const Localization& fin = cofinite_ ? other : *this;
  for (const auto& p : co.primes_)
    if (!fin.primes_.count(p)) out.primes_.insert(p);
  return out;
}

std::string Localization::suffix() const {
  if (is_none()) return "";
  if (is_rational()) return "_Q";
  std::ostringstream os;
  if (!cofinite_) {
    os << "[1/";
    bool first = true;
    for (const auto& p : primes_) {
      if (!first) os << ",1/";
      first = false;
      os << p;
    }
    os << "]";
  } else {
    os << "_(";
    bool first = true;
    for (const auto& p : primes_) {
      if (!first) os << ",";
      first = false;
      os << p;
    }
    os << ")";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// LocalizedGroup

namespace {

FgAbGroup strip_group(const FgAbGroup& g, const Localization& loc) {
  std::vector<Integer> f;
  for (const auto& d : g.invariant_factors()) {
    Integer e = loc.strip(d);
    if (e != 1) f.push_back(e);
  }
  return FgAbGroup(g.free_rank(), f);
}

}  // namespace

LocalizedGroup::LocalizedGroup(const FgAbGroup& g, Localization loc)
    : underlying_(strip_group(g, loc)), loc_(std::move(loc)) {}

std::string LocalizedGroup::to_string() const {
  if (underlying_.is_trivial()) return "0";
  const std::string sfx = loc_.suffix();
  std::ostringstream os;
  FgAbGroup torsion(0, underlying_.invariant_factors());
  bool first = true;
  if (!torsion.is_trivial()) {
    os << torsion.to_string();
    first = false;
  }
  if (underlying_.free_rank() > 0) {
    if (!first) os << " + ";
    if (loc_.is_rational())
      os << "Q";
    else
      os << "Z" << sfx;
    if (underlying_.free_rank() > 1) os << "^" << underlying_.free_rank();
  }
  return os.str();
}

LocalizedGroup localize(const FgAbGroup& g, const Localization& loc) { return LocalizedGroup(g, loc); }

LocalizedGroup localize(const LocalizedGroup& g, const Localization& loc) {
  return LocalizedGroup(g.underlying(), g.localization().join(loc));
}

LocalizedGroup direct_sum(const LocalizedGroup& a, const LocalizedGroup& b) {
  Localization loc = a.localization().join(b.localization());
  return LocalizedGroup(direct_sum(a.underlying(), b.underlying()), loc);
}

GroupHom localize_hom(const GroupHom& f, const Localization& loc) {
  const FgAbGroup& G = f.source().group();
  const FgAbGroup& H = f.target().group();
  if (!(f.source() == G.presentation()) || !(f.target() == H.presentation()))
    throw std::invalid_argument("localize_hom: expects canonical presentations");
  const FgAbGroup Gs = strip_group(G, loc), Hs = strip_group(H, loc);

  // inclusion of the kept primary part of G via CRT idempotents
  IntMatrix incl = IntMatrix::Zero(G.generator_count(), Gs.generator_count());
  {
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < G.torsion_count(); ++i) {
      const Integer& d = G.invariant_factors()[i];
      Integer keep = loc.strip(d);
      if (keep == 1) continue;
      Integer rest = d / keep;
      // e = 1 mod keep, 0 mod rest
      Integer e = rest * inverse_mod(rest, keep);
      incl(i, c++) = mod(e, d);
    }
    for (Eigen::Index i = 0; i < G.free_rank(); ++i) incl(G.torsion_count() + i, c++) = 1;
  }
  // reduction onto the kept part of H
  IntMatrix proj = IntMatrix::Zero(Hs.generator_count(), H.generator_count());
  {
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < H.torsion_count(); ++i)
      if (loc.strip(H.invariant_factors()[i]) != 1) proj(r++, i) = 1;
    for (Eigen::Index i = 0; i < H.free_rank(); ++i) proj(r++, H.torsion_count() + i) = 1;
  }
  return GroupHom(Gs.presentation(), Hs.presentation(), proj * f.matrix() * incl);
}

}  // namespace frobfix
