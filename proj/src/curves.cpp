#include "frobfix/curves.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace frobfix {

namespace {

std::int64_t mod_p(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

std::vector<std::int64_t> small_prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::int64_t CurveSpec::discriminant() const {
  const std::int64_t P = p;
  auto m = [P](std::int64_t v) { return mod_p(v, P); };
  const std::int64_t a1 = m(a[0]), a2 = m(a[1]), a3 = m(a[2]), a4 = m(a[3]), a6 = m(a[4]);
  const std::int64_t b2 = m(a1 * a1 + 4 * a2), b4 = m(2 * a4 + a1 * a3), b6 = m(a3 * a3 + 4 * a6);
  const std::int64_t b8 = m(m(a1 * a1 * a6) + m(4 * a2 * a6) - m(a1 * a3 * a4) + m(a2 * a3 * a3) - m(a4 * a4));
  return m(-m(b2 * b2 % P * b8) - m(8 * m(b4 * b4 % P * b4)) - m(27 * m(b6 * b6)) + m(9 * m(b2 * b4 % P * b6)));
}

void CurveSpec::validate() const {
  if (!is_prime(Integer(p))) throw std::invalid_argument("curve " + name + ": p must be prime");
  if (discriminant() == 0) throw std::invalid_argument("curve " + name + ": singular (discriminant 0)");
}

WeierstrassCurve::WeierstrassCurve(std::shared_ptr<const FiniteField> field, std::array<Elem, 5> a)
    : field_(std::move(field)), a_(a) {
  for (Elem c : a_)
    if (c >= field_->order()) throw std::invalid_argument("WeierstrassCurve: coefficient outside the field");
  if (discriminant() == 0) throw std::invalid_argument("WeierstrassCurve: singular curve");
}

WeierstrassCurve WeierstrassCurve::over(const CurveSpec& spec, unsigned k, std::uint64_t ceiling) {
  spec.validate();
  auto F = FiniteField::get(spec.p, k, ceiling);
  std::array<Elem, 5> a{};
  for (std::size_t i = 0; i < 5; ++i) a[i] = F->from_int(spec.a[i]);
  return WeierstrassCurve(F, a);
}

WeierstrassCurve::Elem WeierstrassCurve::discriminant() const {
  const FiniteField& F = *field_;
  auto [a1, a2, a3, a4, a6] = a_;
  auto c = [&F](std::int64_t k) { return F.from_int(k); };
  const Elem b2 = F.add(F.mul(a1, a1), F.mul(c(4), a2));
  const Elem b4 = F.add(F.mul(c(2), a4), F.mul(a1, a3));
  const Elem b6 = F.add(F.mul(a3, a3), F.mul(c(4), a6));
  Elem b8 = F.add(F.mul(F.mul(a1, a1), a6), F.mul(c(4), F.mul(a2, a6)));
  b8 = F.sub(b8, F.mul(a1, F.mul(a3, a4)));
  b8 = F.add(b8, F.mul(a2, F.mul(a3, a3)));
  b8 = F.sub(b8, F.mul(a4, a4));
  Elem d = F.neg(F.mul(F.mul(b2, b2), b8));
  d = F.sub(d, F.mul(c(8), F.pow(b4, 3)));
  d = F.sub(d, F.mul(c(27), F.mul(b6, b6)));
  d = F.add(d, F.mul(c(9), F.mul(b2, F.mul(b4, b6))));
  return d;
}

bool WeierstrassCurve::defined_over_prime_field() const {
  return std::all_of(a_.begin(), a_.end(), [this](Elem c) { return field_->in_prime_field(c); });
}

bool WeierstrassCurve::contains(const Point& P) const {
  if (P.infinity) return true;
  const FiniteField& F = *field_;
  auto [a1, a2, a3, a4, a6] = a_;
  const Elem lhs = F.add(F.mul(P.y, P.y), F.mul(P.y, F.add(F.mul(a1, P.x), a3)));
  const Elem x2 = F.mul(P.x, P.x);
  const Elem rhs = F.add(F.add(F.mul(x2, P.x), F.mul(a2, x2)), F.add(F.mul(a4, P.x), a6));
  return lhs == rhs;
}

Point WeierstrassCurve::neg(const Point& P) const {
  if (P.infinity) return P;
  const FiniteField& F = *field_;
  return Point::affine(P.x, F.sub(F.neg(P.y), F.add(F.mul(a_[0], P.x), a_[2])));
}

Point WeierstrassCurve::add(const Point& P, const Point& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const FiniteField& F = *field_;
  auto [a1, a2, a3, a4, a6] = a_;
  Elem lambda, nu;
  if (P.x == Q.x) {
    if (F.add(F.add(P.y, Q.y), F.add(F.mul(a1, Q.x), a3)) == 0) return Point::at_infinity();
    const Elem denom = F.add(F.add(F.mul(F.from_int(2), P.y), F.mul(a1, P.x)), a3);
    const Elem x2 = F.mul(P.x, P.x);
    Elem num = F.add(F.add(F.mul(F.from_int(3), x2), F.mul(F.from_int(2), F.mul(a2, P.x))), a4);
    lambda = F.div(F.sub(num, F.mul(a1, P.y)), denom);
    Elem nnum = F.add(F.neg(F.mul(x2, P.x)), F.mul(a4, P.x));
    nnum = F.sub(F.add(nnum, F.mul(F.from_int(2), a6)), F.mul(a3, P.y));
    nu = F.div(nnum, denom);
  } else {
    const Elem dx = F.sub(Q.x, P.x);
    lambda = F.div(F.sub(Q.y, P.y), dx);
    nu = F.div(F.sub(F.mul(P.y, Q.x), F.mul(Q.y, P.x)), dx);
  }
  const Elem x3 = F.sub(F.sub(F.add(F.mul(lambda, lambda), F.mul(a1, lambda)), a2), F.add(P.x, Q.x));
  const Elem y3 = F.sub(F.neg(F.add(F.mul(F.add(lambda, a1), x3), nu)), a3);
  return Point::affine(x3, y3);
}

Point WeierstrassCurve::mul(std::int64_t k, const Point& P) const {
  Point base = k < 0 ? neg(P) : P;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Point acc = Point::at_infinity();
  while (n) {
    if (n & 1) acc = add(acc, base);
    base = add(base, base);
    n >>= 1;
  }
  return acc;
}

std::vector<Point> WeierstrassCurve::enumerate() const {
  const FiniteField& F = *field_;
  const std::uint32_t q = F.order();
  auto [a1, a2, a3, a4, a6] = a_;
  std::vector<Point> pts{Point::at_infinity()};

  // In characteristic 2, z^2 + z = w has solutions z and z + 1 or none.
  std::vector<std::int64_t> artin_schreier;
  if (F.characteristic() == 2) {
    artin_schreier.assign(q, -1);
    for (Elem z = 0; z < q; ++z) {
      Elem w = F.add(F.mul(z, z), z);
      if (artin_schreier[w] < 0) artin_schreier[w] = z;
    }
  }

  const Elem half = F.characteristic() == 2 ? 0 : F.inv(F.from_int(2));
  for (Elem x = 0; x < q; ++x) {
    const Elem b = F.add(F.mul(a1, x), a3);
    const Elem x2 = F.mul(x, x);
    const Elem c = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
    std::vector<Elem> ys;
    if (F.characteristic() == 2) {
      if (b == 0) {
        ys.push_back(F.sqrt(c));
      } else {
        const std::int64_t z = artin_schreier[F.div(c, F.mul(b, b))];
        if (z >= 0) {
          ys.push_back(F.mul(b, static_cast<Elem>(z)));
          ys.push_back(F.mul(b, F.add(static_cast<Elem>(z), 1)));
        }
      }
    } else {
      const Elem shift = F.mul(b, half);
      const Elem d = F.add(c, F.mul(shift, shift));
      if (d == 0) {
        ys.push_back(F.neg(shift));
      } else if (F.is_square(d)) {
        const Elem r = F.sqrt(d);
        ys.push_back(F.sub(r, shift));
        ys.push_back(F.sub(F.neg(r), shift));
      }
    }
    std::sort(ys.begin(), ys.end());
    for (Elem y : ys) pts.push_back(Point::affine(x, y));
  }
  return pts;
}

// ---------------------------------------------------------------------------

std::uint64_t PointGroup::key(const Point& P) {
  return P.infinity ? std::numeric_limits<std::uint64_t>::max() : (static_cast<std::uint64_t>(P.x) << 32) | P.y;
}

PointGroup::PointGroup(WeierstrassCurve curve) : curve_(std::move(curve)), points_(curve_.enumerate()) {
  const auto& E = curve_;
  const std::int64_t N = static_cast<std::int64_t>(points_.size());
  const std::int64_t q1 = static_cast<std::int64_t>(E.field().order()) - 1;

  // n1 is the largest d with E[d] of order d^2; it divides gcd(N, q - 1).
  std::int64_t n1 = 1;
  const std::int64_t g = std::gcd(N, q1);
  for (std::int64_t d = g; d > 1; --d) {
    if (g % d != 0 || N % (d * d) != 0) continue;
    std::int64_t killed = 0;
    for (const Point& P : points_)
      if (E.mul(d, P).infinity) ++killed;
    if (killed == d * d) {
      n1 = d;
      break;
    }
  }
  const std::int64_t n2 = N / n1;

  auto has_order = [&E](const Point& P, std::int64_t n, const std::vector<std::int64_t>& primes) {
    if (!E.mul(n, P).infinity) return false;
    for (std::int64_t l : primes)
      if (E.mul(n / l, P).infinity) return false;
    return true;
  };

  if (n2 == 1) {
    coords_.emplace(key(points_[0]), std::pair<std::int64_t, std::int64_t>{0, 0});
    return;
  }
  const auto primes2 = small_prime_factors(n2);
  Point G2;
  for (const Point& P : points_)
    if (has_order(P, n2, primes2)) {
      G2 = P;
      break;
    }
  std::unordered_map<std::uint64_t, std::int64_t> multiples;
  {
    Point R = Point::at_infinity();
    for (std::int64_t b = 0; b < n2; ++b, R = E.add(R, G2)) multiples.emplace(key(R), b);
  }

  Point G1 = Point::at_infinity();
  if (n1 > 1) {
    const auto primes1 = small_prime_factors(n1);
    for (const Point& Q : points_) {
      bool full = true;
      for (std::int64_t l : primes1)
        if (multiples.count(key(E.mul(n1 / l, Q)))) {
          full = false;
          break;
        }
      if (!full) continue;
      const std::int64_t t = multiples.at(key(E.mul(n1, Q)));
      if (t % n1 != 0) throw std::logic_error("PointGroup: quotient does not split");
      G1 = E.add(Q, E.neg(E.mul(t / n1, G2)));
      break;
    }
    if (G1.infinity) throw std::logic_error("PointGroup: no complement generator");
  }

  Point base = Point::at_infinity();
  for (std::int64_t a = 0; a < n1; ++a, base = E.add(base, G1)) {
    Point R = base;
    for (std::int64_t b = 0; b < n2; ++b, R = E.add(R, G2)) coords_.emplace(key(R), std::pair{a, b});
  }
  if (static_cast<std::int64_t>(coords_.size()) != N) throw std::logic_error("PointGroup: generators do not span");

  if (n1 > 1) {
    structure_ = FgAbGroup(0, {Integer(n1), Integer(n2)});
    generators_ = {G1, G2};
    orders_ = {n1, n2};
  } else {
    structure_ = FgAbGroup(0, {Integer(n2)});
    generators_ = {G2};
    orders_ = {n2};
  }
}

bool PointGroup::contains(const Point& P) const { return coords_.count(key(P)) > 0; }

IntVector PointGroup::coordinates(const Point& P) const {
  auto it = coords_.find(key(P));
  if (it == coords_.end()) throw std::out_of_range("PointGroup: point not in the group");
  IntVector c(structure_.generator_count());
  if (c.size() == 2) {
    c(0) = it->second.first;
    c(1) = it->second.second;
  } else if (c.size() == 1) {
    c(0) = it->second.second;
  }
  return c;
}

Point PointGroup::from_coordinates(const IntVector& c) const {
  IntVector r = structure_.reduce(c);
  Point P = Point::at_infinity();
  for (Eigen::Index j = 0; j < r.size(); ++j)
    P = curve_.add(P, curve_.mul(r(j).convert_to<std::int64_t>(), generators_[static_cast<std::size_t>(j)]));
  return P;
}

PointGroup point_group(const CurveSpec& spec, unsigned k, std::uint64_t ceiling) {
  return PointGroup(WeierstrassCurve::over(spec, k, ceiling));
}

Point frobenius(const WeierstrassCurve& E, const Point& P) {
  if (!E.defined_over_prime_field()) throw std::invalid_argument("frobenius: curve not defined over F_p");
  if (P.infinity) return P;
  return Point::affine(E.field().frobenius(P.x), E.field().frobenius(P.y));
}

Point verschiebung(const WeierstrassCurve& E, const Point& P) {
  if (!E.defined_over_prime_field()) throw std::invalid_argument("verschiebung: curve not defined over F_p");
  if (P.infinity) return P;
  const unsigned m = E.field().degree();
  const Point pre = Point::affine(E.field().frobenius(P.x, m - 1), E.field().frobenius(P.y, m - 1));
  return E.mul(E.field().characteristic(), pre);
}

GroupHom frobenius_on_points(const PointGroup& G) {
  return G.hom_to(G, [&G](const Point& P) { return frobenius(G.curve(), P); });
}

GroupHom verschiebung_on_points(const PointGroup& G) {
  return G.hom_to(G, [&G](const Point& P) { return verschiebung(G.curve(), P); });
}

Point embed_point(const FieldEmbedding& e, const Point& P) {
  if (P.infinity) return P;
  return Point::affine(e(P.x), e(P.y));
}

GroupHom point_inclusion(const PointGroup& small, const PointGroup& large) {
  FieldEmbedding e(small.curve().field_ptr(), large.curve().field_ptr());
  for (std::size_t i = 0; i < 5; ++i)
    if (e(small.curve().coefficients()[i]) != large.curve().coefficients()[i])
      throw std::invalid_argument("point_inclusion: curves differ");
  return small.hom_to(large, [&e](const Point& P) { return embed_point(e, P); });
}

std::int64_t trace_of_frobenius(const CurveSpec& spec) {
  const auto E = WeierstrassCurve::over(spec, 1);
  return static_cast<std::int64_t>(spec.p) + 1 - static_cast<std::int64_t>(E.enumerate().size());
}

Integer point_count_from_trace(std::int64_t a, std::uint32_t p, unsigned k) {
  Integer s_prev = 2, s = a;
  if (k == 0) return 0;
  for (unsigned i = 1; i < k; ++i) {
    Integer next = Integer(a) * s - Integer(p) * s_prev;
    s_prev = s;
    s = next;
  }
  return ipow(Integer(p), k) + 1 - s;
}

Integer point_count(const CurveSpec& spec, unsigned k) {
  return point_count_from_trace(trace_of_frobenius(spec), spec.p, k);
}

Integer isogeny_degree_form(std::int64_t a, const Integer& p, const Integer& r, const Integer& s) {
  return s * s + Integer(a) * r * s + p * r * r;
}

Integer isogeny_degree_form(const CurveSpec& spec, const Integer& r, const Integer& s) {
  return isogeny_degree_form(trace_of_frobenius(spec), Integer(spec.p), r, s);
}

bool IsogenyKernelCheck::consistent() const {
  for (const auto& c : counts)
    if (c.count == 0 || degree % c.count != 0) return false;
  return true;
}

IsogenyKernelCheck isogeny_kernel_check(const CurveSpec& spec, std::int64_t r, std::int64_t s, unsigned max_level,
                                        std::uint64_t ceiling) {
  const std::int64_t a = trace_of_frobenius(spec);
  IsogenyKernelCheck out;
  out.r = r;
  out.s = s;
  out.degree = isogeny_degree_form(a, Integer(spec.p), Integer(r), Integer(s));
  out.separable = mod_p(s + r * a, spec.p) != 0;
  for (unsigned k = 1; k <= max_level; ++k) {
    std::optional<WeierstrassCurve> E;
    try {
      E = WeierstrassCurve::over(spec, k, ceiling);
    } catch (const ResourceError&) {
      break;
    }
    std::uint64_t count = 0;
    for (const Point& P : E->enumerate())
      if (E->add(E->mul(s, P), E->mul(r, verschiebung(*E, P))).infinity) ++count;
    out.counts.push_back({k, count});
    if (!out.rational_level && Integer(count) == out.degree) out.rational_level = k;
  }
  return out;
}

VerschiebungReport verschiebung_report(const CurveSpec& spec, unsigned max_level, unsigned kernel_max_level,
                                       std::uint64_t ceiling) {
  VerschiebungReport out;
  out.curve = spec;
  out.max_level = max_level;
  const std::int64_t p = spec.p;
  for (unsigned k = 1; k <= max_level; ++k) {
    const WeierstrassCurve E = WeierstrassCurve::over(spec, k, ceiling);
    for (const Point& P : E.enumerate()) {
      const Point pP = E.mul(p, P);
      out.v_after_phi = out.v_after_phi && verschiebung(E, frobenius(E, P)) == pP;
      out.phi_after_v = out.phi_after_v && frobenius(E, verschiebung(E, P)) == pP;
      ++out.points_checked;
    }
  }
  for (std::int64_t r = -5; r <= 5; ++r)
    for (std::int64_t s = -5; s <= 5; ++s)
      if ((r || s) && isogeny_degree_form(spec, r, s) <= 0) out.form_positive = false;
  out.p_minus_v_degree = isogeny_degree_form(spec, -1, p);
  out.expected_degree = Integer(p) * point_count(spec, 1);
  out.kernel = isogeny_kernel_check(spec, -1, p, kernel_max_level, ceiling);
  return out;
}

SharpnessWitness odd_power_sharpness(std::uint32_t p) {
  SharpnessWitness w;
  w.p = p;
  auto F = FiniteField::get(p, 2);
  const std::uint64_t q = F->order();
  std::uint64_t total = 1;
  for (int i = 0; i < 5; ++i) total *= q;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::array<FiniteField::Elem, 5> a{};
    std::uint64_t r = t;
    for (std::size_t i = 0; i < 5; ++i, r /= q) a[i] = static_cast<FiniteField::Elem>(r % q);
    std::optional<WeierstrassCurve> E;
    try {
      E = WeierstrassCurve(F, a);
    } catch (const std::invalid_argument&) {
      continue;
    }
    const std::uint64_t n = E->enumerate().size();
    const std::int64_t trace = static_cast<std::int64_t>(q) + 1 - static_cast<std::int64_t>(n);
    if (trace != 2 * static_cast<std::int64_t>(p) && trace != -2 * static_cast<std::int64_t>(p)) continue;
    w.found = true;
    w.a = a;
    w.point_count = n;
    w.trace = trace;
    // s^2 + t r s + q r^2 = (s + (t/2) r)^2
    w.r = 1;
    w.s = -trace / 2;
    w.form_value = isogeny_degree_form(trace, Integer(q), Integer(w.r), Integer(w.s));
    return w;
  }
  return w;
}

}  // namespace frobfix
