#include "arithfrac/rings.hpp"

#include <boost/functional/hash.hpp>

#include "arithfrac/error.hpp"

namespace arithfrac {

namespace {

bool is_squarefree(std::int64_t n) {
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (std::uint64_t p = 2; p * p <= m; ++p) {
    if (m % (p * p) == 0) return false;
    while (m % p == 0) m /= p;
  }
  return true;
}

void require_same_ring(const RingElement& x, const RingElement& y) {
  if (!(x.ring() == y.ring())) {
    throw InputError("ring mismatch: " + x.ring().name() + " vs " + y.ring().name());
  }
}

}  // namespace

RingSpec RingSpec::quadratic(std::int64_t d) {
  if (d >= 0) throw InputError("quadratic ring needs d < 0, got " + std::to_string(d));
  if (!is_squarefree(d)) throw InputError("quadratic ring needs squarefree d, got " + std::to_string(d));
  return RingSpec(Kind::quadratic, d);
}

std::string RingSpec::name() const {
  if (is_integers()) return "Z";
  return "Z[sqrt(" + std::to_string(d_) + ")]";
}

RingElement::RingElement(RingSpec ring, Integer u, Integer v)
    : ring_(ring), u_(std::move(u)), v_(std::move(v)) {
  if (ring_.is_integers() && v_ != 0) throw InputError("integer ring element with nonzero sqrt(d) part");
}

Integer RingElement::norm() const {
  if (ring_.is_integers()) return boost::multiprecision::abs(u_);
  return u_ * u_ + Integer(-ring_.d()) * v_ * v_;
}

RingElement RingElement::operator-() const { return RingElement(ring_, -u_, -v_); }

RingElement operator+(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  return RingElement(x.ring_, x.u_ + y.u_, x.v_ + y.v_);
}

RingElement operator-(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  return RingElement(x.ring_, x.u_ - y.u_, x.v_ - y.v_);
}

RingElement operator*(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  if (x.ring_.is_integers()) return RingElement(x.ring_, x.u_ * y.u_);
  const Integer d = x.ring_.d();
  return RingElement(x.ring_, x.u_ * y.u_ + d * x.v_ * y.v_, x.u_ * y.v_ + x.v_ * y.u_);
}

std::strong_ordering operator<=>(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  int c = x.u_.compare(y.u_);
  if (c == 0) c = x.v_.compare(y.v_);
  return c <=> 0;
}

std::string RingElement::to_string() const {
  if (ring_.is_integers()) return u_.str();
  return "(" + u_.str() + "," + v_.str() + ")";
}

namespace {

std::size_t hash_integer(const Integer& x) noexcept {
  const auto& b = x.backend();
  std::size_t seed = b.size() * 2 + (b.sign() ? 1 : 0);
  const auto* limbs = b.limbs();
  for (std::size_t k = 0; k < b.size(); ++k) boost::hash_combine(seed, limbs[k]);
  return seed;
}

}  // namespace

std::size_t RingElementHash::operator()(const RingElement& e) const noexcept {
  std::size_t seed = hash_integer(e.u());
  boost::hash_combine(seed, hash_integer(e.v()));
  return seed;
}

std::optional<RingElement> try_divide(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  if (y.is_zero()) throw InputError("division by zero");
  if (x.ring().is_integers()) {
    if (x.u() % y.u() != 0) return std::nullopt;
    return RingElement(x.ring(), x.u() / y.u());
  }
  // x / y = x * conj(y) / norm(y)
  const Integer d = x.ring().d();
  const Integer n = y.norm();
  const Integer num_u = x.u() * y.u() - d * x.v() * y.v();
  const Integer num_v = x.v() * y.u() - x.u() * y.v();
  if (num_u % n != 0 || num_v % n != 0) return std::nullopt;
  return RingElement(x.ring(), num_u / n, num_v / n);
}

std::vector<RingElement> elements_of_norm_at_most(const RingSpec& ring, const Integer& bound) {
  std::vector<RingElement> out;
  if (bound < 0) return out;
  if (ring.is_integers()) {
    for (Integer u = -bound; u <= bound; ++u) out.emplace_back(ring, u);
    return out;
  }
  const Integer abs_d = -ring.d();
  const Integer u_max = isqrt(bound);
  for (Integer u = -u_max; u <= u_max; ++u) {
    const Integer v_max = isqrt((bound - u * u) / abs_d);
    for (Integer v = -v_max; v <= v_max; ++v) out.emplace_back(ring, u, v);
  }
  return out;
}

}  // namespace arithfrac
