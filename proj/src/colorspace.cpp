#include "d2sim/colorspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace d2sim {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

u32 mod_pow(u64 base, u64 exp, u64 p) {
  u64 result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) result = result * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return static_cast<u32>(result);
}

// Dense little-endian polynomial over F_p, degree kept small (<= 4 here).
using Poly = std::vector<u32>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
  trim(a);
  while (a.size() >= m.size() && !a.empty()) {
    u64 inv_lead = mod_pow(m.back(), p - 2, p);
    u64 factor = a.back() * inv_lead % p;
    std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      u64 sub = factor * m[i] % p;
      a[shift + i] = static_cast<u32>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<u32>((c[i + j] + static_cast<u64>(a[i]) * b[j]) % p);
    }
  }
  return poly_mod(std::move(c), m, p);
}

Poly poly_pow_mod(Poly base, u64 exp, const Poly& m, u64 p) {
  Poly result{1};
  base = poly_mod(std::move(base), m, p);
  while (exp > 0) {
    if (exp & 1) result = poly_mul_mod(result, base, m, p);
    base = poly_mul_mod(base, base, m, p);
    exp >>= 1;
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty() && a.back() != 1) {
    u64 inv = mod_pow(a.back(), p - 2, p);
    for (auto& c : a) c = static_cast<u32>(c * inv % p);
  }
  return a;
}

// Roots of a polynomial over F_p that is known to split into distinct
// linear factors (a divisor of x^p - x). Deterministic splitting by shifted
// Legendre filters.
void split_roots(const Poly& f, u64 p, std::vector<u32>& out) {
  Poly g = f;
  trim(g);
  if (g.size() <= 1) return;
  if (g.size() == 2) {
    // a0 + a1 x = 0  =>  x = -a0 / a1
    u64 inv = mod_pow(g[1], p - 2, p);
    out.push_back(static_cast<u32>((p - g[0]) % p * inv % p));
    return;
  }
  for (u32 shift = 0;; ++shift) {
    // gcd(g, (x + shift)^((p-1)/2) - 1) separates quadratic residues
    Poly base{shift % static_cast<u32>(p), 1};
    Poly h = poly_pow_mod(base, (p - 1) / 2, g, p);
    if (h.empty()) h = Poly{0};
    h[0] = static_cast<u32>((h[0] + p - 1) % p);
    Poly part = poly_gcd(g, h, p);
    trim(part);
    if (part.size() > 1 && part.size() < g.size()) {
      split_roots(part, p, out);
      // long-divide g by the split-off factor and recurse on the quotient
      Poly q;
      Poly r = g;
      trim(r);
      q.assign(r.size() - part.size() + 1, 0);
      while (r.size() >= part.size() && !r.empty()) {
        u64 inv_lead = mod_pow(part.back(), p - 2, p);
        u64 factor = r.back() * inv_lead % p;
        std::size_t sh = r.size() - part.size();
        q[sh] = static_cast<u32>(factor);
        for (std::size_t i = 0; i < part.size(); ++i) {
          u64 sub = factor * part[i] % p;
          r[sh + i] = static_cast<u32>((r[sh + i] + p - sub) % p);
        }
        trim(r);
      }
      split_roots(q, p, out);
      return;
    }
  }
}

}  // namespace

ColorspaceReducer::ColorspaceReducer(std::uint32_t p, int degree, std::uint32_t seed_e)
    : p_(p), degree_(degree), e_(seed_e) {
  if (!is_prime(p)) throw std::invalid_argument("colorspace: p must be prime");
  if (p >= (1u << 31)) throw std::invalid_argument("colorspace: p must be below 2^31");
  if (degree < 0) throw std::invalid_argument("colorspace: degree must be nonnegative");
  if (seed_e >= p) throw std::invalid_argument("colorspace: seed out of range");
}

void ColorspaceReducer::set_seed(std::uint32_t e) {
  if (e >= p_) throw std::invalid_argument("colorspace: seed out of range");
  e_ = e;
}

int ColorspaceReducer::seed_bits() const {
  int b = 0;
  while ((std::uint64_t{1} << b) < p_) ++b;
  return b;
}

bool ColorspaceReducer::injective_for(std::int64_t palette_size) const {
  __int128 cap = 1;
  for (int i = 0; i <= degree_; ++i) {
    cap *= p_;
    if (cap >= palette_size) return true;
  }
  return cap >= palette_size;
}

std::vector<std::uint32_t> ColorspaceReducer::digits(std::int64_t x) const {
  if (x < 0) throw std::invalid_argument("colorspace: negative color");
  std::vector<std::uint32_t> out(degree_ + 1, 0);
  for (int i = 0; i <= degree_; ++i) {
    out[i] = static_cast<std::uint32_t>(x % p_);
    x /= p_;
  }
  if (x != 0) throw std::invalid_argument("colorspace: color exceeds digit capacity");
  return out;
}

std::uint32_t ColorspaceReducer::map_color(std::int64_t x, std::uint32_t e) const {
  auto psi = digits(x);
  // Horner evaluation of the digit polynomial at e
  u64 acc = 0;
  for (int i = degree_; i >= 0; --i) acc = (acc * e + psi[i]) % p_;
  return static_cast<std::uint32_t>(acc);
}

bool ColorspaceReducer::is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::uint32_t ColorspaceReducer::smallest_prime_at_least(std::uint32_t x) {
  std::uint32_t p = std::max<std::uint32_t>(2, x);
  while (!is_prime(p)) ++p;
  return p;
}

int ColorspaceReducer::smallest_degree(std::uint32_t p, std::int64_t palette_size) {
  __int128 cap = 1;
  for (int d = 0; d < 64; ++d) {
    cap *= p;
    if (cap >= palette_size) return d;
  }
  throw std::invalid_argument("colorspace: palette too large");
}

std::vector<std::uint32_t> pair_collision_roots(std::int64_t x, std::int64_t x2,
                                                const ColorspaceReducer& reducer) {
  if (x == x2) throw std::invalid_argument("pair_collision_roots: colors must differ");
  std::uint32_t p = reducer.p();
  auto a = reducer.digits(x);
  auto b = reducer.digits(x2);
  Poly diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff[i] = static_cast<u32>((a[i] + p - b[i]) % p);
  }
  trim(diff);
  if (diff.empty()) throw std::logic_error("pair_collision_roots: identical digit vectors");
  if (diff.size() == 1) return {};  // nonzero constant, no roots
  std::vector<std::uint32_t> roots;
  if (p <= (1u << 16)) {
    for (u32 e = 0; e < p; ++e) {
      u64 acc = 0;
      for (std::size_t i = diff.size(); i-- > 0;) acc = (acc * e + diff[i]) % p;
      if (acc == 0) roots.push_back(e);
    }
  } else {
    if (static_cast<int>(diff.size()) - 1 > 4) {
      throw std::invalid_argument("pair_collision_roots: degree above 4 needs p <= 2^16");
    }
    // radical part dividing x^p - x carries exactly the distinct roots
    Poly xp = poly_pow_mod(Poly{0, 1}, p, diff, p);  // x^p mod diff
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = static_cast<u32>((xp[1] + p - 1) % p);   // x^p - x
    Poly radical = poly_gcd(diff, xp, p);
    split_roots(radical, p, roots);
    std::sort(roots.begin(), roots.end());
  }
  return roots;
}

Rational conditional_expectation(const std::vector<int>& prefix_bits,
                                 const std::vector<std::vector<std::uint32_t>>& root_sets,
                                 std::uint32_t p) {
  int ell = 0;
  while ((std::uint64_t{1} << ell) < p) ++ell;
  if (static_cast<int>(prefix_bits.size()) > ell) {
    throw std::invalid_argument("conditional_expectation: prefix longer than seed");
  }
  int suffix = ell - static_cast<int>(prefix_bits.size());
  std::int64_t lo = 0;
  for (int b : prefix_bits) lo = (lo << 1) | (b ? 1 : 0);
  lo <<= suffix;
  std::int64_t hi = lo + (std::int64_t{1} << suffix);  // exclusive
  std::int64_t cube = hi - lo;

  std::int64_t overflow = std::max<std::int64_t>(0, hi - std::max<std::int64_t>(lo, p));
  Rational expectation(overflow, cube);
  for (const auto& roots : root_sets) {
    std::int64_t hits = 0;
    for (std::uint32_t r : roots) {
      std::int64_t rv = r;
      if (rv >= lo && rv < hi && rv < static_cast<std::int64_t>(p)) ++hits;
    }
    expectation = expectation + Rational(hits, cube);
  }
  return expectation;
}

SeedSearch fix_seed_bits(const std::vector<std::vector<std::uint32_t>>& root_sets,
                         std::uint32_t p) {
  int ell = 0;
  while ((std::uint64_t{1} << ell) < p) ++ell;
  SeedSearch result;
  std::vector<int> prefix;
  result.expectations.push_back(conditional_expectation(prefix, root_sets, p));
  for (int i = 0; i < ell; ++i) {
    prefix.push_back(0);
    Rational zero = conditional_expectation(prefix, root_sets, p);
    prefix.back() = 1;
    Rational one = conditional_expectation(prefix, root_sets, p);
    if (zero <= one) {
      prefix.back() = 0;
      result.expectations.push_back(zero);
    } else {
      result.expectations.push_back(one);
    }
  }
  std::uint64_t value = 0;
  for (int b : prefix) value = (value << 1) | static_cast<unsigned>(b);
  result.seed = static_cast<std::uint32_t>(value);
  return result;
}

}  // namespace d2sim
