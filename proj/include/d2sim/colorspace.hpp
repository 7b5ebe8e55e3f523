#ifndef D2SIM_COLORSPACE_HPP
#define D2SIM_COLORSPACE_HPP

#include <cstdint>
#include <vector>

#include "d2sim/rational.hpp"

namespace d2sim {

// Color-space reduction over F_p: a color x is mapped to the polynomial
// whose coefficients are the base-p digits of x, evaluated at a seed e.
// With p^(d+1) >= palette size the digit map is injective, and two distinct
// colors collide for at most d seeds.
class ColorspaceReducer {
 public:
  ColorspaceReducer(std::uint32_t p, int degree, std::uint32_t seed_e);

  std::uint32_t p() const { return p_; }
  int degree() const { return degree_; }
  std::uint32_t seed() const { return e_; }
  void set_seed(std::uint32_t e);
  int seed_bits() const;  // ceil(log2 p)

  // True when every color of a palette of the given size has a distinct
  // digit vector.
  bool injective_for(std::int64_t palette_size) const;

  std::vector<std::uint32_t> digits(std::int64_t x) const;  // little-endian, degree+1 entries
  std::uint32_t map_color(std::int64_t x) const { return map_color(x, e_); }
  std::uint32_t map_color(std::int64_t x, std::uint32_t e) const;

  static bool is_prime(std::uint32_t p);
  static std::uint32_t smallest_prime_at_least(std::uint32_t x);
  static int smallest_degree(std::uint32_t p, std::int64_t palette_size);

 private:
  std::uint32_t p_;
  int degree_;
  std::uint32_t e_;
};

// All seeds e in F_p where the digit polynomials of x and x2 agree, i.e.
// the roots of their difference polynomial. At most `degree` values.
std::vector<std::uint32_t> pair_collision_roots(std::int64_t x, std::int64_t x2,
                                                const ColorspaceReducer& reducer);

// E[Phi | prefix] where Phi = Y + sum_u X_u, Y indicates a seed value >= p
// and X_u indicates a collision in list u (root sets precomputed). The
// prefix fixes the most significant seed bits; the rest is uniform. Exact,
// via interval counting over the suffix subcube.
Rational conditional_expectation(const std::vector<int>& prefix_bits,
                                 const std::vector<std::vector<std::uint32_t>>& root_sets,
                                 std::uint32_t p);

struct SeedSearch {
  std::uint32_t seed = 0;
  std::vector<Rational> expectations;  // E before any bit, then after each fixed bit
};

// Greedy bit fixing: each bit is set to the value minimizing the
// conditional expectation. The final expectation is < 1 whenever the
// initial one is, which forces Y = 0 and all X_u = 0.
SeedSearch fix_seed_bits(const std::vector<std::vector<std::uint32_t>>& root_sets,
                         std::uint32_t p);

}  // namespace d2sim

#endif  // D2SIM_COLORSPACE_HPP
