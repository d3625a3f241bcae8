#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "abelfft/errors.hpp"

namespace abelfft {

using Complex = std::complex<double>;

/// Largest group accepted by random_automorphism.
inline constexpr std::size_t kMaxAutomorphismGroupSize = std::size_t{1} << 20;

/// Up to this size is_automorphism checks every pair exhaustively.
inline constexpr std::size_t kExhaustiveHomomorphismLimit = 4096;

/**
 * A finite abelian group Z_{n_1} x ... x Z_{n_k}.
 *
 * Elements are addressed by a row-major mixed-radix index: the last factor
 * varies fastest, so index = sum_i x_i * prod_{j>i} n_j. The dual group is
 * identified with the same list of orders; a dual element xi pairs with x
 * through exp(2 pi i sum_i x_i xi_i / n_i).
 *
 * Copies are cheap and share the underlying order/stride tables.
 */
class Group {
 public:
  /// Throws InvalidGroup on an empty list or a zero order.
  explicit Group(std::vector<std::size_t> orders);

  const std::vector<std::size_t>& orders() const noexcept { return impl_->orders; }
  const std::vector<std::size_t>& strides() const noexcept { return impl_->strides; }
  std::size_t rank() const noexcept { return impl_->orders.size(); }
  std::size_t size() const noexcept { return impl_->size; }

  /// Index arithmetic; arguments are assumed in range.
  std::size_t add_index(std::size_t a, std::size_t b) const noexcept;
  std::size_t sub_index(std::size_t a, std::size_t b) const noexcept;
  std::size_t neg_index(std::size_t a) const noexcept;

  /// Exponent r in [0, size) with <x, xi> = exp(2 pi i r / size).
  std::size_t pairing_exponent(std::size_t x, std::size_t xi) const noexcept;

  friend bool operator==(const Group& a, const Group& b) noexcept {
    return a.impl_ == b.impl_ || a.impl_->orders == b.impl_->orders;
  }

 private:
  struct Impl {
    std::vector<std::size_t> orders;
    std::vector<std::size_t> strides;
    // size / n_i, the factor that lifts x_i xi_i / n_i onto a common denominator
    std::vector<std::size_t> lift;
    std::size_t size = 1;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Throws InvalidGroup for an empty list or a non-positive entry.
Group make_group(std::span<const std::int64_t> orders);
Group make_group(std::initializer_list<std::int64_t> orders);

void require_same_group(const Group& a, const Group& b);

struct Element {
  Group group;
  std::vector<std::size_t> coords;

  friend bool operator==(const Element& a, const Element& b) {
    return a.group == b.group && a.coords == b.coords;
  }
};

/// Reduces each coordinate modulo its order (negative values wrap).
Element make_element(const Group& g, std::span<const std::int64_t> coords);
Element identity(const Group& g);

std::size_t index_of(const Element& x);
/// Throws BoundsError unless j < g.size().
Element element_of(std::size_t j, const Group& g);

Element add(const Element& x, const Element& y);
Element neg(const Element& x);

/// <x, xi>; unit modulus and bimultiplicative.
Complex character(const Element& x, const Element& xi);

/// Table of exp(sign * 2 pi i k / n) for k in [0, n), evaluated in extended
/// precision and rounded once.
std::vector<Complex> roots_of_unity(std::size_t n, int sign);

/**
 * A bijection of element indices that respects the group law.
 *
 * Construction validates with is_automorphism; use the unchecked factory
 * only for permutations already known to be automorphisms.
 */
class Automorphism {
 public:
  Automorphism(Group g, std::vector<std::size_t> perm);
  static Automorphism identity(const Group& g);
  static Automorphism unchecked(Group g, std::vector<std::size_t> perm);

  const Group& group() const noexcept { return group_; }
  const std::vector<std::size_t>& perm() const noexcept { return perm_; }
  std::size_t operator()(std::size_t index) const noexcept { return perm_[index]; }

  Automorphism inverse() const;
  /// (a.then(b))(x) = b(a(x)).
  Automorphism then(const Automorphism& next) const;

  friend bool operator==(const Automorphism& a, const Automorphism& b) {
    return a.group_ == b.group_ && a.perm_ == b.perm_;
  }

 private:
  Automorphism() = default;
  Group group_{{1}};
  std::vector<std::size_t> perm_;
};

Element apply_automorphism(const Automorphism& a, const Element& x);

/// Bijective, fixes the identity and additive on every pair (sampled with
/// 10 * size deterministic pairs above kExhaustiveHomomorphismLimit).
/// Throws InvalidPermutation if perm.size() != g.size().
bool is_automorphism(std::span<const std::size_t> perm, const Group& g);

/// First pair (x, y) with perm(x + y) != perm(x) + perm(y), if any.
struct HomomorphismViolation {
  std::size_t x;
  std::size_t y;
};
std::optional<HomomorphismViolation> find_homomorphism_violation(std::span<const std::size_t> perm,
                                                                 const Group& g);

/**
 * Seeded automorphism by rejection sampling over endomorphism matrices.
 *
 * Entry (i, j) maps the generator of factor j to a multiple of
 * n_i / gcd(n_i, n_j) in factor i, which enumerates Hom(Z_{n_j}, Z_{n_i}).
 * A draw is accepted when the induced index map is a bijection.
 * Throws InvalidGroup above kMaxAutomorphismGroupSize and ExhaustionError
 * when max_attempts draws are all singular.
 */
Automorphism random_automorphism(const Group& g, std::uint64_t seed, std::size_t max_attempts = 10000);

}  // namespace abelfft
