#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "abelfft/group.hpp"

namespace abelfft {

/// Which side of the duality a function lives on. The side fixes the Haar
/// weight: counting measure on G, (1/|G|) times counting measure on the dual.
enum class Side { primal, dual };

std::string_view to_string(Side s) noexcept;
Side flip(Side s) noexcept;
double haar_weight(const Group& g, Side s) noexcept;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kDefaultSupportRelTol = 1e-12;

/// Dense complex function on a group; values[j] holds f(element_of(j)).
class GFunction {
 public:
  /// Zero function.
  GFunction(Group g, Side side);
  /// Throws GroupMismatch when values.size() != g.size().
  GFunction(Group g, Side side, std::vector<Complex> values);

  static GFunction constant(const Group& g, Side side, Complex value);
  static GFunction delta(const Group& g, Side side, std::size_t index, Complex value = 1.0);

  const Group& group() const noexcept { return group_; }
  Side side() const noexcept { return side_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  const Complex& operator[](std::size_t j) const noexcept { return values_[j]; }
  Complex& operator[](std::size_t j) noexcept { return values_[j]; }

  GFunction& operator+=(const GFunction& other);
  GFunction& operator-=(const GFunction& other);
  GFunction& operator*=(Complex scale);

 private:
  Group group_;
  Side side_;
  std::vector<Complex> values_;
};

GFunction operator+(GFunction a, const GFunction& b);
GFunction operator-(GFunction a, const GFunction& b);
GFunction operator*(Complex scale, GFunction f);

GFunction conj(GFunction f);

/// Throws GroupMismatch / SideMismatch.
void require_compatible(const GFunction& f, const GFunction& g);
void require_side(const GFunction& f, Side expected);

/// Indices where |f| exceeds a threshold; the closure of the support is the
/// set itself on a discrete group.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {}

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t j) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<std::size_t> indices_;  // sorted ascending
};

SupportSet support(const GFunction& f, double support_tol);
/// Threshold kDefaultSupportRelTol * norm_inf(f).
SupportSet support(const GFunction& f);

double norm_inf(const GFunction& f);
/// Weighted L2 norm: sqrt(w * sum |f|^2) with the side's Haar weight.
double norm_2(const GFunction& f);
double max_abs_diff(const GFunction& a, const GFunction& b);

// --- transforms ---------------------------------------------------------------

/**
 * One-dimensional DFT plan, X[k] = sum_j x[j] exp(-2 pi i jk/n).
 *
 * Lengths whose prime factors are all in {2, 3, 5} run a recursive
 * mixed-radix Cooley-Tukey; other lengths go through Bluestein's chirp-z
 * identity, embedding the problem in a power-of-two cyclic convolution of
 * length >= 2n - 1. Plans are immutable and safe to share between threads.
 */
class CyclicPlan {
 public:
  explicit CyclicPlan(std::size_t n);

  std::size_t length() const noexcept { return n_; }
  bool uses_bluestein() const noexcept { return bluestein_ != nullptr; }

  /// in and out must not alias; both have length n.
  void forward(std::span<const Complex> in, std::span<Complex> out) const;

 private:
  struct Bluestein;

  void cooley_tukey(const Complex* in, std::size_t stride, Complex* out, std::size_t n,
                    std::size_t level) const;

  std::size_t n_;
  std::vector<std::size_t> radices_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k / n)
  std::shared_ptr<const Bluestein> bluestein_;
};

/// Row-column transform over all cyclic factors of a group.
class GroupPlan {
 public:
  explicit GroupPlan(const Group& g);

  const Group& group() const noexcept { return group_; }

  /// Unnormalized forward transform of raw values (sign -1).
  std::vector<Complex> forward(std::span<const Complex> values) const;
  /// sum_xi F(xi) <x, xi>, without the 1/size factor.
  std::vector<Complex> backward(std::span<const Complex> values) const;

 private:
  Group group_;
  std::vector<std::shared_ptr<const CyclicPlan>> axes_;
};

/// Shared plan for g, built once per distinct list of orders.
std::shared_ptr<const GroupPlan> plan_for(const Group& g);

/// O(size^2) evaluation of the defining sum f^(xi) = sum_x f(x) conj<x, xi>.
GFunction dft_naive(const GFunction& f);
/// Inverse of dft_naive by direct summation, (1/size) sum_xi F(xi) <x, xi>.
GFunction idft_naive(const GFunction& F);

GFunction fft_forward(const GFunction& f);
GFunction fft_inverse(const GFunction& F);

/// f*(x) = conj(f(-x)), same side.
GFunction star(const GFunction& f);

/// The involution of the function algebra on f's side: star on the primal
/// side, pointwise conjugation on the dual side. This is star carried across
/// the transform, fft_forward(star(f)) = involution(fft_forward(f)); plain
/// star on the dual side does not satisfy that law.
GFunction involution(const GFunction& f);

GFunction pointwise_product(const GFunction& f, const GFunction& g);

/// (f * g)(x) = w sum_y f(x - y) g(y) with w the Haar weight of the side.
GFunction convolve(const GFunction& f, const GFunction& g);
/// Same product through transform, multiply, inverse.
GFunction convolve_fast(const GFunction& f, const GFunction& g);

}  // namespace abelfft
