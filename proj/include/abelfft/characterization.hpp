#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelfft/group.hpp"
#include "abelfft/transform.hpp"

namespace abelfft {

/// T maps functions on G to functions on the dual; U maps G to G.
enum class OperatorForm { T, U };

std::string_view to_string(OperatorForm form) noexcept;

/// Dense serialization: apply(f) = M f, or M conj(f) when conjugate_input.
struct MatrixForm {
  std::vector<Complex> entries;  // row-major, output index x input index
  bool conjugate_input = false;
};

/**
 * Black-box map between function spaces on one group.
 *
 * Nothing here assumes linearity. A matrix form may be attached for
 * serialization; the checker and the recovery still go through apply().
 */
class Operator {
 public:
  using Map = std::function<GFunction(const GFunction&)>;

  /// concurrent_safe = false forces serial evaluation inside recover().
  Operator(Group g, Side input_side, Side output_side, Map map, bool concurrent_safe = true);

  /// Throws GroupMismatch unless matrix is size x size.
  static Operator from_matrix(Group g, Side input_side, Side output_side, MatrixForm matrix);

  const Group& group() const noexcept { return group_; }
  Side input_side() const noexcept { return input_side_; }
  Side output_side() const noexcept { return output_side_; }
  bool concurrent_safe() const noexcept { return concurrent_safe_; }
  const std::optional<MatrixForm>& matrix() const noexcept { return matrix_; }

  /// T-form (primal -> dual) or U-form (primal -> primal); nullopt otherwise.
  std::optional<OperatorForm> form() const noexcept;

  /// Checks the input side and group, and that the map honoured the output side.
  GFunction operator()(const GFunction& f) const;

 private:
  Group group_;
  Side input_side_;
  Side output_side_;
  Map map_;
  bool concurrent_safe_;
  std::optional<MatrixForm> matrix_;
};

/// Columns are apply(delta_x). Exact for linear operators and for
/// antilinear ones tagged conjugate_input, since point masses are real.
MatrixForm materialize(const Operator& op, bool conjugate_input);

/// U-form: f -> f o psi; T-form: f -> fft_forward(f o psi); with the
/// input conjugated first when conjugation is set.
Operator build_reference_operator(const Group& g, const Automorphism& psi, bool conjugation,
                                  OperatorForm form);

/// U := fft_inverse o T for T-form operators; U-form operators pass through.
Operator reduce_to_u(const Operator& op);

// --- hypothesis check ---------------------------------------------------------

/// Point-mass pairs are used exhaustively when size^2 is at most this.
inline constexpr std::size_t kBasisPairLimit = 4096;

struct HypothesisReport {
  double max_err_a = 0.0;  // T(f + g*) = T f + (T g)*, each * the involution of its side
  double max_err_b = 0.0;  // products: T(f g) = T f * T g, or U(f g) = U f U g
  double max_err_c = 0.0;  // convolutions: T(f * g) = T f T g, or U(f * g) = U f * U g
  std::size_t trials = 0;
  std::size_t basis_pairs = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;

  bool pass_a() const noexcept { return max_err_a <= tol; }
  bool pass_b() const noexcept { return max_err_b <= tol; }
  bool pass_c() const noexcept { return max_err_c <= tol; }
  bool pass() const noexcept { return pass_a() && pass_b() && pass_c(); }
};

/**
 * Evaluates the three algebraic identities on every pair of point masses
 * (when size^2 <= kBasisPairLimit) and on `trials` seeded pairs of complex
 * Gaussian functions, recording the worst absolute discrepancy of each.
 *
 * When the operator changes side (T-form) products and convolutions are
 * exchanged; otherwise (U-form) each is preserved. Convolutions use the
 * Haar weight of the side they are taken on.
 */
HypothesisReport check_hypotheses(const Operator& op, std::size_t trials, std::uint64_t seed,
                                  double tol = kDefaultTolerance);

// --- recovery -------------------------------------------------------------------

/// The operator is not of the form f -> m(f o psi) (or its T analogue).
class NotEssentiallyFourier : public Error {
 public:
  NotEssentiallyFourier(std::string step, const std::string& what)
      : Error(step + ": " + what), step_(std::move(step)) {}

  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

/// A transformed point mass that is not supported on a single point.
class SupportViolation : public NotEssentiallyFourier {
 public:
  SupportViolation(std::size_t x, std::vector<std::size_t> support, const std::string& what)
      : NotEssentiallyFourier("point-mass supports", what), x_(x), support_(std::move(support)) {}

  std::size_t x() const noexcept { return x_; }
  const std::vector<std::size_t>& support() const noexcept { return support_; }

 private:
  std::size_t x_;
  std::vector<std::size_t> support_;
};

/// m(i) is neither i nor -i, or the probe set disagrees with the verdict.
class DichotomyViolation : public NotEssentiallyFourier {
 public:
  explicit DichotomyViolation(const std::string& what) : NotEssentiallyFourier("scalar map", what) {}
};

/// The support map is not additive on the pair (x, y).
class HomomorphismFailure : public NotEssentiallyFourier {
 public:
  HomomorphismFailure(std::size_t x, std::size_t y, const std::string& what)
      : NotEssentiallyFourier("homomorphism", what), x_(x), y_(y) {}

  std::size_t x() const noexcept { return x_; }
  std::size_t y() const noexcept { return y_; }

 private:
  std::size_t x_, y_;
};

/// Scalars at which m is sampled.
inline const std::array<Complex, 6> kScalarProbes{Complex{1, 0},   Complex{-1, 0}, Complex{0, 1},
                                                  Complex{2, 0},   Complex{0.5, 0}, Complex{1, 1}};

struct RecoverOptions {
  double tol = kDefaultTolerance;
  double support_rel_tol = kDefaultSupportRelTol;
  std::size_t random_probes = 32;
  std::uint64_t seed = 0x5eed;
  bool parallel = false;
};

struct RecoveryDiagnostics {
  double unit_error = 0.0;         // max |U(1) - 1|
  double idempotency_error = 0.0;  // max distance of U(delta_x) values from {0, 1}
  bool singleton_supports = false;
  bool bijective = false;
  bool fixes_identity = false;
  bool homomorphism = false;
  double m_x_independence_error = 0.0;
  double m_multiplicativity_error = 0.0;
  double m_conjugate_additivity_error = 0.0;
  bool vanishing_correspondence = false;  // f(x) = 0 iff U f(phi(x)) = 0 on scaled point masses
};

struct RecoveryReport {
  Automorphism psi;
  Automorphism phi;  // psi^{-1}: where U sends point masses
  bool conjugation = false;
  double residual = 0.0;
  std::vector<std::pair<Complex, Complex>> m_samples;
  RecoveryDiagnostics diagnostics;
};

/// U(alpha 1) evaluated at the identity.
Complex scalar_map(const Operator& u, Complex alpha);

/**
 * Reconstructs psi and the conjugation flag from a black-box T- or U-form
 * operator.
 *
 *  1. U(1) must equal 1.
 *  2. Each U(delta_x) must be {0,1}-valued with a single support point
 *     phi(x).
 *  3. phi must be a bijective homomorphism; psi = phi^{-1}.
 *  4. m(alpha) = U(alpha 1)(e) on kScalarProbes, constant in x, and equal
 *     to either alpha or conj(alpha) as decided by m(i).
 *  5. residual = max |U f - m(f o psi)| over every alpha delta_x and
 *     random_probes seeded random functions.
 *
 * Throws NotEssentiallyFourier (or a subclass) at the first failing step,
 * and SideMismatch for operators that are neither T- nor U-form.
 */
RecoveryReport recover(const Operator& op, const RecoverOptions& options = {});
RecoveryReport recover(const Operator& op, double tol);

/// max |U f - m(f o psi)| over every point mass and `trials` fresh seeded
/// random functions.
double verify_recovery(const Operator& op, const RecoveryReport& report, std::size_t trials,
                       std::uint64_t seed);

/// Seeded complex Gaussian function (unit variance per component).
GFunction random_function(const Group& g, Side side, std::uint64_t seed);

}  // namespace abelfft
