#include "abelfft/characterization.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace abelfft {

std::string_view to_string(OperatorForm form) noexcept { return form == OperatorForm::T ? "T" : "U"; }

// --- Operator ----------------------------------------------------------------

Operator::Operator(Group g, Side input_side, Side output_side, Map map, bool concurrent_safe)
    : group_(std::move(g)),
      input_side_(input_side),
      output_side_(output_side),
      map_(std::move(map)),
      concurrent_safe_(concurrent_safe) {}

Operator Operator::from_matrix(Group g, Side input_side, Side output_side, MatrixForm matrix) {
  const std::size_t n = g.size();
  if (matrix.entries.size() != n * n) {
    throw GroupMismatch("operator matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  auto shared = std::make_shared<const MatrixForm>(matrix);
  Map map = [shared, g, output_side, n](const GFunction& f) {
    GFunction out(g, output_side);
    const auto& m = shared->entries;
    for (std::size_t row = 0; row < n; ++row) {
      Complex acc{};
      const Complex* r = m.data() + row * n;
      if (shared->conjugate_input) {
        for (std::size_t col = 0; col < n; ++col) acc += r[col] * std::conj(f[col]);
      } else {
        for (std::size_t col = 0; col < n; ++col) acc += r[col] * f[col];
      }
      out[row] = acc;
    }
    return out;
  };
  Operator op(std::move(g), input_side, output_side, std::move(map));
  op.matrix_ = std::move(matrix);
  return op;
}

std::optional<OperatorForm> Operator::form() const noexcept {
  if (input_side_ != Side::primal) return std::nullopt;
  return output_side_ == Side::dual ? OperatorForm::T : OperatorForm::U;
}

GFunction Operator::operator()(const GFunction& f) const {
  require_same_group(group_, f.group());
  require_side(f, input_side_);
  GFunction out = map_(f);
  require_same_group(group_, out.group());
  require_side(out, output_side_);
  return out;
}

MatrixForm materialize(const Operator& op, bool conjugate_input) {
  const std::size_t n = op.group().size();
  MatrixForm m{std::vector<Complex>(n * n), conjugate_input};
  for (std::size_t col = 0; col < n; ++col) {
    const GFunction image = op(GFunction::delta(op.group(), op.input_side(), col));
    for (std::size_t row = 0; row < n; ++row) m.entries[row * n + col] = image[row];
  }
  return m;
}

Operator build_reference_operator(const Group& g, const Automorphism& psi, bool conjugation,
                                  OperatorForm form) {
  require_same_group(g, psi.group());
  const Side out_side = form == OperatorForm::T ? Side::dual : Side::primal;
  Operator::Map map = [g, psi, conjugation, form](const GFunction& f) {
    GFunction h(g, Side::primal);
    for (std::size_t x = 0; x < g.size(); ++x) {
      const Complex v = f[psi(x)];
      h[x] = conjugation ? std::conj(v) : v;
    }
    return form == OperatorForm::T ? fft_forward(h) : h;
  };
  return Operator(g, Side::primal, out_side, std::move(map));
}

Operator reduce_to_u(const Operator& op) {
  const auto form = op.form();
  if (!form) throw SideMismatch("operator must map primal functions to primal or dual ones");
  if (*form == OperatorForm::U) return op;
  Operator::Map map = [op](const GFunction& f) { return fft_inverse(op(f)); };
  return Operator(op.group(), Side::primal, Side::primal, std::move(map), op.concurrent_safe());
}

GFunction random_function(const Group& g, Side side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  GFunction f(g, side);
  for (auto& v : f.values()) {
    const double re = normal(rng);
    const double im = normal(rng);
    v = {re, im};
  }
  return f;
}

// --- hypotheses -----------------------------------------------------------------

namespace {

struct HypothesisErrors {
  double a = 0.0, b = 0.0, c = 0.0;
};

// Evaluates the three identities on one pair; tf and tg are op(f), op(g).
void accumulate(const Operator& op, const GFunction& f, const GFunction& g, const GFunction& tf,
                const GFunction& tg, HypothesisErrors& err) {
  const bool exchanges = op.input_side() != op.output_side();

  err.a = std::max(err.a, max_abs_diff(op(f + involution(g)), tf + involution(tg)));

  const GFunction product_image = op(pointwise_product(f, g));
  const GFunction product_expect = exchanges ? convolve_fast(tf, tg) : pointwise_product(tf, tg);
  err.b = std::max(err.b, max_abs_diff(product_image, product_expect));

  const GFunction conv_image = op(convolve_fast(f, g));
  const GFunction conv_expect = exchanges ? pointwise_product(tf, tg) : convolve_fast(tf, tg);
  err.c = std::max(err.c, max_abs_diff(conv_image, conv_expect));
}

}  // namespace

HypothesisReport check_hypotheses(const Operator& op, std::size_t trials, std::uint64_t seed,
                                  double tol) {
  const Group& g = op.group();
  const Side in = op.input_side();
  HypothesisReport report;
  report.trials = trials;
  report.seed = seed;
  report.tol = tol;
  HypothesisErrors err;

  const std::size_t n = g.size();
  if (n * n <= kBasisPairLimit) {
    std::vector<GFunction> basis, images;
    basis.reserve(n);
    images.reserve(n);
    for (std::size_t x = 0; x < n; ++x) {
      basis.push_back(GFunction::delta(g, in, x));
      images.push_back(op(basis.back()));
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        accumulate(op, basis[x], basis[y], images[x], images[y], err);
        ++report.basis_pairs;
      }
    }
  }

  std::mt19937_64 seeds(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const GFunction f = random_function(g, in, seeds());
    const GFunction h = random_function(g, in, seeds());
    accumulate(op, f, h, op(f), op(h), err);
  }

  report.max_err_a = err.a;
  report.max_err_b = err.b;
  report.max_err_c = err.c;
  return report;
}

// --- recovery -------------------------------------------------------------------

namespace {

// Runs body(i) for i in [0, count); results must be written to per-index slots
// so the outcome does not depend on scheduling.
template <class Body>
void for_each_index(std::size_t count, bool parallel, Body&& body) {
  const std::size_t workers =
      parallel ? std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), count))
               : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < count; i += workers) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string describe_support(const std::vector<std::size_t>& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size() && i < 8; ++i) os << (i ? ", " : "") << s[i];
  if (s.size() > 8) os << ", ... (" << s.size() << " points)";
  os << '}';
  return os.str();
}

Complex apply_scalar_map(bool conjugation, Complex v) { return conjugation ? std::conj(v) : v; }

// max |U f - m(f o psi)|
double prediction_error(const GFunction& uf, const GFunction& f, const Automorphism& psi,
                        bool conjugation) {
  double err = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) {
    err = std::max(err, std::abs(uf[x] - apply_scalar_map(conjugation, f[psi(x)])));
  }
  return err;
}

}  // namespace

Complex scalar_map(const Operator& u, Complex alpha) {
  const Group& g = u.group();
  return u(GFunction::constant(g, Side::primal, alpha))[0];
}

RecoveryReport recover(const Operator& op, double tol) {
  RecoverOptions options;
  options.tol = tol;
  return recover(op, options);
}

RecoveryReport recover(const Operator& op, const RecoverOptions& options) {
  const Operator u = reduce_to_u(op);
  const Group& g = u.group();
  const std::size_t n = g.size();
  const double tol = options.tol;
  const bool parallel = options.parallel && u.concurrent_safe();
  RecoveryDiagnostics diag;

  // 1. unit
  const GFunction one = u(GFunction::constant(g, Side::primal, 1.0));
  for (std::size_t x = 0; x < n; ++x) diag.unit_error = std::max(diag.unit_error, std::abs(one[x] - 1.0));
  if (diag.unit_error > tol) {
    std::ostringstream os;
    os << "U(1) differs from 1 by " << diag.unit_error;
    throw NotEssentiallyFourier("unit", os.str());
  }

  // 2. point masses go to point masses
  std::vector<std::size_t> phi(n);
  std::vector<double> idempotency(n, 0.0);
  std::vector<std::vector<std::size_t>> supports(n);
  for_each_index(n, parallel, [&](std::size_t x) {
    const GFunction d = u(GFunction::delta(g, Side::primal, x));
    double e = 0.0;
    for (const auto& v : d.values()) e = std::max(e, std::min(std::abs(v), std::abs(v - 1.0)));
    idempotency[x] = e;
    supports[x] = support(d, options.support_rel_tol * norm_inf(d)).indices();
  });
  for (std::size_t x = 0; x < n; ++x) {
    diag.idempotency_error = std::max(diag.idempotency_error, idempotency[x]);
    if (idempotency[x] > tol) {
      std::ostringstream os;
      os << "U(delta_" << x << ") takes a value " << idempotency[x] << " away from {0, 1}";
      throw SupportViolation(x, supports[x], os.str());
    }
    if (supports[x].size() != 1) {
      throw SupportViolation(x, supports[x],
                             "U(delta_" + std::to_string(x) + ") has support " +
                                 describe_support(supports[x]) + ", not a single point");
    }
    phi[x] = supports[x].front();
  }
  diag.singleton_supports = true;

  // 3. phi is a bijective homomorphism
  {
    std::vector<std::size_t> preimage(n, n);
    for (std::size_t x = 0; x < n; ++x) {
      if (preimage[phi[x]] != n) {
        throw NotEssentiallyFourier("bijection", "delta_" + std::to_string(preimage[phi[x]]) +
                                                     " and delta_" + std::to_string(x) +
                                                     " both land on " + std::to_string(phi[x]));
      }
      preimage[phi[x]] = x;
    }
  }
  diag.bijective = true;
  if (phi[0] != 0) {
    throw NotEssentiallyFourier("identity", "the identity is sent to " + std::to_string(phi[0]));
  }
  diag.fixes_identity = true;
  if (auto bad = find_homomorphism_violation(phi, g)) {
    std::ostringstream os;
    os << "phi(" << bad->x << " + " << bad->y << ") = " << phi[g.add_index(bad->x, bad->y)]
       << " but phi(" << bad->x << ") + phi(" << bad->y << ") = " << g.add_index(phi[bad->x], phi[bad->y]);
    throw HomomorphismFailure(bad->x, bad->y, os.str());
  }
  diag.homomorphism = true;
  const Automorphism phi_map = Automorphism::unchecked(g, std::move(phi));
  const Automorphism psi = phi_map.inverse();

  // 4. scalar map
  std::vector<std::pair<Complex, Complex>> samples;
  for (const Complex alpha : kScalarProbes) {
    const GFunction image = u(GFunction::constant(g, Side::primal, alpha));
    for (std::size_t x = 0; x < n; ++x) {
      diag.m_x_independence_error = std::max(diag.m_x_independence_error, std::abs(image[x] - image[0]));
    }
    samples.emplace_back(alpha, image[0]);
  }
  if (diag.m_x_independence_error > tol) {
    std::ostringstream os;
    os << "U(alpha 1) is not constant; spread " << diag.m_x_independence_error;
    throw DichotomyViolation(os.str());
  }
  const Complex i{0.0, 1.0};
  const Complex m_i = samples[2].second;
  bool conjugation;
  if (std::abs(m_i - i) <= tol) {
    conjugation = false;
  } else if (std::abs(m_i + i) <= tol && std::abs(m_i + i) < std::abs(m_i - i)) {
    conjugation = true;
  } else {
    std::ostringstream os;
    os << "m(i) = " << m_i << " is neither i nor -i";
    throw DichotomyViolation(os.str());
  }
  for (const auto& [alpha, m] : samples) {
    if (std::abs(m - apply_scalar_map(conjugation, alpha)) > tol) {
      std::ostringstream os;
      os << "m(" << alpha << ") = " << m << " contradicts m(i) = " << m_i;
      throw DichotomyViolation(os.str());
    }
  }
  for (const auto& [a, ma] : samples) {
    for (const auto& [b, mb] : samples) {
      diag.m_multiplicativity_error =
          std::max(diag.m_multiplicativity_error, std::abs(scalar_map(u, a * b) - ma * mb));
      diag.m_conjugate_additivity_error =
          std::max(diag.m_conjugate_additivity_error,
                   std::abs(scalar_map(u, a + std::conj(b)) - ma - std::conj(mb)));
    }
  }

  // 5. residual on scaled point masses and random functions
  const std::size_t probes = kScalarProbes.size();
  std::vector<double> basis_err(n * probes, 0.0);
  std::vector<char> vanishing_ok(n * probes, 1);
  for_each_index(n * probes, parallel, [&](std::size_t job) {
    const std::size_t x = job / probes;
    const GFunction f = GFunction::delta(g, Side::primal, x, kScalarProbes[job % probes]);
    const GFunction uf = u(f);
    basis_err[job] = prediction_error(uf, f, psi, conjugation);
    const SupportSet s = support(uf, options.support_rel_tol * norm_inf(uf));
    vanishing_ok[job] = s.size() == 1 && s.contains(phi_map(x));
  });
  std::vector<double> random_err(options.random_probes, 0.0);
  std::vector<std::uint64_t> seeds(options.random_probes);
  std::mt19937_64 seed_rng(options.seed);
  for (auto& s : seeds) s = seed_rng();
  for_each_index(options.random_probes, parallel, [&](std::size_t t) {
    const GFunction f = random_function(g, Side::primal, seeds[t]);
    random_err[t] = prediction_error(u(f), f, psi, conjugation);
  });

  double residual = 0.0;
  for (double e : basis_err) residual = std::max(residual, e);
  for (double e : random_err) residual = std::max(residual, e);
  diag.vanishing_correspondence = std::all_of(vanishing_ok.begin(), vanishing_ok.end(), [](char c) { return c; });

  return RecoveryReport{psi, phi_map, conjugation, residual, std::move(samples), diag};
}

double verify_recovery(const Operator& op, const RecoveryReport& report, std::size_t trials,
                       std::uint64_t seed) {
  const Operator u = reduce_to_u(op);
  const Group& g = u.group();
  require_same_group(g, report.psi.group());
  double residual = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x) {
    const GFunction f = GFunction::delta(g, Side::primal, x);
    residual = std::max(residual, prediction_error(u(f), f, report.psi, report.conjugation));
  }
  std::mt19937_64 seeds(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const GFunction f = random_function(g, Side::primal, seeds());
    residual = std::max(residual, prediction_error(u(f), f, report.psi, report.conjugation));
  }
  return residual;
}

}  // namespace abelfft
