#include "abelfft/transform.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace abelfft {

std::string_view to_string(Side s) noexcept { return s == Side::primal ? "primal" : "dual"; }

Side flip(Side s) noexcept { return s == Side::primal ? Side::dual : Side::primal; }

double haar_weight(const Group& g, Side s) noexcept {
  return s == Side::primal ? 1.0 : 1.0 / static_cast<double>(g.size());
}

// --- GFunction --------------------------------------------------------------

GFunction::GFunction(Group g, Side side)
    : group_(std::move(g)), side_(side), values_(group_.size(), Complex{}) {}

GFunction::GFunction(Group g, Side side, std::vector<Complex> values)
    : group_(std::move(g)), side_(side), values_(std::move(values)) {
  if (values_.size() != group_.size()) {
    throw GroupMismatch("function has " + std::to_string(values_.size()) +
                        " values but the group has " + std::to_string(group_.size()) +
                        " elements");
  }
}

GFunction GFunction::constant(const Group& g, Side side, Complex value) {
  return GFunction(g, side, std::vector<Complex>(g.size(), value));
}

GFunction GFunction::delta(const Group& g, Side side, std::size_t index, Complex value) {
  if (index >= g.size()) throw BoundsError("point mass index out of range");
  GFunction f(g, side);
  f[index] = value;
  return f;
}

GFunction& GFunction::operator+=(const GFunction& other) {
  require_compatible(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += other.values_[j];
  return *this;
}

GFunction& GFunction::operator-=(const GFunction& other) {
  require_compatible(*this, other);
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= other.values_[j];
  return *this;
}

GFunction& GFunction::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

GFunction operator+(GFunction a, const GFunction& b) { return a += b; }
GFunction operator-(GFunction a, const GFunction& b) { return a -= b; }
GFunction operator*(Complex scale, GFunction f) { return f *= scale; }

GFunction conj(GFunction f) {
  for (auto& v : f.values()) v = std::conj(v);
  return f;
}

void require_compatible(const GFunction& f, const GFunction& g) {
  require_same_group(f.group(), g.group());
  if (f.side() != g.side()) {
    throw SideMismatch("cannot combine a " + std::string(to_string(f.side())) + " function with a " +
                       std::string(to_string(g.side())) + " function");
  }
}

void require_side(const GFunction& f, Side expected) {
  if (f.side() != expected) {
    throw SideMismatch("expected a " + std::string(to_string(expected)) + " function, got " +
                       std::string(to_string(f.side())));
  }
}

bool SupportSet::contains(std::size_t j) const {
  return std::binary_search(indices_.begin(), indices_.end(), j);
}

SupportSet support(const GFunction& f, double support_tol) {
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (std::abs(f[j]) > support_tol) idx.push_back(j);
  }
  return SupportSet(std::move(idx));
}

SupportSet support(const GFunction& f) { return support(f, kDefaultSupportRelTol * norm_inf(f)); }

double norm_inf(const GFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double norm_2(const GFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(haar_weight(f.group(), f.side()) * s);
}

double max_abs_diff(const GFunction& a, const GFunction& b) {
  require_compatible(a, b);
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

// --- one-dimensional plans --------------------------------------------------

struct CyclicPlan::Bluestein {
  std::size_t padded = 0;
  std::vector<Complex> chirp;      // exp(-pi i k^2 / n)
  std::vector<Complex> kernel_ft;  // transform of the conjugate chirp, wrapped to padded length
  std::unique_ptr<CyclicPlan> inner;
};

namespace {

std::vector<std::size_t> smooth_radices(std::size_t n, std::size_t& rest) {
  std::vector<std::size_t> radices;
  for (std::size_t p : {2, 3, 5}) {
    while (n % p == 0) {
      radices.push_back(p);
      n /= p;
    }
  }
  rest = n;
  return radices;
}

}  // namespace

CyclicPlan::CyclicPlan(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidGroup("transform length must be positive");
  std::size_t rest = 1;
  radices_ = smooth_radices(n, rest);
  if (rest == 1) {
    twiddles_ = roots_of_unity(n, -1);
    return;
  }

  auto b = std::make_shared<Bluestein>();
  b->padded = 1;
  while (b->padded < 2 * n - 1) b->padded <<= 1;
  b->inner = std::make_unique<CyclicPlan>(b->padded);

  // the chirp exponent is reduced exactly in integers before the angle is formed
  b->chirp.resize(n);
  const long double pi = std::numbers::pi_v<long double>;
  std::size_t e = 0;  // k^2 mod 2n, advanced by (k+1)^2 - k^2 = 2k + 1
  for (std::size_t k = 0; k < n; e = (e + 2 * k + 1) % (2 * n), ++k) {
    const long double angle = pi * static_cast<long double>(e) / static_cast<long double>(n);
    b->chirp[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(-std::sin(angle))};
  }
  std::vector<Complex> kernel(b->padded, Complex{});
  kernel[0] = std::conj(b->chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel[k] = std::conj(b->chirp[k]);
    kernel[b->padded - k] = std::conj(b->chirp[k]);
  }
  b->kernel_ft.resize(b->padded);
  b->inner->forward(kernel, b->kernel_ft);
  bluestein_ = std::move(b);
}

void CyclicPlan::cooley_tukey(const Complex* in, std::size_t stride, Complex* out, std::size_t n,
                              std::size_t level) const {
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  const std::size_t p = radices_[level];
  const std::size_t m = n / p;
  for (std::size_t r = 0; r < p; ++r) cooley_tukey(in + r * stride, stride * p, out + r * m, m, level + 1);

  const std::size_t step = n_ / n;
  if (p == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      const Complex a = out[k];
      const Complex b = out[k + m] * twiddles_[k * step];
      out[k] = a + b;
      out[k + m] = a - b;
    }
    return;
  }

  const std::size_t root_step = n_ / p;
  std::array<Complex, 5> t;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < p; ++r) t[r] = out[r * m + k] * twiddles_[r * k * step];
    for (std::size_t q = 0; q < p; ++q) {
      Complex acc = t[0];
      for (std::size_t r = 1; r < p; ++r) acc += t[r] * twiddles_[((r * q) % p) * root_step];
      out[k + q * m] = acc;
    }
  }
}

void CyclicPlan::forward(std::span<const Complex> in, std::span<Complex> out) const {
  if (!bluestein_) {
    cooley_tukey(in.data(), 1, out.data(), n_, 0);
    return;
  }
  const Bluestein& b = *bluestein_;
  std::vector<Complex> a(b.padded, Complex{}), spectrum(b.padded);
  for (std::size_t k = 0; k < n_; ++k) a[k] = in[k] * b.chirp[k];
  b.inner->forward(a, spectrum);
  // inverse transform through conjugation: ifft(c) = conj(fft(conj(c))) / padded
  for (std::size_t k = 0; k < b.padded; ++k) spectrum[k] = std::conj(spectrum[k] * b.kernel_ft[k]);
  b.inner->forward(spectrum, a);
  const double scale = 1.0 / static_cast<double>(b.padded);
  for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(a[k]) * scale * b.chirp[k];
}

// --- group plans ------------------------------------------------------------

GroupPlan::GroupPlan(const Group& g) : group_(g) {
  std::map<std::size_t, std::shared_ptr<const CyclicPlan>> by_length;
  for (std::size_t n : g.orders()) {
    auto& slot = by_length[n];
    if (!slot) slot = std::make_shared<CyclicPlan>(n);
    axes_.push_back(slot);
  }
}

std::vector<Complex> GroupPlan::forward(std::span<const Complex> values) const {
  const std::size_t size = group_.size();
  std::vector<Complex> work(values.begin(), values.end());
  std::vector<Complex> line, result;
  for (std::size_t axis = 0; axis < axes_.size(); ++axis) {
    const std::size_t n = group_.orders()[axis];
    if (n == 1) continue;
    const std::size_t stride = group_.strides()[axis];
    const CyclicPlan& plan = *axes_[axis];
    line.resize(n);
    result.resize(n);
    for (std::size_t outer = 0; outer < size; outer += n * stride) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer + inner;
        for (std::size_t j = 0; j < n; ++j) line[j] = work[base + j * stride];
        plan.forward(line, result);
        for (std::size_t j = 0; j < n; ++j) work[base + j * stride] = result[j];
      }
    }
  }
  return work;
}

std::vector<Complex> GroupPlan::backward(std::span<const Complex> values) const {
  std::vector<Complex> conjugated(values.size());
  std::transform(values.begin(), values.end(), conjugated.begin(),
                 [](Complex v) { return std::conj(v); });
  auto out = forward(conjugated);
  for (auto& v : out) v = std::conj(v);
  return out;
}

std::shared_ptr<const GroupPlan> plan_for(const Group& g) {
  static std::mutex mutex;
  static std::map<std::vector<std::size_t>, std::shared_ptr<const GroupPlan>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(g.orders());
  if (it != cache.end()) return it->second;
  if (cache.size() >= 256) cache.clear();
  auto plan = std::make_shared<const GroupPlan>(g);
  cache.emplace(g.orders(), plan);
  return plan;
}

// --- transforms -------------------------------------------------------------

namespace {

// out[xi] = scale * sum_x in[x] exp(sign 2 pi i <x, xi>) by direct summation.
std::vector<Complex> direct_sum(const Group& g, std::span<const Complex> in, int sign, double scale) {
  const std::size_t size = g.size();
  const std::size_t k = g.rank();
  const auto& n = g.orders();
  const auto roots = roots_of_unity(size, sign);
  std::vector<Complex> out(size);
  std::vector<std::size_t> step(k), digit(k);
  for (std::size_t xi = 0; xi < size; ++xi) {
    const Element e = element_of(xi, g);
    for (std::size_t i = 0; i < k; ++i) step[i] = e.coords[i] * (size / n[i]) % size;
    std::fill(digit.begin(), digit.end(), 0);
    std::size_t r = 0;
    Complex acc{};
    for (std::size_t x = 0; x < size; ++x) {
      acc += in[x] * roots[r];
      for (std::size_t j = k; j-- > 0;) {
        r += step[j];
        if (r >= size) r -= size;
        if (++digit[j] < n[j]) break;
        digit[j] = 0;
      }
    }
    out[xi] = acc * scale;
  }
  return out;
}

}  // namespace

GFunction dft_naive(const GFunction& f) {
  require_side(f, Side::primal);
  return GFunction(f.group(), Side::dual, direct_sum(f.group(), f.values(), -1, 1.0));
}

GFunction idft_naive(const GFunction& F) {
  require_side(F, Side::dual);
  const double scale = 1.0 / static_cast<double>(F.group().size());
  return GFunction(F.group(), Side::primal, direct_sum(F.group(), F.values(), +1, scale));
}

GFunction fft_forward(const GFunction& f) {
  require_side(f, Side::primal);
  return GFunction(f.group(), Side::dual, plan_for(f.group())->forward(f.values()));
}

GFunction fft_inverse(const GFunction& F) {
  require_side(F, Side::dual);
  auto values = plan_for(F.group())->backward(F.values());
  const double scale = 1.0 / static_cast<double>(F.group().size());
  for (auto& v : values) v *= scale;
  return GFunction(F.group(), Side::primal, std::move(values));
}

GFunction star(const GFunction& f) {
  GFunction out(f.group(), f.side());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = std::conj(f[f.group().neg_index(x)]);
  return out;
}

GFunction involution(const GFunction& f) { return f.side() == Side::primal ? star(f) : conj(f); }

GFunction pointwise_product(const GFunction& f, const GFunction& g) {
  require_compatible(f, g);
  GFunction out(f.group(), f.side());
  for (std::size_t x = 0; x < f.size(); ++x) out[x] = f[x] * g[x];
  return out;
}

GFunction convolve(const GFunction& f, const GFunction& g) {
  require_compatible(f, g);
  const Group& grp = f.group();
  const double w = haar_weight(grp, f.side());
  GFunction out(grp, f.side());
  for (std::size_t x = 0; x < f.size(); ++x) {
    Complex acc{};
    for (std::size_t y = 0; y < f.size(); ++y) acc += f[grp.sub_index(x, y)] * g[y];
    out[x] = w * acc;
  }
  return out;
}

GFunction convolve_fast(const GFunction& f, const GFunction& g) {
  require_compatible(f, g);
  const auto plan = plan_for(f.group());
  auto fa = plan->forward(f.values());
  const auto ga = plan->forward(g.values());
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= ga[j];
  auto values = plan->backward(fa);
  const double scale = haar_weight(f.group(), f.side()) / static_cast<double>(f.group().size());
  for (auto& v : values) v *= scale;
  return GFunction(f.group(), f.side(), std::move(values));
}

}  // namespace abelfft
