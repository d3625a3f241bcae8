#include "abelfft/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace abelfft {

Group::Group(std::vector<std::size_t> orders) {
  if (orders.empty()) throw InvalidGroup("group needs at least one cyclic factor");
  auto impl = std::make_shared<Impl>();
  for (std::size_t n : orders) {
    if (n == 0) throw InvalidGroup("cyclic orders must be >= 1");
    if (impl->size > (std::size_t{1} << 40) / n) throw InvalidGroup("group too large");
    impl->size *= n;
  }
  impl->strides.assign(orders.size(), 1);
  for (std::size_t i = orders.size() - 1; i > 0; --i) {
    impl->strides[i - 1] = impl->strides[i] * orders[i];
  }
  impl->lift.resize(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) impl->lift[i] = impl->size / orders[i];
  impl->orders = std::move(orders);
  impl_ = std::move(impl);
}

std::size_t Group::add_index(std::size_t a, std::size_t b) const noexcept {
  const auto& n = impl_->orders;
  std::size_t out = 0, stride = 1;
  for (std::size_t i = n.size(); i-- > 0;) {
    std::size_t d = a % n[i] + b % n[i];
    if (d >= n[i]) d -= n[i];
    out += d * stride;
    stride *= n[i];
    a /= n[i];
    b /= n[i];
  }
  return out;
}

std::size_t Group::sub_index(std::size_t a, std::size_t b) const noexcept {
  return add_index(a, neg_index(b));
}

std::size_t Group::neg_index(std::size_t a) const noexcept {
  const auto& n = impl_->orders;
  std::size_t out = 0, stride = 1;
  for (std::size_t i = n.size(); i-- > 0;) {
    std::size_t d = a % n[i];
    out += (d == 0 ? 0 : n[i] - d) * stride;
    stride *= n[i];
    a /= n[i];
  }
  return out;
}

std::size_t Group::pairing_exponent(std::size_t x, std::size_t xi) const noexcept {
  const auto& n = impl_->orders;
  const std::size_t size = impl_->size;
  std::size_t r = 0;
  for (std::size_t i = n.size(); i-- > 0;) {
    r = (r + (x % n[i]) * (xi % n[i]) % n[i] * impl_->lift[i]) % size;
    x /= n[i];
    xi /= n[i];
  }
  return r;
}

Group make_group(std::span<const std::int64_t> orders) {
  if (orders.empty()) throw InvalidGroup("group needs at least one cyclic factor");
  std::vector<std::size_t> out;
  out.reserve(orders.size());
  for (auto n : orders) {
    if (n < 1) throw InvalidGroup("cyclic order " + std::to_string(n) + " is not positive");
    out.push_back(static_cast<std::size_t>(n));
  }
  return Group(std::move(out));
}

Group make_group(std::initializer_list<std::int64_t> orders) {
  return make_group(std::span<const std::int64_t>(orders.begin(), orders.size()));
}

void require_same_group(const Group& a, const Group& b) {
  if (!(a == b)) throw GroupMismatch("operands live on different groups");
}

Element make_element(const Group& g, std::span<const std::int64_t> coords) {
  if (coords.size() != g.rank()) throw GroupMismatch("coordinate count does not match group rank");
  Element x{g, std::vector<std::size_t>(coords.size())};
  for (std::size_t i = 0; i < coords.size(); ++i) {
    auto n = static_cast<std::int64_t>(g.orders()[i]);
    x.coords[i] = static_cast<std::size_t>(((coords[i] % n) + n) % n);
  }
  return x;
}

Element identity(const Group& g) { return Element{g, std::vector<std::size_t>(g.rank(), 0)}; }

std::size_t index_of(const Element& x) {
  const auto& s = x.group.strides();
  std::size_t j = 0;
  for (std::size_t i = 0; i < s.size(); ++i) j += x.coords[i] * s[i];
  return j;
}

Element element_of(std::size_t j, const Group& g) {
  if (j >= g.size()) {
    throw BoundsError("element index " + std::to_string(j) + " out of range for group of size " +
                      std::to_string(g.size()));
  }
  Element x{g, std::vector<std::size_t>(g.rank())};
  for (std::size_t i = g.rank(); i-- > 0;) {
    x.coords[i] = j % g.orders()[i];
    j /= g.orders()[i];
  }
  return x;
}

Element add(const Element& x, const Element& y) {
  require_same_group(x.group, y.group);
  Element z{x.group, x.coords};
  for (std::size_t i = 0; i < z.coords.size(); ++i) {
    z.coords[i] = (x.coords[i] + y.coords[i]) % x.group.orders()[i];
  }
  return z;
}

Element neg(const Element& x) {
  Element z{x.group, x.coords};
  for (std::size_t i = 0; i < z.coords.size(); ++i) {
    const std::size_t n = x.group.orders()[i];
    z.coords[i] = (n - x.coords[i] % n) % n;
  }
  return z;
}

Complex character(const Element& x, const Element& xi) {
  require_same_group(x.group, xi.group);
  const Group& g = x.group;
  const std::size_t r = g.pairing_exponent(index_of(x), index_of(xi));
  const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) /
                            static_cast<long double>(g.size());
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

std::vector<Complex> roots_of_unity(std::size_t n, int sign) {
  std::vector<Complex> w(n);
  const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = step * static_cast<long double>(k);
    w[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(sign * std::sin(angle))};
  }
  return w;
}

// --- automorphisms ---------------------------------------------------------

Automorphism::Automorphism(Group g, std::vector<std::size_t> perm)
    : group_(std::move(g)), perm_(std::move(perm)) {
  if (!is_automorphism(perm_, group_)) {
    throw InvalidPermutation("permutation is not a group automorphism");
  }
}

Automorphism Automorphism::identity(const Group& g) {
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  return unchecked(g, std::move(perm));
}

Automorphism Automorphism::unchecked(Group g, std::vector<std::size_t> perm) {
  Automorphism a;
  a.group_ = std::move(g);
  a.perm_ = std::move(perm);
  return a;
}

Automorphism Automorphism::inverse() const {
  std::vector<std::size_t> inv(perm_.size());
  for (std::size_t x = 0; x < perm_.size(); ++x) inv[perm_[x]] = x;
  return unchecked(group_, std::move(inv));
}

Automorphism Automorphism::then(const Automorphism& next) const {
  require_same_group(group_, next.group_);
  std::vector<std::size_t> out(perm_.size());
  for (std::size_t x = 0; x < perm_.size(); ++x) out[x] = next.perm_[perm_[x]];
  return unchecked(group_, std::move(out));
}

Element apply_automorphism(const Automorphism& a, const Element& x) {
  require_same_group(a.group(), x.group);
  return element_of(a(index_of(x)), a.group());
}

std::optional<HomomorphismViolation> find_homomorphism_violation(std::span<const std::size_t> perm,
                                                                 const Group& g) {
  const std::size_t n = g.size();
  if (perm.size() != n) throw InvalidPermutation("permutation length does not match group size");
  auto bad = [&](std::size_t x, std::size_t y) {
    return perm[g.add_index(x, y)] != g.add_index(perm[x], perm[y]);
  };
  if (n <= kExhaustiveHomomorphismLimit) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x; y < n; ++y)
        if (bad(x, y)) return HomomorphismViolation{x, y};
    return std::nullopt;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < 10 * n; ++t) {
    const std::size_t x = pick(rng), y = pick(rng);
    if (bad(x, y)) return HomomorphismViolation{x, y};
  }
  return std::nullopt;
}

bool is_automorphism(std::span<const std::size_t> perm, const Group& g) {
  const std::size_t n = g.size();
  if (perm.size() != n) throw InvalidPermutation("permutation length does not match group size");
  if (perm[0] != 0) return false;
  std::vector<bool> seen(n, false);
  for (std::size_t v : perm) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return !find_homomorphism_violation(perm, g).has_value();
}

Automorphism random_automorphism(const Group& g, std::uint64_t seed, std::size_t max_attempts) {
  if (g.size() > kMaxAutomorphismGroupSize) {
    throw InvalidGroup("group too large for automorphism sampling");
  }
  const auto& n = g.orders();
  const std::size_t k = n.size();
  std::mt19937_64 rng(seed);

  // images[j][i]: coordinate i of the image of the generator of factor j
  std::vector<std::vector<std::size_t>> images(k, std::vector<std::size_t>(k));
  std::vector<std::size_t> perm(g.size());
  std::vector<bool> seen(g.size());
  std::vector<std::size_t> coords(k), image(k);

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t d = std::gcd(n[i], n[j]);
        std::uniform_int_distribution<std::size_t> coef(0, d - 1);
        images[j][i] = coef(rng) * (n[i] / d);
      }
    }

    std::fill(seen.begin(), seen.end(), false);
    std::fill(coords.begin(), coords.end(), 0);
    std::fill(image.begin(), image.end(), 0);
    bool bijective = true;
    for (std::size_t x = 0; x < g.size(); ++x) {
      std::size_t y = 0;
      for (std::size_t i = 0; i < k; ++i) y += image[i] * g.strides()[i];
      if (seen[y]) {
        bijective = false;
        break;
      }
      seen[y] = true;
      perm[x] = y;

      // odometer step: increment coords (last digit fastest) and update the image
      for (std::size_t j = k; j-- > 0;) {
        ++coords[j];
        for (std::size_t i = 0; i < k; ++i) image[i] = (image[i] + images[j][i]) % n[i];
        if (coords[j] < n[j]) break;
        coords[j] = 0;  // image has wrapped by n[j] * images[j], which is zero
      }
    }
    if (bijective) return Automorphism::unchecked(g, perm);
  }
  throw ExhaustionError("no invertible endomorphism found after " + std::to_string(max_attempts) +
                        " draws");
}

}  // namespace abelfft
