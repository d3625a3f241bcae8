#include <gtest/gtest.h>

#include <random>

#include "abelfft/characterization.hpp"
#include "abelfft/transform.hpp"

namespace abelfft {
namespace {

constexpr double kTol = 1e-9;

Group random_group(std::mt19937_64& rng, std::size_t max_size) {
  std::uniform_int_distribution<std::size_t> rank_dist(1, 4), order_dist(1, 40);
  std::vector<std::size_t> orders;
  std::size_t size = 1;
  const std::size_t rank = rank_dist(rng);
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t n = order_dist(rng);
    while (size * n > max_size) n = std::max<std::size_t>(1, n / 2);
    orders.push_back(n);
    size *= n;
  }
  return Group(orders);
}

// Independent oracle for the one-dimensional plans.
std::vector<Complex> textbook_dft(const std::vector<Complex>& x) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      out[k] += x[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>((j * k) % n) / static_cast<double>(n));
    }
  }
  return out;
}

double l1(const GFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::abs(v);
  return s;
}

TEST(DftNaive, Examples) {
  const Group z2 = make_group({2});
  const GFunction d = dft_naive(GFunction::delta(z2, Side::primal, 0));
  EXPECT_EQ(d.side(), Side::dual);
  EXPECT_NEAR(std::abs(d[0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d[1] - 1.0), 0.0, 1e-15);

  for (std::size_t n : {1, 3, 8, 13}) {
    const Group z = make_group({static_cast<std::int64_t>(n)});
    const GFunction c = dft_naive(GFunction::constant(z, Side::primal, 1.0));
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(std::abs(c[k] - (k == 0 ? double(n) : 0.0)), 0.0, 1e-12);
  }

  // sum_x delta_1(x) exp(-2 pi i x xi / 4) = exp(-pi i xi / 2)
  const Group z4 = make_group({4});
  const GFunction e = dft_naive(GFunction::delta(z4, Side::primal, 1));
  const Complex expected[] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(std::abs(e[k] - std::polar(1.0, -M_PI * double(k) / 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e[k] - expected[k]), 0.0, 1e-15);
  }
}

TEST(DftNaive, SideMismatch) {
  const Group g = make_group({3});
  EXPECT_THROW(dft_naive(GFunction(g, Side::dual)), SideMismatch);
  EXPECT_THROW(fft_forward(GFunction(g, Side::dual)), SideMismatch);
  EXPECT_THROW(fft_inverse(GFunction(g, Side::primal)), SideMismatch);
}

TEST(DftNaive, MatchesCharacterSum) {
  const Group g = make_group({3, 4});
  const GFunction f = random_function(g, Side::primal, 17);
  const GFunction F = dft_naive(f);
  for (std::size_t xi = 0; xi < g.size(); ++xi) {
    Complex acc{};
    for (std::size_t x = 0; x < g.size(); ++x) acc += f[x] * std::conj(character(element_of(x, g), element_of(xi, g)));
    EXPECT_NEAR(std::abs(F[xi] - acc), 0.0, 1e-12);
  }
}

TEST(CyclicPlan, MatchesTextbookDft) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<std::size_t> lengths;
  for (std::size_t n = 1; n <= 64; ++n) lengths.push_back(n);
  for (std::size_t n : {97, 121, 210, 243, 500, 1009}) lengths.push_back(n);
  for (std::size_t n : lengths) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = {normal(rng), normal(rng)};
    CyclicPlan plan(n);
    std::vector<Complex> got(n);
    plan.forward(x, got);
    const auto want = textbook_dft(x);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(got[k] - want[k]));
    EXPECT_LE(err, 1e-9 * (1.0 + double(n))) << "n=" << n;
  }
}

TEST(CyclicPlan, PathSelection) {
  EXPECT_FALSE(CyclicPlan(1).uses_bluestein());
  EXPECT_FALSE(CyclicPlan(2 * 3 * 5 * 4).uses_bluestein());
  EXPECT_TRUE(CyclicPlan(7).uses_bluestein());
  EXPECT_TRUE(CyclicPlan(31).uses_bluestein());
  EXPECT_TRUE(CyclicPlan(14).uses_bluestein());
}

TEST(FftForward, PrimeLengthThroughBluestein) {
  const Group z7 = make_group({7});
  const GFunction f = GFunction::delta(z7, Side::primal, 1);
  EXPECT_LE(max_abs_diff(fft_forward(f), dft_naive(f)), 1e-12);
}

TEST(FftForward, AgreesWithNaiveOnRandomGroups) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const Group g = random_group(rng, 1024);
    const GFunction f = random_function(g, Side::primal, rng());
    const double err = max_abs_diff(fft_forward(f), dft_naive(f));
    ASSERT_LE(err, 1e-9 * (1.0 + l1(f))) << "trial " << trial;
  }
}

TEST(FftInverse, RoundTrip) {
  const Group g = make_group({8, 9, 5});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const GFunction f = random_function(g, Side::primal, seed);
    const GFunction back = fft_inverse(fft_forward(f));
    EXPECT_EQ(back.side(), Side::primal);
    EXPECT_LE(max_abs_diff(back, f), kTol);
    EXPECT_LE(max_abs_diff(idft_naive(dft_naive(f)), f), kTol);
  }
}

TEST(FftInverse, LargeCyclic) {
  const Group g = make_group({1 << 18});
  const GFunction f = random_function(g, Side::primal, 1);
  EXPECT_LE(max_abs_diff(fft_inverse(fft_forward(f)), f), kTol);
}

TEST(Star, Examples) {
  const Group z4 = make_group({4});
  const GFunction even(z4, Side::primal, {2.0, 1.0, 5.0, 1.0});
  EXPECT_EQ(max_abs_diff(star(even), even), 0.0);
  EXPECT_EQ(max_abs_diff(star(GFunction::delta(z4, Side::primal, 1)), GFunction::delta(z4, Side::primal, 3)), 0.0);
  const GFunction point = GFunction::delta(z4, Side::dual, 0, Complex{0, 1});
  const GFunction starred = star(point);
  EXPECT_EQ(starred.side(), Side::dual);
  EXPECT_EQ(max_abs_diff(starred, GFunction::delta(z4, Side::dual, 0, Complex{0, -1})), 0.0);
}

TEST(Star, Involution) {
  const Group g = make_group({6, 5});
  const GFunction f = random_function(g, Side::primal, 8);
  EXPECT_EQ(max_abs_diff(star(star(f)), f), 0.0);
}

TEST(PointwiseProduct, Examples) {
  const Group g = make_group({3, 2});
  const GFunction f = random_function(g, Side::primal, 1);
  EXPECT_EQ(max_abs_diff(pointwise_product(f, GFunction::constant(g, Side::primal, 1.0)), f), 0.0);
  const GFunction a = GFunction::delta(g, Side::primal, 2), b = GFunction::delta(g, Side::primal, 4);
  EXPECT_EQ(norm_inf(pointwise_product(a, b)), 0.0);
  EXPECT_EQ(max_abs_diff(pointwise_product(a, a), a), 0.0);
}

TEST(PointwiseProduct, Mismatches) {
  const Group g = make_group({3});
  EXPECT_THROW(pointwise_product(GFunction(g, Side::primal), GFunction(g, Side::dual)), SideMismatch);
  EXPECT_THROW(pointwise_product(GFunction(g, Side::primal), GFunction(make_group({4}), Side::primal)),
               GroupMismatch);
  EXPECT_THROW(convolve(GFunction(g, Side::primal), GFunction(g, Side::dual)), SideMismatch);
  EXPECT_THROW(GFunction(g, Side::primal, std::vector<Complex>(4)), GroupMismatch);
}

TEST(Convolve, PrimalExamples) {
  const Group g = make_group({4, 3});
  const GFunction f = random_function(g, Side::primal, 3);
  EXPECT_LE(max_abs_diff(convolve(GFunction::delta(g, Side::primal, 0), f), f), 1e-15);

  const GFunction c = convolve(GFunction::delta(g, Side::primal, 5), GFunction::delta(g, Side::primal, 10));
  EXPECT_EQ(max_abs_diff(c, GFunction::delta(g, Side::primal, g.add_index(5, 10))), 0.0);

  Complex total{};
  for (const auto& v : f.values()) total += v;
  EXPECT_LE(max_abs_diff(convolve(GFunction::constant(g, Side::primal, 1.0), f),
                         GFunction::constant(g, Side::primal, total)),
            1e-12);
}

TEST(Convolve, DualSideWeight) {
  const Group g = make_group({5});
  // with weight 1/size the unit of the dual algebra is size * delta_0
  const GFunction F = random_function(g, Side::dual, 4);
  EXPECT_LE(max_abs_diff(convolve(GFunction::delta(g, Side::dual, 0, 5.0), F), F), 1e-14);
  EXPECT_LE(max_abs_diff(convolve(GFunction::delta(g, Side::dual, 0), F), (1.0 / 5.0) * F), 1e-15);
}

TEST(Convolve, FastMatchesDirect) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const Group g = random_group(rng, 256);
    for (Side side : {Side::primal, Side::dual}) {
      const GFunction f = random_function(g, side, rng()), h = random_function(g, side, rng());
      ASSERT_LE(max_abs_diff(convolve_fast(f, h), convolve(f, h)), kTol);
    }
  }
}

TEST(Support, Examples) {
  const Group g = make_group({5});
  EXPECT_EQ(support(GFunction::delta(g, Side::primal, 3)).indices(), std::vector<std::size_t>{3});
  EXPECT_TRUE(support(GFunction(g, Side::primal)).empty());
  const GFunction tiny(make_group({2}), Side::primal, {1e-15, 1.0});
  EXPECT_EQ(support(tiny, 1e-12).indices(), std::vector<std::size_t>{1});
  EXPECT_TRUE(support(tiny, 1e-12).contains(1));
  EXPECT_FALSE(support(tiny, 1e-12).contains(0));
}

TEST(Norms, WeightsAndPlancherel) {
  const Group g = make_group({4});
  const GFunction f(g, Side::primal, {1.0, Complex{0, -2}, 0.0, 2.0});
  EXPECT_DOUBLE_EQ(norm_inf(f), 2.0);
  EXPECT_DOUBLE_EQ(norm_2(f), 3.0);
  const GFunction F(g, Side::dual, {2.0, 2.0, 2.0, 2.0});
  EXPECT_DOUBLE_EQ(norm_2(F), 2.0);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Group h = random_group(rng, 1024);
    const GFunction r = random_function(h, Side::primal, rng());
    const double a = norm_2(r), b = norm_2(fft_forward(r));
    ASSERT_LE(std::abs(a * a - b * b), 1e-9 * (1.0 + a * a));
  }
}

TEST(Identities, ExchangeLaws) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    const Group g = random_group(rng, 512);
    const GFunction f = random_function(g, Side::primal, rng()), h = random_function(g, Side::primal, rng());
    const GFunction F = fft_forward(f), H = fft_forward(h);
    ASSERT_LE(max_abs_diff(fft_forward(convolve(f, h)), pointwise_product(F, H)), kTol);
    ASSERT_LE(max_abs_diff(fft_forward(pointwise_product(f, h)), convolve(F, H)), kTol);
    ASSERT_LE(max_abs_diff(fft_forward(star(f)), involution(F)), kTol);
    ASSERT_LE(max_abs_diff(fft_forward(star(f)), conj(F)), kTol);
  }
}

TEST(Identities, DualStarIsNotTheTransportedInvolution) {
  // reflection-conjugation on the dual side breaks the exchange law as soon as
  // the spectrum is not even
  const Group z4 = make_group({4});
  const GFunction f = GFunction::delta(z4, Side::primal, 1);
  EXPECT_GE(max_abs_diff(fft_forward(star(f)), star(fft_forward(f))), 1.0);
  EXPECT_LE(max_abs_diff(fft_forward(star(f)), involution(fft_forward(f))), 1e-15);
}

TEST(Involution, SideDependent) {
  const Group g = make_group({5});
  const GFunction f = random_function(g, Side::primal, 3);
  EXPECT_EQ(max_abs_diff(involution(f), star(f)), 0.0);
  const GFunction F = random_function(g, Side::dual, 3);
  EXPECT_EQ(max_abs_diff(involution(F), conj(F)), 0.0);
  EXPECT_EQ(max_abs_diff(involution(involution(F)), F), 0.0);
}

TEST(Plans, SharedPerGroup) {
  const Group a = make_group({6, 10});
  EXPECT_EQ(plan_for(a), plan_for(make_group({6, 10})));
  EXPECT_NE(plan_for(a), plan_for(make_group({10, 6})));
}

TEST(Plans, TrivialAndSingletonFactors) {
  const Group g = make_group({1, 5, 1});
  const GFunction f = random_function(g, Side::primal, 2);
  EXPECT_LE(max_abs_diff(fft_forward(f), dft_naive(f)), 1e-12);
  const Group one = make_group({1});
  const GFunction u = GFunction::constant(one, Side::primal, Complex{2, 3});
  EXPECT_EQ(fft_forward(u)[0], Complex(2, 3));
}

}  // namespace
}  // namespace abelfft
