#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "proxsmooth/problem.hpp"
#include "proxsmooth/prox.hpp"
#include "proxsmooth/rng.hpp"

using namespace proxsmooth;

namespace {

Vec make_vec(std::initializer_list<double> vals) {
  Vec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return v;
}

Vec random_vec(CounterRng& rng, int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(lo, hi);
  return v;
}

// eta-weakly convex test function -eta/2 ||z||^2 with closed-form prox
// z / (1 - eta mu); used for the mu-range error paths.
class NegQuadratic : public ProxFunction {
 public:
  explicit NegQuadratic(double eta) : eta_(eta) {}
  double evaluate(const Vec& z) const override { return -0.5 * eta_ * z.squaredNorm(); }
  Vec prox(double mu, const Vec& z) const override {
    check_prox_index(mu, eta_);
    return z / (1.0 - eta_ * mu);
  }
  double weak_convexity_modulus() const override { return eta_; }
  double lipschitz_const() const override { return 10.0 * eta_; }  // valid on ||z|| <= 10

 private:
  double eta_;
};

}  // namespace

TEST_CASE("moreau_value of |.| matches frozen grid-oracle values") {
  ScaledL1 g(1.0, 1);
  CHECK(moreau_value(g, 1.0, make_vec({0.0})) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(moreau_value(g, 1.0, make_vec({2.0})) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(moreau_value(g, 1.0, make_vec({0.5})) == doctest::Approx(0.125).epsilon(1e-12));

  // Same numbers straight from the independent grid oracle.
  auto abs1 = [](double w) { return std::abs(w); };
  CHECK(oracles::moreau_oracle_1d(abs1, 1.0, 2.0) == doctest::Approx(1.5).epsilon(1e-6));
  CHECK(oracles::moreau_oracle_1d(abs1, 1.0, 0.5) == doctest::Approx(0.125).epsilon(1e-6));
}

TEST_CASE("moreau_gradient of |.| and max") {
  ScaledL1 g(1.0, 1);
  CHECK(moreau_gradient(g, 1.0, make_vec({0.0}))[0] == doctest::Approx(0.0));
  CHECK(moreau_gradient(g, 1.0, make_vec({2.0}))[0] == doctest::Approx(1.0));

  MaxOfCoordinates gmax(2);
  const Vec grad = moreau_gradient(gmax, 1.0, make_vec({0.0, 0.0}));
  CHECK(grad[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(grad[1] == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("moreau_value rejects mu outside (0, 1/eta)") {
  NegQuadratic g(2.0);
  const Vec z = make_vec({1.0});
  CHECK_THROWS_AS(moreau_value(g, 0.5, z), std::invalid_argument);   // = 1/eta
  CHECK_THROWS_AS(moreau_value(g, 0.7, z), std::invalid_argument);   // > 1/eta
  CHECK_THROWS_AS(moreau_value(g, 0.0, z), std::invalid_argument);
  CHECK_THROWS_AS(moreau_value(g, -1.0, z), std::invalid_argument);
  CHECK_NOTHROW(moreau_value(g, 0.25, z));
}

TEST_CASE("smoothing_schedule values and Assumption-style properties") {
  CHECK(smoothing_schedule(1, 1.0, 3.0) == doctest::Approx(0.5));
  CHECK(smoothing_schedule(8, 1.0, 3.0) == doctest::Approx(0.25));
  CHECK(smoothing_schedule(1, 0.5, 1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(smoothing_schedule(1, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(smoothing_schedule(1, 0.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(smoothing_schedule(0, 1.0, 3.0), std::invalid_argument);

  for (double alpha : {1.0, 2.0, 3.0}) {
    const double eta = 1.5;
    const double ratio_floor = 1.0 / std::pow(2.0, 1.0 / alpha);
    double prev = smoothing_schedule(1, eta, alpha);
    CHECK(prev <= 1.0 / (2.0 * eta) + 1e-15);
    for (long n = 2; n <= 200; ++n) {
      const double cur = smoothing_schedule(n, eta, alpha);
      CHECK(cur > 0.0);
      CHECK(cur <= prev);
      const double ratio = cur / prev;
      CHECK(ratio >= ratio_floor - 1e-12);
      CHECK(ratio <= 1.0);
      prev = cur;
    }
  }
}

TEST_CASE("prox_scaled_l1 examples and grid oracle") {
  CHECK(prox_scaled_l1(1.0, 0.5, make_vec({2.0}))[0] == doctest::Approx(1.5));
  CHECK(prox_scaled_l1(1.0, 0.5, make_vec({0.3}))[0] == doctest::Approx(0.0));
  const Vec id = prox_scaled_l1(0.0, 1.0, make_vec({-4.0, 7.0}));
  CHECK(id[0] == doctest::Approx(-4.0));
  CHECK(id[1] == doctest::Approx(7.0));

  auto l1 = [](double w) { return std::abs(w); };
  CHECK(prox_scaled_l1(1.0, 0.5, make_vec({2.0}))[0] ==
        doctest::Approx(oracles::prox_oracle_1d(l1, 0.5, 2.0)).epsilon(1e-4));
  CHECK(prox_scaled_l1(1.0, 0.5, make_vec({0.3}))[0] ==
        doctest::Approx(oracles::prox_oracle_1d(l1, 0.5, 0.3)).epsilon(1e-4));
}

TEST_CASE("prox_max examples and grid oracle") {
  const Vec p1 = prox_max(1.0, make_vec({0.0, 0.0}));
  CHECK(p1[0] == doctest::Approx(-0.5).epsilon(1e-10));
  CHECK(p1[1] == doctest::Approx(-0.5).epsilon(1e-10));

  const Vec p2 = prox_max(1.0, make_vec({10.0, 0.0}));
  CHECK(p2[0] == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(p2[1] == doctest::Approx(0.0).epsilon(1e-10));

  CHECK(prox_max(2.0, make_vec({5.0}))[0] == doctest::Approx(3.0));
  CHECK_THROWS_AS(prox_max(1.0, Vec()), std::invalid_argument);

  auto maxf = [](double a, double b) { return std::max(a, b); };
  const Eigen::Vector2d oracle = oracles::prox_oracle_2d(maxf, 1.0, {0.0, 0.0});
  CHECK(p1[0] == doctest::Approx(oracle.x()).epsilon(1e-2));
  CHECK(p1[1] == doctest::Approx(oracle.y()).epsilon(1e-2));
}

TEST_CASE("indicator_box prox clamps and validates bounds") {
  const auto box = indicator_box(make_vec({0.1, 0.1}), make_vec({1.0, 1.0}));
  const Vec p = box->prox(3.7, make_vec({0.5, 2.0}));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(1.0));

  const auto half_free = indicator_box(make_vec({0.1, -kInf}), make_vec({1.0, kInf}));
  const Vec q = half_free->prox(1.0, make_vec({0.0, 9.0}));
  CHECK(q[0] == doctest::Approx(0.1));
  CHECK(q[1] == doctest::Approx(9.0));

  const auto degenerate = indicator_box(make_vec({0.0}), make_vec({0.0}));
  CHECK(degenerate->prox(1.0, make_vec({7.0}))[0] == doctest::Approx(0.0));

  CHECK_THROWS_AS(indicator_box(make_vec({1.0}), make_vec({0.0})), std::invalid_argument);
}

TEST_CASE("Moreau sandwich, gradient bound and mu-monotonicity on random samples") {
  CounterRng rng(2024, 1);
  ScaledL1 l1(0.7, 6);
  MaxOfCoordinates gmax(6);
  const ProxFunction* funcs[] = {&l1, &gmax};

  for (const ProxFunction* g : funcs) {
    for (int trial = 0; trial < 1000; ++trial) {
      const double mu1 = rng.uniform(0.02, 2.0);
      const Vec z = random_vec(rng, 6, -4.0, 4.0);
      const double lg = g->lipschitz_const();

      const double env = moreau_value(*g, mu1, z);
      const double direct = g->evaluate(z);
      CHECK(env <= direct + 1e-10);
      CHECK(direct <= env + 0.5 * mu1 * lg * lg + 1e-10);

      CHECK(moreau_gradient(*g, mu1, z).norm() <= lg + 1e-10);

      const double mu2 = rng.uniform(0.25, 0.99) * mu1;
      const double env2 = moreau_value(*g, mu2, z);
      CHECK(env <= env2 + 1e-10);
      CHECK(env2 <= env + 0.5 * ((mu1 - mu2) / mu2) * mu1 * lg * lg + 1e-10);
    }
  }
}

TEST_CASE("prox optimality against random probes") {
  CounterRng rng(7, 2);
  ScaledL1 l1(1.3, 4);
  MaxOfCoordinates gmax(4);
  NegQuadratic negq(0.8);
  const ProxFunction* funcs[] = {&l1, &gmax, &negq};

  for (const ProxFunction* g : funcs) {
    for (int trial = 0; trial < 100; ++trial) {
      const double eta = g->weak_convexity_modulus();
      const double mu = eta > 0.0 ? rng.uniform(0.05, 0.9 / eta) : rng.uniform(0.05, 2.0);
      const Vec z = random_vec(rng, 4, -3.0, 3.0);
      const Vec p = g->prox(mu, z);
      const double obj_p = g->evaluate(p) + (p - z).squaredNorm() / (2.0 * mu);
      for (int probe = 0; probe < 100; ++probe) {
        const Vec w = random_vec(rng, 4, -5.0, 5.0);
        const double obj_w = g->evaluate(w) + (w - z).squaredNorm() / (2.0 * mu);
        CHECK(obj_p <= obj_w + 1e-10);
      }
    }
  }
}

TEST_CASE("moreau_gradient matches central finite differences of moreau_value") {
  CounterRng rng(99, 3);
  ScaledL1 l1(0.9, 5);
  MaxOfCoordinates gmax(5);
  const ProxFunction* funcs[] = {&l1, &gmax};

  for (const ProxFunction* g : funcs) {
    for (int trial = 0; trial < 100; ++trial) {
      const double mu = rng.uniform(0.1, 1.5);
      const Vec z = random_vec(rng, 5, -3.0, 3.0);
      const Vec grad = moreau_gradient(*g, mu, z);
      const Vec fd = oracles::fd_gradient(
          [&](const Vec& v) { return moreau_value(*g, mu, v); }, z);
      CHECK((grad - fd).norm() <= 1e-5 * (1.0 + grad.norm()));
    }
  }
}

TEST_CASE("ProxFunction Lipschitz invariant on random pairs") {
  CounterRng rng(31, 4);
  ScaledL1 l1(2.0, 5);
  MaxOfCoordinates gmax(5);
  const ProxFunction* funcs[] = {&l1, &gmax};
  for (const ProxFunction* g : funcs) {
    for (int trial = 0; trial < 300; ++trial) {
      const Vec a = random_vec(rng, 5, -5.0, 5.0);
      const Vec b = random_vec(rng, 5, -5.0, 5.0);
      CHECK(std::abs(g->evaluate(a) - g->evaluate(b)) <=
            g->lipschitz_const() * (a - b).norm() + 1e-12);
    }
  }
}

TEST_CASE("ConvexTerm prox is firmly nonexpansive (spot check) and lands in the domain") {
  CounterRng rng(55, 5);
  const auto box = indicator_box(make_vec({-0.5, 0.0, -kInf}), make_vec({0.5, 2.0, kInf}));
  for (int trial = 0; trial < 200; ++trial) {
    const Vec a = random_vec(rng, 3, -4.0, 4.0);
    const Vec b = random_vec(rng, 3, -4.0, 4.0);
    const double gamma = rng.uniform(0.1, 3.0);
    const Vec pa = box->prox(gamma, a);
    CHECK(box->in_domain(pa));
    CHECK((pa - box->prox(gamma, b)).norm() <= (a - b).norm() + 1e-12);
  }
}

TEST_CASE("ZeroProx is the identity with zero envelope") {
  ZeroProx zero;
  const Vec z = make_vec({1.0, -2.0, 3.0});
  CHECK((zero.prox(0.7, z) - z).norm() == doctest::Approx(0.0));
  CHECK(moreau_value(zero, 0.7, z) == doctest::Approx(0.0));
  CHECK(moreau_gradient(zero, 0.7, z).norm() == doctest::Approx(0.0));
}
