#include <doctest.h>

#include <bit>
#include <cmath>

#include "oracle.hpp"
#include "uqc/error.hpp"
#include "uqc/estimator.hpp"
#include "uqc/random_circuit.hpp"

using namespace uqc;

namespace {

double dense_F(const Circuit& c, std::uint64_t x, std::uint64_t w) {
  const auto U = oracle::circuit_matrix(c);
  double f = 0;
  for (std::size_t z = 0; z < U.dim; ++z) f += std::norm(U(z, x)) * (std::popcount(z & w) & 1 ? -1.0 : 1.0);
  return f;
}

}  // namespace

TEST_CASE("exact F on the identity") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::uint64_t x = 0; x < (1u << n); ++x)
      for (std::uint64_t w = 0; w < (1u << n); ++w)
        CHECK(exact_F(Circuit(n), x, w) == (std::popcount(x & w) & 1 ? -1.0 : 1.0));
  CHECK(exact_matrix_element(Circuit(3), 0) == 1.0);
  CHECK(exact_matrix_element(Circuit(3), 5) == 0.0);
  CHECK_THROWS_AS(exact_F(Circuit(2), 4, 0), SizeError);
}

TEST_CASE("exact F against the dense matrix, and the averaging identity") {
  Rng rng(9);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + rng.below(4);
    const auto c = random_elementary_circuit(rng, n, 1 + rng.below(4));
    for (std::uint64_t x = 0; x < (1u << n); ++x) {
      double sum = 0;
      for (std::uint64_t w = 0; w < (1u << n); ++w) {
        const double f = exact_F(c, x, w);
        CHECK(std::abs(f - dense_F(c, x, w)) < 1e-10);
        CHECK(std::abs(hadamard_test_probability(c, x, w, rng.below(1u << n)) - (1 + f) / 2) < 1e-9);
        sum += f;
      }
      CHECK(std::abs(sum / double(1u << n) - exact_matrix_element(c, x)) < 1e-9);
    }
  }
}

TEST_CASE("hadamard-test shots") {
  Rng rng(1);
  CHECK(sample_A_F(Circuit(3), 5, 0, 100, rng) == 1.0);
  CHECK(sample_A_F(Circuit(1), 1, 1, 100, rng) == -1.0);
  CHECK(sample_A_F(Circuit(1), 1, 1, 10, rng, true) == -1.0);

  Rng crng(12);
  const auto c = random_elementary_circuit(crng, 3, 3);
  const double f = exact_F(c, 3, 5);
  const std::uint64_t L = 50;
  double mean = 0;
  for (int r = 0; r < 200; ++r) mean += sample_A_F(c, 3, 5, L, rng);
  mean /= 200;
  const double sigma = std::sqrt(std::max(1 - f * f, 1e-12) / (200.0 * L));
  CHECK(std::abs(mean - f) <= 3 * sigma + 1e-12);
}

TEST_CASE("sample sizes") {
  CHECK(outer_samples(5, 0.05) == 877);
  CHECK(inner_samples(5, 0.05, 877) == 2232);
  CHECK(outer_samples(2, 0.25) == 89);
  CHECK(inner_samples(2, 0.25, 89) == 233);
  CHECK(default_delta(4) == 0.0625);
  CHECK(default_delta(40) == 1e-9);
  CHECK_THROWS(outer_samples(0.5, 0.1));
}

TEST_CASE("estimates on small circuits") {
  MatProblem id{Circuit(3), 5, 0.05, 7};
  const auto r1 = estimate_mat(id, 0);
  CHECK(r1.alpha >= 0.8);
  CHECK(r1.alpha <= 1.0);
  CHECK(r1.K == 877);
  CHECK(r1.L == 2232);
  CHECK(r1.shots == 877u * 2232u);

  Circuit hh(2);
  hh.add_layer({gate::h(0), gate::h(1)});
  MatProblem hp{hh, 5, 0.05, 3};
  const auto r2 = estimate_mat(hp, 0);
  CHECK(*r2.exact == doctest::Approx(0.25));
  CHECK(std::abs(r2.alpha - 0.25) <= 0.2);
  CHECK(*r2.within_tolerance);
}

TEST_CASE("estimates are deterministic and thread independent") {
  Rng rng(4);
  MatProblem p{random_elementary_circuit(rng, 3, 3), 2, 0.25, 42};
  const auto a = estimate_mat(p, 6).to_json().dump();
  p.threads = 4;
  const auto b = estimate_mat(p, 6).to_json().dump();
  CHECK(a == b);
  p.seed = 43;
  CHECK(estimate_mat(p, 6).to_json().dump() != a);
}

TEST_CASE("audit mode agrees statistically") {
  Rng rng(6);
  MatProblem p{random_elementary_circuit(rng, 2, 2), 2, 0.25, 5};
  p.audit = true;
  const auto r = estimate_mat(p, 1);
  CHECK(std::abs(r.alpha - *r.exact) <= 0.5);
}
