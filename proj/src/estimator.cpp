#include "uqc/estimator.hpp"

#include <bit>
#include <cmath>

#include "uqc/constructions.hpp"
#include "uqc/error.hpp"
#include "uqc/parallel.hpp"
#include "uqc/state_vector.hpp"

namespace uqc {

namespace {

void check_inner(const Circuit& c, std::uint64_t x, std::uint64_t w) {
  const std::size_t n = c.qubit_count();
  if (n < 1) throw SizeError("circuit needs at least one qubit");
  if (n > kMaxExactQubits) throw LimitError("exact evaluation supports at most 24 qubits");
  if ((x >> n) || (w >> n)) throw SizeError("x or w has more bits than the circuit has qubits");
}

std::uint64_t random_bits(Rng& rng, std::size_t n) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < n; ++k) v |= std::uint64_t(rng.next_u32() & 1u) << k;
  return v;
}

}  // namespace

double exact_F(const Circuit& c, std::uint64_t x, std::uint64_t w) {
  check_inner(c, x, w);
  auto st = StateVector::basis(c.qubit_count(), x);
  st.run(c);
  double f = 0;
  const auto& a = st.amplitudes();
  for (std::uint64_t z = 0; z < a.size(); ++z) f += (std::popcount(z & w) & 1 ? -1.0 : 1.0) * std::norm(a[z]);
  return f;
}

double exact_matrix_element(const Circuit& c, std::uint64_t x) {
  check_inner(c, x, 0);
  auto st = StateVector::basis(c.qubit_count(), x);
  st.run(c);
  return std::norm(st.amplitude(0));
}

double hadamard_test_probability(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t g) {
  check_inner(c, x, w);
  const std::size_t n = c.qubit_count();
  if (n > kMaxHadamardTestInner) return (1.0 + exact_F(c, x, w)) / 2.0;
  const auto ht = build_hadamard_test(c);
  const auto& L = ht.layout;
  const std::uint64_t start = scatter_bits(x, L.x) | scatter_bits(w, L.w) | scatter_bits(g, L.g);
  auto st = StateVector::basis(L.registers.qubit_count(), start);
  st.run(ht.circuit);
  return output_probability(st, L.y).first;
}

std::uint64_t sample_plus_count(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t L, Rng& rng,
                                bool audit) {
  if (L < 1) throw Error("need at least one shot");
  const std::size_t n = c.qubit_count();
  std::uint64_t plus = 0;
  if (!audit) {
    const double p0 = hadamard_test_probability(c, x, w, random_bits(rng, n));
    for (std::uint64_t s = 0; s < L; ++s) plus += rng.uniform() < p0 ? 1 : 0;
    return plus;
  }
  for (std::uint64_t s = 0; s < L; ++s) {
    const double p0 = hadamard_test_probability(c, x, w, random_bits(rng, n));
    plus += rng.uniform() < p0 ? 1 : 0;
  }
  return plus;
}

double sample_A_F(const Circuit& c, std::uint64_t x, std::uint64_t w, std::uint64_t L, Rng& rng, bool audit) {
  const std::uint64_t plus = sample_plus_count(c, x, w, L, rng, audit);
  return (2.0 * static_cast<double>(plus) - static_cast<double>(L)) / static_cast<double>(L);
}

std::uint64_t outer_samples(double p, double delta) {
  if (!(p >= 1) || !(delta > 0 && delta < 1)) throw Error("need p >= 1 and 0 < delta < 1");
  return static_cast<std::uint64_t>(std::ceil(8 * p * p * std::log(4 / delta)));
}

std::uint64_t inner_samples(double p, double delta, std::uint64_t K) {
  if (!(p >= 1) || !(delta > 0 && delta < 1)) throw Error("need p >= 1 and 0 < delta < 1");
  return static_cast<std::uint64_t>(std::ceil(8 * p * p * std::log(4 * static_cast<double>(K) / delta)));
}

double default_delta(std::size_t n) { return std::max(std::ldexp(1.0, -static_cast<int>(n)), 1e-9); }

nlohmann::ordered_json EstimateReport::to_json(bool include_trials) const {
  nlohmann::ordered_json j;
  j["n"] = n;
  j["x"] = x;
  j["p"] = p;
  j["delta"] = delta;
  j["seed"] = seed;
  j["K"] = K;
  j["L"] = L;
  j["audit"] = audit;
  j["alpha"] = alpha;
  j["alpha_raw"] = alpha_raw;
  j["shots"] = shots;
  j["exact"] = exact ? nlohmann::ordered_json(*exact) : nlohmann::ordered_json(nullptr);
  j["within_tolerance"] = within_tolerance ? nlohmann::ordered_json(*within_tolerance) : nlohmann::ordered_json(nullptr);
  if (include_trials) {
    j["trial_w"] = trial_w;
    j["trial_means"] = trial_means;
  }
  return j;
}

EstimateReport estimate_mat(const MatProblem& problem, std::uint64_t x) {
  const Circuit& c = problem.circuit;
  const std::size_t n = c.qubit_count();
  check_inner(c, x, 0);
  if (!uses_only_elementary(c)) throw GateError("estimation needs a circuit over H, P and CNOT");
  EstimateReport rep;
  rep.n = n;
  rep.x = x;
  rep.p = problem.p;
  rep.delta = problem.delta.value_or(default_delta(n));
  rep.seed = problem.seed;
  rep.audit = problem.audit;
  rep.K = outer_samples(rep.p, rep.delta);
  rep.L = inner_samples(rep.p, rep.delta, rep.K);

  const Rng w_stream(problem.seed, 1), shot_stream(problem.seed, 2);
  std::vector<std::uint64_t> plus(rep.K);
  rep.trial_w.resize(rep.K);
  parallel_for(rep.K, problem.threads, [&](std::size_t j) {
    Rng rw = w_stream.substream(j);
    const std::uint64_t w = random_bits(rw, n);
    Rng rs = shot_stream.substream(j);
    rep.trial_w[j] = w;
    plus[j] = sample_plus_count(c, x, w, rep.L, rs, problem.audit);
  });

  // Integer aggregation: alpha = sum_j (2 plus_j - L) / (K L).
  std::int64_t total = 0;
  rep.trial_means.resize(rep.K);
  for (std::size_t j = 0; j < rep.K; ++j) {
    const std::int64_t v = 2 * static_cast<std::int64_t>(plus[j]) - static_cast<std::int64_t>(rep.L);
    total += v;
    rep.trial_means[j] = static_cast<double>(v) / static_cast<double>(rep.L);
  }
  rep.shots = rep.K * rep.L;
  rep.alpha_raw = static_cast<double>(total) / (static_cast<double>(rep.K) * static_cast<double>(rep.L));
  rep.alpha = std::clamp(rep.alpha_raw, 0.0, 1.0);
  if (problem.with_exact) {
    rep.exact = exact_matrix_element(c, x);
    rep.within_tolerance = std::abs(rep.alpha - *rep.exact) <= 1.0 / rep.p;
  }
  return rep;
}

}  // namespace uqc
