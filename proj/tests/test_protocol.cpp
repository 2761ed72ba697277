#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "locc/errors.hpp"
#include "locc/monotones.hpp"
#include "locc/protocol.hpp"
#include "locc/sampling.hpp"
#include "locc/simulator.hpp"
#include "test_util.hpp"

using namespace locc;

namespace {

PureState canonical(const std::vector<double>& spectrum, Eigen::Index da,
                    Eigen::Index db) {
  return from_schmidt_coefficients(ProbVector(spectrum), da, db);
}

std::size_t measurement_count(const Protocol& p) {
  std::size_t n = 0;
  for (const Step& s : p.steps) n += std::holds_alternative<Measurement>(s);
  return n;
}

// Rejection-sample a Haar pair on d x d with source majorized by target.
std::pair<PureState, PureState> haar_majorizing_pair(int d, CounterRng& rng) {
  for (;;) {
    const PureState a = random_pure_state(d, d, rng.next_u64());
    const PureState b = random_pure_state(d, d, rng.next_u64());
    if (can_transform(a, b)) return {a, b};
    if (can_transform(b, a)) return {b, a};
  }
}

}  // namespace

TEST_CASE("can_transform") {
  const PureState psi = canonical({0.5, 0.4, 0.1}, 3, 3);
  const PureState phi = canonical({0.6, 0.2, 0.2}, 3, 3);
  CHECK_FALSE(can_transform(psi, phi));
  CHECK_FALSE(can_transform(phi, psi));

  const PureState bell = canonical({0.5, 0.5}, 2, 2);
  CounterRng rng(31);
  for (int it = 0; it < 50; ++it) {
    CHECK(can_transform(bell, random_pure_state(2, 2, rng.next_u64())));
  }
  CHECK(can_transform(psi, psi));
}

TEST_CASE("synthesize Bell to (0.7, 0.3)") {
  const PureState bell = canonical({0.5, 0.5}, 2, 2);
  const PureState target = canonical({0.7, 0.3}, 2, 2);
  std::vector<SynthesisStepParams> params;
  const Protocol p = synthesize(bell, target, &params);

  CHECK(measurement_count(p) == 1);
  REQUIRE(params.size() == 1);
  CHECK(params[0].alpha_plus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(params[0].gamma == doctest::Approx(M_PI / 2).epsilon(1e-12));
  // Closed form: delta = arcsin(2 sqrt(beta+ - beta+^2) / sin gamma) / 2.
  const double expected_delta = 0.5 * std::asin(2.0 * std::sqrt(0.7 - 0.49));
  CHECK(params[0].delta == doctest::Approx(expected_delta).epsilon(1e-12));
  CHECK(std::abs(expected_delta - 0.579640) < 1e-6);

  CHECK(validate(p).valid);
  const auto rep = verify_transformation(p, bell, target);
  CHECK(rep.pass);
  CHECK(rep.min_fidelity >= 1.0 - 1e-9);
}

TEST_CASE("synthesis step parameter invariants") {
  CounterRng rng(32);
  for (int it = 0; it < 100; ++it) {
    auto [psi, phi] = haar_majorizing_pair(4, rng);
    std::vector<SynthesisStepParams> params;
    synthesize(psi, phi, &params);
    for (const auto& sp : params) {
      CHECK(sp.alpha_plus + sp.alpha_minus == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sp.beta_plus + sp.beta_minus == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sp.beta_minus <= sp.alpha_minus + 1e-12);
      CHECK(sp.alpha_minus <= sp.alpha_plus + 1e-12);
      CHECK(sp.alpha_plus <= sp.beta_plus + 1e-12);
      CHECK(sp.alpha_plus ==
            doctest::Approx((1.0 + std::cos(sp.gamma)) / 2).epsilon(1e-12));
      CHECK(sp.delta >= 0.0);
      CHECK(sp.delta <= M_PI / 4 + 1e-12);
    }
  }
}

TEST_CASE("locally equivalent pair synthesizes without measurements") {
  CounterRng rng(33);
  const PureState psi = random_pure_state(3, 3, 7);
  const Matrix u = locc::testing::random_unitary(3, rng);
  const Matrix v = locc::testing::random_unitary(3, rng);
  const PureState phi(3, 3, u * psi.amplitudes() * v.transpose());
  const Protocol p = synthesize(psi, phi);
  CHECK(measurement_count(p) == 0);
  CHECK(communication_cost(p) == 0);
  CHECK(verify_transformation(p, psi, phi).pass);
}

TEST_CASE("synthesize uniform 3-level to (0.5, 0.25, 0.25)") {
  const PureState psi = canonical({1.0 / 3, 1.0 / 3, 1.0 / 3}, 3, 3);
  const PureState phi = canonical({0.5, 0.25, 0.25}, 3, 3);
  const Protocol p = synthesize(psi, phi);
  CHECK(measurement_count(p) <= 2);
  const auto branches = enumerate_branches(p, psi);
  CHECK(branches.size() <= 4);
  for (const auto& b : branches) {
    CHECK(fidelity(b.final_state, phi) >= 1.0 - 1e-9);
  }
}

TEST_CASE("synthesize refuses impossible transformations") {
  CHECK_THROWS_AS(
      synthesize(canonical({0.7, 0.3}, 2, 2), canonical({0.5, 0.5}, 2, 2)),
      NotMajorized);
  CHECK_THROWS_AS(synthesize(canonical({0.5, 0.4, 0.1}, 3, 3),
                             canonical({0.6, 0.2, 0.2}, 3, 3)),
                  NotMajorized);
}

TEST_CASE("correction_unitaries") {
  const PureState bell = canonical({0.5, 0.5}, 2, 2);
  Matrix flipped = Matrix::Zero(2, 2);
  flipped(0, 1) = flipped(1, 0) = 1.0 / std::sqrt(2.0);
  const PureState swapped(2, 2, flipped);

  auto [ua, ub] = correction_unitaries(swapped, bell);
  const PureState corrected(2, 2, ua * swapped.amplitudes() * ub.transpose());
  CHECK(fidelity(corrected, bell) >= 1.0 - 1e-10);

  auto [ia, ib] = correction_unitaries(bell, bell);
  const PureState same(2, 2, ia * bell.amplitudes() * ib.transpose());
  CHECK(fidelity(same, bell) >= 1.0 - 1e-10);

  CHECK_THROWS_AS(correction_unitaries(canonical({1.0}, 2, 2), bell),
                  NotLocallyEquivalent);

  // Random locally equivalent pairs.
  CounterRng rng(34);
  for (int it = 0; it < 200; ++it) {
    const PureState s = random_pure_state(4, 3, rng.next_u64());
    const Matrix u = locc::testing::random_unitary(4, rng);
    const Matrix v = locc::testing::random_unitary(3, rng);
    const PureState t(4, 3, u * s.amplitudes() * v.transpose());
    auto [ca, cb] = correction_unitaries(s, t);
    const PureState moved(4, 3, ca * s.amplitudes() * cb.transpose());
    CHECK(fidelity(moved, t) >= 1.0 - 1e-10);
  }
}

TEST_CASE("validate catches broken protocols") {
  // Single-operator measurement missing its completeness partner.
  Matrix m1 = Matrix::Zero(2, 2);
  m1(0, 0) = std::cos(0.3);
  m1(1, 1) = std::sin(0.3);
  Protocol incomplete{2, 2, {Measurement{Party::Alice, {m1}, "m0"}}};
  const auto rep = validate(incomplete);
  CHECK_FALSE(rep.valid);
  CHECK(rep.checks[0].completeness_residual > 1e-10);

  // Non-unitary conditional table entry.
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  Matrix m2 = Matrix::Zero(2, 2);
  m2(0, 0) = std::sin(0.3);
  m2(1, 1) = std::cos(0.3);
  Protocol bad_cond{2,
                    2,
                    {Measurement{Party::Alice, {m1, m2}, "m0"},
                     ConditionalUnitary{Party::Bob, "m0", {{0, half}}}}};
  CHECK_FALSE(validate(bad_cond).valid);

  // Forward reference: conditional before its measurement.
  Protocol forward{2,
                   2,
                   {ConditionalUnitary{Party::Bob, "m0",
                                       {{0, Matrix::Identity(2, 2)}}},
                    Measurement{Party::Alice, {m1, m2}, "m0"}}};
  CHECK_FALSE(validate(forward).valid);

  // Operator with support outside the declared party's space.
  Protocol off_party{2, 3, {LocalUnitary{Party::Alice, Matrix::Identity(3, 3)}}};
  CHECK_FALSE(validate(off_party).valid);
  CHECK_FALSE(validate(off_party).violations.empty());
}

TEST_CASE("synthesized protocols validate") {
  CounterRng rng(35);
  for (int it = 0; it < 50; ++it) {
    auto [psi, phi] = haar_majorizing_pair(3, rng);
    const auto rep = validate(synthesize(psi, phi));
    CHECK(rep.valid);
    for (const auto& c : rep.checks) {
      CHECK(c.completeness_residual <= 1e-10);
      CHECK(c.unitarity_residual <= 1e-10);
    }
  }
}

TEST_CASE("necessity certificate for Bell to (0.7, 0.3)") {
  const PureState bell = canonical({0.5, 0.5}, 2, 2);
  const PureState target = canonical({0.7, 0.3}, 2, 2);
  const Protocol p = synthesize(bell, target);
  const NecessityCertificate cert = necessity_certificate(p, bell, target);
  REQUIRE(cert.probabilities.size() == 2);
  CHECK(cert.probabilities[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cert.probabilities[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cert.reconstruction_residual <= 1e-10);
}

TEST_CASE("identity protocol yields a trivial certificate") {
  const PureState psi = random_pure_state(3, 3, 42);
  Protocol p{3, 3, {LocalUnitary{Party::Alice, Matrix::Identity(3, 3)}}};
  const NecessityCertificate cert = necessity_certificate(p, psi, psi);
  REQUIRE(cert.probabilities.size() == 1);
  CHECK(cert.probabilities[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cert.reconstruction_residual <= 1e-12);
  CHECK((cert.unitaries[0].adjoint() * cert.unitaries[0] -
         Matrix::Identity(3, 3))
            .norm() <= 1e-10);
}

TEST_CASE("certificates imply the majorization relation") {
  CounterRng rng(36);
  for (int it = 0; it < 60; ++it) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 3);
    auto [psi, phi] = haar_majorizing_pair(d, rng);
    const Protocol p = synthesize(psi, phi);
    const NecessityCertificate cert = necessity_certificate(p, psi, phi);
    CHECK(cert.reconstruction_residual <= 1e-9);
    CHECK(majorizes(schmidt_spectrum(psi), schmidt_spectrum(phi)));
  }
}

TEST_CASE("communication cost") {
  Protocol unitary_only{2, 2, {LocalUnitary{Party::Bob, Matrix::Identity(2, 2)}}};
  CHECK(communication_cost(unitary_only) == 0);

  const PureState bell = canonical({0.5, 0.5}, 2, 2);
  const Protocol p = synthesize(bell, canonical({0.7, 0.3}, 2, 2));
  CHECK(communication_cost(p) == 1);

  CounterRng rng(37);
  for (int it = 0; it < 20; ++it) {
    auto [psi, phi] = haar_majorizing_pair(5, rng);
    CHECK(communication_cost(synthesize(psi, phi)) <= 4);
  }
}

TEST_CASE("entropy never increases along possible transformations") {
  CounterRng rng(38);
  for (int it = 0; it < 500; ++it) {
    const int d = 2 + static_cast<int>(rng.next_u64() % 4);
    auto [psi, phi] = haar_majorizing_pair(d, rng);
    CHECK(shannon_entropy(schmidt_spectrum(phi)) <=
          shannon_entropy(schmidt_spectrum(psi)) + 1e-10);
  }
}
