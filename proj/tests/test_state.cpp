#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su6/error.hpp"
#include "su6/random.hpp"
#include "su6/state.hpp"
#include "test_support.hpp"

using namespace su6;
using su6::test::I;

namespace {

constexpr double kPi = std::numbers::pi;
const double kRadius = std::sqrt(5.0 / 3.0);

void check_coords(const SpherePoint& p, double x, double y, double z, double tol = 1e-12) {
  CHECK(std::abs(p.coords[0] - x) < tol);
  CHECK(std::abs(p.coords[1] - y) < tol);
  CHECK(std::abs(p.coords[2] - z) < tol);
}

} // namespace

TEST_CASE("CoherentState normalizes and validates") {
  Vector6c a = Vector6c::Zero();
  a(2) = 3.0;
  a(3) = 4.0 * I;
  const CoherentState s(a, 2.0);
  CHECK(s.alpha().norm() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(s[2] - Complex(0.6)) < 1e-15);
  CHECK(s.scale() == 2.0);
  CHECK_THROWS_AS(CoherentState(Vector6c::Zero()), InvalidArgument);
  CHECK_THROWS_AS(CoherentState(a, 0.0), InvalidArgument);
  CHECK_THROWS_AS(CoherentState(a, 1.0, -1.0), InvalidArgument);
  CHECK(std::abs(CoherentState::basis(3)[2] - Complex(1.0)) == 0.0);
  CHECK_THROWS_AS(CoherentState::basis(0), InvalidArgument);
  CHECK_THROWS_AS(CoherentState::basis(7), InvalidArgument);
}

TEST_CASE("same_ray ignores the global phase only") {
  const CoherentState a = named_state("neel_out");
  CHECK(a.same_ray(a.with_alpha(std::exp(I * 0.4) * a.alpha())));
  CHECK_FALSE(a.same_ray(named_state("neel_in")));
}

TEST_CASE("expectation rejects non-Hermitian and mis-sized operators") {
  const CoherentState s = named_state("neel_out");
  ComplexMatrix m = ComplexMatrix::Zero(6, 6);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(expectation(s, m), InvalidArgument);
  CHECK_THROWS_AS(expectation(s, ComplexMatrix::Identity(3, 3)), InvalidArgument);
}

TEST_CASE("hypersphere radius sqrt(5/3) for random pure states") {
  // Completeness sum_n b_n (x) b_n = 2 (SWAP - 1/6) gives sum <b_n>^2 = 5/3.
  const GeneratorBasis basis = su6_basis();
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const CoherentState s = rng.state();
    CHECK(std::abs(all_expectations(s, basis).norm() - kRadius) < 1e-10);
  }
  const CoherentState scaled(named_state("dipolar").alpha(), 4.0);
  CHECK(std::abs(all_expectations(scaled, basis).norm() - 4.0 * kRadius) < 1e-10);
  CHECK(hypersphere_radius(scaled) == doctest::Approx(4.0 * kRadius).epsilon(1e-15));
  CHECK(std::abs(all_expectations(CoherentState::basis(3), basis).norm() - 1.2909944487358056) <
        1e-12);
}

TEST_CASE("norm conserved under repeated random rotations") {
  const GeneratorBasis basis = su6_basis();
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    CoherentState s = rng.state();
    for (int k = 0; k < 5; ++k) {
      const auto dir = rng.direction(35);
      s = apply_unitary(s, exp_generator(combine_generators(basis, dir), rng.uniform(-3, 3)));
      CHECK(std::abs(all_expectations(s, basis).norm() - kRadius) < 1e-10);
    }
  }
}

TEST_CASE("apply_unitary rejects non-unitary operators") {
  ComplexMatrix p = ComplexMatrix::Zero(6, 6);
  p(0, 0) = 1.0;
  CHECK_THROWS_AS(apply_unitary(named_state("neel_out"), p), InvalidArgument);
}

TEST_CASE("quantum-classical correspondence on axes and arbitrary directions") {
  const GeneratorBasis basis = su6_basis();
  const AdjointRep adj = adjoint_matrices(structure_constants(basis));
  Rng rng(13);
  double worst = 0.0;
  for (int t = 0; t < 80; ++t)
    worst = std::max(worst, correspondence_residual(rng.state(), basis, adj, rng.index(35),
                                                    rng.uniform(-kPi, kPi)));
  for (int t = 0; t < 20; ++t)
    worst = std::max(worst, correspondence_residual(rng.state(), basis, adj, rng.direction(35),
                                                    rng.uniform(-kPi, kPi)));
  CHECK(worst < 1e-9);
}

TEST_CASE("named states sit at their sphere points") {
  check_coords(skyrmion_sphere(named_state("neel_out")), 1, 0, 0);
  check_coords(skyrmion_sphere(named_state("bloch_left")), 0, 1, 0);
  check_coords(skyrmion_sphere(named_state("neel_in")), -1, 0, 0);
  check_coords(skyrmion_sphere(named_state("bloch_right")), 0, -1, 0);
  check_coords(antiskyrmion_sphere(named_state("antiskyrmion_h")), 1, 0, 0);
  check_coords(antiskyrmion_sphere(named_state("antiskyrmion_v")), -1, 0, 0);
  check_coords(skyrmion_sphere(CoherentState::basis(3)), 0, 0, 1);
  check_coords(skyrmion_sphere(CoherentState::basis(4)), 0, 0, -1);
  CHECK(std::abs(overlap(named_state("neel_out"), named_state("neel_in"))) < 1e-12);
  CHECK(std::abs(overlap(named_state("neel_out"), named_state("antiskyrmion_h")) - 0.5) < 1e-12);
}

TEST_CASE("sphere angles and pole degeneracy") {
  const SpherePoint n = skyrmion_sphere(CoherentState::basis(3));
  CHECK(n.degenerate_azimuth);
  CHECK(n.theta == 0.0);
  CHECK(n.phi == 0.0);
  const SpherePoint w = make_sphere_point(SphereKind::skyrmion, {-1.0, -0.0, 0.0});
  CHECK(w.phi == doctest::Approx(kPi)); // (-pi, pi] convention
  const SpherePoint b = skyrmion_sphere(named_state("bloch_left"));
  CHECK(b.theta == doctest::Approx(kPi / 2));
  CHECK(b.phi == doctest::Approx(kPi / 2));
}

TEST_CASE("su2_state round-trips through the sphere angles") {
  Rng rng(14);
  for (int t = 0; t < 50; ++t) {
    const double theta = rng.uniform(0.05, kPi - 0.05);
    const double phi = rng.uniform(-kPi + 0.05, kPi - 0.05);
    const SpherePoint s = skyrmion_sphere(su2_state(theta, phi, Su2Kind::skyrmion));
    CHECK(s.theta == doctest::Approx(theta).epsilon(1e-12));
    CHECK(s.phi == doctest::Approx(phi).epsilon(1e-12));
    const SpherePoint a = antiskyrmion_sphere(su2_state(theta, phi, Su2Kind::antiskyrmion));
    CHECK(a.theta == doctest::Approx(theta).epsilon(1e-12));
    CHECK(a.phi == doctest::Approx(phi).epsilon(1e-12));
  }
}

TEST_CASE("torus: poloidal radius, round trip and rejection") {
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    const double tp = rng.uniform(0.01, kPi - 0.01) * (rng.uniform() < 0.5 ? -1 : 1);
    const double pt = rng.uniform(-kPi + 0.01, kPi - 0.01);
    const TorusPoint back = state_to_torus(torus_state(tp, pt));
    CHECK(std::abs(back.l_p - 0.5) < 1e-10);
    CHECK(std::abs(back.theta_p - tp) < 1e-9);
    CHECK(std::abs(std::remainder(back.phi_t - pt, 2 * kPi)) < 1e-9);
  }
  const TorusPoint n = state_to_torus(named_state("neel_out"));
  CHECK(std::abs(n.theta_p) < 1e-12);
  CHECK(std::abs(n.l_p - 0.5) < 1e-12);
  CHECK(std::abs(n.phi_t) < 1e-12);
  CHECK(std::abs(state_to_torus(named_state("neel_in")).phi_t) == doctest::Approx(kPi));
  CHECK(state_to_torus(named_state("dipolar")).theta_p == doctest::Approx(kPi / 2));
  // theta_p = pi is the antiskyrmion (|3> + e^{i phi_t}|5>)/sqrt2.
  CHECK(torus_state(kPi, 0.0).same_ray(named_state("antiskyrmion_h"), 1e-12));

  CHECK_THROWS_AS(state_to_torus(CoherentState::basis(1)), InvalidArgument);
  try {
    state_to_torus(CoherentState::basis(3));
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("|alpha_3|^2") != std::string::npos);
  }
  // |4> and |5> amplitudes with different phases are not on the torus.
  Vector6c a = Vector6c::Zero();
  a(2) = 1.0 / std::numbers::sqrt2;
  a(3) = 0.5;
  a(4) = 0.5 * I;
  CHECK_THROWS_AS(state_to_torus(CoherentState(a)), InvalidArgument);
}

TEST_CASE("OAM sphere cannot tell Neel-out from Neel-in") {
  check_coords(oam_sphere(named_state("neel_out")), 0, 0, 0.5);
  check_coords(oam_sphere(named_state("neel_in")), 0, 0, 0.5);
  check_coords(oam_sphere(named_state("antiskyrmion_h")), 0, 0, -0.5);
  CHECK(std::abs(overlap(named_state("neel_out"), named_state("neel_in"))) < 1e-12);
}

TEST_CASE("polarization sphere of a single OAM mode") {
  // H-polarized Gaussian: equal up/down weights in phase on O.
  const SpherePoint p = polarization_sphere(named_state("h_gaussian"), 2);
  check_coords(p, 1, 0, 0);
  check_coords(polarization_sphere(named_state("h_gaussian"), 0), 0, 0, 0);
  CHECK_THROWS_AS(polarization_sphere(named_state("h_gaussian"), 3), InvalidArgument);
}

TEST_CASE("fifteen two-state subspheres with their classes") {
  const auto subs = enumerate_subspheres();
  REQUIRE(subs.size() == 15);
  int counts[5] = {0, 0, 0, 0, 0};
  for (const auto& s : subs) {
    ++counts[static_cast<int>(s.cls)];
    CHECK(s.first < s.second);
  }
  CHECK(counts[static_cast<int>(SubsphereClass::polarization)] == 3);
  CHECK(counts[static_cast<int>(SubsphereClass::oam)] == 6);
  CHECK(counts[static_cast<int>(SubsphereClass::coupling)] == 2);
  CHECK(counts[static_cast<int>(SubsphereClass::skyrmion)] == 2);
  CHECK(counts[static_cast<int>(SubsphereClass::antiskyrmion)] == 2);
  const auto sk = skyrmion_generators();
  const auto pg = pair_generators(3, 4);
  for (int k = 0; k < 3; ++k) CHECK(approx_equal(sk[k], pg[k]));
}

TEST_CASE("named state catalog") {
  CHECK(named_state_catalog().size() == 15);
  CHECK(is_named_state("dipolar"));
  CHECK_FALSE(is_named_state("dipole"));
  try {
    named_state("dipole");
    FAIL("expected rejection");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("neel_out") != std::string::npos);
  }
}
