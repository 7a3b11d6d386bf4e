#include <doctest.h>

#include <cmath>
#include <numbers>

#include "su6/bench_format.hpp"
#include "su6/error.hpp"
#include "su6/field.hpp"
#include "su6/io.hpp"
#include "su6/optics.hpp"
#include "su6/random.hpp"
#include "test_support.hpp"

using namespace su6;
using su6::test::I;
using su6::test::matrix;

namespace {

constexpr double kPi = std::numbers::pi;

OpticalElement element(ElementKind kind, double angle = 0.0) {
  OpticalElement e;
  e.kind = kind;
  e.angle_deg = angle;
  return e;
}

// Global-phase-insensitive equality with a multiple of the identity.
bool proportional_to_identity(const ComplexMatrix& m, double tol = 1e-12) {
  const Complex c = m(0, 0);
  return std::abs(std::abs(c) - 1.0) < tol &&
         max_abs(ComplexMatrix(m - c * ComplexMatrix::Identity(m.rows(), m.cols()))) < tol;
}

BenchDescription load(const std::string& name) {
  return parse_bench(read_file(su6::test::data_dir() / "benches" / name));
}

double signed_polar(const SpherePoint& p) { return std::atan2(p.coords[0], p.coords[2]); }

} // namespace

TEST_CASE("Jones matrices follow the documented conventions") {
  const double t = 0.3;
  const ComplexMatrix hwp = jones_hv(element(ElementKind::hwp, t * 180 / kPi));
  CHECK(approx_equal(hwp, -I * matrix(2, 2, {std::cos(2 * t), std::sin(2 * t), std::sin(2 * t),
                                             -std::cos(2 * t)})));
  const double c = std::cos(t), s = std::sin(t);
  const ComplexMatrix qwp = jones_hv(element(ElementKind::qwp, t * 180 / kPi));
  const ComplexMatrix qref =
      std::exp(-I * kPi / 4.0) *
      matrix(2, 2, {c * c + I * s * s, (1.0 - I) * s * c, (1.0 - I) * s * c, s * s + I * c * c});
  CHECK(approx_equal(qwp, qref));
  // |H> = (|L> + |R>)/sqrt2 in the spin basis.
  const ComplexMatrix to_spin = hv_to_spin(ComplexMatrix::Identity(2, 2));
  CHECK(approx_equal(to_spin, ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("every element operator except the polarizer is unitary") {
  Rng rng(21);
  for (auto kind : {ElementKind::hwp, ElementKind::qwp, ElementKind::mirror,
                    ElementKind::vortex_lens, ElementKind::phase}) {
    for (int t = 0; t < 10; ++t) {
      OpticalElement e = element(kind, rng.uniform(-360, 360));
      e.chirality = rng.uniform() < 0.5 ? Chirality::left : Chirality::right;
      e.flipped = rng.uniform() < 0.5;
      const ComplexMatrix u = element_operator(e);
      CHECK(max_abs(ComplexMatrix(u.adjoint() * u - ComplexMatrix::Identity(6, 6))) < 1e-12);
    }
  }
  const ComplexMatrix p = element_operator(element(ElementKind::polarizer, 30));
  CHECK(approx_equal(p * p, p));
  CHECK(is_hermitian(p));
  CHECK_THROWS_AS(element_operator(element(ElementKind::pbs)), InvalidArgument);
  CHECK_THROWS_AS(element_operator(element(ElementKind::npbs)), InvalidArgument);
}

TEST_CASE("half-wave and mirror involutions") {
  const ComplexMatrix m = element_operator(element(ElementKind::mirror));
  CHECK(proportional_to_identity(m * m));
  for (double a : {0.0, 17.0, 45.0, 133.0}) {
    const ComplexMatrix h = element_operator(element(ElementKind::hwp, a));
    CHECK(proportional_to_identity(h * h));
  }
  // Angle periodicity: 180 deg for waveplates, 360 deg for PHASE.
  CHECK(approx_equal(element_operator(element(ElementKind::qwp, 10)),
                     element_operator(element(ElementKind::qwp, 190))));
  CHECK(approx_equal(element_operator(element(ElementKind::phase, 10)),
                     element_operator(element(ElementKind::phase, 370))));
}

TEST_CASE("element actions named in the figure caption") {
  const CoherentState up_o = CoherentState::basis(3);
  // HWP at 0 deg leaves an H-polarized Gaussian on its ray.
  const CoherentState h = named_state("h_gaussian");
  CHECK(apply_unitary(h, element_operator(element(ElementKind::hwp, 0))).same_ray(h));
  // VL(R) on |up, O> gives |up, R> = |2>.
  OpticalElement vl = element(ElementKind::vortex_lens);
  vl.chirality = Chirality::right;
  CHECK(apply_unitary(up_o, element_operator(vl)).same_ray(CoherentState::basis(2)));
  vl.flipped = true;
  CHECK(apply_unitary(up_o, element_operator(vl)).same_ray(CoherentState::basis(1)));
  vl.chirality = Chirality::left;
  vl.flipped = false;
  CHECK(apply_unitary(up_o, element_operator(vl)).same_ray(CoherentState::basis(1)));
  // MIRROR on |up, O> gives |down, O> and swaps L and R.
  const ComplexMatrix m = element_operator(element(ElementKind::mirror));
  CHECK(apply_unitary(up_o, m).same_ray(CoherentState::basis(6)));
  CHECK(apply_unitary(CoherentState::basis(1), m).same_ray(CoherentState::basis(5)));
}

TEST_CASE("fig1 bench produces Neel-out at the camera (direct matrix product oracle)") {
  const BenchDescription b = load("fig1.bench");
  const CoherentState input = named_state(b.input);
  const CoherentState out = run_bench(b, input);
  CHECK(out.same_ray(named_state("neel_out"), 1e-12));

  // Oracle: compose the operators by hand.
  auto chain = [](const std::vector<OpticalElement>& es) {
    ComplexMatrix u = ComplexMatrix::Identity(6, 6);
    for (const auto& e : es) u = element_operator(e) * u;
    return u;
  };
  const ComplexMatrix one3 = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix ph = kron(hv_to_spin(matrix(2, 2, {1, 0, 0, 0})), one3);
  const ComplexMatrix pv = kron(hv_to_spin(matrix(2, 2, {0, 0, 0, 1})), one3);
  const Vector6c prepared = chain(b.prepare) * input.alpha();
  const Vector6c oracle =
      chain(b.arm_a) * ph * prepared + mirror_operator() * chain(b.arm_b) * pv * prepared;
  CHECK(out.same_ray(CoherentState(oracle), 1e-12));
}

TEST_CASE("flipping the vortex lens moves the camera state to the antiskyrmion family") {
  const BenchDescription b = load("fig1_antiskyrmion.bench");
  const CoherentState out = run_bench(b);
  CHECK(std::abs(out[3]) < 1e-12);
  CHECK(std::abs(out[2]) == doctest::Approx(1 / std::numbers::sqrt2));
  CHECK(std::abs(out[4]) == doctest::Approx(1 / std::numbers::sqrt2));
  CHECK(classify_texture(out).kind == TextureKind::antiskyrmion);
}

TEST_CASE("trivial bench returns the input ray") {
  const BenchDescription b = load("trivial.bench");
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    const CoherentState in = rng.state();
    CHECK(run_bench(b, in).same_ray(in, 1e-12));
  }
}

TEST_CASE("fully destructive recombination is rejected") {
  // |up, O> = (|H> - i|V>)/sqrt2; HWP(45) sends -i|V> to -|H>, cancelling arm A.
  const BenchDescription b = parse_bench(
      "bench \"dark\"; input state=basis_3; split PBS; arm B: HWP angle=45;"
      " combine NPBS reflect=none");
  CHECK_THROWS_AS(run_bench(b), ComputationError);
}

TEST_CASE("sweep spec frame counts") {
  SweepSpec s{"HWP3", 0, 180, 10, {}};
  CHECK(s.frame_count() == 19);
  CHECK(s.value(9) == 90.0);
  CHECK(SweepSpec{"x", 90, 0, -5, {}}.frame_count() == 19);
  CHECK(SweepSpec{"x", 0, 0.3, 0.1, {}}.frame_count() == 4);
  CHECK_THROWS_AS((SweepSpec{"x", 0, 10, 0, {}}.frame_count()), InvalidArgument);
  CHECK_THROWS_AS((SweepSpec{"x", 0, 10, -1, {}}.frame_count()), InvalidArgument);
  CHECK_THROWS_AS((SweepSpec{"x", 0, 10, 3, {}}.frame_count()), InvalidArgument);
}

TEST_CASE("phase-shifter sweep: azimuth rate -2, constant S3, named frames") {
  const BenchDescription b = load("fig1.bench");
  const auto frames = sweep(b, b.sweeps.at(0), named_state(b.input));
  REQUIRE(frames.size() == 19);
  CHECK(classify_texture(frames[0].state).kind == TextureKind::neel_out);
  CHECK(classify_texture(frames[9].state).kind == TextureKind::neel_in);
  const double s3 = frames[0].skyrmion.coords[2];
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const double dphi = std::remainder(frames[i].skyrmion.phi - frames[i - 1].skyrmion.phi, 2 * kPi);
    CHECK(std::abs(dphi - (-20.0 * kPi / 180.0)) < 1e-9);
    CHECK(std::abs(frames[i].skyrmion.coords[2] - s3) < 1e-10);
    CHECK(frames[i].torus.has_value());
  }
}

TEST_CASE("rotator sweep: signed polar angle advances at 4 deg per deg in the S1-S3 plane") {
  const BenchDescription b = load("fig1_rotator.bench");
  const auto frames = sweep(b, b.sweeps.at(0), named_state(b.input));
  REQUIRE(frames.size() == 19);
  CHECK(classify_texture(frames[0].state).kind == TextureKind::pole);
  double previous = signed_polar(frames[0].skyrmion);
  double unwrapped = previous;
  for (std::size_t i = 1; i < frames.size(); ++i) {
    const double now = signed_polar(frames[i].skyrmion);
    const double step = std::remainder(now - previous, 2 * kPi);
    unwrapped += step;
    previous = now;
    CHECK(std::abs(std::abs(step) - 20.0 * kPi / 180.0) < 1e-9);
    CHECK(step > 0);
    CHECK(std::abs(frames[i].skyrmion.coords[1]) < 1e-12); // confined to the S1-S3 plane
  }
  CHECK(unwrapped - signed_polar(frames[0].skyrmion) == doctest::Approx(2 * kPi));
}
