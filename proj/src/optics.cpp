#include "su6/optics.hpp"

#include <cmath>
#include <numbers>

#include "su6/error.hpp"

namespace su6 {

namespace {

constexpr Complex kI{0.0, 1.0};

double radians(double deg) { return deg * std::numbers::pi / 180.0; }

// Maps (spin up, spin down) amplitudes to (H, V) amplitudes.
ComplexMatrix circular_to_hv() {
  const double h = 1.0 / std::numbers::sqrt2;
  ComplexMatrix t(2, 2);
  t << h, h, -kI * h, kI * h;
  return t;
}

ComplexMatrix oam_permutation(const std::array<int, 3>& image) {
  // Column k has its 1 at row image[k]: |k> -> |image[k]>.
  ComplexMatrix p = ComplexMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) p(image[k], k) = 1.0;
  return p;
}

constexpr int kL = 0;
constexpr int kR = 1;
constexpr int kO = 2;

ComplexMatrix apply_chain(const std::vector<OpticalElement>& chain) {
  ComplexMatrix u = ComplexMatrix::Identity(6, 6);
  for (const auto& e : chain) u = element_operator(e) * u;
  return u;
}

} // namespace

std::string_view to_string(ElementKind k) {
  switch (k) {
  case ElementKind::hwp: return "HWP";
  case ElementKind::qwp: return "QWP";
  case ElementKind::polarizer: return "POLARIZER";
  case ElementKind::pbs: return "PBS";
  case ElementKind::npbs: return "NPBS";
  case ElementKind::mirror: return "MIRROR";
  case ElementKind::vortex_lens: return "VL";
  case ElementKind::phase: return "PHASE";
  }
  return "?";
}

std::string_view to_string(Arm a) { return a == Arm::a ? "A" : "B"; }

bool OpticalElement::has_angle() const {
  return kind == ElementKind::hwp || kind == ElementKind::qwp ||
         kind == ElementKind::polarizer || kind == ElementKind::phase;
}

ComplexMatrix jones_hv(const OpticalElement& e) {
  const double t = radians(e.angle_deg);
  const double c = std::cos(t);
  const double s = std::sin(t);
  ComplexMatrix j(2, 2);
  switch (e.kind) {
  case ElementKind::hwp: {
    const double c2 = std::cos(2.0 * t);
    const double s2 = std::sin(2.0 * t);
    j << c2, s2, s2, -c2;
    return -kI * j;
  }
  case ElementKind::qwp: {
    const Complex off = (1.0 - kI) * s * c;
    j << c * c + kI * s * s, off, off, s * s + kI * c * c;
    return std::exp(-kI * std::numbers::pi / 4.0) * j;
  }
  case ElementKind::polarizer:
    j << c * c, s * c, s * c, s * s;
    return j;
  case ElementKind::mirror:
    j << 1.0, 0.0, 0.0, -1.0;
    return j;
  default:
    throw InvalidArgument("jones_hv: " + std::string(to_string(e.kind)) +
                          " is not a polarization element");
  }
}

ComplexMatrix hv_to_spin(const ComplexMatrix& jones) {
  const ComplexMatrix t = circular_to_hv();
  return t.adjoint() * jones * t;
}

ComplexMatrix mirror_operator() {
  OpticalElement m;
  m.kind = ElementKind::mirror;
  return kron(hv_to_spin(jones_hv(m)), oam_permutation({kR, kL, kO}));
}

ComplexMatrix element_operator(const OpticalElement& e) {
  const ComplexMatrix one3 = ComplexMatrix::Identity(3, 3);
  switch (e.kind) {
  case ElementKind::hwp:
  case ElementKind::qwp:
  case ElementKind::polarizer:
    return kron(hv_to_spin(jones_hv(e)), one3);
  case ElementKind::mirror:
    return mirror_operator();
  case ElementKind::vortex_lens: {
    // Left lens: O -> L -> R -> O; right lens is the inverse cycle.
    const bool left = (e.chirality == Chirality::left) != e.flipped;
    const ComplexMatrix shift =
        left ? oam_permutation({kR, kO, kL}) : oam_permutation({kO, kL, kR});
    return kron(ComplexMatrix::Identity(2, 2), shift);
  }
  case ElementKind::phase:
    return std::exp(kI * radians(e.angle_deg)) * ComplexMatrix::Identity(6, 6);
  case ElementKind::pbs:
  case ElementKind::npbs:
    break;
  }
  throw InvalidArgument("element_operator: " + std::string(to_string(e.kind)) +
                        " is a splitter/combiner and has no single-path operator");
}

std::size_t SweepSpec::frame_count() const {
  if (step == 0.0 || !std::isfinite(step))
    throw InvalidArgument("sweep step must be non-zero");
  const double n = (stop - start) / step;
  const double rounded = std::round(n);
  if (n < -1e-9 || std::abs(n - rounded) > 1e-9)
    throw InvalidArgument("sweep range is not an integer number of steps");
  return static_cast<std::size_t>(rounded) + 1;
}

const OpticalElement* BenchDescription::find(std::string_view id) const {
  for (const auto* chain : {&prepare, &arm_a, &arm_b})
    for (const auto& e : *chain)
      if (e.id == id) return &e;
  return nullptr;
}

OpticalElement* BenchDescription::find(std::string_view id) {
  return const_cast<OpticalElement*>(std::as_const(*this).find(id));
}

CoherentState resolve_named_state(std::string_view ref) { return named_state(ref); }

CoherentState run_bench(const BenchDescription& bench, const CoherentState& input) {
  const Vector6c prepared = apply_chain(bench.prepare) * input.alpha();

  ComplexMatrix proj_h = ComplexMatrix::Zero(2, 2);
  proj_h(0, 0) = 1.0;
  const ComplexMatrix proj_v = ComplexMatrix::Identity(2, 2) - proj_h;
  const ComplexMatrix one3 = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix split_h = kron(hv_to_spin(proj_h), one3);
  const ComplexMatrix split_v = kron(hv_to_spin(proj_v), one3);

  Vector6c a = apply_chain(bench.arm_a) * (split_h * prepared);
  Vector6c b = apply_chain(bench.arm_b) * (split_v * prepared);
  if (bench.reflected_arm == Arm::a) a = mirror_operator() * a;
  if (bench.reflected_arm == Arm::b) b = mirror_operator() * b;

  const Vector6c out = (a + b) / std::numbers::sqrt2;
  if (out.norm() < 1e-12)
    throw ComputationError("run_bench: output port of bench '" + bench.name +
                           "' is dark (fully destructive recombination)");
  return CoherentState(out, input.n0(), input.hbar());
}

CoherentState run_bench(const BenchDescription& bench, const StateResolver& resolve) {
  return run_bench(bench, resolve(bench.input));
}

Frame make_frame(double parameter, const CoherentState& state) {
  Frame f{parameter, state, skyrmion_sphere(state), antiskyrmion_sphere(state),
          oam_sphere(state), std::nullopt};
  try {
    f.torus = state_to_torus(state);
  } catch (const InvalidArgument&) {
    f.torus.reset();
  }
  return f;
}

std::vector<Frame> sweep(const BenchDescription& bench, const SweepSpec& spec,
                         const CoherentState& input) {
  const OpticalElement* target = bench.find(spec.element_id);
  if (target == nullptr)
    throw InvalidArgument("sweep: no element with id '" + spec.element_id + "'");
  if (!target->has_angle())
    throw InvalidArgument("sweep: element '" + spec.element_id + "' has no angle");

  const std::size_t frames = spec.frame_count();
  std::vector<Frame> out;
  out.reserve(frames);
  BenchDescription working = bench;
  OpticalElement* element = working.find(spec.element_id);
  for (std::size_t i = 0; i < frames; ++i) {
    element->angle_deg = spec.value(i);
    out.push_back(make_frame(spec.value(i), run_bench(working, input)));
  }
  return out;
}

} // namespace su6
