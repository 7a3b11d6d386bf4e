#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "su6/algebra.hpp"
#include "su6/state.hpp"

namespace su6 {

enum class ElementKind { hwp, qwp, polarizer, pbs, npbs, mirror, vortex_lens, phase };
enum class Chirality { left, right };
enum class Arm { a, b };

std::string_view to_string(ElementKind k);
std::string_view to_string(Arm a);

/// One component of the bench. Angles are kept in degrees as written; the
/// operators are periodic (180 deg for waveplates and polarizers, 360 deg for
/// PHASE) so no reduction is applied.
struct OpticalElement {
  std::string id;
  ElementKind kind = ElementKind::mirror;
  double angle_deg = 0.0;
  Chirality chirality = Chirality::right;
  bool flipped = false;

  bool has_angle() const;
};

/// Jones matrix of a polarization element in the (H, V) basis.
ComplexMatrix jones_hv(const OpticalElement& e);

/// Rewrites an (H, V) Jones matrix in the (up, down) = (L-circular,
/// R-circular) spin basis with |L> = (|H> - i|V>)/sqrt2, |R> = (|H> + i|V>)/sqrt2.
ComplexMatrix hv_to_spin(const ComplexMatrix& jones);

/// 6x6 operator of an element on the spin (x) OAM space. Every kind is
/// unitary except POLARIZER, which is a projector. PBS and NPBS are realized
/// by run_bench and rejected here.
ComplexMatrix element_operator(const OpticalElement& e);

/// Spin and OAM chirality reversal applied by a mirror reflection.
ComplexMatrix mirror_operator();

struct SweepSpec {
  std::string element_id;
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;
  std::vector<std::string> record;

  /// Number of frames, (stop - start)/step + 1. Throws InvalidArgument when
  /// step is zero, has the wrong sign, or does not divide the range.
  std::size_t frame_count() const;
  double value(std::size_t frame) const { return start + static_cast<double>(frame) * step; }
};

struct BenchDescription {
  std::string name;
  /// Named state from the catalog or a path to a state JSON file.
  std::string input;
  std::vector<OpticalElement> prepare;
  std::vector<OpticalElement> arm_a;
  std::vector<OpticalElement> arm_b;
  /// Arm whose beam is reflected at the NPBS; nullopt combines without the
  /// mirror flip.
  std::optional<Arm> reflected_arm = Arm::b;
  std::vector<SweepSpec> sweeps;

  const OpticalElement* find(std::string_view id) const;
  OpticalElement* find(std::string_view id);
};

using StateResolver = std::function<CoherentState(std::string_view)>;

/// Resolves catalog names only.
CoherentState resolve_named_state(std::string_view ref);

/// Camera-plane state: prepare chain, PBS split (H into arm A, V into arm B),
/// arm chains, NPBS recombination (t + F r)/sqrt2 with the mirror flip F on the
/// reflected arm, renormalized. Throws ComputationError when the output port
/// is dark.
CoherentState run_bench(const BenchDescription& bench, const CoherentState& input);
CoherentState run_bench(const BenchDescription& bench,
                        const StateResolver& resolve = resolve_named_state);

struct Frame {
  double parameter = 0.0;
  CoherentState state;
  SpherePoint skyrmion;
  SpherePoint antiskyrmion;
  SpherePoint oam;
  std::optional<TorusPoint> torus;
};

Frame make_frame(double parameter, const CoherentState& state);

/// One frame per sweep value, in order.
std::vector<Frame> sweep(const BenchDescription& bench, const SweepSpec& spec,
                         const CoherentState& input);

} // namespace su6
