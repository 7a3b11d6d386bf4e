#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "su6/algebra.hpp"

namespace su6 {

using Vector6c = Eigen::Matrix<Complex, 6, 1>;

/// Table 1 basis positions (zero-based): spin-major, OAM order (L, R, O).
enum BasisIndex : int {
  kUpL = 0,   // |1>
  kUpR = 1,   // |2>
  kUpO = 2,   // |3>
  kDownL = 3, // |4>
  kDownR = 4, // |5>
  kDownO = 5, // |6>
};

/// SU(6) coherent state. Amplitudes are stored normalized; the photon number
/// n0 and action scale hbar only enter expectation values.
class CoherentState {
public:
  explicit CoherentState(const Vector6c& alpha, double n0 = 1.0, double hbar = 1.0);

  /// |index> for a one-based Table 1 index.
  static CoherentState basis(int index);

  const Vector6c& alpha() const { return alpha_; }
  Complex operator[](int i) const { return alpha_(i); }
  double n0() const { return n0_; }
  double hbar() const { return hbar_; }
  /// hbar * N0, the unit of every expectation value.
  double scale() const { return hbar_ * n0_; }

  CoherentState with_alpha(const Vector6c& alpha) const {
    return CoherentState(alpha, n0_, hbar_);
  }

  /// Equal up to a global phase, entrywise to tol.
  bool same_ray(const CoherentState& other, double tol = 1e-12) const;

private:
  Vector6c alpha_;
  double n0_;
  double hbar_;
};

/// hbar N0 alpha^dagger M alpha for Hermitian M.
double expectation(const CoherentState& state, const ComplexMatrix& m);

/// The 35 generalized angular momenta A_n in units of hbar N0 times scale().
struct ObservableVector {
  std::array<double, kAlgebraDim> values{};

  double norm() const;
  double operator[](std::size_t i) const { return values[i]; }
};

ObservableVector all_expectations(const CoherentState& state, const GeneratorBasis& basis);

/// hbar N0 sqrt(5/3): radius of the hypersphere traced by pure states.
double hypersphere_radius(const CoherentState& state);

CoherentState apply_unitary(const CoherentState& state, const ComplexMatrix& u);

/// Max component difference between exp(dphi n.G) A and the expectation
/// vector of exp(-i n.b dphi/2) alpha. The unitary path is the reference.
double correspondence_residual(const CoherentState& state, const GeneratorBasis& basis,
                               const AdjointRep& adj, std::span<const double> direction,
                               double dphi);
double correspondence_residual(const CoherentState& state, const GeneratorBasis& basis,
                               const AdjointRep& adj, std::size_t axis, double dphi);

enum class SphereKind { skyrmion, antiskyrmion, oam, polarization };

std::string_view to_string(SphereKind k);

struct SpherePoint {
  SphereKind kind = SphereKind::skyrmion;
  std::array<double, 3> coords{};
  /// Polar angle in [0, pi].
  double theta = 0.0;
  /// Azimuth in (-pi, pi]; 0 when degenerate_azimuth is set.
  double phi = 0.0;
  bool degenerate_azimuth = false;

  double radius() const;
};

/// Spherical angles for a Cartesian point; azimuth reported as 0 with the
/// degenerate flag when the point lies on the polar axis.
SpherePoint make_sphere_point(SphereKind kind, const std::array<double, 3>& coords);

SpherePoint skyrmion_sphere(const CoherentState& state);
SpherePoint antiskyrmion_sphere(const CoherentState& state);
/// (L1, L2, L3) of the chirality su(2) on (L, R), identity on spin, zero on O.
SpherePoint oam_sphere(const CoherentState& state);
/// Polarization sphere of a single OAM mode (0 = L, 1 = R, 2 = O).
SpherePoint polarization_sphere(const CoherentState& state, int oam_mode);

/// The chirality triple 1 (x) lambda_{1,2,3}.
std::array<ComplexMatrix, 3> oam_generators();

/// Pauli triple acting on the pair of one-based Table 1 states (i, j).
std::array<ComplexMatrix, 3> pair_generators(int i, int j);

/// Inner product <b|a> = alpha_b^dagger alpha_a.
Complex overlap(const CoherentState& a, const CoherentState& b);

/// Catalog: neel_out, neel_in, bloch_left, bloch_right, antiskyrmion_h,
/// antiskyrmion_v, dipolar, antidipolar, h_gaussian, basis_1 .. basis_6.
CoherentState named_state(std::string_view name);
std::vector<std::string> named_state_catalog();
bool is_named_state(std::string_view name);

enum class Su2Kind { skyrmion, antiskyrmion };

/// (alpha_3, alpha_k) = (e^{-i phi/2} cos(theta/2), e^{i phi/2} sin(theta/2))
/// with k = 4 for skyrmions and 5 for antiskyrmions.
CoherentState su2_state(double theta_s, double phi_s, Su2Kind kind);

struct TorusPoint {
  double theta_p = 0.0;
  double phi_t = 0.0;
  /// Poloidal radius sqrt(L1^2 + L3^2), hbar N0 units.
  double l_p = 0.0;
};

/// |3>/sqrt2 + e^{i phi_t} (cos(theta_p/2)|4> + sin(theta_p/2)|5>)/sqrt2.
CoherentState torus_state(double theta_p, double phi_t);

/// Inverse of torus_state. Throws InvalidArgument for states outside the
/// torus family, reporting the measured |alpha_3|^2.
TorusPoint state_to_torus(const CoherentState& state, double tol = 1e-8);

enum class SubsphereClass { polarization, oam, coupling, skyrmion, antiskyrmion };

std::string_view to_string(SubsphereClass c);

struct Subsphere {
  int first = 0;  // one-based
  int second = 0; // one-based
  SubsphereClass cls = SubsphereClass::polarization;
  std::string description;
};

/// All 15 two-state su(2) subalgebras with their physical classification.
std::vector<Subsphere> enumerate_subspheres();

} // namespace su6
