#include "su6/state.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "su6/error.hpp"

namespace su6 {

namespace {

constexpr Complex kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Vector6c amplitudes(std::initializer_list<std::pair<int, Complex>> entries) {
  Vector6c a = Vector6c::Zero();
  for (const auto& [index, value] : entries) a(index - 1) = value;
  return a;
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

void require_hermitian(const ComplexMatrix& m, const char* where) {
  if (m.rows() != static_cast<Eigen::Index>(kStateDim) || m.cols() != m.rows())
    throw InvalidArgument(std::string(where) + ": operator must be 6x6");
  if (!is_hermitian(m, kMatrixTolerance * std::max(1.0, max_abs(m))))
    throw InvalidArgument(std::string(where) + ": operator is not Hermitian");
}

double raw_expectation(const Vector6c& a, const ComplexMatrix& m) {
  return (a.adjoint() * m * a)(0, 0).real();
}

std::array<double, 3> triple_expectations(const CoherentState& s,
                                          const std::array<ComplexMatrix, 3>& t) {
  return {expectation(s, t[0]), expectation(s, t[1]), expectation(s, t[2])};
}

} // namespace

CoherentState::CoherentState(const Vector6c& alpha, double n0, double hbar)
    : n0_(n0), hbar_(hbar) {
  if (!(n0 > 0.0) || !(hbar > 0.0))
    throw InvalidArgument("CoherentState: n0 and hbar must be positive");
  const double norm = alpha.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw InvalidArgument("CoherentState: amplitudes must be finite and not all zero");
  alpha_ = alpha / norm;
}

CoherentState CoherentState::basis(int index) {
  if (index < 1 || index > 6)
    throw InvalidArgument("CoherentState::basis: index must be in 1..6, got " +
                          std::to_string(index));
  Vector6c a = Vector6c::Zero();
  a(index - 1) = 1.0;
  return CoherentState(a);
}

bool CoherentState::same_ray(const CoherentState& other, double tol) const {
  const Complex c = other.alpha_.dot(alpha_); // <other|this>
  if (std::abs(c) == 0.0) return false;
  const Complex phase = c / std::abs(c);
  return (alpha_ - phase * other.alpha_).cwiseAbs().maxCoeff() <= tol;
}

double expectation(const CoherentState& state, const ComplexMatrix& m) {
  require_hermitian(m, "expectation");
  return state.scale() * raw_expectation(state.alpha(), m);
}

double ObservableVector::norm() const {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

ObservableVector all_expectations(const CoherentState& state, const GeneratorBasis& basis) {
  if (basis.size() != kAlgebraDim)
    throw InvalidArgument("all_expectations: basis must have 35 generators");
  ObservableVector out;
  for (std::size_t n = 0; n < kAlgebraDim; ++n)
    out.values[n] = state.scale() * raw_expectation(state.alpha(), basis[n]);
  return out;
}

double hypersphere_radius(const CoherentState& state) {
  return state.scale() * std::sqrt(5.0 / 3.0);
}

CoherentState apply_unitary(const CoherentState& state, const ComplexMatrix& u) {
  if (u.rows() != 6 || u.cols() != 6)
    throw InvalidArgument("apply_unitary: operator must be 6x6");
  if (!is_unitary(u, 1e-10)) throw InvalidArgument("apply_unitary: operator is not unitary");
  return state.with_alpha(u * state.alpha());
}

double correspondence_residual(const CoherentState& state, const GeneratorBasis& basis,
                               const AdjointRep& adj, std::span<const double> direction,
                               double dphi) {
  const ObservableVector before = all_expectations(state, basis);
  const ComplexMatrix u = exp_generator(combine_generators(basis, direction), dphi);
  const ObservableVector direct = all_expectations(apply_unitary(state, u), basis);

  const RealMatrix r = exp_adjoint(adj, direction, dphi);
  const Eigen::Map<const Eigen::VectorXd> a(before.values.data(), kAlgebraDim);
  const Eigen::VectorXd rotated = r * a;

  double worst = 0.0;
  for (std::size_t m = 0; m < kAlgebraDim; ++m)
    worst = std::max(worst, std::abs(rotated(static_cast<Eigen::Index>(m)) - direct[m]));
  return worst;
}

double correspondence_residual(const CoherentState& state, const GeneratorBasis& basis,
                               const AdjointRep& adj, std::size_t axis, double dphi) {
  if (axis >= basis.size())
    throw InvalidArgument("correspondence_residual: axis out of range");
  std::vector<double> direction(basis.size(), 0.0);
  direction[axis] = 1.0;
  return correspondence_residual(state, basis, adj, direction, dphi);
}

std::string_view to_string(SphereKind k) {
  switch (k) {
  case SphereKind::skyrmion: return "skyrmion";
  case SphereKind::antiskyrmion: return "antiskyrmion";
  case SphereKind::oam: return "oam";
  case SphereKind::polarization: return "polarization";
  }
  return "?";
}

double SpherePoint::radius() const {
  return std::hypot(coords[0], coords[1], coords[2]);
}

SpherePoint make_sphere_point(SphereKind kind, const std::array<double, 3>& coords) {
  SpherePoint p;
  p.kind = kind;
  p.coords = coords;
  const double rho = std::hypot(coords[0], coords[1]);
  const double r = std::hypot(rho, coords[2]);
  p.theta = std::atan2(rho, coords[2]);
  if (rho <= 1e-12 * r || r == 0.0) {
    p.phi = 0.0;
    p.degenerate_azimuth = true;
  } else {
    p.phi = std::atan2(coords[1], coords[0]);
    if (p.phi <= -std::numbers::pi) p.phi = std::numbers::pi;
  }
  return p;
}

SpherePoint skyrmion_sphere(const CoherentState& state) {
  static const auto gens = skyrmion_generators();
  return make_sphere_point(SphereKind::skyrmion, triple_expectations(state, gens));
}

SpherePoint antiskyrmion_sphere(const CoherentState& state) {
  static const auto gens = antiskyrmion_generators();
  return make_sphere_point(SphereKind::antiskyrmion, triple_expectations(state, gens));
}

std::array<ComplexMatrix, 3> oam_generators() {
  const auto l = gell_mann_matrices();
  const ComplexMatrix one2 = ComplexMatrix::Identity(2, 2);
  return {kron(one2, l[0]), kron(one2, l[1]), kron(one2, l[2])};
}

SpherePoint oam_sphere(const CoherentState& state) {
  static const auto gens = oam_generators();
  return make_sphere_point(SphereKind::oam, triple_expectations(state, gens));
}

SpherePoint polarization_sphere(const CoherentState& state, int oam_mode) {
  if (oam_mode < 0 || oam_mode > 2)
    throw InvalidArgument("polarization_sphere: OAM mode must be 0 (L), 1 (R) or 2 (O)");
  return make_sphere_point(SphereKind::polarization,
                           triple_expectations(state, pair_generators(oam_mode + 1, oam_mode + 4)));
}

std::array<ComplexMatrix, 3> pair_generators(int i, int j) {
  if (i < 1 || i > 6 || j < 1 || j > 6 || i == j)
    throw InvalidArgument("pair_generators: need two distinct indices in 1..6");
  const auto sigma = pauli_matrices();
  std::array<ComplexMatrix, 3> out;
  const int idx[2] = {i - 1, j - 1};
  for (int k = 0; k < 3; ++k) {
    out[k] = ComplexMatrix::Zero(6, 6);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out[k](idx[r], idx[c]) = sigma[k](r, c);
  }
  return out;
}

Complex overlap(const CoherentState& a, const CoherentState& b) {
  return b.alpha().dot(a.alpha());
}

std::vector<std::string> named_state_catalog() {
  return {"neel_out",       "neel_in",     "bloch_left", "bloch_right",
          "antiskyrmion_h", "antiskyrmion_v", "dipolar", "antidipolar",
          "h_gaussian",     "basis_1",     "basis_2",    "basis_3",
          "basis_4",        "basis_5",     "basis_6"};
}

bool is_named_state(std::string_view name) {
  for (const auto& n : named_state_catalog())
    if (n == name) return true;
  return false;
}

CoherentState named_state(std::string_view name) {
  const double h = kInvSqrt2;
  if (name == "neel_out") return CoherentState(amplitudes({{3, h}, {4, h}}));
  if (name == "neel_in") return CoherentState(amplitudes({{3, h}, {4, -h}}));
  if (name == "bloch_left") return CoherentState(amplitudes({{3, h}, {4, kI * h}}));
  if (name == "bloch_right") return CoherentState(amplitudes({{3, h}, {4, -kI * h}}));
  if (name == "antiskyrmion_h") return CoherentState(amplitudes({{3, h}, {5, h}}));
  if (name == "antiskyrmion_v") return CoherentState(amplitudes({{3, h}, {5, -h}}));
  if (name == "dipolar") return CoherentState(amplitudes({{3, h}, {4, 0.5}, {5, 0.5}}));
  if (name == "antidipolar") return CoherentState(amplitudes({{3, h}, {4, 0.5}, {5, -0.5}}));
  if (name == "h_gaussian") return CoherentState(amplitudes({{3, h}, {6, h}}));
  if (name.size() == 7 && name.starts_with("basis_") && name[6] >= '1' && name[6] <= '6')
    return CoherentState::basis(name[6] - '0');

  std::ostringstream os;
  os << "unknown state '" << name << "'; catalog:";
  for (const auto& n : named_state_catalog()) os << ' ' << n;
  throw InvalidArgument(os.str());
}

CoherentState su2_state(double theta_s, double phi_s, Su2Kind kind) {
  Vector6c a = Vector6c::Zero();
  a(kUpO) = std::exp(-kI * phi_s / 2.0) * std::cos(theta_s / 2.0);
  a(kind == Su2Kind::skyrmion ? kDownL : kDownR) =
      std::exp(kI * phi_s / 2.0) * std::sin(theta_s / 2.0);
  return CoherentState(a);
}

CoherentState torus_state(double theta_p, double phi_t) {
  Vector6c a = Vector6c::Zero();
  const Complex e = std::exp(kI * phi_t);
  a(kUpO) = kInvSqrt2;
  a(kDownL) = e * std::cos(theta_p / 2.0) * kInvSqrt2;
  a(kDownR) = e * std::sin(theta_p / 2.0) * kInvSqrt2;
  return CoherentState(a);
}

TorusPoint state_to_torus(const CoherentState& state, double tol) {
  const Vector6c& a = state.alpha();
  const double outside = std::norm(a(kUpL)) + std::norm(a(kUpR)) + std::norm(a(kDownO));
  const double p3 = std::norm(a(kUpO));
  if (outside > tol || std::abs(p3 - 0.5) > tol) {
    std::ostringstream os;
    os.precision(12);
    os << "state_to_torus: state is not on the skyrmionic torus (|alpha_3|^2 = " << p3
       << ", weight outside span{|3>,|4>,|5>} = " << outside << ")";
    throw InvalidArgument(os.str());
  }

  // Dimensionless OAM expectations: L1 = 2 Re(a4* a5), L3 = |a4|^2 - |a5|^2.
  const double l1 = 2.0 * (std::conj(a(kDownL)) * a(kDownR)).real();
  const double l3 = std::norm(a(kDownL)) - std::norm(a(kDownR));

  TorusPoint t;
  t.theta_p = std::atan2(l1, l3);
  const Complex pair = std::cos(t.theta_p / 2.0) * a(kDownL) + std::sin(t.theta_p / 2.0) * a(kDownR);
  if (std::abs(std::norm(pair) - 0.5) > tol) {
    std::ostringstream os;
    os.precision(12);
    os << "state_to_torus: |4>,|5> amplitudes are not phase-locked (|alpha_3|^2 = " << p3
       << ", coherent pair weight = " << std::norm(pair) << ")";
    throw InvalidArgument(os.str());
  }
  t.phi_t = wrap_angle(std::arg(std::conj(a(kUpO)) * pair));
  t.l_p = state.scale() * std::hypot(l1, l3);
  return t;
}

std::string_view to_string(SubsphereClass c) {
  switch (c) {
  case SubsphereClass::polarization: return "polarization";
  case SubsphereClass::oam: return "oam";
  case SubsphereClass::coupling: return "coupling";
  case SubsphereClass::skyrmion: return "skyrmion";
  case SubsphereClass::antiskyrmion: return "antiskyrmion";
  }
  return "?";
}

std::vector<Subsphere> enumerate_subspheres() {
  std::vector<Subsphere> out;
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) {
      // Spin: 1..3 up, 4..6 down. OAM: (i-1) % 3 -> 0 L, 1 R, 2 O.
      const bool up_i = i <= 3;
      const bool up_j = j <= 3;
      const int m_i = (i - 1) % 3;
      const int m_j = (j - 1) % 3;
      Subsphere s{i, j, SubsphereClass::polarization, {}};
      if (m_i == m_j) {
        s.cls = SubsphereClass::polarization;
        s.description = "polarization of a fixed OAM mode";
      } else if (up_i == up_j) {
        s.cls = SubsphereClass::oam;
        s.description = "OAM under fixed polarization";
      } else if (i == 2 && j == 4) {
        s.cls = SubsphereClass::coupling;
        s.description = "singlet-triplet coupling";
      } else if (i == 1 && j == 5) {
        s.cls = SubsphereClass::coupling;
        s.description = "triplet-triplet coupling";
      } else if ((i == 3 && j == 4) || (i == 2 && j == 6)) {
        s.cls = SubsphereClass::skyrmion;
        s.description = "skyrmion";
      } else {
        s.cls = SubsphereClass::antiskyrmion;
        s.description = "antiskyrmion";
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

} // namespace su6
