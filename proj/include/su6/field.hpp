#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "su6/state.hpp"

namespace su6 {

/// Square Cartesian sampling of the transverse plane. Pixel j sits at
/// (j - size/2) * spacing, so the beam axis is sampled exactly.
struct TransverseGrid {
  int size = 256;
  /// Half-width in length units (the default waist is 1).
  double extent = 3.0;

  double spacing() const { return 2.0 * extent / size; }
  double coord(int j) const { return (j - size / 2) * spacing(); }
  std::size_t pixels() const { return static_cast<std::size_t>(size) * size; }
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * size + ix;
  }
  /// Throws InvalidArgument unless size >= 16 and extent > 0.
  void validate() const;
};

struct ModeProfile {
  /// Topological charge, -1, 0 or +1 (R, O, L).
  int m = 0;
  double waist = 1.0;
};

struct ComplexField {
  TransverseGrid grid;
  std::vector<Complex> values;
};

/// m = 0: exp(-r^2/w^2); m = +-1: (r sqrt2/w) exp(-r^2/w^2) e^{i m phi};
/// normalized so that sum |E|^2 dA = 1 on the grid.
ComplexField lg_mode(const ModeProfile& profile, const TransverseGrid& grid);

struct FieldPair {
  ComplexField left;  // spin up, left circular
  ComplexField right; // spin down, right circular
};

/// E_L = sum_m alpha_{up,m} LG_m, E_R = sum_m alpha_{down,m} LG_m.
FieldPair synthesize(const CoherentState& state, const TransverseGrid& grid,
                     double waist = 1.0);

struct StokesField {
  TransverseGrid grid;
  std::vector<double> s0, s1, s2, s3;
  /// Unit spin vector (S1, S2, S3)/S0, meaningful where defined[i] != 0.
  std::vector<std::array<double, 3>> n;
  std::vector<std::uint8_t> defined;
  /// S0 cutoff below which n is undefined: 1e-12 of the peak S0.
  double epsilon = 0.0;

  /// max |S1^2 + S2^2 + S3^2 - S0^2| / S0^2 over defined pixels.
  double purity_residual() const;
};

/// S0 = |E_L|^2 + |E_R|^2, S3 = |E_L|^2 - |E_R|^2, S1 + i S2 = 2 E_L^* E_R.
StokesField stokes_fields(const ComplexField& left, const ComplexField& right);

enum class RadialMap { linear, area_preserving };

/// Disk-to-sphere resampling of a spin texture: pixel radius r in
/// [0, disk_radius] maps to polar angle theta (linear: pi r/R; area
/// preserving: 2 asin(r/R)), azimuth unchanged.
struct SpinTextureMap {
  int polar_bins = 32;
  int azimuth_bins = 64;
  double disk_radius = 0.0;
  RadialMap radial_map = RadialMap::linear;
  /// Spin vector at each bin centre, interpolated from the grid.
  std::vector<std::array<double, 3>> n;
  /// Number of disk pixels mapped into each bin.
  std::vector<int> count;
  std::vector<std::uint8_t> empty;

  std::size_t index(int polar, int azimuth) const {
    return static_cast<std::size_t>(polar) * azimuth_bins + azimuth;
  }
  /// Bin of the sphere point a disk position maps to.
  std::pair<int, int> bin_of(double x, double y) const;
  std::string descriptor() const;
};

SpinTextureMap soup_bubble(const StokesField& field, double disk_radius,
                           RadialMap radial_map = RadialMap::linear, int polar_bins = 32,
                           int azimuth_bins = 64);

/// (1/4pi) sum over pixels with r <= disk_radius of n . (dn/dx x dn/dy) dA,
/// central differences (one-sided at the grid edge).
double skyrmion_number(const StokesField& field, double disk_radius);

/// Same quantity from signed solid angles of lattice triangles (two per
/// plaquette whose centre lies in the disk).
double skyrmion_number_lattice(const StokesField& field, double disk_radius);

/// Signed solid angle of the spherical triangle (a, b, c).
double solid_angle(const std::array<double, 3>& a, const std::array<double, 3>& b,
                   const std::array<double, 3>& c);

enum class TextureKind {
  neel_out,
  neel_in,
  bloch_left,
  bloch_right,
  antiskyrmion,
  dipolar,
  antidipolar,
  pole,
  intermediate,
  other,
};

struct TextureLabel {
  TextureKind kind = TextureKind::other;
  /// Texture rotation for antiskyrmions and dipoles, degrees.
  double orientation_deg = 0.0;

  /// neel_out, ..., antiskyrmion_h / antiskyrmion_v for 0 / 90 deg, ...
  std::string name() const;
};

/// Names a state of the span{|3>, |4>, |5>} family from its sphere and torus
/// coordinates, "other" outside that span.
TextureLabel classify_texture(const CoherentState& state, double tolerance_deg = 1.0);

} // namespace su6
