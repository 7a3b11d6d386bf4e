#include "su6/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "su6/error.hpp"

namespace su6 {

namespace {

using Vec3 = std::array<double, 3>;

constexpr double kPi = std::numbers::pi;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }

double degrees(double rad) { return rad * 180.0 / kPi; }

// Angular distance between two azimuths, in [0, pi].
double azimuth_distance(double a, double b) { return std::abs(std::remainder(a - b, 2.0 * kPi)); }

} // namespace

void TransverseGrid::validate() const {
  if (size < 16) throw InvalidArgument("TransverseGrid: size must be at least 16");
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw InvalidArgument("TransverseGrid: extent must be positive");
}

ComplexField lg_mode(const ModeProfile& profile, const TransverseGrid& grid) {
  grid.validate();
  if (profile.m < -1 || profile.m > 1)
    throw InvalidArgument("lg_mode: topological charge must be -1, 0 or +1, got " +
                          std::to_string(profile.m));
  if (!(profile.waist > 0.0)) throw InvalidArgument("lg_mode: waist must be positive");

  ComplexField f{grid, std::vector<Complex>(grid.pixels())};
  const double w = profile.waist;
  double power = 0.0;
  for (int iy = 0; iy < grid.size; ++iy) {
    const double y = grid.coord(iy);
    for (int ix = 0; ix < grid.size; ++ix) {
      const double x = grid.coord(ix);
      const double r2 = x * x + y * y;
      const double gauss = std::exp(-r2 / (w * w));
      Complex v = gauss;
      if (profile.m != 0) {
        // (r sqrt2/w) e^{i m phi} = sqrt2 (x + i m y)/w
        v = gauss * std::numbers::sqrt2 / w * Complex(x, profile.m * y);
      }
      f.values[grid.index(ix, iy)] = v;
      power += std::norm(v);
    }
  }
  const double norm = std::sqrt(power * grid.spacing() * grid.spacing());
  for (auto& v : f.values) v /= norm;
  return f;
}

FieldPair synthesize(const CoherentState& state, const TransverseGrid& grid, double waist) {
  const ComplexField l = lg_mode({+1, waist}, grid);
  const ComplexField r = lg_mode({-1, waist}, grid);
  const ComplexField o = lg_mode({0, waist}, grid);
  const auto& a = state.alpha();
  FieldPair out{{grid, std::vector<Complex>(grid.pixels())},
                {grid, std::vector<Complex>(grid.pixels())}};
  for (std::size_t i = 0; i < grid.pixels(); ++i) {
    out.left.values[i] = a(kUpL) * l.values[i] + a(kUpR) * r.values[i] + a(kUpO) * o.values[i];
    out.right.values[i] =
        a(kDownL) * l.values[i] + a(kDownR) * r.values[i] + a(kDownO) * o.values[i];
  }
  return out;
}

StokesField stokes_fields(const ComplexField& left, const ComplexField& right) {
  if (left.grid.size != right.grid.size || left.grid.extent != right.grid.extent ||
      left.values.size() != right.values.size())
    throw InvalidArgument("stokes_fields: field grids differ");
  const std::size_t n = left.values.size();
  StokesField sf;
  sf.grid = left.grid;
  sf.s0.resize(n);
  sf.s1.resize(n);
  sf.s2.resize(n);
  sf.s3.resize(n);
  sf.n.assign(n, {0.0, 0.0, 0.0});
  sf.defined.assign(n, 0);
  double peak = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex el = left.values[i];
    const Complex er = right.values[i];
    const Complex c = 2.0 * std::conj(el) * er;
    sf.s0[i] = std::norm(el) + std::norm(er);
    sf.s1[i] = c.real();
    sf.s2[i] = c.imag();
    sf.s3[i] = std::norm(el) - std::norm(er);
    peak = std::max(peak, sf.s0[i]);
  }
  sf.epsilon = 1e-12 * peak;
  for (std::size_t i = 0; i < n; ++i) {
    if (sf.s0[i] > sf.epsilon && sf.s0[i] > 0.0) {
      const Vec3 v{sf.s1[i], sf.s2[i], sf.s3[i]};
      const double len = std::sqrt(dot(v, v));
      sf.n[i] = scaled(v, 1.0 / len);
      sf.defined[i] = 1;
    }
  }
  return sf;
}

double StokesField::purity_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < s0.size(); ++i) {
    if (!defined[i]) continue;
    const double lhs = s1[i] * s1[i] + s2[i] * s2[i] + s3[i] * s3[i];
    worst = std::max(worst, std::abs(lhs - s0[i] * s0[i]) / (s0[i] * s0[i]));
  }
  return worst;
}

std::pair<int, int> SpinTextureMap::bin_of(double x, double y) const {
  const double r = std::hypot(x, y);
  if (r > disk_radius) return {-1, -1};
  const double theta = radial_map == RadialMap::linear
                           ? kPi * r / disk_radius
                           : 2.0 * std::asin(std::min(1.0, r / disk_radius));
  const double phi = std::atan2(y, x);
  const int p = std::clamp(static_cast<int>(theta / kPi * polar_bins), 0, polar_bins - 1);
  const int a =
      std::clamp(static_cast<int>((phi + kPi) / (2.0 * kPi) * azimuth_bins), 0, azimuth_bins - 1);
  return {p, a};
}

std::string SpinTextureMap::descriptor() const {
  std::ostringstream os;
  os.precision(17);
  os << "soup-bubble "
     << (radial_map == RadialMap::linear ? "linear theta=pi*r/R" : "area-preserving theta=2*asin(r/R)")
     << " R=" << disk_radius << " bins=" << polar_bins << "x" << azimuth_bins;
  return os.str();
}

SpinTextureMap soup_bubble(const StokesField& field, double disk_radius, RadialMap radial_map,
                           int polar_bins, int azimuth_bins) {
  const TransverseGrid& g = field.grid;
  if (!(disk_radius > 0.0)) throw InvalidArgument("soup_bubble: disk radius must be positive");
  if (disk_radius > g.extent)
    throw InvalidArgument("soup_bubble: disk radius exceeds the grid half-width");
  if (polar_bins < 1 || azimuth_bins < 1) throw InvalidArgument("soup_bubble: bin counts must be positive");

  SpinTextureMap map;
  map.polar_bins = polar_bins;
  map.azimuth_bins = azimuth_bins;
  map.disk_radius = disk_radius;
  map.radial_map = radial_map;
  const std::size_t bins = static_cast<std::size_t>(polar_bins) * azimuth_bins;
  map.n.assign(bins, {0.0, 0.0, 0.0});
  map.count.assign(bins, 0);
  map.empty.assign(bins, 1);

  for (int iy = 0; iy < g.size; ++iy)
    for (int ix = 0; ix < g.size; ++ix) {
      const auto [p, a] = map.bin_of(g.coord(ix), g.coord(iy));
      if (p >= 0) ++map.count[map.index(p, a)];
    }

  const double h = g.spacing();
  for (int p = 0; p < polar_bins; ++p) {
    const double theta = (p + 0.5) * kPi / polar_bins;
    const double r = radial_map == RadialMap::linear ? disk_radius * theta / kPi
                                                     : disk_radius * std::sin(theta / 2.0);
    for (int a = 0; a < azimuth_bins; ++a) {
      const double phi = -kPi + (a + 0.5) * 2.0 * kPi / azimuth_bins;
      const double fx = r * std::cos(phi) / h + g.size / 2;
      const double fy = r * std::sin(phi) / h + g.size / 2;
      const int ix = static_cast<int>(std::floor(fx));
      const int iy = static_cast<int>(std::floor(fy));
      if (ix < 0 || iy < 0 || ix + 1 >= g.size || iy + 1 >= g.size) continue;
      const double tx = fx - ix;
      const double ty = fy - iy;
      const std::size_t c[4] = {g.index(ix, iy), g.index(ix + 1, iy), g.index(ix, iy + 1),
                                g.index(ix + 1, iy + 1)};
      const double wgt[4] = {(1 - tx) * (1 - ty), tx * (1 - ty), (1 - tx) * ty, tx * ty};
      bool ok = true;
      Vec3 v{0.0, 0.0, 0.0};
      for (int k = 0; k < 4; ++k) {
        if (!field.defined[c[k]]) {
          ok = false;
          break;
        }
        for (int d = 0; d < 3; ++d) v[d] += wgt[k] * field.n[c[k]][d];
      }
      const double len = std::sqrt(dot(v, v));
      if (!ok || len == 0.0) continue;
      map.n[map.index(p, a)] = scaled(v, 1.0 / len);
      map.empty[map.index(p, a)] = 0;
    }
  }
  return map;
}

namespace {

void require_disk(const StokesField& field, double disk_radius, const char* where) {
  if (!(disk_radius > 0.0)) throw InvalidArgument(std::string(where) + ": disk radius must be positive");
  if (disk_radius > field.grid.extent)
    throw InvalidArgument(std::string(where) + ": disk radius exceeds the grid half-width");
}

// Derivative of n along one axis at pixel (ix, iy); step = (dx, dy) in pixels.
Vec3 derivative(const StokesField& f, int ix, int iy, int dx, int dy) {
  const TransverseGrid& g = f.grid;
  const double h = g.spacing();
  auto ok = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < g.size && y < g.size && f.defined[g.index(x, y)];
  };
  const bool fwd = ok(ix + dx, iy + dy);
  const bool bwd = ok(ix - dx, iy - dy);
  const Vec3& c = f.n[g.index(ix, iy)];
  if (fwd && bwd)
    return scaled(sub(f.n[g.index(ix + dx, iy + dy)], f.n[g.index(ix - dx, iy - dy)]), 0.5 / h);
  if (fwd) return scaled(sub(f.n[g.index(ix + dx, iy + dy)], c), 1.0 / h);
  if (bwd) return scaled(sub(c, f.n[g.index(ix - dx, iy - dy)]), 1.0 / h);
  throw InvalidArgument("skyrmion_number: spin field has no defined neighbour at pixel (" +
                        std::to_string(ix) + ", " + std::to_string(iy) + ")");
}

} // namespace

double skyrmion_number(const StokesField& field, double disk_radius) {
  require_disk(field, disk_radius, "skyrmion_number");
  const TransverseGrid& g = field.grid;
  const double h = g.spacing();
  double sum = 0.0;
  for (int iy = 0; iy < g.size; ++iy) {
    const double y = g.coord(iy);
    for (int ix = 0; ix < g.size; ++ix) {
      const double x = g.coord(ix);
      if (x * x + y * y > disk_radius * disk_radius) continue;
      const std::size_t i = g.index(ix, iy);
      if (!field.defined[i])
        throw InvalidArgument("skyrmion_number: spin field undefined inside the disk at (" +
                              std::to_string(x) + ", " + std::to_string(y) + ")");
      const Vec3 nx = derivative(field, ix, iy, 1, 0);
      const Vec3 ny = derivative(field, ix, iy, 0, 1);
      sum += dot(field.n[i], cross(nx, ny));
    }
  }
  return sum * h * h / (4.0 * kPi);
}

double solid_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double num = dot(a, cross(b, c));
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double skyrmion_number_lattice(const StokesField& field, double disk_radius) {
  require_disk(field, disk_radius, "skyrmion_number_lattice");
  const TransverseGrid& g = field.grid;
  const double h = g.spacing();
  double total = 0.0;
  for (int iy = 0; iy + 1 < g.size; ++iy) {
    const double yc = g.coord(iy) + 0.5 * h;
    for (int ix = 0; ix + 1 < g.size; ++ix) {
      const double xc = g.coord(ix) + 0.5 * h;
      if (xc * xc + yc * yc > disk_radius * disk_radius) continue;
      const std::size_t c00 = g.index(ix, iy), c10 = g.index(ix + 1, iy),
                        c11 = g.index(ix + 1, iy + 1), c01 = g.index(ix, iy + 1);
      if (!field.defined[c00] || !field.defined[c10] || !field.defined[c11] || !field.defined[c01])
        throw InvalidArgument("skyrmion_number_lattice: spin field undefined inside the disk");
      total += solid_angle(field.n[c00], field.n[c10], field.n[c11]);
      total += solid_angle(field.n[c00], field.n[c11], field.n[c01]);
    }
  }
  return total / (4.0 * kPi);
}

std::string TextureLabel::name() const {
  switch (kind) {
  case TextureKind::neel_out: return "neel_out";
  case TextureKind::neel_in: return "neel_in";
  case TextureKind::bloch_left: return "bloch_left";
  case TextureKind::bloch_right: return "bloch_right";
  case TextureKind::antiskyrmion:
    if (std::abs(std::remainder(orientation_deg, 180.0)) < 1e-6) return "antiskyrmion_h";
    if (std::abs(std::remainder(orientation_deg - 90.0, 180.0)) < 1e-6) return "antiskyrmion_v";
    return "antiskyrmion";
  case TextureKind::dipolar: return "dipolar";
  case TextureKind::antidipolar: return "antidipolar";
  case TextureKind::pole: return "pole";
  case TextureKind::intermediate: return "intermediate";
  case TextureKind::other: return "other";
  }
  return "other";
}

TextureLabel classify_texture(const CoherentState& state, double tolerance_deg) {
  const double tol = tolerance_deg * kPi / 180.0;
  const auto& a = state.alpha();
  // Fubini-Study style angles: 2 asin(|component|) is the sphere angle a
  // small admixture moves the point.
  auto angle_of_weight = [](double w) { return 2.0 * std::asin(std::sqrt(std::clamp(w, 0.0, 1.0))); };
  const double outside = std::norm(a(kUpL)) + std::norm(a(kUpR)) + std::norm(a(kDownO));
  if (angle_of_weight(outside) > tol) return {TextureKind::other, 0.0};

  const double polar = 2.0 * std::acos(std::clamp(std::abs(a(kUpO)), 0.0, 1.0));
  if (polar < tol) return {TextureKind::pole, 0.0};
  const bool on_equator = std::abs(polar - kPi / 2.0) < tol;

  if (angle_of_weight(std::norm(a(kDownR))) < tol) {
    const SpherePoint p = skyrmion_sphere(state);
    if (!on_equator) return {TextureKind::intermediate, 0.0};
    const std::pair<double, TextureKind> named[] = {{0.0, TextureKind::neel_out},
                                                     {kPi / 2.0, TextureKind::bloch_left},
                                                     {kPi, TextureKind::neel_in},
                                                     {-kPi / 2.0, TextureKind::bloch_right}};
    for (const auto& [phi, kind] : named)
      if (azimuth_distance(p.phi, phi) < tol) return {kind, 0.0};
    return {TextureKind::intermediate, 0.0};
  }
  if (angle_of_weight(std::norm(a(kDownL))) < tol) {
    const SpherePoint p = antiskyrmion_sphere(state);
    if (!on_equator) return {TextureKind::intermediate, 0.0};
    double orientation = degrees(p.phi) / 2.0;
    // Report 0 / 90 exactly when within tolerance of the named orientations.
    if (azimuth_distance(p.phi, 0.0) < tol) orientation = 0.0;
    else if (azimuth_distance(p.phi, kPi) < tol) orientation = 90.0;
    return {TextureKind::antiskyrmion, orientation};
  }
  if (!on_equator) return {TextureKind::intermediate, 0.0};

  // Torus coordinates on the OAM-carrying pair.
  const double l1 = 2.0 * (std::conj(a(kDownL)) * a(kDownR)).real();
  const double l3 = std::norm(a(kDownL)) - std::norm(a(kDownR));
  const double theta_p = std::atan2(l1, l3);
  const Complex pair =
      std::cos(theta_p / 2.0) * a(kDownL) + std::sin(theta_p / 2.0) * a(kDownR);
  const double pair_weight = std::norm(a(kDownL)) + std::norm(a(kDownR));
  if (angle_of_weight(std::max(0.0, pair_weight - std::norm(pair)) / pair_weight) > tol)
    return {TextureKind::intermediate, 0.0};
  const double phi_t = std::arg(std::conj(a(kUpO)) * pair);
  if (std::abs(theta_p - kPi / 2.0) < tol) return {TextureKind::dipolar, degrees(phi_t)};
  if (std::abs(theta_p + kPi / 2.0) < tol) return {TextureKind::antidipolar, degrees(phi_t)};
  return {TextureKind::intermediate, 0.0};
}

} // namespace su6
