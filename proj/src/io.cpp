#include "su6/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "su6/error.hpp"

namespace su6 {

std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0"; // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0"; // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

nlohmann::json complex_to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json real_matrix_to_json(const RealMatrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json state_to_json(const CoherentState& state) {
  auto alpha = nlohmann::json::array();
  for (int i = 0; i < 6; ++i) alpha.push_back(complex_to_json(state[i]));
  return {{"alpha", alpha}, {"n0", state.n0()}};
}

CoherentState state_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("alpha"))
    throw InvalidArgument("state JSON must be an object with an \"alpha\" array");
  const auto& alpha = j.at("alpha");
  if (!alpha.is_array() || alpha.size() != 6)
    throw InvalidArgument("state JSON: \"alpha\" must hold 6 [re, im] pairs");
  Vector6c a;
  for (int i = 0; i < 6; ++i) {
    const auto& z = alpha[i];
    if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
      throw InvalidArgument("state JSON: alpha[" + std::to_string(i) + "] is not an [re, im] pair");
    a(i) = Complex(z[0].get<double>(), z[1].get<double>());
  }
  double n0 = 1.0;
  if (j.contains("n0")) {
    if (!j.at("n0").is_number()) throw InvalidArgument("state JSON: \"n0\" must be a number");
    n0 = j.at("n0").get<double>();
  }
  return CoherentState(a, n0);
}

CoherentState load_state_file(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(path.string() + ": " + e.what());
  }
  return state_from_json(j);
}

CoherentState resolve_state(std::string_view ref, const std::filesystem::path& base_dir) {
  if (is_named_state(ref)) return named_state(ref);
  std::filesystem::path p{std::string(ref)};
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  if (std::filesystem::is_regular_file(p)) return load_state_file(p);
  return named_state(ref); // throws with the catalog listing
}

nlohmann::json sphere_to_json(const SpherePoint& p) {
  return {{"kind", std::string(to_string(p.kind))},
          {"coords", {p.coords[0], p.coords[1], p.coords[2]}},
          {"theta", p.theta},
          {"phi", p.phi},
          {"degenerate_azimuth", p.degenerate_azimuth}};
}

nlohmann::json torus_to_json(const TorusPoint& t) {
  return {{"theta_p", t.theta_p}, {"phi_t", t.phi_t}, {"l_p", t.l_p}};
}

namespace {

nlohmann::json label_json(const GeneratorBasis& basis, std::size_t i) {
  nlohmann::json j = {{"index", i + 1}};
  if (i < basis.labels().size()) {
    j["family"] = std::string(to_string(basis.labels()[i].family));
    j["name"] = basis.labels()[i].name();
  }
  return j;
}

} // namespace

nlohmann::json observables_to_json(const ObservableVector& a, const GeneratorBasis& basis) {
  auto labels = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) labels.push_back(label_json(basis, i));
  return {{"values", a.values}, {"labels", labels}};
}

nlohmann::json basis_to_json(const GeneratorBasis& basis) {
  auto gens = nlohmann::json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto j = label_json(basis, i);
    j["matrix"] = matrix_to_json(basis[i]);
    gens.push_back(std::move(j));
  }
  return {{"ordering", std::string(kBasisOrderingVersion)}, {"generators", gens}};
}

nlohmann::json structure_constants_to_json(const StructureConstants& g) {
  const std::size_t n = g.dimension();
  auto out = nlohmann::json::array();
  for (std::size_t l = 0; l < n; ++l) {
    auto plane = nlohmann::json::array();
    for (std::size_t m = 0; m < n; ++m) {
      auto row = nlohmann::json::array();
      for (std::size_t k = 0; k < n; ++k) row.push_back(g(l, m, k));
      plane.push_back(std::move(row));
    }
    out.push_back(std::move(plane));
  }
  return out;
}

nlohmann::json adjoint_to_json(const AdjointRep& adj) {
  auto gens = nlohmann::json::array();
  for (const auto& G : adj.generators) gens.push_back(real_matrix_to_json(G));
  return {{"closure_constant", adj.closure_constant},
          {"closure_residual", adj.closure_residual},
          {"generators", gens}};
}

std::string basis_table_csv(const GeneratorBasis& basis) {
  std::string out = "index,family,spin_index,oam_index,name\n";
  for (std::size_t i = 0; i < basis.labels().size(); ++i) {
    const auto& l = basis.labels()[i];
    out += std::to_string(i + 1) + "," + std::string(to_string(l.family)) + "," +
           std::to_string(l.spin_index) + "," + std::to_string(l.oam_index) + "," + l.name() + "\n";
  }
  return out;
}

std::string structure_constants_csv(const StructureConstants& g, double zero_tol) {
  std::string out = "l,m,n,value\n";
  const std::size_t n = g.dimension();
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t k = 0; k < n; ++k) {
        const double v = g(l, m, k);
        if (std::abs(v) <= zero_tol) continue;
        out += std::to_string(l + 1) + "," + std::to_string(m + 1) + "," + std::to_string(k + 1) +
               "," + format_number(v) + "\n";
      }
  return out;
}

std::string trajectory_csv(const std::vector<Frame>& frames) {
  std::string out = "parameter,S1,S2,S3,A1,A2,A3,L1,L2,L3,theta_p,phi_t\n";
  for (const auto& f : frames) {
    out += format_number(f.parameter);
    for (const auto* p : {&f.skyrmion, &f.antiskyrmion, &f.oam})
      for (double c : p->coords) out += "," + format_number(c);
    const double nan = std::nan("");
    out += "," + format_number(f.torus ? f.torus->theta_p : nan);
    out += "," + format_number(f.torus ? f.torus->phi_t : nan);
    out += "\n";
  }
  return out;
}

std::string stokes_csv(const StokesField& field) {
  const TransverseGrid& g = field.grid;
  std::string out = "x,y,S0,S1,S2,S3,nx,ny,nz\n";
  out.reserve(g.pixels() * 120);
  for (int iy = 0; iy < g.size; ++iy)
    for (int ix = 0; ix < g.size; ++ix) {
      const std::size_t i = g.index(ix, iy);
      out += format_number(g.coord(ix)) + "," + format_number(g.coord(iy)) + "," +
             format_number(field.s0[i]) + "," + format_number(field.s1[i]) + "," +
             format_number(field.s2[i]) + "," + format_number(field.s3[i]);
      for (int d = 0; d < 3; ++d)
        out += "," + (field.defined[i] ? format_number(field.n[i][d]) : std::string("nan"));
      out += "\n";
    }
  return out;
}

std::string texture_map_csv(const SpinTextureMap& map) {
  std::string out = "theta_bin,phi_bin,nx,ny,nz,count\n";
  for (int p = 0; p < map.polar_bins; ++p)
    for (int a = 0; a < map.azimuth_bins; ++a) {
      const std::size_t i = map.index(p, a);
      out += std::to_string(p) + "," + std::to_string(a);
      for (int d = 0; d < 3; ++d)
        out += "," + (map.empty[i] ? std::string("nan") : format_number(map.n[i][d]));
      out += "," + std::to_string(map.count[i]) + "\n";
    }
  return out;
}

std::string pgm_image(const std::vector<double>& values, int size, double lo, double hi) {
  if (values.size() != static_cast<std::size_t>(size) * size)
    throw InvalidArgument("pgm_image: value count does not match size");
  std::string out = "P5\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
  const double span = hi > lo ? hi - lo : 1.0;
  for (int iy = size - 1; iy >= 0; --iy)
    for (int ix = 0; ix < size; ++ix) {
      const double v = values[static_cast<std::size_t>(iy) * size + ix];
      const double scaled = std::clamp(std::round(255.0 * (v - lo) / span), 0.0, 255.0);
      out += static_cast<char>(static_cast<unsigned char>(scaled));
    }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

} // namespace su6
