#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "su6/algebra.hpp"
#include "su6/bench_format.hpp"
#include "su6/error.hpp"
#include "su6/field.hpp"
#include "su6/io.hpp"
#include "su6/optics.hpp"
#include "su6/random.hpp"
#include "su6/state.hpp"

namespace su6::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Input errors detected by the command layer itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command_line;
  fs::path out_dir = "out";
  int grid = 256;
  double extent = 3.0;
  double waist = 1.0;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;

  TransverseGrid transverse_grid() const { return {grid, extent}; }

  json to_json() const {
    return {{"out", out_dir.generic_string()}, {"grid", grid},     {"extent", extent},
            {"waist", waist},                  {"seed", seed},     {"tolerance", tolerance}};
  }
};

/// Writes files under the output directory, each with a provenance sidecar.
class OutputSink {
public:
  explicit OutputSink(const RunConfig& config) : config_(config) {}

  void write(const std::string& name, std::string_view content, json meta = json::object()) {
    const fs::path path = config_.out_dir / name;
    write_file(path, content);
    meta["file"] = name;
    meta["command_line"] = config_.command_line;
    meta["config"] = config_.to_json();
    meta["basis_ordering"] = std::string(kBasisOrderingVersion);
    write_file(path.string() + ".meta.json", meta.dump(2) + "\n");
    written_.push_back(path.generic_string());
  }

  const std::vector<std::string>& written() const { return written_; }

private:
  const RunConfig& config_;
  std::vector<std::string> written_;
};

std::string stem_of(std::string_view ref) {
  if (is_named_state(ref)) return std::string(ref);
  return fs::path(std::string(ref)).stem().string();
}

json grid_json(const TransverseGrid& g) {
  return {{"size", g.size}, {"extent", g.extent}, {"spacing", g.spacing()}};
}

// ---------------------------------------------------------------- algebra

struct Check {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  enum Status { pass, fail, skipped } status = skipped;
};

std::vector<Check> verify_algebra(const GeneratorBasis& basis, const RunConfig& config) {
  const double tol = config.tolerance;
  std::vector<Check> checks;
  auto add = [&](std::string name, double residual, double limit) {
    checks.push_back({std::move(name), residual, limit,
                      residual <= limit ? Check::pass : Check::fail});
  };

  add("generator_count", std::abs(static_cast<double>(basis.size()) - kAlgebraDim), 0.0);
  std::array<int, 3> families{};
  for (const auto& l : basis.labels()) ++families[static_cast<int>(l.family)];
  add("family_sizes_3_8_24",
      std::abs(families[0] - 3.0) + std::abs(families[1] - 8.0) + std::abs(families[2] - 24.0),
      0.0);

  double herm = 0.0, trace = 0.0, ortho = 0.0;
  for (std::size_t l = 0; l < basis.size(); ++l) {
    herm = std::max(herm, max_abs(basis[l] - basis[l].adjoint()));
    trace = std::max(trace, std::abs(basis[l].trace()));
    for (std::size_t m = 0; m < basis.size(); ++m) {
      const double target = l == m ? 2.0 : 0.0;
      ortho = std::max(ortho, std::abs((basis[l] * basis[m]).trace() - target));
    }
  }
  add("hermiticity", herm, tol);
  add("tracelessness", trace, tol);
  add("trace_orthonormality", ortho, tol);

  const bool basis_ok = std::all_of(checks.begin(), checks.end(),
                                    [](const Check& c) { return c.status == Check::pass; });
  const std::vector<std::string> dependent = {"antisymmetry", "commutator_closure", "jacobi",
                                              "adjoint_closure_constant",
                                              "quantum_classical_correspondence"};
  if (!basis_ok) {
    for (const auto& name : dependent) checks.push_back({name, std::nan(""), tol, Check::skipped});
    return checks;
  }

  const StructureConstants g = structure_constants(basis, tol);
  add("antisymmetry", g.antisymmetry_residual(), tol);
  add("commutator_closure", commutator_closure_residual(basis, g), tol);

  Rng rng(config.seed);
  double jacobi = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto& a = basis[rng.index(basis.size())];
    const auto& b = basis[rng.index(basis.size())];
    const auto& c = basis[rng.index(basis.size())];
    const ComplexMatrix sum = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                              commutator(c, commutator(a, b));
    jacobi = std::max(jacobi, max_abs(sum));
  }
  add("jacobi", jacobi, 1e-9);

  const AdjointRep adj = adjoint_matrices(g);
  add("adjoint_closure_constant",
      std::max(std::abs(adj.closure_constant - 1.0), adj.closure_residual), tol);

  double corr = 0.0;
  for (int t = 0; t < 20; ++t) {
    const CoherentState s = rng.state();
    const auto dir = rng.direction(basis.size());
    const double dphi = rng.uniform(-std::numbers::pi, std::numbers::pi);
    corr = std::max(corr, correspondence_residual(s, basis, adj, dir, dphi));
  }
  add("quantum_classical_correspondence", corr, 1e-9);
  return checks;
}

int cmd_algebra_verify(const RunConfig& config, std::optional<int> inject, std::ostream& out,
                       std::ostream& err) {
  GeneratorBasis basis = su6_basis();
  if (inject) {
    if (*inject < 1 || *inject > static_cast<int>(basis.size()))
      throw UsageError("--inject-non-hermitian index must be in 1.." +
                       std::to_string(basis.size()));
    auto gens = basis.generators();
    gens[*inject - 1](0, 1) += Complex(0.0, 0.5); // breaks M = M^dagger only
    basis = GeneratorBasis(std::move(gens), basis.labels());
  }

  const auto checks = verify_algebra(basis, config);
  out << "invariant                         max_residual             tolerance  status\n";
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    std::string status = c.status == Check::pass ? "PASS" : c.status == Check::fail ? "FAIL" : "SKIP";
    std::string line = c.name;
    line.resize(34, ' ');
    std::string res = format_number(c.residual);
    res.resize(25, ' ');
    std::string tol = format_shortest(c.tolerance);
    tol.resize(11, ' ');
    out << line << res << tol << status << "\n";
    if (c.status == Check::fail) failed.push_back(c.name);
  }
  if (!failed.empty()) {
    std::string names;
    for (const auto& n : failed) names += (names.empty() ? "" : ", ") + n;
    err << "verification failed: " << names << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

int cmd_algebra_export(const RunConfig& config, std::ostream& out) {
  const GeneratorBasis basis = su6_basis();
  const StructureConstants g = structure_constants(basis);
  const AdjointRep adj = adjoint_matrices(g);
  OutputSink sink(config);
  sink.write("basis.json", basis_to_json(basis).dump() + "\n");
  sink.write("basis.csv", basis_table_csv(basis));
  sink.write("structure_constants.csv", structure_constants_csv(g),
             {{"indexing", "one-based"}, {"zero_threshold", 1e-14},
              {"candidate_rows", kAlgebraDim * kAlgebraDim * kAlgebraDim}});
  sink.write("structure_constants.json", structure_constants_to_json(g).dump() + "\n",
             {{"indexing", "zero-based nested [l][m][n]"}});
  sink.write("adjoint.json", adjoint_to_json(adj).dump() + "\n",
             {{"convention", "(G_l)_mn = -g_lmn"}});
  out << json{{"files", sink.written()},
              {"adjoint_closure_constant", adj.closure_constant}}
             .dump(2)
      << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ state

json describe_state(const CoherentState& s, bool spheres, bool torus) {
  json j = state_to_json(s);
  j["hypersphere_norm"] = all_expectations(s, su6_basis()).norm();
  j["texture"] = classify_texture(s).name();
  if (spheres) {
    json pol = json::array();
    for (int m = 0; m < 3; ++m) pol.push_back(sphere_to_json(polarization_sphere(s, m)));
    j["spheres"] = {{"skyrmion", sphere_to_json(skyrmion_sphere(s))},
                    {"antiskyrmion", sphere_to_json(antiskyrmion_sphere(s))},
                    {"oam", sphere_to_json(oam_sphere(s))},
                    {"polarization", pol}};
  }
  if (torus) {
    try {
      j["torus"] = torus_to_json(state_to_torus(s));
    } catch (const InvalidArgument& e) {
      j["torus"] = nullptr;
      j["torus_error"] = e.what();
    }
  }
  return j;
}

int cmd_state_eval(const std::string& ref, bool spheres, bool torus, std::ostream& out) {
  const CoherentState s = resolve_state(ref);
  json j = {{"state", ref}};
  j.update(describe_state(s, spheres, torus));
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ field

struct FieldExport {
  StokesField field;
  std::optional<std::pair<double, double>> skyrmion; // finite difference, lattice
};

double default_disk(const RunConfig& config) { return std::min(3.0 * config.waist, config.extent); }

FieldExport export_field(OutputSink& sink, const RunConfig& config, const std::string& stem,
                         const CoherentState& state, double disk, RadialMap map,
                         bool want_skyrmion, bool want_csv = true) {
  const TransverseGrid grid = config.transverse_grid();
  const FieldPair fp = synthesize(state, grid, config.waist);
  FieldExport result{stokes_fields(fp.left, fp.right), std::nullopt};
  const StokesField& sf = result.field;
  const SpinTextureMap texture = soup_bubble(sf, disk, map);

  const json base = {{"grid", grid_json(grid)},
                     {"waist", config.waist},
                     {"disk_radius", disk},
                     {"mapping", texture.descriptor()},
                     {"epsilon", sf.epsilon}};
  if (want_csv) sink.write(stem + "_stokes.csv", stokes_csv(sf), base);

  const double peak = *std::max_element(sf.s0.begin(), sf.s0.end());
  const std::array<std::pair<const char*, const std::vector<double>*>, 4> channels = {
      {{"S0", &sf.s0}, {"S1", &sf.s1}, {"S2", &sf.s2}, {"S3", &sf.s3}}};
  for (const auto& [label, values] : channels) {
    const double lo = std::string_view(label) == "S0" ? 0.0 : -peak;
    json meta = base;
    meta["channel"] = label;
    meta["scaling"] = {{"lo", lo}, {"hi", peak}, {"rule", "round(255 (v - lo) / (hi - lo)) clamped"}};
    sink.write(stem + "_" + label + ".pgm", pgm_image(*values, grid.size, lo, peak), meta);
  }
  sink.write(stem + "_texture_map.csv", texture_map_csv(texture), base);

  if (want_skyrmion)
    result.skyrmion = {skyrmion_number(sf, disk), skyrmion_number_lattice(sf, disk)};
  return result;
}

RadialMap parse_map(const std::string& name) {
  if (name == "linear") return RadialMap::linear;
  if (name == "area_preserving") return RadialMap::area_preserving;
  throw UsageError("unknown --map '" + name + "' (expected linear or area_preserving)");
}

int cmd_field_render(const RunConfig& config, const std::string& ref, bool want_number,
                     std::optional<double> disk_opt, const std::string& map_name,
                     std::ostream& out) {
  const CoherentState s = resolve_state(ref);
  const double disk = disk_opt.value_or(default_disk(config));
  OutputSink sink(config);
  const FieldExport fe = export_field(sink, config, stem_of(ref), s, disk, parse_map(map_name),
                                      want_number);
  json j = {{"state", ref},
            {"grid", grid_json(config.transverse_grid())},
            {"waist", config.waist},
            {"disk_radius", disk},
            {"purity_residual", fe.field.purity_residual()},
            {"files", sink.written()}};
  if (fe.skyrmion)
    j["skyrmion_number"] = {{"finite_difference", fe.skyrmion->first},
                            {"lattice", fe.skyrmion->second}};
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ bench

struct LoadedBench {
  BenchDescription bench;
  CoherentState input;
};

LoadedBench load_bench(const fs::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  BenchDescription bench;
  try {
    bench = parse_bench(text);
  } catch (const BenchParseError& e) {
    throw UsageError(path.generic_string() + ":" + e.what());
  }
  try {
    return {bench, resolve_state(bench.input, path.parent_path())};
  } catch (const InvalidArgument& e) {
    throw UsageError(path.generic_string() + ": input: " + e.what());
  }
}

std::string safe_name(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
  return s;
}

int cmd_bench_run(const RunConfig& config, const fs::path& path, bool fields, std::ostream& out) {
  const LoadedBench lb = load_bench(path);
  const CoherentState camera = run_bench(lb.bench, lb.input);
  const std::string stem = safe_name(lb.bench.name);
  OutputSink sink(config);
  json state = describe_state(camera, true, true);
  sink.write(stem + "_camera_state.json", state.dump(2) + "\n", {{"bench", lb.bench.name}});
  json j = {{"bench", lb.bench.name}, {"camera", state}};
  if (fields) {
    const FieldExport fe = export_field(sink, config, stem + "_camera", camera,
                                        default_disk(config), RadialMap::linear, true);
    j["skyrmion_number"] = {{"finite_difference", fe.skyrmion->first},
                            {"lattice", fe.skyrmion->second}};
  }
  j["files"] = sink.written();
  out << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench_sweep(const RunConfig& config, const fs::path& path, bool fields,
                    std::ostream& out) {
  const LoadedBench lb = load_bench(path);
  if (lb.bench.sweeps.empty())
    throw UsageError(path.generic_string() + ": bench has no sweep statement");
  OutputSink sink(config);
  json summary = json::array();
  const std::string stem = safe_name(lb.bench.name);
  for (std::size_t k = 0; k < lb.bench.sweeps.size(); ++k) {
    const SweepSpec& spec = lb.bench.sweeps[k];
    std::string prefix = stem + "_" + safe_name(spec.element_id);
    if (lb.bench.sweeps.size() > 1) prefix += "_" + std::to_string(k + 1);
    const auto frames = sweep(lb.bench, spec, lb.input);
    const json meta = {{"bench", lb.bench.name},
                       {"element", spec.element_id},
                       {"from", spec.start},
                       {"to", spec.stop},
                       {"step", spec.step},
                       {"record", spec.record},
                       {"units", "sphere coordinates in hbar N0, angles in radians"}};
    sink.write(prefix + "_trajectory.csv", trajectory_csv(frames), meta);

    const auto records = [&](std::string_view what) {
      return std::find(spec.record.begin(), spec.record.end(), what) != spec.record.end();
    };
    if (records("observables")) {
      const GeneratorBasis basis = su6_basis();
      std::string csv = "parameter";
      for (std::size_t n = 1; n <= kAlgebraDim; ++n) csv += ",A" + std::to_string(n);
      csv += "\n";
      for (const auto& f : frames) {
        csv += format_number(f.parameter);
        for (double v : all_expectations(f.state, basis).values) csv += "," + format_number(v);
        csv += "\n";
      }
      sink.write(prefix + "_observables.csv", csv, meta);
    }

    json frame_list = json::array();
    const bool render = fields || records("stokes_field");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      json fj = {{"parameter", frames[i].parameter},
                 {"texture", classify_texture(frames[i].state).name()}};
      if (render) {
        char tag[16];
        std::snprintf(tag, sizeof tag, "%03zu", i);
        const FieldExport fe =
            export_field(sink, config, prefix + "_frames/frame_" + tag, frames[i].state,
                         default_disk(config), RadialMap::linear, true);
        fj["skyrmion_number"] = fe.skyrmion->first;
      }
      frame_list.push_back(std::move(fj));
    }
    summary.push_back({{"element", spec.element_id}, {"frames", frame_list}});
  }
  out << json{{"bench", lb.bench.name}, {"sweeps", summary}, {"files", sink.written()}}.dump(2)
      << "\n";
  return kExitOk;
}

std::string join_command_line(const std::vector<std::string>& args) {
  std::string s = "su6lab";
  for (const auto& a : args) s += " " + a;
  return s;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  config.command_line = join_command_line(args);

  CLI::App app{"SU(6) structured-light laboratory", "su6lab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_dir = "out";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--grid", config.grid, "Grid samples per side")
      ->check(CLI::Range(16, 8192))
      ->capture_default_str();
  app.add_option("--extent", config.extent, "Grid half-width in length units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--waist", config.waist, "Beam waist")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Random seed for property checks")->capture_default_str();
  app.add_option("--tolerance", config.tolerance, "Residual tolerance for verification")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* algebra = app.add_subcommand("algebra", "su(6) basis verification and export");
  algebra->require_subcommand(1);
  auto* verify = algebra->add_subcommand("verify", "Run the algebra invariant suite");
  std::optional<int> inject;
  verify->add_option("--inject-non-hermitian", inject,
                     "Test hook: corrupt the Hermiticity of generator N (one-based)");
  auto* exportc = algebra->add_subcommand("export", "Write basis, g and adjoint files");

  auto* state = app.add_subcommand("state", "Coherent state evaluation");
  state->require_subcommand(1);
  auto* eval = state->add_subcommand("eval", "Print amplitudes and sphere coordinates");
  std::string state_ref;
  bool spheres = false, torus = false;
  eval->add_option("--state", state_ref, "Catalog name or state JSON file")->required();
  eval->add_flag("--spheres", spheres, "Include sphere coordinates");
  eval->add_flag("--torus", torus, "Include skyrmionic torus coordinates");

  auto* bench = app.add_subcommand("bench", "Optical bench simulation");
  bench->require_subcommand(1);
  std::string bench_path;
  bool bench_fields = false;
  auto* run = bench->add_subcommand("run", "Emit the camera-plane state");
  auto* sweepc = bench->add_subcommand("sweep", "Emit sweep trajectories");
  for (auto* sc : {run, sweepc}) {
    sc->add_option("--bench", bench_path, "Bench description file")->required();
    sc->add_flag("--fields", bench_fields, "Also export Stokes fields");
  }

  auto* field = app.add_subcommand("field", "Transverse field synthesis");
  field->require_subcommand(1);
  auto* render = field->add_subcommand("render", "Write Stokes fields and texture map");
  std::string field_state;
  bool want_number = false;
  std::optional<double> disk;
  std::string map_name = "linear";
  render->add_option("--state", field_state, "Catalog name or state JSON file")->required();
  render->add_flag("--skyrmion-number", want_number, "Print the skyrmion number");
  render->add_option("--disk", disk, "Disk radius (default min(3 waist, extent))")
      ->check(CLI::PositiveNumber);
  render->add_option("--map", map_name, "Soup-bubble radial map: linear | area_preserving")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }
  config.out_dir = out_dir;

  try {
    config.transverse_grid().validate();
    if (*verify) return cmd_algebra_verify(config, inject, out, err);
    if (*exportc) return cmd_algebra_export(config, out);
    if (*eval) return cmd_state_eval(state_ref, spheres, torus, out);
    if (*run) return cmd_bench_run(config, bench_path, bench_fields, out);
    if (*sweepc) return cmd_bench_sweep(config, bench_path, bench_fields, out);
    if (*render) return cmd_field_render(config, field_state, want_number, disk, map_name, out);
  } catch (const std::exception& e) {
    // Bad input, parse and run errors alike; verification failures return above.
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  }
  err << "error: no command given\n";
  return kExitUsageError;
}

} // namespace su6::cli
