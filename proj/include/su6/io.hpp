#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "su6/algebra.hpp"
#include "su6/field.hpp"
#include "su6/optics.hpp"
#include "su6/state.hpp"

namespace su6 {

/// Shortest representation that round-trips, locale independent.
std::string format_shortest(double v);
/// 17 significant digits, locale independent; "nan" for NaN.
std::string format_number(double v);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json real_matrix_to_json(const RealMatrix& m);

/// {"alpha": [[re, im] x 6], "n0": float}
nlohmann::json state_to_json(const CoherentState& state);
CoherentState state_from_json(const nlohmann::json& j);
CoherentState load_state_file(const std::filesystem::path& path);

/// Catalog name, else a state JSON file (relative paths against base_dir).
CoherentState resolve_state(std::string_view ref, const std::filesystem::path& base_dir = {});

nlohmann::json sphere_to_json(const SpherePoint& p);
nlohmann::json torus_to_json(const TorusPoint& t);
/// {"values": [35 floats], "labels": [{"index", "family", "name"} x 35]}
nlohmann::json observables_to_json(const ObservableVector& a, const GeneratorBasis& basis);
/// {"ordering": ..., "generators": [{"index", "family", "name", "matrix"}]}
nlohmann::json basis_to_json(const GeneratorBasis& basis);
/// Nested 35 x 35 x 35 array.
nlohmann::json structure_constants_to_json(const StructureConstants& g);
nlohmann::json adjoint_to_json(const AdjointRep& adj);

/// CSV index,family,spin_index,oam_index,name with one-based indices.
std::string basis_table_csv(const GeneratorBasis& basis);
/// CSV l,m,n,value (one-based), rows with |value| <= zero_tol omitted.
std::string structure_constants_csv(const StructureConstants& g, double zero_tol = 1e-14);
/// CSV parameter,S1,S2,S3,A1,A2,A3,L1,L2,L3,theta_p,phi_t (sphere
/// coordinates in hbar N0 units, torus angles in radians, nan off-torus).
std::string trajectory_csv(const std::vector<Frame>& frames);
/// CSV x,y,S0,S1,S2,S3,nx,ny,nz row-major from the lowest y; nan where n is undefined.
std::string stokes_csv(const StokesField& field);
/// CSV theta_bin,phi_bin,nx,ny,nz,count; nan for empty bins.
std::string texture_map_csv(const SpinTextureMap& map);

/// Binary 8-bit PGM with the affine map [lo, hi] -> [0, 255]; the first
/// image row is the largest y.
std::string pgm_image(const std::vector<double>& values, int size, double lo, double hi);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

} // namespace su6
