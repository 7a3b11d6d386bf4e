#include <doctest.h>

#include <clocale>
#include <cmath>
#include <sstream>

#include "su6/error.hpp"
#include "su6/io.hpp"
#include "test_support.hpp"

using namespace su6;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

} // namespace

TEST_CASE("number formatting is fixed and locale independent") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(1e-300) == "1e-300");
  CHECK(format_shortest(0.1) == "0.1");
  CHECK(format_shortest(22.5) == "22.5");
  CHECK(format_shortest(-0.0) == "0");
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    CHECK(format_number(0.5) == "0.5");
    std::setlocale(LC_NUMERIC, "C");
  }
  for (double v : {0.1, 1.0 / 3.0, 2.0 / 7.0, 1e22, -3.25e-7})
    CHECK(std::stod(format_number(v)) == v);
}

TEST_CASE("state JSON round trip and validation") {
  const CoherentState s = su2_state(1.0, 0.4, Su2Kind::skyrmion);
  const CoherentState scaled(s.alpha(), 3.0);
  const CoherentState back = state_from_json(nlohmann::json::parse(state_to_json(scaled).dump()));
  CHECK(back.n0() == 3.0);
  CHECK((back.alpha() - scaled.alpha()).norm() == 0.0);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse("{\"alpha\": [1, 2]}")), InvalidArgument);
  CHECK_THROWS_AS(state_from_json(nlohmann::json::parse("[]")), InvalidArgument);
  CHECK_THROWS_AS(
      state_from_json(nlohmann::json::parse(
          "{\"alpha\": [[0,0],[0,0],[0,0],[0,0],[0,0],[0,\"x\"]]}")),
      InvalidArgument);

  const auto dir = su6::test::scratch("io_state");
  write_file(dir / "s.json", "{ not json");
  CHECK_THROWS_AS(load_state_file(dir / "s.json"), InvalidArgument);
  write_file(dir / "ok.json", state_to_json(s).dump());
  CHECK(resolve_state("ok.json", dir).same_ray(s, 0.0));
  CHECK(resolve_state("neel_out").same_ray(named_state("neel_out"), 0.0));
  CHECK_THROWS_AS(resolve_state("missing.json", dir), InvalidArgument);
}

TEST_CASE("shipped state files load") {
  const CoherentState s = load_state_file(su6::test::data_dir() / "states/tilted_skyrmion.json");
  const SpherePoint p = skyrmion_sphere(s);
  CHECK(p.theta == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
  CHECK(p.phi == doctest::Approx(std::numbers::pi / 6).epsilon(1e-12));
}

TEST_CASE("structure constant CSV: one-based, zeros omitted") {
  const auto g = structure_constants(su6_basis());
  const auto rows = lines_of(structure_constants_csv(g));
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "l,m,n,value");
  std::size_t nonzero = 0;
  for (std::size_t l = 0; l < 35; ++l)
    for (std::size_t m = 0; m < 35; ++m)
      for (std::size_t k = 0; k < 35; ++k)
        if (std::abs(g(l, m, k)) > 1e-14) ++nonzero;
  CHECK(rows.size() == nonzero + 1);
  CHECK(rows[1].rfind("1,2,3,", 0) == 0); // g_123 = 1/sqrt3 is the first entry
  CHECK(std::stod(rows[1].substr(6)) == doctest::Approx(1 / std::sqrt(3.0)));
}

TEST_CASE("basis exports") {
  const GeneratorBasis b = su6_basis();
  const auto rows = lines_of(basis_table_csv(b));
  CHECK(rows.size() == 36);
  CHECK(rows[0] == "index,family,spin_index,oam_index,name");
  const auto j = basis_to_json(b);
  CHECK(j["generators"].size() == 35);
  CHECK(j["ordering"] == std::string(kBasisOrderingVersion));
  const auto adj = adjoint_to_json(adjoint_matrices(structure_constants(b)));
  CHECK(adj["generators"].size() == 35);
  CHECK(adj["generators"][0].size() == 35);
}

TEST_CASE("trajectory CSV with nan torus columns off the torus") {
  std::vector<Frame> frames = {make_frame(0.0, named_state("neel_out")),
                               make_frame(5.0, CoherentState::basis(1))};
  const auto rows = lines_of(trajectory_csv(frames));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "parameter,S1,S2,S3,A1,A2,A3,L1,L2,L3,theta_p,phi_t");
  CHECK(rows[1].rfind("0,", 0) == 0);
  CHECK(std::stod(rows[1].substr(2, rows[1].find(',', 2) - 2)) == doctest::Approx(1.0));
  CHECK(rows[2].substr(rows[2].size() - 8) == ",nan,nan");
}

TEST_CASE("field exports: CSV rows, PGM bytes, texture map") {
  const FieldPair fp = synthesize(named_state("neel_out"), TransverseGrid{16, 3.0});
  const StokesField sf = stokes_fields(fp.left, fp.right);
  const auto rows = lines_of(stokes_csv(sf));
  CHECK(rows.size() == 16 * 16 + 1);
  CHECK(rows[0] == "x,y,S0,S1,S2,S3,nx,ny,nz");

  const std::string pgm = pgm_image(sf.s0, 16, 0.0, 1.0);
  const std::string header = "P5\n16 16\n255\n";
  CHECK(pgm.rfind(header, 0) == 0);
  CHECK(pgm.size() == header.size() + 256);
  const std::vector<double> ramp = [] {
    std::vector<double> v(256, -1.0);
    v[255] = 2.0;  // last pixel of the top row after flipping
    v[0] = 0.5;    // first pixel of the bottom row
    return v;
  }();
  const std::string img = pgm_image(ramp, 16, 0.0, 1.0);
  CHECK(static_cast<unsigned char>(img[header.size() + 15]) == 255);
  CHECK(static_cast<unsigned char>(img[header.size() + 240]) == 128);
  CHECK(static_cast<unsigned char>(img[header.size()]) == 0);
  CHECK_THROWS_AS(pgm_image(ramp, 15, 0.0, 1.0), InvalidArgument);

  const SpinTextureMap map = soup_bubble(sf, 3.0);
  const auto mrows = lines_of(texture_map_csv(map));
  CHECK(mrows.size() == 32 * 64 + 1);
  CHECK(mrows[0] == "theta_bin,phi_bin,nx,ny,nz,count");
}
