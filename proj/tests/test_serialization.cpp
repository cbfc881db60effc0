#include <doctest.h>

#include <sstream>
#include <string>

#include <json.hpp>

#include "gmgd/large_jumps.hpp"
#include "gmgd/path.hpp"
#include "gmgd/rng.hpp"

using namespace gmgd;

TEST_CASE("GmgdSpec JSON round-trips through the documented schema") {
  GmgdSpec spec;
  spec.dimension = 2;
  spec.p = 1.5;
  spec.gamma = Vec{0.25, -1.0};
  spec.spectral = SpectralMeasure(2, {Vec{1.0, 0.0}, Vec{0.0, -1.0}}, {0.5, 2.0});
  spec.thorin = {ThorinMeasure{ThorinAtom{1.0, 0.75}, ThorinAtom{3.0, 0.25}},
                 ThorinMeasure{ThorinAtom{2.0, 1.0}}};
  spec.validate();

  const std::string text = spec.to_json_string(2);
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("d") == 2);
  CHECK(j.at("p") == 1.5);
  CHECK(j.at("gamma").size() == 2);
  CHECK(j.at("spectral").at("atoms").size() == 2);
  CHECK(j.at("thorin").at(0).at(1).at(0) == 3.0);  // [v, q] pairs per atom

  const auto restored = GmgdSpec::from_json_string(text);
  CHECK(restored.dimension == spec.dimension);
  CHECK(restored.p == spec.p);
  CHECK(restored.gamma == spec.gamma);
  REQUIRE(restored.thorin.size() == 2);
  CHECK(restored.thorin[0][1].location == 3.0);
  CHECK(restored.thorin[0][1].weight == 0.25);
  CHECK(restored.spectral.weight(1) == 2.0);
}

TEST_CASE("malformed spec JSON raises") {
  CHECK_THROWS(GmgdSpec::from_json_string("{ not json"));
  CHECK_THROWS(GmgdSpec::from_json_string("{\"d\": 2}"));
  // Structurally valid JSON with an invalid measure (weights sum != 1).
  GmgdSpec spec = GmgdSpec::paper_study(4);
  auto j = nlohmann::json::parse(spec.to_json_string());
  j["thorin"][0] = nlohmann::json::array({{1.0, 0.5}, {2.0, 0.6}});
  CHECK_THROWS(GmgdSpec::from_json_string(j.dump()));
}

TEST_CASE("paper-study preset matches its documented parameters") {
  const auto spec = GmgdSpec::paper_study();
  CHECK(spec.dimension == 2);
  CHECK(spec.p == 1.0);
  CHECK(spec.gamma == Vec{0.0, 0.0});
  CHECK(spec.spectral.atom_count() == 30);
  CHECK(spec.spectral.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& row : spec.thorin) {
    REQUIRE(row.size() == 1);
    CHECK(row[0].location == 1.0);
    CHECK(row[0].weight == 1.0);
  }
}

TEST_CASE("path CSV export carries endpoints and cumulative jump rows") {
  PathSkeleton path;
  path.horizon = 2.0;
  path.drift = Vec{1.0, 0.0};
  path.jumps = {Jump{0.5, Vec{0.0, 2.0}}, Jump{1.0, Vec{3.0, 0.0}}};
  std::ostringstream os;
  write_path_csv(path, os);
  CHECK(os.str() ==
        "t,x_1,x_2\n"
        "0,0,0\n"
        "0.5,0.5,2\n"
        "1,4,2\n"
        "2,5,2\n");
}

TEST_CASE("path JSON round-trips") {
  PathSkeleton path;
  path.horizon = 1.0;
  path.drift = Vec{0.5};
  path.jumps = {Jump{0.25, Vec{1.0}}, Jump{0.75, Vec{-2.0}}};
  const auto restored = path_from_json_string(path_to_json_string(path));
  CHECK(restored.horizon == path.horizon);
  CHECK(restored.drift == path.drift);
  REQUIRE(restored.jumps.size() == 2);
  CHECK(restored.jumps[1].time == 0.75);
  CHECK(restored.jumps[1].value == Vec{-2.0});
}

TEST_CASE("CSV numbers survive a parse round-trip at 17 significant digits") {
  PathSkeleton path;
  path.horizon = 1.0;
  path.drift = Vec{0.0};
  Rng rng(33);
  double acc = 0.0;
  for (int i = 0; i < 20; ++i) {
    acc += rng.uniform01() / 16.0;
    path.jumps.push_back(Jump{static_cast<double>(i) / 20.0,
                              Vec{rng.uniform01() * 1e-7}});
  }
  std::ostringstream os;
  write_path_csv(path, os);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);  // header
  double cumulative = 0.0;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double value = std::stod(line.substr(comma + 1));
    if (row >= 1 && row <= path.jumps.size()) {
      cumulative += path.jumps[row - 1].value[0];
      CHECK(value == cumulative);  // bit-exact round trip
    }
    ++row;
  }
  CHECK(row == path.jumps.size() + 2);
}
