// Copyright 2026 The floqlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <fstream>

#include "floq/app/config.hpp"

using namespace floq;
using namespace floq::app;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({
    "schema_version": 1,
    "lattice": {"extents": [4]},
    "hamiltonian": {"alpha": 3.0}
  })");
}

std::string schema_path(const json& doc) {
  try {
    parse_config(doc);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("defaults") {
  auto c = parse_config(minimal());
  CHECK(c.lattice.build().size() == 4);
  CHECK(c.drive.g == 0.5);
  CHECK(c.heating.beta == 1.0);
  CHECK(c.response.k_max == 8);
  CHECK(c.output == "out");
  CHECK(c.drive_operator().size() == 4);
  CHECK(c.h0().size() == 6 + 4);
}

TEST_CASE("unknown and missing fields are reported with their path") {
  auto d = minimal();
  d["lattice"]["extent"] = 3;
  CHECK(schema_path(d) == "lattice.extent");
  d = minimal();
  d["drive"] = {{"g", 0.5}, {"omegaa", 2.0}};
  CHECK(schema_path(d) == "drive.omegaa");
  d = minimal();
  d.erase("lattice");
  CHECK(schema_path(d) == "lattice");
  d = minimal();
  d["schema_version"] = 2;
  CHECK(schema_path(d) == "schema_version");
  d = minimal();
  d["lattice"]["extents"] = json::array({4, 0});
  CHECK(schema_path(d) == "lattice.extents[1]");
  d = minimal();
  d["bounds"] = json::array({"Gong", "Nope"});
  CHECK(schema_path(d) == "bounds[1]");
  d = minimal();
  d["drive"] = {{"omega", "fast"}};
  CHECK(schema_path(d) == "drive.omega");
}

TEST_CASE("overrides") {
  auto d = minimal();
  apply_override(d, "drive.omega=5.5");
  apply_override(d, "lattice.extents=[3,2]");
  apply_override(d, "output=runs/a");
  apply_override(d, "lattice.boundary=periodic");
  auto c = parse_config(d);
  CHECK(*c.drive.omega == 5.5);
  CHECK(c.lattice.extents == std::vector<int>{3, 2});
  CHECK(c.lattice.dimension == 2);
  CHECK(c.lattice.boundary == Boundary::Periodic);
  CHECK(c.output == "runs/a");
  CHECK(c.resolved["drive"]["omega"] == 5.5);
  CHECK_THROWS_AS(apply_override(d, "novalue"), SchemaError);
  CHECK_THROWS_AS(apply_override(d, "output.x=1"), SchemaError);
}

TEST_CASE("operator literals round trip") {
  auto lit = json::parse(R"([
    {"coefficient": [0.5, 0.0], "string": {"0": "X", "2": "Z"}},
    {"coefficient": [-1.0, 0.25], "string": {"1": "Y"}}
  ])");
  auto op = parse_operator(lit, "op");
  CHECK(op.size() == 2);
  auto back = parse_operator(operator_to_json(op), "op");
  CHECK(max_abs_difference(op, back) == 0.0);
  CHECK_THROWS_AS(parse_operator(json::parse(R"([{"coefficient": [1, 0], "string": {"0": "Q"}}])"),
                                 "op"),
                  SchemaError);
  try {
    parse_operator(json::parse(R"([{"coefficient": [1, 0], "string": {"0": "X"}, "extra": 1}])"),
                   "h.terms");
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.path() == "h.terms[0].extra");
  }
}

TEST_CASE("terms family") {
  auto d = minimal();
  d["hamiltonian"] = json::parse(R"({"family": "terms", "alpha": 3,
    "terms": [{"coefficient": [1, 0], "string": {"0": "Z", "1": "Z"}}]})");
  auto c = parse_config(d);
  CHECK(c.h0().size() == 1);
  d["hamiltonian"]["terms"][0]["string"] = {{"7", "Z"}};
  CHECK(schema_path(d) == "hamiltonian.terms");
  d["hamiltonian"]["coupling"] = 1.0;
  CHECK_FALSE(schema_path(d).empty());
}

TEST_CASE("comments are allowed in files") {
  const std::string path = "floq_config_test.json";
  {
    std::ofstream f(path);
    f << "// run\n{\n  \"schema_version\": 1, /* v */\n  \"lattice\": {\"extents\": [2]},\n"
         "  \"hamiltonian\": {}\n}\n";
  }
  auto c = parse_config(read_config_file(path));
  CHECK(c.lattice.extents == std::vector<int>{2});
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_config_file("does/not/exist.json"), SchemaError);
}

}  // TEST_SUITE
