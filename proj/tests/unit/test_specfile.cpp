#include "helpers.hpp"

#include "tpds/demos.hpp"
#include "tpds/specfile.hpp"

#include <filesystem>
#include <map>
#include <string>

using namespace tpds;
using testutil::code_of;

namespace {

const std::filesystem::path kSpecDir = TPDS_SPEC_DIR;

SystemSpec with_system(const SystemSpec& s, std::variant<TimeVaryingSystem, NonlinearSystem> sys) {
  return SystemSpec{s.name, s.n, s.a, s.b, s.period, std::move(sys), s.experiment};
}

std::string error_text(const std::string& doc) {
  try {
    parse_spec(doc);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({"meta": {"name": "m", "n": 1, "interval": [0, 1]},
                          "linear": {"segments": [{"start": 0, "end": 1, "matrix": [["-t"]]}]}})";

}  // namespace

TEST_CASE("every shipped spec round-trips") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(kSpecDir)) {
    if (entry.path().extension() != ".spec") continue;
    ++count;
    CAPTURE(entry.path().filename().string());
    const SystemSpec s = read_spec_file(entry.path());
    const std::string text = serialize_spec(s);
    const SystemSpec back = parse_spec(text);
    CHECK(same_spec(s, back));
    CHECK(serialize_spec(back) == text);
    CHECK(back.experiment == s.experiment);
  }
  CHECK(count >= 8);
}

TEST_CASE("shipped specs match the built-in demo systems") {
  const std::map<std::string, std::variant<TimeVaryingSystem, NonlinearSystem>> demo = {
      {"switched", demos::switched()},       {"cosh2", demos::cosh2()},
      {"sinusoidal2", demos::sinusoidal2()}, {"schwarz3", demos::schwarz3()},
      {"takac", demos::takac()},             {"entrain_demo", demos::entrain(3)},
      {"logistic3", demos::logistic3()},
  };
  for (const auto& [name, sys] : demo) {
    CAPTURE(name);
    const SystemSpec s = read_spec_file(kSpecDir / (name + ".spec"));
    CHECK(s.name == name);
    CHECK(same_spec(s, with_system(s, sys)));
  }
  const SystemSpec sw = read_spec_file(kSpecDir / "switched.spec");
  CHECK(*sw.experiment.z0 == std::vector<double>{-1, 5, -13, 17});
  CHECK(read_spec_file(kSpecDir / "zero.spec").linear().is_constant());
}

TEST_CASE("minimal document") {
  const SystemSpec s = parse_spec(kMinimal);
  REQUIRE(s.is_linear());
  CHECK(s.linear().at(0.5)(0, 0) == -0.5);
  CHECK_FALSE(s.period);
  CHECK(code_of([&] { s.nonlinear(); }) == ErrorCode::InvalidSystem);
}

TEST_CASE("malformed documents") {
  CHECK(error_text("{\"meta\": {\n  \"name\": }").find("line 2:") != std::string::npos);
  CHECK(code_of([] { parse_spec("[1, 2"); }) == ErrorCode::ParseError);
  CHECK(error_text(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1], "colour": 1},
                      "linear": {"segments": []}})")
            .find("unknown key 'colour'") != std::string::npos);
  CHECK(code_of([] { parse_spec(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1]}})"); }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 1.5, "interval": [0, 1]},
                         "linear": {"segments": [{"start": 0, "end": 1, "matrix": [[1]]}]}})");
        }) == ErrorCode::ParseError);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 2, "interval": [0, 1]},
                         "linear": {"segments": [{"start": 0, "end": 1, "matrix": [[1]]}]}})");
        }) == ErrorCode::ParseError);
  CHECK(error_text(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1]},
                      "linear": {"segments": [{"start": 0, "end": 1, "matrix": [["1 +"]]}]}})")
            .find("linear.segments[0].matrix") != std::string::npos);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1]},
                         "linear": {"segments": [{"start": 0, "end": 1, "matrix": [["x1"]]}]}})");
        }) == ErrorCode::UnknownIdentifier);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1], "period": 1},
                         "linear": {"segments": [{"start": 0, "end": 1, "matrix": [["t"]]}]}})");
        }) == ErrorCode::NotPeriodic);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 1, "interval": [0, 1]},
                         "linear": {"segments": [{"start": 0, "end": 0.5, "matrix": [[1]]}]}})");
        }) == ErrorCode::InvalidSystem);
  CHECK(code_of([] {
          parse_spec(R"({"meta": {"name": "m", "n": 1},
                         "nonlinear": {"rhs": ["x1 * u"], "domain_box": [[-1, 1]]}})");
        }) == ErrorCode::UnknownIdentifier);
  CHECK(code_of([] { read_spec_file("/nonexistent/x.spec"); }) == ErrorCode::ParseError);
}
