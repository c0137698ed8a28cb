#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace fisdim;

namespace {

const char* kGood = R"({
  "n_axis": 2,
  "domain": [0, 1, 0, 1],
  "z": [[0, 0, 0], [0, 0.25, 0.5], [0, 0.5, 1]],
  "S": "0.6",
  "g": "x^2*y",
  "h": "x*y",
  "eval_level": 7,
  "n_max": 2,
  "tol": 1e-9
})";

bool has_field(const config::ConfigError& e, const std::string& field) {
    return std::any_of(e.errors.begin(), e.errors.end(),
                       [&](const config::FieldError& fe) { return fe.field == field; });
}

}  // namespace

TEST_CASE("well-formed config parses") {
    const config::Config cfg = config::parse(kGood);
    CHECK(cfg.n_axis == 2);
    CHECK(cfg.x0 == 0.0);
    CHECK(cfg.xN == 1.0);
    CHECK(cfg.z[2][2] == 1.0);
    CHECK(cfg.S == "0.6");
    CHECK(cfg.eval_level == 7);
    CHECK(cfg.n_max == 2);
    CHECK(cfg.tol == 1e-9);
    CHECK(!cfg.refine.has_value());
    CHECK(!cfg.lambda_S.has_value());

    const fif::FisSystem sys = config::make_system(cfg);
    CHECK(sys.nodes.N == 2);
    CHECK(expr::eval(sys.h, 1, 1) == 1.0);
    CHECK(!sys.lambda_S_override.has_value());
}

TEST_CASE("malformed json is rejected with the root field") {
    try {
        config::parse("{ not json");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "<root>"));
    }
}

TEST_CASE("missing fields are all reported at once") {
    try {
        config::parse(R"({"n_axis": 2})");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "domain"));
        CHECK(has_field(e, "z"));
        CHECK(has_field(e, "S"));
        CHECK(has_field(e, "g"));
        CHECK(has_field(e, "h"));
        CHECK(!has_field(e, "n_axis"));
    }
}

TEST_CASE("type violations carry the field name") {
    try {
        config::parse(R"({
          "n_axis": 2.5, "domain": [0, 1, 0], "z": "flat",
          "S": 6, "g": "x", "h": "x", "refine": 1.5
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "n_axis"));
        CHECK(has_field(e, "domain"));
        CHECK(has_field(e, "z"));
        CHECK(has_field(e, "S"));
        CHECK(has_field(e, "refine"));
    }
}

TEST_CASE("constraint violations") {
    // non-square domain
    try {
        config::parse(R"({
          "n_axis": 2, "domain": [0, 1, 0, 2],
          "z": [[0,0,0],[0,0,0],[0,0,0]], "S": "0.5", "g": "0", "h": "0"
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        REQUIRE(has_field(e, "domain"));
        const auto it = std::find_if(e.errors.begin(), e.errors.end(),
                                     [](const auto& fe) { return fe.field == "domain"; });
        CHECK(it->reason.find("|I|=|J|") != std::string::npos);
    }

    // N too small
    try {
        config::parse(R"({
          "n_axis": 1, "domain": [0, 1, 0, 1],
          "z": [[0,0],[0,0]], "S": "0.5", "g": "0", "h": "0"
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "n_axis"));
    }

    // z shape
    try {
        config::parse(R"({
          "n_axis": 2, "domain": [0, 1, 0, 1],
          "z": [[0,0],[0,0]], "S": "0.5", "g": "0", "h": "0"
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        REQUIRE(has_field(e, "z"));
        CHECK(e.errors.front().reason.find("(N+1)x(N+1)") != std::string::npos);
    }

    // unparsable expression
    try {
        config::parse(R"({
          "n_axis": 2, "domain": [0, 1, 0, 1],
          "z": [[0,0,0],[0,0,0],[0,0,0]], "S": "0.5 +", "g": "0", "h": "0"
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "S"));
    }

    // bad option ranges
    try {
        config::parse(R"({
          "n_axis": 2, "domain": [0, 1, 0, 1],
          "z": [[0,0,0],[0,0,0],[0,0,0]], "S": "0.5", "g": "0", "h": "0",
          "refine": 99, "eval_level": 0, "n_max": 0, "tol": -1
        })");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        CHECK(has_field(e, "refine"));
        CHECK(has_field(e, "eval_level"));
        CHECK(has_field(e, "n_max"));
        CHECK(has_field(e, "tol"));
    }
}

TEST_CASE("overrides flow into the system") {
    const auto cfg = config::parse(R"({
      "n_axis": 2, "domain": [0, 1, 0, 1],
      "z": [[0,0,0],[0,0,0],[0,0,0]], "S": "0.5", "g": "0", "h": "0",
      "lambda_S": 0.25, "lambda_q": 1.5
    })");
    auto sys = config::make_system(cfg);
    CHECK(sys.lambda_S_override == 0.25);
    CHECK(sys.lambda_q_override == 1.5);
    const auto rep = fif::validate(sys);
    CHECK(rep.lambda_S == 0.25);
    CHECK(rep.lambda_q == 1.5);
}

TEST_CASE("load reports unreadable paths") {
    CHECK_THROWS_AS(config::load("/nonexistent/path.json"), config::ConfigError);
}

TEST_CASE("error message aggregates field details") {
    try {
        config::parse(R"({"n_axis": 2})");
        FAIL("expected ConfigError");
    } catch (const config::ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("invalid config") != std::string::npos);
        CHECK(msg.find("domain") != std::string::npos);
    }
}
