#include <doctest.h>

#include <random>
#include <string>

#include <json.hpp>

#include "sqcom/config.hpp"
#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"

using namespace sqcom;

namespace {

const char* kBaseline = R"({
  "kappa_hz": 10e6,
  "gamma_m_hz": 1e3,
  "omega_m_hz": 10e6,
  "omega_l_hz": 2e14,
  "g0_hz": 100,
  "G_hz": 0,
  "theta_rad": 0,
  "delta_hz": 0,
  "p_in_w": 700e-9,
  "temperature_k": 0
})";

}  // namespace

TEST_CASE("baseline config matches baseline params") {
    const SystemParams p = parse_params(kBaseline);
    CHECK(p == baseline_params());
}

TEST_CASE("frequencies convert from Hz") {
    const SystemParams p = parse_params(kBaseline);
    CHECK(p.kappa == hz_to_angular(10e6));
    CHECK(hz_to_angular(1.0) == kTwoPi);
}

TEST_CASE("theta is normalized on ingestion") {
    std::string text = kBaseline;
    text.replace(text.find("\"theta_rad\": 0"), 14, "\"theta_rad\": 4.71238898038469");
    const SystemParams p = parse_params(text);
    CHECK(p.theta == doctest::Approx(-kPi / 2.0));
}

TEST_CASE("syntax errors report line and column") {
    const std::string bad = "{\n  \"kappa_hz\": 10e6,\n  \"gamma_m_hz\": ,\n}";
    try {
        parse_params(bad);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
}

TEST_CASE("missing, unknown and non-numeric keys are rejected") {
    std::string missing = kBaseline;
    missing.replace(missing.find("  \"g0_hz\": 100,\n"), 16, "");
    CHECK_THROWS_AS(parse_params(missing), ConfigError);

    std::string unknown = kBaseline;
    unknown.replace(unknown.find("{"), 1, "{\"mass_kg\": 1,");
    CHECK_THROWS_AS(parse_params(unknown), ConfigError);

    std::string text = kBaseline;
    text.replace(text.find("700e-9"), 6, "\"700n\"");
    CHECK_THROWS_AS(parse_params(text), ConfigError);

    CHECK_THROWS_AS(parse_params("[1, 2]"), ConfigError);
}

TEST_CASE("ingested configs survive dump and re-parse bit-identically") {
    CHECK(parse_params(dump_params(baseline_params())) == baseline_params());

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        nlohmann::json doc;
        doc["kappa_hz"] = 1e3 + 1e9 * u(rng);
        doc["gamma_m_hz"] = 1e-1 + 1e5 * u(rng);
        doc["omega_m_hz"] = 1e3 + 1e9 * u(rng);
        doc["omega_l_hz"] = 1e14 + 1e15 * u(rng);
        doc["g0_hz"] = 1e3 * u(rng);
        doc["G_hz"] = 1e8 * u(rng);
        doc["theta_rad"] = 10.0 * (u(rng) - 0.5);
        doc["delta_hz"] = 1e8 * (u(rng) - 0.5);
        doc["p_in_w"] = 1e-6 * u(rng);
        doc["temperature_k"] = 300.0 * u(rng);
        const SystemParams p = parse_params(doc.dump());
        CHECK(parse_params(dump_params(p)) == p);
    }
}

TEST_CASE("angular_to_hz inverts hz_to_angular") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const double w = hz_to_angular(std::exp(u(rng)));
        CHECK(hz_to_angular(angular_to_hz(w)) == w);
    }
    CHECK(angular_to_hz(0.0) == 0.0);
}

TEST_CASE("load_params reports unreadable files") {
    CHECK_THROWS_AS(load_params("/nonexistent/params.json"), ConfigError);
}
