#include "sqcom/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sqcom/constants.hpp"
#include "sqcom/errors.hpp"

namespace sqcom {

namespace {

using nlohmann::json;

struct Key {
    const char* name;
    double SystemParams::*field;
    bool hz;
};

constexpr Key kKeys[] = {
    {"kappa_hz", &SystemParams::kappa, true},     {"gamma_m_hz", &SystemParams::gamma_m, true},
    {"omega_m_hz", &SystemParams::omega_m, true}, {"omega_l_hz", &SystemParams::omega_l, true},
    {"g0_hz", &SystemParams::g0, true},           {"G_hz", &SystemParams::G, true},
    {"theta_rad", &SystemParams::theta, false},   {"delta_hz", &SystemParams::delta, true},
    {"p_in_w", &SystemParams::p_in, false},       {"temperature_k", &SystemParams::temperature, false},
};

void line_column(std::string_view text, std::size_t offset, int& line, int& column) {
    line = 1;
    column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
}

}  // namespace

double hz_to_angular(double nu) { return nu * kTwoPi; }

double angular_to_hz(double omega) {
    double nu = omega / kTwoPi;
    if (!std::isfinite(nu) || hz_to_angular(nu) == omega) return nu;
    double up = nu;
    double down = nu;
    for (int i = 0; i < 8; ++i) {
        up = std::nextafter(up, INFINITY);
        down = std::nextafter(down, -INFINITY);
        if (hz_to_angular(up) == omega) return up;
        if (hz_to_angular(down) == omega) return down;
    }
    return nu;
}

SystemParams parse_params(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        int line = 0;
        int column = 0;
        // byte is 1-based and points one past the offending character.
        line_column(text, e.byte > 0 ? e.byte - 1 : 0, line, column);
        std::ostringstream os;
        os << "config parse error at line " << line << ", column " << column << ": " << e.what();
        throw ConfigError(os.str(), line, column);
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    SystemParams p;
    for (const Key& key : kKeys) {
        auto it = doc.find(key.name);
        if (it == doc.end()) throw ConfigError(std::string("missing config key '") + key.name + "'");
        if (!it->is_number()) throw ConfigError(std::string("config key '") + key.name + "' must be a number");
        const double value = it->get<double>();
        p.*key.field = key.hz ? hz_to_angular(value) : value;
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        bool known = false;
        for (const Key& key : kKeys) known = known || it.key() == key.name;
        if (!known) throw ConfigError("unknown config key '" + it.key() + "'");
    }
    p.theta = normalize_angle(p.theta);
    return p;
}

SystemParams load_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_params(buffer.str());
}

std::string dump_params(const SystemParams& p) {
    json doc = json::object();
    for (const Key& key : kKeys) {
        const double value = p.*key.field;
        doc[key.name] = key.hz ? angular_to_hz(value) : value;
    }
    return doc.dump(2);
}

}  // namespace sqcom
