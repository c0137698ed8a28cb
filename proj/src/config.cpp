#include "fisdim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include <json.hpp>

namespace fisdim::config {

namespace {

std::string join(const std::vector<FieldError>& errs) {
    std::ostringstream os;
    os << "invalid config:";
    for (const auto& e : errs) os << " [" << e.field << ": " << e.reason << "]";
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errs)
    : Error(join(errs)), errors(std::move(errs)) {}

Config parse(const std::string& text) {
    std::vector<FieldError> errs;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        errs.push_back({"<root>", e.what()});
        throw ConfigError(std::move(errs));
    }

    Config cfg;
    const auto require = [&](const char* key) -> const nlohmann::json* {
        if (!j.contains(key)) {
            errs.push_back({key, "missing required field"});
            return nullptr;
        }
        return &j.at(key);
    };

    if (const auto* v = require("n_axis")) {
        if (!v->is_number_integer())
            errs.push_back({"n_axis", "must be an integer"});
        else
            cfg.n_axis = v->get<int>();
    }
    if (const auto* v = require("domain")) {
        if (!v->is_array() || v->size() != 4 ||
            !std::all_of(v->begin(), v->end(), [](const auto& e) { return e.is_number(); })) {
            errs.push_back({"domain", "must be [x0, xN, y0, yN]"});
        } else {
            cfg.x0 = (*v)[0].get<double>();
            cfg.xN = (*v)[1].get<double>();
            cfg.y0 = (*v)[2].get<double>();
            cfg.yN = (*v)[3].get<double>();
        }
    }
    if (const auto* v = require("z")) {
        if (!v->is_array()) {
            errs.push_back({"z", "must be a 2D array"});
        } else {
            for (const auto& row : *v) {
                if (!row.is_array() ||
                    !std::all_of(row.begin(), row.end(), [](const auto& e) { return e.is_number(); })) {
                    errs.push_back({"z", "rows must be numeric arrays"});
                    break;
                }
                cfg.z.push_back(row.get<std::vector<double>>());
            }
        }
    }
    for (const char* key : {"S", "g", "h"}) {
        if (const auto* v = require(key)) {
            if (!v->is_string())
                errs.push_back({key, "must be an expression string"});
            else {
                const std::string s = v->get<std::string>();
                if (key[0] == 'S') cfg.S = s;
                else if (key[0] == 'g') cfg.g = s;
                else cfg.h = s;
            }
        }
    }
    const auto opt_num = [&](const char* key, auto& slot) {
        if (!j.contains(key)) return;
        const auto& v = j.at(key);
        using T = typename std::decay_t<decltype(slot)>::value_type;
        if constexpr (std::is_integral_v<T>) {
            if (!v.is_number_integer()) {
                errs.push_back({key, "must be an integer"});
                return;
            }
        } else {
            if (!v.is_number()) {
                errs.push_back({key, "must be a number"});
                return;
            }
        }
        slot = v.get<T>();
    };
    opt_num("lambda_S", cfg.lambda_S);
    opt_num("lambda_q", cfg.lambda_q);
    opt_num("refine", cfg.refine);
    opt_num("eval_level", cfg.eval_level);
    opt_num("n_max", cfg.n_max);
    opt_num("tol", cfg.tol);

    if (!errs.empty()) throw ConfigError(std::move(errs));

    // structural constraints
    if (cfg.n_axis < 2) errs.push_back({"n_axis", "N must be >= 2 (the theory requires N=M >= 2)"});
    if (!(cfg.x0 < cfg.xN)) errs.push_back({"domain", "x0 must be < xN"});
    if (!(cfg.y0 < cfg.yN)) errs.push_back({"domain", "y0 must be < yN"});
    if (cfg.x0 < cfg.xN && cfg.y0 < cfg.yN &&
        std::abs((cfg.xN - cfg.x0) - (cfg.yN - cfg.y0)) > 1e-12 * (cfg.xN - cfg.x0))
        errs.push_back({"domain", "domain must be square: the assumptions N=M >= 2 and |I|=|J| are required"});
    const std::size_t want = static_cast<std::size_t>(cfg.n_axis) + 1;
    if (cfg.z.size() != want)
        errs.push_back({"z", "z must be (N+1)x(N+1)"});
    else
        for (const auto& row : cfg.z)
            if (row.size() != want) {
                errs.push_back({"z", "z must be (N+1)x(N+1)"});
                break;
            }
    for (const auto& [key, text] : {std::pair<const char*, const std::string&>{"S", cfg.S},
                                    {"g", cfg.g},
                                    {"h", cfg.h}}) {
        try {
            expr::parse(text);
        } catch (const ParseError& e) {
            errs.push_back({key, e.what()});
        }
    }
    if (cfg.refine && (*cfg.refine < 0 || *cfg.refine > 8))
        errs.push_back({"refine", "must be in [0, 8]"});
    if (cfg.eval_level && (*cfg.eval_level < 1))
        errs.push_back({"eval_level", "must be >= 1"});
    if (cfg.n_max && (*cfg.n_max < 1)) errs.push_back({"n_max", "must be >= 1"});
    if (cfg.tol && !(*cfg.tol > 0.0)) errs.push_back({"tol", "must be positive"});

    if (!errs.empty()) throw ConfigError(std::move(errs));
    return cfg;
}

Config load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError({{"<file>", "cannot open " + path}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

fif::FisSystem make_system(const Config& cfg) {
    fif::FisSystem sys{
        grid::NodeGrid(cfg.n_axis, cfg.x0, cfg.xN, cfg.y0, cfg.yN, cfg.z),
        expr::parse(cfg.S),
        expr::parse(cfg.g),
        expr::parse(cfg.h),
    };
    sys.lambda_S_override = cfg.lambda_S;
    sys.lambda_q_override = cfg.lambda_q;
    return sys;
}

}  // namespace fisdim::config
