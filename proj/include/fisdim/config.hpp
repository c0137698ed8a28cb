#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fisdim/fif.hpp"

namespace fisdim::config {

struct FieldError {
    std::string field;
    std::string reason;
};

struct ConfigError : Error {
    explicit ConfigError(std::vector<FieldError> errs);
    std::vector<FieldError> errors;
};

struct Config {
    int n_axis = 0;
    double x0 = 0.0, xN = 0.0, y0 = 0.0, yN = 0.0;
    std::vector<std::vector<double>> z;
    std::string S, g, h;

    std::optional<double> lambda_S;
    std::optional<double> lambda_q;
    std::optional<int> refine;
    std::optional<int> eval_level;
    std::optional<int> n_max;
    std::optional<double> tol;
};

// Strict UTF-8 JSON, no comments. Throws ConfigError with a structured
// (field, reason) list on any violation.
Config load(const std::string& path);
Config parse(const std::string& text);

// Builds the validated system skeleton (expressions parsed, NodeGrid
// constructed, lambda overrides installed). Does not run fif::validate.
fif::FisSystem make_system(const Config& cfg);

}  // namespace fisdim::config
