#include "mtsep/params.hpp"

#include "mtsep/errors.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>

namespace mtsep {

namespace {

constexpr double kWeightSumTol = 1e-12;

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw ValidationError(message);
    }
}

std::string type_label(std::size_t k) {
    return "type " + std::to_string(k + 1);
}

} // namespace

SystemParams validate(const SystemParams& params, Strictness strictness) {
    require(params.n_cells >= 1, "n_cells must be at least 1");
    require(params.num_types() >= 1, "at least one particle type is required");

    const bool strict = strictness == Strictness::strict;
    require(std::isfinite(params.alpha), "alpha must be finite");
    if (strict) {
        require(params.alpha > 0.0 && params.alpha < 1.0, "alpha out of open interval (0,1)");
    } else {
        require(params.alpha >= 0.0 && params.alpha <= 1.0, "alpha out of [0,1]");
    }

    double weight_sum = 0.0;
    for (std::size_t k = 0; k < params.types.size(); ++k) {
        const TypeSpec& t = params.types[k];
        require(std::isfinite(t.arrival_weight) && std::isfinite(t.hop_prob) &&
                    std::isfinite(t.exit_prob),
                type_label(k) + ": probabilities must be finite");
        require(t.arrival_weight > 0.0 && t.arrival_weight <= 1.0,
                type_label(k) + ": arrival weight out of (0,1]");
        if (strict) {
            require(t.hop_prob > 0.0 && t.hop_prob <= 1.0,
                    type_label(k) + ": hop probability out of (0,1]");
            require(t.exit_prob > 0.0 && t.exit_prob <= 1.0,
                    type_label(k) + ": exit probability out of (0,1]");
        } else {
            require(t.hop_prob >= 0.0 && t.hop_prob <= 1.0,
                    type_label(k) + ": hop probability out of [0,1]");
            require(t.exit_prob >= 0.0 && t.exit_prob <= 1.0,
                    type_label(k) + ": exit probability out of [0,1]");
        }
        weight_sum += t.arrival_weight;
    }
    require(std::abs(weight_sum - 1.0) <= kWeightSumTol,
            "arrival weights must sum to 1");
    if (params.num_types() == 1) {
        require(std::abs(params.types[0].arrival_weight - 1.0) <= kWeightSumTol,
                "single-type arrival weight must be 1");
    }
    return params;
}

double parse_probability(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num_str = text.substr(0, slash);
        const std::string den_str = text.substr(slash + 1);
        std::size_t used = 0;
        std::int64_t num = 0;
        std::int64_t den = 0;
        try {
            num = std::stoll(num_str, &used);
            if (used != num_str.size()) throw std::invalid_argument(text);
            den = std::stoll(den_str, &used);
            if (used != den_str.size()) throw std::invalid_argument(text);
        } catch (const std::exception&) {
            throw ValidationError("malformed rational \"" + text + "\"");
        }
        if (den <= 0 || num < 0) {
            throw ValidationError("malformed rational \"" + text + "\"");
        }
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("malformed probability \"" + text + "\"");
    }
    if (used != text.size()) {
        throw ValidationError("malformed probability \"" + text + "\"");
    }
    return value;
}

} // namespace mtsep
