#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace pud {

// Published per-dataset parameter settings.
struct ParameterPreset {
    std::string_view name;
    double beta1;
    double beta2;
    int k;
    double alpha;
    double sigma;
};

inline constexpr ParameterPreset kPresets[] = {
    {"corel1k", 0.1, 0.75, 8, 0.95, 2.0},
    {"corel10k", 1.0, 1.65, 8, 0.95, 2.0},
    {"coil100", 1.0, 1.65, 8, 0.95, 2.0},
    {"ukbench", 1.0, 1.0, 8, 0.5, 2.0},
    {"cifar10", 0.1, 0.75, 8, 0.95, 2.0},
};

inline constexpr const ParameterPreset& kDefaultPreset = kPresets[0];

inline std::optional<ParameterPreset> find_preset(std::string_view name) noexcept {
    for (const ParameterPreset& p : kPresets) {
        if (p.name == name) {
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace pud
