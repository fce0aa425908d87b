#pragma once

#include <cstdint>
#include <string_view>

#include "core/ranksde.hpp"

namespace ranklab {

// Model spec plus the run settings a config file may carry.
struct ModelConfig {
    RankModelSpec spec;
    std::uint64_t seed = 1;
    double burn_in = 0.2;
};

// Plain-text `key = value` configuration. Keys: n, g, s, dt, horizon,
// obs_interval, seed, burn_in. g and s take comma-separated lists or a
// single value broadcast to all ranks. '#' starts a comment. Unknown keys
// are rejected. Defaults: dt = 1/2520, obs_interval = 1/252, seed = 1,
// burn_in = 0.2.
ModelConfig parse_model_config(std::string_view text);

}  // namespace ranklab
