#pragma once

#include "interval_lab/io.hpp"
#include "interval_lab/kg.hpp"

#include <string>

#ifndef INTERVAL_LAB_GOLDEN_DIR
#error "INTERVAL_LAB_GOLDEN_DIR must be defined"
#endif

inline std::string golden_path(const std::string& name) {
    return std::string(INTERVAL_LAB_GOLDEN_DIR) + "/" + name;
}

/// The spline pair produced by the default design configuration.
inline interval_lab::SplinePair golden_design() {
    return interval_lab::spline_pair_from_json(interval_lab::read_text_file(golden_path("design_spline.json")));
}
