#pragma once

#include <filesystem>

#include "ntn/models/scheme.hpp"

namespace ntn::io {

inline constexpr std::string_view kModelMagic = "NTNMLP01";

/// Header: layer_dims, activations, stage, layout, scheme, training SNRs,
/// seed, training config and learning curve. Blob: per layer W (row-major)
/// then b. No timestamps, so equal models give equal files.
void save_model(const models::TrainedModel& model, const std::filesystem::path& path);
models::TrainedModel load_model(const std::filesystem::path& path);

}  // namespace ntn::io
