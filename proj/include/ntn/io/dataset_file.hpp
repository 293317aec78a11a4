#pragma once

#include <filesystem>

#include "ntn/models/dataset.hpp"

namespace ntn::io {

inline constexpr std::string_view kDatasetMagic = "NTNDSET1";

/// Header: stage, origin, dims, count, seed, redraw/reject counts and
/// per-example (snr_db, seed, cell_id, issb). Blob: all inputs then all
/// targets, row-major.
void save_dataset(const models::SymbolDataset& ds, const std::filesystem::path& path);
models::SymbolDataset load_dataset(const std::filesystem::path& path);

}  // namespace ntn::io
