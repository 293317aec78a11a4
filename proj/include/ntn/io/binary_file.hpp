#pragma once

#include <filesystem>

#include "json.hpp"

#include "ntn/types.hpp"

namespace ntn::io {

/// Container shared by dataset and model files:
///   8-byte magic | uint64 LE header length | JSON header | float64 LE blob.
struct BlobFile {
  nlohmann::json header;
  std::vector<double> blob;
};

void write_blob_file(const std::filesystem::path& path, std::string_view magic,
                     const nlohmann::json& header, std::span<const double> blob);

/// Checks the magic and that the blob is a whole number of float64 values.
BlobFile read_blob_file(const std::filesystem::path& path, std::string_view magic);

}  // namespace ntn::io
