#include "ntn/io/binary_file.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ntn::io {

void write_blob_file(const std::filesystem::path& path, std::string_view magic,
                     const nlohmann::json& header, std::span<const double> blob) {
  if (magic.size() != 8) throw std::invalid_argument("magic must be 8 bytes");
  const std::string text = header.dump();
  const std::uint64_t len = text.size();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(magic.data(), 8);
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.write(reinterpret_cast<const char*>(blob.data()),
            static_cast<std::streamsize>(blob.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

BlobFile read_blob_file(const std::filesystem::path& path, std::string_view magic) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto size = static_cast<std::uint64_t>(in.tellg());
  in.seekg(0);
  char got[8] = {};
  std::uint64_t len = 0;
  in.read(got, 8);
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!in || std::memcmp(got, magic.data(), 8) != 0) {
    throw std::runtime_error(path.string() + ": not a " + std::string(magic) + " file");
  }
  if (len > size - 16) throw std::runtime_error(path.string() + ": header length exceeds file");
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  const std::uint64_t rest = size - 16 - len;
  if (rest % sizeof(double) != 0) throw std::runtime_error(path.string() + ": truncated blob");
  BlobFile f;
  try {
    f.header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": bad header: " + e.what());
  }
  f.blob.resize(rest / sizeof(double));
  in.read(reinterpret_cast<char*>(f.blob.data()), static_cast<std::streamsize>(rest));
  if (!in) throw std::runtime_error("read failed: " + path.string());
  return f;
}

}  // namespace ntn::io
