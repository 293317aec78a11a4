#include "ntn/io/dataset_file.hpp"

#include <stdexcept>

#include "json_util.hpp"
#include "ntn/io/binary_file.hpp"

namespace ntn::io {

using nlohmann::json;

void save_dataset(const models::SymbolDataset& ds, const std::filesystem::path& path) {
  ds.validate();
  json snr = json::array(), seeds = json::array(), cells = json::array(), issb = json::array(),
       chan = json::array();
  for (const auto& m : ds.meta) {
    snr.push_back(detail::snr_json(m.snr_db));
    seeds.push_back(m.seed);
    cells.push_back(m.cell_id);
    issb.push_back(m.issb);
    if (m.profile) {
      chan.push_back({{"cfo_hz", m.profile->cfo_hz},
                      {"integer_delay_samples", m.profile->integer_delay_samples},
                      {"fractional_delay_samples", m.profile->fractional_delay_samples},
                      {"seed", m.profile->seed}});
    } else {
      chan.push_back(nullptr);
    }
  }
  const json header = {{"format", "ntn-dataset"},
                       {"version", 1},
                       {"stage", models::to_string(ds.stage)},
                       {"origin", models::to_string(ds.origin)},
                       {"input_dim", ds.input_dim},
                       {"target_dim", ds.target_dim},
                       {"count", ds.size()},
                       {"seed", ds.seed},
                       {"redraws", ds.redraws},
                       {"rejected", ds.rejected},
                       {"snr_db", snr},
                       {"example_seed", seeds},
                       {"cell_id", cells},
                       {"issb", issb},
                       {"channel", chan}};
  std::vector<double> blob;
  blob.reserve(ds.inputs.size() + ds.targets.size());
  blob.insert(blob.end(), ds.inputs.begin(), ds.inputs.end());
  blob.insert(blob.end(), ds.targets.begin(), ds.targets.end());
  write_blob_file(path, kDatasetMagic, header, blob);
}

models::SymbolDataset load_dataset(const std::filesystem::path& path) {
  BlobFile f = read_blob_file(path, kDatasetMagic);
  models::SymbolDataset ds;
  try {
    const json& h = f.header;
    ds.stage = models::parse_stage(h.at("stage").get<std::string>());
    ds.origin = models::parse_origin(h.at("origin").get<std::string>());
    ds.input_dim = h.at("input_dim").get<int>();
    ds.target_dim = h.at("target_dim").get<int>();
    ds.seed = h.at("seed").get<std::uint64_t>();
    ds.redraws = h.value("redraws", 0L);
    ds.rejected = h.value("rejected", 0L);
    const auto count = h.at("count").get<std::size_t>();
    const json& snr = h.at("snr_db");
    const json& seeds = h.at("example_seed");
    const json& cells = h.at("cell_id");
    const json& issb = h.at("issb");
    const json chan = h.value("channel", json::array());
    if (snr.size() != count || seeds.size() != count || cells.size() != count ||
        issb.size() != count) {
      throw std::runtime_error("per-example metadata does not match count");
    }
    const std::size_t n_in = count * static_cast<std::size_t>(ds.input_dim);
    const std::size_t n_tgt = count * static_cast<std::size_t>(ds.target_dim);
    if (f.blob.size() != n_in + n_tgt) {
      throw std::runtime_error("blob holds " + std::to_string(f.blob.size()) + " values, expected " +
                               std::to_string(n_in + n_tgt));
    }
    ds.inputs.assign(f.blob.begin(), f.blob.begin() + static_cast<std::ptrdiff_t>(n_in));
    ds.targets.assign(f.blob.begin() + static_cast<std::ptrdiff_t>(n_in), f.blob.end());
    ds.meta.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      ds.meta[i] = {detail::snr_value(snr[i]), seeds[i].get<std::uint64_t>(),
                    cells[i].get<int>(), issb[i].get<int>(), std::nullopt};
      if (chan.size() == count && !chan[i].is_null()) {
        channel::ChannelProfile p;
        p.snr_db = ds.meta[i].snr_db;
        p.cfo_hz = chan[i].at("cfo_hz").get<double>();
        p.integer_delay_samples = chan[i].at("integer_delay_samples").get<long>();
        p.fractional_delay_samples = chan[i].at("fractional_delay_samples").get<double>();
        p.seed = chan[i].at("seed").get<std::uint64_t>();
        ds.meta[i].profile = p;
      }
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": bad dataset header: " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  ds.validate();
  return ds;
}

}  // namespace ntn::io
