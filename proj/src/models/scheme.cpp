#include "ntn/models/scheme.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ntn::models {

namespace {

std::string snr_list(const std::vector<double>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

const SymbolDataset& find_dataset(const std::vector<SymbolDataset>& datasets,
                                  const std::vector<double>& snrs) {
  std::vector<double> want = snrs;
  std::sort(want.begin(), want.end());
  want.erase(std::unique(want.begin(), want.end()), want.end());
  for (const auto& ds : datasets) {
    if (ds.distinct_snrs() == want) return ds;
  }
  throw std::invalid_argument("no dataset covering SNR {" + snr_list(want) + "} dB");
}

}  // namespace

TrainedModel train_model(const SymbolDataset& ds, const ModelConfig& mc, const nn::TrainConfig& cfg,
                         const SymbolDataset* validation, const nn::EpochCallback& on_epoch) {
  ds.validate();
  TrainedModel m;
  m.stage = ds.stage;
  m.layout = mc.layout.value_or(default_layout(ds.stage));
  m.scheme = "custom";
  m.train_snrs = ds.distinct_snrs();
  m.seed = cfg.seed;
  m.train_config = cfg;
  const LayoutDims d = layout_dims(ds.stage, m.layout);
  const int k = mc.hidden_width > 0 ? mc.hidden_width : default_hidden_width(m.layout);
  m.mlp = nn::init_mlp(d.input_dim, k, d.output_dim, sub_seed(cfg.seed, 0x1417));

  const nn::TrainData data = to_train_data(ds, m.layout);
  if (validation != nullptr) {
    if (validation->stage != ds.stage)
      throw std::invalid_argument("validation dataset has a different stage");
    const nn::TrainData val = to_train_data(*validation, m.layout);
    m.curve = nn::train(m.mlp, data, cfg, &val, on_epoch);
  } else {
    m.curve = nn::train(m.mlp, data, cfg, nullptr, on_epoch);
  }
  return m;
}

CVec apply_model(const TrainedModel& model, std::span<const double> input, int cell_id) {
  const nn::Matrix rows = example_rows(model.stage, model.layout, input, cell_id);
  return rows_to_symbols(model.layout, model.mlp.forward_batch(rows));
}

std::string to_string(SchemeMode m) {
  switch (m) {
    case SchemeMode::per_snr: return "per_snr";
    case SchemeMode::snr_range: return "snr_range";
    case SchemeMode::fixed_20db: return "fixed_20db";
  }
  return "?";
}

SchemeMode parse_scheme(const std::string& s) {
  if (s == "per_snr") return SchemeMode::per_snr;
  if (s == "snr_range") return SchemeMode::snr_range;
  if (s == "fixed_20db") return SchemeMode::fixed_20db;
  throw std::invalid_argument("unknown scheme '" + s + "' (per_snr | snr_range | fixed_20db)");
}

std::vector<std::vector<double>> scheme_dataset_grids(const TrainScheme& scheme) {
  switch (scheme.mode) {
    case SchemeMode::per_snr: {
      std::vector<std::vector<double>> out;
      for (const double s : scheme.snr_grid) out.push_back({s});
      return out;
    }
    case SchemeMode::snr_range: return {scheme.snr_grid};
    case SchemeMode::fixed_20db: return {{20.0}};
  }
  return {};
}

std::vector<TrainedModel> train_scheme(const std::vector<SymbolDataset>& datasets,
                                       const TrainScheme& scheme, const ModelConfig& mc,
                                       const nn::TrainConfig& cfg,
                                       const nn::EpochCallback& on_epoch) {
  if (scheme.snr_grid.empty()) throw std::invalid_argument("empty SNR grid");
  std::vector<TrainedModel> models;
  for (const auto& grid : scheme_dataset_grids(scheme)) {
    TrainedModel m = train_model(find_dataset(datasets, grid), mc, cfg, nullptr, on_epoch);
    m.scheme = to_string(scheme.mode);
    models.push_back(std::move(m));
  }
  return models;
}

}  // namespace ntn::models
