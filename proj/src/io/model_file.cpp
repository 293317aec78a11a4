#include "ntn/io/model_file.hpp"

#include <stdexcept>

#include "json_util.hpp"
#include "ntn/io/binary_file.hpp"

namespace ntn::io {

using nlohmann::json;

namespace {

json doubles(const std::vector<double>& v) {
  json a = json::array();
  for (const double x : v) a.push_back(x);
  return a;
}

}  // namespace

void save_model(const models::TrainedModel& model, const std::filesystem::path& path) {
  model.mlp.validate();
  json snrs = json::array();
  for (const double s : model.train_snrs) snrs.push_back(detail::snr_json(s));
  const auto& tc = model.train_config;
  const json header = {
      {"format", "ntn-mlp"},
      {"version", 1},
      {"layer_dims", model.mlp.dims()},
      {"K", model.mlp.hidden_width()},
      {"hidden_activation", "tanh"},
      {"output_activation", "identity"},
      {"stage", models::to_string(model.stage)},
      {"layout", models::to_string(model.layout)},
      {"scheme", model.scheme},
      {"train_snr_db", snrs},
      {"seed", model.seed},
      {"train_config",
       {{"learning_rate", tc.learning_rate},
        {"batch_size", tc.batch_size},
        {"epochs", tc.epochs},
        {"adam_beta1", tc.adam_beta1},
        {"adam_beta2", tc.adam_beta2},
        {"adam_eps", tc.adam_eps},
        {"seed", tc.seed},
        {"validation_fraction", tc.validation_fraction}}},
      {"curve",
       {{"initial_train_mse", model.curve.initial_train_mse},
        {"initial_val_mse", model.curve.initial_val_mse},
        {"train_mse", doubles(model.curve.train_mse)},
        {"val_mse", doubles(model.curve.val_mse)}}}};
  std::vector<double> blob;
  blob.reserve(model.mlp.parameter_count());
  for (const auto& layer : model.mlp.layers()) {
    for (Eigen::Index r = 0; r < layer.w.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.w.cols(); ++c) blob.push_back(layer.w(r, c));
    }
    blob.insert(blob.end(), layer.b.data(), layer.b.data() + layer.b.size());
  }
  write_blob_file(path, kModelMagic, header, blob);
}

models::TrainedModel load_model(const std::filesystem::path& path) {
  BlobFile f = read_blob_file(path, kModelMagic);
  models::TrainedModel m;
  try {
    const json& h = f.header;
    if (h.at("hidden_activation") != "tanh" || h.at("output_activation") != "identity") {
      throw std::runtime_error("unsupported activations");
    }
    const auto dims = h.at("layer_dims").get<std::vector<int>>();
    if (dims.size() < 2) throw std::runtime_error("layer_dims needs at least two entries");
    m.mlp = nn::MlpModel(dims);
    std::size_t pos = 0;
    for (auto& layer : m.mlp.layers()) {
      const std::size_t need =
          static_cast<std::size_t>(layer.w.size()) + static_cast<std::size_t>(layer.b.size());
      if (pos + need > f.blob.size()) throw std::runtime_error("weight blob too short");
      for (Eigen::Index r = 0; r < layer.w.rows(); ++r) {
        for (Eigen::Index c = 0; c < layer.w.cols(); ++c) layer.w(r, c) = f.blob[pos++];
      }
      for (Eigen::Index i = 0; i < layer.b.size(); ++i) layer.b(i) = f.blob[pos++];
    }
    if (pos != f.blob.size()) throw std::runtime_error("weight blob has trailing values");
    m.stage = models::parse_stage(h.at("stage").get<std::string>());
    m.layout = models::parse_layout(h.at("layout").get<std::string>());
    m.scheme = h.value("scheme", std::string{});
    for (const auto& s : h.at("train_snr_db")) m.train_snrs.push_back(detail::snr_value(s));
    m.seed = h.at("seed").get<std::uint64_t>();
    const json& tc = h.at("train_config");
    m.train_config.learning_rate = tc.at("learning_rate").get<double>();
    m.train_config.batch_size = tc.at("batch_size").get<int>();
    m.train_config.epochs = tc.at("epochs").get<int>();
    m.train_config.adam_beta1 = tc.at("adam_beta1").get<double>();
    m.train_config.adam_beta2 = tc.at("adam_beta2").get<double>();
    m.train_config.adam_eps = tc.at("adam_eps").get<double>();
    m.train_config.seed = tc.at("seed").get<std::uint64_t>();
    m.train_config.validation_fraction = tc.at("validation_fraction").get<double>();
    const json& c = h.at("curve");
    m.curve.initial_train_mse = c.at("initial_train_mse").get<double>();
    m.curve.initial_val_mse = c.at("initial_val_mse").get<double>();
    m.curve.train_mse = c.at("train_mse").get<std::vector<double>>();
    m.curve.val_mse = c.at("val_mse").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": bad model header: " + e.what());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  m.mlp.validate();
  const auto want = models::layout_dims(m.stage, m.layout);
  if (m.mlp.input_dim() != want.input_dim || m.mlp.output_dim() != want.output_dim) {
    throw std::runtime_error(path.string() + ": layer_dims do not match stage/layout");
  }
  return m;
}

}  // namespace ntn::io
