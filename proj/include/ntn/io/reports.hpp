#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"
#include "ntn/models/evaluate.hpp"

namespace ntn::io {

/// epoch,train_mse,val_mse ; epoch 0 is the untrained network.
void write_learning_curve_csv(const nn::LearningCurve& curve, const std::filesystem::path& path);

/// snr_db,mse,ber_pre,ber_post,mse_pre,crc_pre,crc_post,bursts
void write_eval_csv(const std::vector<models::EvalPoint>& points, const std::filesystem::path& path);

/// snr_db,stage,re,im
void write_constellation_csv(const std::vector<models::ConstellationPoint>& points,
                             const std::filesystem::path& path);

struct DecodeReport {
  int n_cell_id = -1;
  std::optional<int> sfn;  // empty when the CRC failed
  bool crc_pass = false;
  std::optional<double> ber_pre_nn;
  std::optional<double> ber_post_nn;
  double snr_db = 0.0;
};

nlohmann::json to_json(const DecodeReport& r);
void write_decode_json(const std::vector<DecodeReport>& reports, const std::filesystem::path& path);

/// Shortest text that reads back to the same double.
std::string format_double(double x);

}  // namespace ntn::io
