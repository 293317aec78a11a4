#include "ntn/io/reports.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#include "json_util.hpp"

namespace ntn::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void write_learning_curve_csv(const nn::LearningCurve& curve, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "epoch,train_mse,val_mse\n";
  out << 0 << ',' << format_double(curve.initial_train_mse) << ','
      << format_double(curve.initial_val_mse) << '\n';
  for (std::size_t e = 0; e < curve.train_mse.size(); ++e) {
    out << e + 1 << ',' << format_double(curve.train_mse[e]) << ','
        << (e < curve.val_mse.size() ? format_double(curve.val_mse[e]) : "") << '\n';
  }
}

void write_eval_csv(const std::vector<models::EvalPoint>& points, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "snr_db,mse,ber_pre,ber_post,mse_pre,crc_pre,crc_post,bursts\n";
  for (const auto& p : points) {
    out << format_double(p.snr_db) << ',' << format_double(p.mse) << ','
        << format_double(p.ber_pre) << ',' << format_double(p.ber_post) << ','
        << format_double(p.mse_pre) << ',' << format_double(p.crc_pre) << ','
        << format_double(p.crc_post) << ',' << p.bursts << '\n';
  }
}

void write_constellation_csv(const std::vector<models::ConstellationPoint>& points,
                             const std::filesystem::path& path) {
  auto out = open_out(path);
  out << "snr_db,stage,re,im\n";
  for (const auto& p : points) {
    out << format_double(p.snr_db) << ',' << p.stage << ',' << format_double(p.value.real())
        << ',' << format_double(p.value.imag()) << '\n';
  }
}

nlohmann::json to_json(const DecodeReport& r) {
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return {{"n_cell_id", r.n_cell_id},     {"sfn", opt(r.sfn)},
          {"crc_pass", r.crc_pass},       {"ber_pre_nn", opt(r.ber_pre_nn)},
          {"ber_post_nn", opt(r.ber_post_nn)}, {"snr_db", detail::snr_json(r.snr_db)}};
}

void write_decode_json(const std::vector<DecodeReport>& reports, const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  auto out = open_out(path);
  out << arr.dump(2) << '\n';
}

}  // namespace ntn::io
