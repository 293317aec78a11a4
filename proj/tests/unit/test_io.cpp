#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ntn/io/capture.hpp"
#include "ntn/io/dataset_file.hpp"
#include "ntn/io/model_file.hpp"
#include "ntn/io/reports.hpp"
#include "ntn/models/regenerate.hpp"

using namespace ntn;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ntn_test_io";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

io::CaptureMeta meta_3m84() { return {3.84e6, 2029.25e6, 2029.2e6, 70.0, "2024-01-01T00:00:00Z"}; }

}  // namespace

TEST_CASE("IQ file") {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g(0.0, 3.0);
  IqFrame f;
  f.sample_rate_hz = 3.84e6;
  for (int i = 0; i < 100000; ++i) f.samples.emplace_back(g(rng), g(rng));
  const auto path = scratch("roundtrip.iq");
  io::write_iq(f, meta_3m84(), path);
  CHECK(fs::file_size(path) == 100000 * 8);

  const auto cap = io::read_iq(path);
  REQUIRE(cap.frame.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto ulp = [](double v) {
      const float x = static_cast<float>(v);
      return static_cast<double>(std::nextafter(std::abs(x), INFINITY) - std::abs(x));
    };
    REQUIRE(std::abs(cap.frame.samples[i].real() - f.samples[i].real()) <= ulp(f.samples[i].real()));
    REQUIRE(std::abs(cap.frame.samples[i].imag() - f.samples[i].imag()) <= ulp(f.samples[i].imag()));
  }
  CHECK(cap.meta.offset_hz() == doctest::Approx(50e3));
  CHECK(cap.frame.center_freq_hz == 2029.2e6);
  CHECK(cap.meta.timestamp == "2024-01-01T00:00:00Z");

  SUBCASE("odd number of floats") {
    const auto bad = scratch("odd.iq");
    fs::copy_file(io::sidecar_path(path), io::sidecar_path(bad), fs::copy_options::overwrite_existing);
    std::ofstream(bad, std::ios::binary).write(slurp(path).data(), 12);
    CHECK_THROWS_AS(io::read_iq(bad), std::runtime_error);
  }
  SUBCASE("missing sidecar") {
    const auto lone = scratch("lone.iq");
    fs::copy_file(path, lone, fs::copy_options::overwrite_existing);
    fs::remove(io::sidecar_path(lone));
    CHECK_THROWS_AS(io::read_iq(lone), std::runtime_error);
  }
  SUBCASE("invalid sidecar") {
    const auto broken = scratch("broken.iq");
    fs::copy_file(path, broken, fs::copy_options::overwrite_existing);
    std::ofstream(io::sidecar_path(broken)) << R"({"sample_rate_hz": -1, "center_freq_hz": 0})";
    CHECK_THROWS_AS(io::read_iq(broken), std::invalid_argument);
    std::ofstream(io::sidecar_path(broken)) << "{not json";
    CHECK_THROWS_AS(io::read_iq(broken), std::runtime_error);
  }
}

TEST_CASE("capture ingestion") {
  io::CaptureSpec spec;
  spec.count = 6;
  spec.snr_db = 15.0;
  spec.carrier_offset_hz = 50e3;
  spec.seed = 3;
  spec.burst.offset = 2000;
  const auto syn = io::synthesize_capture(spec);
  CHECK(syn.capture.meta.offset_hz() == doctest::Approx(50e3));
  CHECK(syn.capture.frame.size() == 6 * 76800);

  const auto path = scratch("capture.iq");
  io::write_iq(syn.capture.frame, syn.capture.meta, path);
  const auto cap = io::read_iq(path);

  rx::SyncConfig sc;
  SUBCASE("50 kHz is removed before sync") {
    const auto starts = io::locate_bursts(io::derotate_capture(cap), sc);
    REQUIRE(starts.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) CHECK(std::abs(starts[k] - syn.truth[k].start) <= 2);

    const auto frames = io::split_capture(cap, sc);
    REQUIRE(frames.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
      const auto o = models::label_received_frame(frames[k]);
      REQUIRE(o.rx);
      CHECK(o.accepted);
      CHECK(o.rx->cell.id() == syn.truth[k].cell_id);
      REQUIRE(o.rx->decode.mib);
      CHECK(*o.rx->decode.mib == syn.truth[k].mib);
    }
  }
  SUBCASE("without derotation the offset is more than three subcarriers") {
    int found = 0;
    for (const long s : io::locate_bursts(cap.frame, sc)) {
      try {
        const auto r = rx::receive_burst(io::cut_burst(cap.frame, s, sc.ofdm, 256));
        found += r.decode.crc_pass;
      } catch (const rx::SyncError&) {
      }
    }
    CHECK(found == 0);
  }
  SUBCASE("bursts at the start of a period are all found once") {
    io::CaptureSpec edge = spec;
    edge.burst.offset = 100;
    edge.burst.apply_delay = false;
    edge.carrier_offset_hz = 0.0;
    const auto e = io::synthesize_capture(edge);
    const auto starts = io::locate_bursts(e.capture.frame, sc);
    REQUIRE(starts.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) CHECK(starts[k] == e.truth[k].start);
  }
  CHECK(io::ofdm_for_rate(7.68e6).fft_size == 512);
  CHECK_THROWS_AS(io::ofdm_for_rate(5e6), std::invalid_argument);
}

TEST_CASE("dataset file") {
  models::DatasetSpec spec;
  spec.stage = models::DatasetStage::post_sync;
  spec.snr_grid = {channel::kNoNoise, 10.0};
  spec.n_examples = 6;
  spec.seed = 4;
  const auto ds = models::build_synthetic_dataset(spec);
  const auto path = scratch("ds.ntnds");
  io::save_dataset(ds, path);
  CHECK(slurp(path).substr(0, 8) == "NTNDSET1");

  const auto back = io::load_dataset(path);
  CHECK(back.stage == ds.stage);
  CHECK(back.input_dim == 1152);
  CHECK(back.inputs == ds.inputs);
  CHECK(back.targets == ds.targets);
  REQUIRE(back.size() == ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    CHECK(back.meta[i].snr_db == ds.meta[i].snr_db);
    CHECK(back.meta[i].seed == ds.meta[i].seed);
    CHECK(back.meta[i].cell_id == ds.meta[i].cell_id);
    REQUIRE(back.meta[i].profile);
    CHECK(back.meta[i].profile->cfo_hz == ds.meta[i].profile->cfo_hz);
    CHECK(back.meta[i].profile->integer_delay_samples == ds.meta[i].profile->integer_delay_samples);
  }
  const auto again = scratch("ds2.ntnds");
  io::save_dataset(back, again);
  CHECK(slurp(path) == slurp(again));

  std::ofstream(scratch("bad.ntnds"), std::ios::binary) << "NTNMLP01garbage";
  CHECK_THROWS_AS(io::load_dataset(scratch("bad.ntnds")), std::runtime_error);
  const std::string full = slurp(path);
  std::ofstream(scratch("cut.ntnds"), std::ios::binary) << full.substr(0, full.size() - 8);
  CHECK_THROWS_AS(io::load_dataset(scratch("cut.ntnds")), std::runtime_error);
}

TEST_CASE("model file") {
  models::TrainedModel m;
  m.stage = models::DatasetStage::post_mmse;
  m.layout = models::RowLayout::symbol;
  m.mlp = nn::init_mlp(2, 8, 2, 5);
  for (auto& l : m.mlp.layers()) l.b.setConstant(0.25);
  m.scheme = "per_snr";
  m.train_snrs = {20.0};
  m.seed = 99;
  m.curve.initial_train_mse = 1.5;
  m.curve.train_mse = {0.5, 0.25};
  m.curve.val_mse = {0.4, 0.2};
  const auto path = scratch("m.ntnm");
  io::save_model(m, path);
  CHECK(slurp(path).substr(0, 8) == "NTNMLP01");

  const auto back = io::load_model(path);
  CHECK(back.mlp == m.mlp);
  CHECK(back.layout == m.layout);
  CHECK(back.train_snrs == m.train_snrs);
  CHECK(back.curve.val_mse == m.curve.val_mse);
  const auto again = scratch("m2.ntnm");
  io::save_model(back, again);
  CHECK(slurp(path) == slurp(again));

  // W is stored row-major: the second blob value is W(0, 1).
  const std::string raw = slurp(path);
  std::uint64_t hlen = 0;
  std::memcpy(&hlen, raw.data() + 8, 8);
  double w01 = 0.0;
  std::memcpy(&w01, raw.data() + 16 + hlen + 8, 8);
  CHECK(w01 == m.mlp.layers()[0].w(0, 1));

  models::TrainedModel wrong = m;
  wrong.layout = models::RowLayout::full;
  io::save_model(wrong, scratch("wrong.ntnm"));
  CHECK_THROWS_AS(io::load_model(scratch("wrong.ntnm")), std::runtime_error);
}

TEST_CASE("reports") {
  nn::LearningCurve c;
  c.initial_train_mse = 1.0;
  c.initial_val_mse = 2.0;
  c.train_mse = {0.5};
  c.val_mse = {0.75};
  io::write_learning_curve_csv(c, scratch("curve.csv"));
  CHECK(slurp(scratch("curve.csv")) == "epoch,train_mse,val_mse\n0,1,2\n1,0.5,0.75\n");

  models::EvalPoint p;
  p.snr_db = 20;
  p.mse = 0.125;
  p.bursts = 10;
  io::write_eval_csv({p}, scratch("eval.csv"));
  CHECK(slurp(scratch("eval.csv")) ==
        "snr_db,mse,ber_pre,ber_post,mse_pre,crc_pre,crc_post,bursts\n20,0.125,0,0,0,0,0,10\n");

  io::write_constellation_csv({{5.0, "post_nn", cf64(0.5, -0.25)}}, scratch("const.csv"));
  CHECK(slurp(scratch("const.csv")) == "snr_db,stage,re,im\n5,post_nn,0.5,-0.25\n");

  io::DecodeReport r;
  r.n_cell_id = 12;
  r.sfn = 100;
  r.crc_pass = true;
  r.ber_pre_nn = 0.0;
  r.snr_db = 19.5;
  const auto j = io::to_json(r);
  CHECK(j.at("n_cell_id") == 12);
  CHECK(j.at("sfn") == 100);
  CHECK(j.at("crc_pass") == true);
  CHECK(j.at("ber_post_nn").is_null());
  CHECK(io::format_double(0.1) == "0.1");
}
