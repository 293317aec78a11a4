// ntn: command-line front end (gen, decode, dataset, train, eval, selftest).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "ntn/checks/oracles.hpp"
#include "ntn/io/capture.hpp"
#include "ntn/io/dataset_file.hpp"
#include "ntn/io/model_file.hpp"
#include "ntn/io/reports.hpp"
#include "ntn/models/evaluate.hpp"
#include "ntn/models/regenerate.hpp"

namespace fs = std::filesystem;
using namespace ntn;

namespace {

double parse_snr(const std::string& s) {
  if (s == "inf" || s == "none") return channel::kNoNoise;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("bad SNR: " + s);
  return v;
}

std::vector<double> parse_snr_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(parse_snr(item));
  if (out.empty()) throw std::invalid_argument("empty SNR list");
  return out;
}

std::pair<int, int> parse_range(const std::string& s) {
  try {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad range: " + s);
  }
}

std::string snr_label(double snr) {
  return std::isinf(snr) ? std::string("snrinf") : "snr" + io::format_double(snr);
}

std::string grid_label(const std::vector<double>& grid) {
  return grid.size() == 1 ? snr_label(grid.front()) : std::string("range");
}

std::string model_label(const models::TrainedModel& m) {
  if (m.scheme == "snr_range") return "range";
  if (m.scheme == "fixed_20db") return "fixed_20db";
  return grid_label(m.train_snrs);
}

void ensure_dir(const fs::path& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

// Options shared by every command that simulates bursts.
struct BurstOptions {
  bool no_cfo = false;
  bool no_delay = false;
  double max_delay_ms = 1.0;
  bool random_issb = false;
  long offset = 0;

  void add(CLI::App* app) {
    app->add_flag("--no-cfo", no_cfo, "Disable the random carrier frequency offset");
    app->add_flag("--no-delay", no_delay, "Disable the random propagation delay");
    app->add_option("--max-delay-ms", max_delay_ms, "Upper end of the delay window")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--random-issb", random_issb, "Draw the SSB index from 0..3");
    app->add_option("--offset", offset, "Samples of silence before the SSB")
        ->check(CLI::NonNegativeNumber);
  }
  models::BurstConfig config() const {
    models::BurstConfig c;
    c.apply_cfo = !no_cfo;
    c.apply_delay = !no_delay;
    c.delay.max_s = max_delay_ms * 1e-3;
    c.random_issb = random_issb;
    c.offset = offset;
    return c;
  }
};

struct TrainOptions {
  int epochs = 40;
  int batch = 50;
  double lr = 1e-3;
  double val_fraction = 0.1;
  std::string layout;
  int hidden = 0;
  bool quiet = false;

  void add(CLI::App* app) {
    app->add_option("--epochs", epochs)->check(CLI::NonNegativeNumber);
    app->add_option("--batch", batch)->check(CLI::PositiveNumber);
    app->add_option("--lr", lr)->check(CLI::PositiveNumber);
    app->add_option("--val-fraction", val_fraction)->check(CLI::Range(0.0, 0.9));
    app->add_option("--layout", layout, "full | symbol | local (default per stage)");
    app->add_option("--hidden", hidden, "Hidden width K (default per layout)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("-q,--quiet", quiet, "No per-epoch output");
  }
  nn::TrainConfig train_config(std::uint64_t seed) const {
    nn::TrainConfig c;
    c.epochs = epochs;
    c.batch_size = batch;
    c.learning_rate = lr;
    c.validation_fraction = val_fraction;
    c.seed = seed;
    return c;
  }
  models::ModelConfig model_config() const {
    models::ModelConfig mc;
    if (!layout.empty()) mc.layout = models::parse_layout(layout);
    mc.hidden_width = hidden;
    return mc;
  }
  nn::EpochCallback callback() const {
    if (quiet) return {};
    return [](int epoch, double tr, double val) {
      std::printf("  epoch %3d  train %.6g  val %.6g\n", epoch, tr, val);
      std::fflush(stdout);
    };
  }
};

rx::RxConfig rx_config_for(double sample_rate_hz) {
  rx::RxConfig c;
  c.sync.ofdm = io::ofdm_for_rate(sample_rate_hz);
  return c;
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string out;
  int count = 1;
  std::string snr = "inf";
  std::string cells = "0:1007";
  std::string sfn = "0:1023";
  double carrier_offset = 0.0;
  double center_freq = 2029.25e6;
  double gain_db = 0.0;
  std::string timestamp;
  std::string stage;
  BurstOptions burst;
};

void run_gen(const GenArgs& a, std::uint64_t seed) {
  const double snr = parse_snr(a.snr);
  if (!a.stage.empty()) {
    models::DatasetSpec spec;
    spec.stage = models::parse_stage(a.stage);
    spec.snr_grid = {snr};
    spec.n_examples = a.count;
    spec.seed = seed;
    spec.burst = a.burst.config();
    const auto ds = models::build_synthetic_dataset(spec);
    io::save_dataset(ds, a.out);
    std::printf("dataset %s: %zu examples, stage %s, %ld redraws\n", a.out.c_str(), ds.size(),
                a.stage.c_str(), ds.redraws);
    return;
  }
  io::CaptureSpec spec;
  spec.count = a.count;
  spec.snr_db = snr;
  std::tie(spec.cell_min, spec.cell_max) = parse_range(a.cells);
  std::tie(spec.sfn_first, spec.sfn_last) = parse_range(a.sfn);
  spec.center_freq_hz = a.center_freq;
  spec.carrier_offset_hz = a.carrier_offset;
  spec.gain_db = a.gain_db;
  spec.timestamp = a.timestamp;
  spec.seed = seed;
  spec.burst = a.burst.config();
  const auto cap = io::synthesize_capture(spec);
  io::write_iq(cap.capture.frame, cap.capture.meta, a.out);

  nlohmann::json truth = nlohmann::json::array();
  for (const auto& t : cap.truth) {
    truth.push_back({{"start_sample", t.start},
                     {"n_cell_id", t.cell_id},
                     {"sfn", t.mib.sfn},
                     {"issb", t.issb},
                     {"cfo_hz", t.profile.cfo_hz},
                     {"integer_delay_samples", t.profile.integer_delay_samples},
                     {"fractional_delay_samples", t.profile.fractional_delay_samples}});
  }
  std::ofstream(a.out + ".truth.json") << truth.dump(2) << '\n';
  std::printf("IQ %s: %d bursts, %zu samples at %.0f Hz, carrier offset %.0f Hz\n", a.out.c_str(),
              a.count, cap.capture.frame.size(), cap.capture.frame.sample_rate_hz,
              a.carrier_offset);
}

// ---------------------------------------------------------------- decode

struct DecodeArgs {
  std::string in;
  std::string meta;
  std::string model;
  std::string out;
  double period_ms = 20.0;
};

int run_decode(const DecodeArgs& a) {
  const io::IqCapture cap = a.meta.empty() ? io::read_iq(a.in) : io::read_iq(a.in, a.meta);
  const rx::RxConfig rxc = rx_config_for(cap.meta.sample_rate_hz);
  std::optional<models::TrainedModel> model;
  if (!a.model.empty()) model = io::load_model(a.model);

  const auto frames = io::split_capture(cap, rxc.sync, a.period_ms * 1e-3);
  std::vector<io::DecodeReport> reports;
  for (const auto& f : frames) {
    const auto o = models::label_received_frame(f, rxc);
    if (!o.rx) continue;
    io::DecodeReport r;
    r.n_cell_id = o.rx->cell.id();
    r.crc_pass = o.rx->decode.crc_pass;
    if (o.rx->decode.mib) r.sfn = o.rx->decode.mib->sfn;
    r.snr_db = models::estimated_snr_db(*o.rx);
    if (o.labels) {
      const Bits truth = rx::qpsk_demod_hard(*o.labels);
      r.ber_pre_nn = rx::compute_ber(truth, rx::qpsk_demod_hard(o.rx->post_mmse.symbols));
      if (model) {
        const CVec out = models::apply_model(*model, models::stage_input(*o.rx, model->stage),
                                             o.rx->cell.id());
        r.ber_post_nn = rx::compute_ber(truth, rx::qpsk_demod_hard(out));
      }
    }
    reports.push_back(r);
  }
  int pass = 0;
  for (const auto& r : reports) {
    pass += r.crc_pass;
    std::printf("cell %4d  sfn %5s  crc %s  snr %6.2f dB\n", r.n_cell_id,
                r.sfn ? std::to_string(*r.sfn).c_str() : "-", r.crc_pass ? "pass" : "FAIL",
                r.snr_db);
  }
  std::printf("%zu SSBs found, %d CRC pass\n", reports.size(), pass);
  if (!a.out.empty()) io::write_decode_json(reports, a.out);
  if (reports.empty()) {
    std::fprintf(stderr, "error: no SSB found in %s\n", a.in.c_str());
    return 2;
  }
  return 0;
}

// ---------------------------------------------------------------- dataset

struct DatasetArgs {
  std::string source = "synthetic";
  std::string stage = "post_mmse";
  std::string scheme;
  std::string snr = "20";
  int count = 3024;
  std::vector<std::string> inputs;
  std::string out;
  std::string out_dir = ".";
  double period_ms = 20.0;
  BurstOptions burst;
};

void run_dataset(const DatasetArgs& a, std::uint64_t seed) {
  const auto stage = models::parse_stage(a.stage);
  if (a.source == "captured") {
    if (a.inputs.empty()) throw std::invalid_argument("--input is required for captured data");
    if (a.out.empty()) throw std::invalid_argument("--out is required for captured data");
    std::vector<IqFrame> frames;
    std::optional<rx::RxConfig> rxc;
    for (const auto& path : a.inputs) {
      const auto cap = io::read_iq(path);
      if (!rxc) rxc = rx_config_for(cap.meta.sample_rate_hz);
      auto f = io::split_capture(cap, rxc->sync, a.period_ms * 1e-3);
      frames.insert(frames.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
    }
    auto ds = models::build_captured_dataset(frames, stage, *rxc);
    ds.seed = seed;
    io::save_dataset(ds, a.out);
    std::printf("dataset %s: %zu bursts, %zu accepted, %ld rejected by the CRC gate\n",
                a.out.c_str(), frames.size(), ds.size(), ds.rejected);
    return;
  }
  if (a.source != "synthetic") throw std::invalid_argument("unknown source: " + a.source);

  std::vector<std::pair<std::vector<double>, fs::path>> jobs;
  if (!a.scheme.empty()) {
    models::TrainScheme scheme;
    scheme.mode = models::parse_scheme(a.scheme);
    ensure_dir(a.out_dir);
    for (const auto& g : models::scheme_dataset_grids(scheme)) {
      jobs.emplace_back(g, fs::path(a.out_dir) / ("dataset_" + grid_label(g) + ".ntnds"));
    }
  } else {
    if (a.out.empty()) throw std::invalid_argument("--out or --scheme is required");
    jobs.emplace_back(parse_snr_list(a.snr), fs::path(a.out));
  }
  for (const auto& [grid, path] : jobs) {
    models::DatasetSpec spec;
    spec.stage = stage;
    spec.snr_grid = grid;
    spec.n_examples = a.count;
    spec.seed = seed;
    spec.burst = a.burst.config();
    const auto ds = models::build_synthetic_dataset(spec);
    io::save_dataset(ds, path);
    std::printf("dataset %s: %zu examples, %ld redraws\n", path.c_str(), ds.size(), ds.redraws);
    std::fflush(stdout);
  }
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::vector<std::string> datasets;
  std::string scheme;
  std::string out;
  std::string out_dir = ".";
  TrainOptions opt;
};

void save_trained(const models::TrainedModel& m, const fs::path& model_path,
                  const fs::path& curve_path) {
  io::save_model(m, model_path);
  io::write_learning_curve_csv(m.curve, curve_path);
  std::printf("model %s (%s, %s, K=%d): final val MSE %.6g\n", model_path.c_str(),
              models::to_string(m.stage).c_str(), models::to_string(m.layout).c_str(),
              m.mlp.hidden_width(), m.curve.val_mse.empty() ? m.curve.initial_val_mse : m.curve.val_mse.back());
}

void run_train(const TrainArgs& a, std::uint64_t seed) {
  std::vector<models::SymbolDataset> data;
  for (const auto& p : a.datasets) data.push_back(io::load_dataset(p));
  const auto cfg = a.opt.train_config(seed);
  const auto mc = a.opt.model_config();
  if (a.scheme.empty()) {
    if (data.size() != 1) throw std::invalid_argument("without --scheme give exactly one dataset");
    auto m = models::train_model(data.front(), mc, cfg, nullptr, a.opt.callback());
    m.scheme = "custom";
    const fs::path out = a.out.empty() ? fs::path(a.out_dir) / "model.ntnm" : fs::path(a.out);
    ensure_dir(out.parent_path());
    fs::path curve = out;
    curve.replace_extension(".curve.csv");
    save_trained(m, out, curve);
    return;
  }
  models::TrainScheme scheme;
  scheme.mode = models::parse_scheme(a.scheme);
  ensure_dir(a.out_dir);
  const auto trained = models::train_scheme(data, scheme, mc, cfg, a.opt.callback());
  for (const auto& m : trained) {
    const std::string label = model_label(m);
    save_trained(m, fs::path(a.out_dir) / ("model_" + label + ".ntnm"),
                 fs::path(a.out_dir) / ("curve_" + label + ".csv"));
  }
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::vector<std::string> models_in;
  std::string untrained_stage;
  std::string dataset;
  std::string snr_grid = "0,2,5,7,10,15,20";
  int bursts = 100;
  int constellation_bursts = 1;
  std::string out_dir = ".";
  BurstOptions burst;
};

void run_eval(const EvalArgs& a, std::uint64_t seed) {
  std::vector<std::pair<std::string, models::TrainedModel>> todo;
  for (const auto& p : a.models_in) todo.emplace_back(fs::path(p).stem().string(), io::load_model(p));
  if (!a.untrained_stage.empty()) {
    models::TrainedModel zero;
    zero.stage = models::parse_stage(a.untrained_stage);
    zero.layout = models::default_layout(zero.stage);
    const auto d = models::layout_dims(zero.stage, zero.layout);
    const int k = models::default_hidden_width(zero.layout);
    zero.mlp = nn::MlpModel({d.input_dim, k, k, k, d.output_dim});
    zero.scheme = "untrained";
    todo.emplace_back("untrained_" + a.untrained_stage, std::move(zero));
  }
  if (todo.empty()) throw std::invalid_argument("give --model or --untrained");
  ensure_dir(a.out_dir);

  if (!a.dataset.empty()) {
    const auto ds = io::load_dataset(a.dataset);
    for (const auto& [name, m] : todo) {
      const auto p = models::evaluate_dataset(m, ds);
      io::write_eval_csv({p}, fs::path(a.out_dir) / ("eval_" + name + ".csv"));
      std::printf("%s on %s: mse %.6g  ber pre %.5g post %.5g  crc pre %.3f post %.3f\n",
                  name.c_str(), a.dataset.c_str(), p.mse, p.ber_pre, p.ber_post, p.crc_pre,
                  p.crc_post);
    }
    return;
  }

  models::EvalConfig ec;
  ec.snr_grid = parse_snr_list(a.snr_grid);
  ec.n_bursts = a.bursts;
  ec.seed = seed;
  ec.burst = a.burst.config();
  ec.constellation_bursts = a.constellation_bursts;
  for (const auto& [name, m] : todo) {
    const auto r = models::evaluate(m, ec);
    io::write_eval_csv(r.points, fs::path(a.out_dir) / ("eval_" + name + ".csv"));
    io::write_constellation_csv(r.constellation,
                                fs::path(a.out_dir) / ("constellation_" + name + ".csv"));
    std::printf("%s\n  snr_db        mse    mse_pre    ber_pre   ber_post  crc_pre crc_post\n",
                name.c_str());
    for (const auto& p : r.points) {
      std::printf("  %6g %10.4g %10.4g %10.4g %10.4g %8.3f %8.3f\n", p.snr_db, p.mse, p.mse_pre,
                  p.ber_pre, p.ber_post, p.crc_pre, p.crc_post);
    }
  }
}

// ---------------------------------------------------------------- selftest

int run_selftest(std::uint64_t seed, bool all) {
  std::vector<checks::CheckResult (*)(std::uint64_t)> list = {
      checks::ber_oracle, checks::gradient_check, checks::codec_round_trip};
  if (all) {
    list.push_back(checks::sync_robustness);
    list.push_back(checks::decoder_margin);
    list.push_back(checks::regeneration_integrity);
  }
  int failed = 0;
  for (auto* f : list) {
    const auto r = f(seed);
    failed += !r.passed;
    std::printf("%s  %-24s %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NR SSB/PBCH link simulator and NN receiver toolkit"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "Seed for all randomness")->capture_default_str();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Synthesize SSB bursts to an IQ file or a dataset");
  g->add_option("-o,--out", gen.out, "Output IQ file (sidecar <out>.json) or dataset")->required();
  g->add_option("-n,--count", gen.count, "Bursts (IQ) or examples (dataset)")->check(CLI::PositiveNumber);
  g->add_option("--snr", gen.snr, "SNR in dB, or inf");
  g->add_option("--cell-id", gen.cells, "Cell id or range lo:hi");
  g->add_option("--sfn", gen.sfn, "SFN range lo:hi, stepped by 2 per burst");
  g->add_option("--carrier-offset", gen.carrier_offset, "Carrier minus tuned frequency, Hz");
  g->add_option("--center-freq", gen.center_freq, "Carrier frequency, Hz");
  g->add_option("--gain-db", gen.gain_db, "Recorded in the sidecar");
  g->add_option("--timestamp", gen.timestamp, "Recorded in the sidecar");
  g->add_option("--stage", gen.stage, "post_mmse | post_sync: write a dataset instead of IQ");
  gen.burst.add(g);

  DecodeArgs dec;
  auto* d = app.add_subcommand("decode", "Run the classical receiver on an IQ file");
  d->add_option("-i,--input", dec.in, "IQ file")->required()->check(CLI::ExistingFile);
  d->add_option("--meta", dec.meta, "Sidecar (default <input>.json)");
  d->add_option("-m,--model", dec.model, "Also report BER after this model");
  d->add_option("-o,--out", dec.out, "JSON decode report");
  d->add_option("--period-ms", dec.period_ms, "SSB period")->check(CLI::PositiveNumber);

  DatasetArgs ds;
  auto* s = app.add_subcommand("dataset", "Build datasets from synthetic bursts or captures");
  s->add_option("--source", ds.source, "synthetic | captured");
  s->add_option("--stage", ds.stage, "post_mmse | post_sync");
  s->add_option("--scheme", ds.scheme, "per_snr | snr_range | fixed_20db: every dataset the scheme needs");
  s->add_option("--snr", ds.snr, "SNR or comma list for a single dataset");
  s->add_option("-n,--count", ds.count, "Examples per dataset")->check(CLI::PositiveNumber);
  s->add_option("-i,--input", ds.inputs, "Captured IQ files");
  s->add_option("-o,--out", ds.out, "Output dataset (single)");
  s->add_option("--out-dir", ds.out_dir, "Output directory (scheme)");
  s->add_option("--period-ms", ds.period_ms, "SSB period of captures")->check(CLI::PositiveNumber);
  ds.burst.add(s);

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train one model or a scheme of models");
  t->add_option("-d,--dataset", tr.datasets, "Dataset files")->required()->check(CLI::ExistingFile);
  t->add_option("--scheme", tr.scheme, "per_snr | snr_range | fixed_20db");
  t->add_option("-o,--out", tr.out, "Model file (no scheme)");
  t->add_option("--out-dir", tr.out_dir, "Directory for model and curve files");
  tr.opt.add(t);

  EvalArgs ev;
  auto* e = app.add_subcommand("eval", "BER/MSE sweep over test SNRs");
  e->add_option("-m,--model", ev.models_in, "Model files")->check(CLI::ExistingFile);
  e->add_option("--untrained", ev.untrained_stage, "Also evaluate an all-zero model of this stage");
  e->add_option("-d,--dataset", ev.dataset, "Evaluate on a stored dataset instead")->check(CLI::ExistingFile);
  e->add_option("--snr-grid", ev.snr_grid, "Comma-separated test SNRs");
  e->add_option("--bursts", ev.bursts, "Bursts per SNR")->check(CLI::PositiveNumber);
  e->add_option("--constellation-bursts", ev.constellation_bursts)->check(CLI::NonNegativeNumber);
  e->add_option("--out-dir", ev.out_dir, "Directory for report CSVs");
  ev.burst.add(e);

  bool all = false;
  auto* st = app.add_subcommand("selftest", "BER-vs-Q, gradient check and codec round trip");
  st->add_flag("--all", all, "Also sync, decoder margin and regeneration checks");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) run_gen(gen, seed);
    if (*d) return run_decode(dec);
    if (*s) run_dataset(ds, seed);
    if (*t) run_train(tr, seed);
    if (*e) run_eval(ev, seed);
    if (*st) return run_selftest(seed, all);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
  return 0;
}
