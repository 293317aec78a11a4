// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--seed N] [--only 1,6,9] [--work DIR] [--mismatch-epochs E]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ntn/checks/oracles.hpp"
#include "ntn/models/evaluate.hpp"

#ifndef NTN_CLI_PATH
#error "NTN_CLI_PATH must name the ntn executable"
#endif

namespace fs = std::filesystem;
using namespace ntn;
using checks::CheckResult;
using Clock = std::chrono::steady_clock;

namespace {

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Symbol Enhancement NN at 20 dB with the reference hyperparameters.
CheckResult matched_snr(std::uint64_t seed) {
  const auto t0 = Clock::now();
  models::DatasetSpec spec;
  spec.stage = models::DatasetStage::post_mmse;
  spec.snr_grid = {20.0};
  spec.n_examples = 3024;
  spec.seed = sub_seed(seed, 6, 0);
  const auto ds = models::build_synthetic_dataset(spec);

  nn::TrainConfig tc;  // lr 1e-3, batch 50, 40 epochs
  tc.seed = sub_seed(seed, 6, 1);
  const auto m = models::train_model(ds, {}, tc);

  models::EvalConfig ec;
  ec.snr_grid = {20.0};
  ec.n_bursts = 300;
  ec.seed = sub_seed(seed, 6, 2);
  const auto p = models::evaluate(m, ec).points.front();
  const double s = since(t0);
  const bool pass = p.mse < p.mse_pre && p.ber_post <= p.ber_pre && s < 300.0;
  return {"matched-SNR training", pass,
          fmt("K=%d, MSE post %.4g vs pre %.4g, BER post %.4g vs pre %.4g, %.0f s (limit 300 s)",
              m.mlp.hidden_width(), p.mse, p.mse_pre, p.ber_post, p.ber_pre, s),
          s};
}

// Equalization NN: 20 dB, 10 dB and range models on the same test bursts.
// All three get the same epoch budget; at 40 epochs the 20 dB model is still far from converged.
CheckResult mismatch(std::uint64_t seed, int epochs) {
  const auto t0 = Clock::now();
  auto dataset = [&](std::vector<double> grid) {
    models::DatasetSpec spec;
    spec.stage = models::DatasetStage::post_sync;
    spec.snr_grid = std::move(grid);
    spec.seed = sub_seed(seed, 7, 0);
    return models::build_synthetic_dataset(spec);
  };
  nn::TrainConfig tc;
  tc.seed = sub_seed(seed, 7, 1);
  tc.epochs = epochs;
  const auto m20 = models::train_model(dataset({20.0}), {}, tc);
  const auto m10 = models::train_model(dataset({10.0}), {}, tc);
  const auto mr = models::train_model(dataset(models::kDefaultSnrGrid), {}, tc);

  models::EvalConfig ec;
  ec.n_bursts = 300;
  ec.seed = sub_seed(seed, 7, 2);
  auto mse_at = [&](const models::TrainedModel& m, double snr) {
    ec.snr_grid = {snr};
    return models::evaluate(m, ec).points.front().mse;
  };
  const double m20_at10 = mse_at(m20, 10.0), m10_at10 = mse_at(m10, 10.0);
  const double mr_at20 = mse_at(mr, 20.0), m20_at20 = mse_at(m20, 20.0);
  const bool a = m20_at10 > m10_at10;
  const bool b = mr_at20 > m20_at20;
  const double s = since(t0);
  return {"mismatch degradation", a && b,
          fmt("layout %s, %d epochs: 20dB-model@10dB %.4g %s matched %.4g [%s]; range-model@20dB %.4g %s "
              "matched %.4g [%s]; %.0f s",
              models::to_string(m20.layout).c_str(), epochs, m20_at10, a ? ">" : "<=", m10_at10,
              a ? "ok" : "violated", mr_at20, b ? ">" : "<=", m20_at20, b ? "ok" : "violated", s),
          s};
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

// gen -> train -> eval twice through the CLI; every output file must match.
CheckResult determinism(std::uint64_t seed, const fs::path& work) {
  const auto t0 = Clock::now();
  const std::string cli = NTN_CLI_PATH;
  const std::string s = std::to_string(seed);
  std::string failure;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = work / run;
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string();
    const std::vector<std::string> cmds = {
        cli + " --seed " + s + " gen -o " + d + "/ds.ntnds -n 300 --snr 20 --stage post_mmse",
        cli + " --seed " + s + " train -d " + d + "/ds.ntnds -o " + d + "/model.ntnm --epochs 4 -q",
        cli + " --seed " + s + " eval -m " + d + "/model.ntnm --snr-grid 10,20 --bursts 20 --out-dir " + d,
        cli + " --seed " + s + " gen -o " + d + "/cap.iq -n 3 --snr 10 --carrier-offset 50000",
        cli + " decode -i " + d + "/cap.iq -o " + d + "/decode.json"};
    for (const auto& c : cmds) {
      if (std::system((c + " > " + d + "/log.txt 2>&1").c_str()) != 0) {
        failure = "command failed: " + c;
        break;
      }
    }
    fs::remove(dir / "log.txt");
  }
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(work / "a")) names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  int same = 0;
  for (const auto& n : names) {
    if (read_bytes(work / "a" / n) == read_bytes(work / "b" / n) && fs::exists(work / "b" / n)) {
      ++same;
    } else if (failure.empty()) {
      failure = n + " differs between runs";
    }
  }
  const bool pass = failure.empty() && names.size() >= 8;
  std::string detail = fmt("%d/%zu files bit-identical across two CLI runs", same, names.size());
  if (!failure.empty()) detail += " (" + failure + ")";
  return {"determinism", pass, detail, since(t0)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::uint64_t seed = 2024;
  std::string only;
  std::string work = (fs::temp_directory_path() / "ntn_acceptance").string();
  int mismatch_epochs = 120;
  app.add_option("--seed", seed);
  app.add_option("--only", only, "Comma-separated criterion numbers");
  app.add_option("--work", work, "Scratch directory for the CLI runs");
  app.add_option("--mismatch-epochs", mismatch_epochs, "Training epochs for the three mismatch models")
      ->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  std::set<int> want;
  std::stringstream ss(only);
  for (std::string item; std::getline(ss, item, ',');) want.insert(std::stoi(item));
  auto enabled = [&](int n) { return want.empty() || want.count(n) > 0; };

  int failed = 0;
  auto report = [&](int n, const CheckResult& r) {
    failed += !r.passed;
    std::printf("%s  %d %-24s %s\n", r.passed ? "PASS" : "FAIL", n, r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  };
  if (enabled(1)) report(1, checks::codec_round_trip(seed));
  if (enabled(2)) report(2, checks::ber_oracle(seed));
  if (enabled(3)) report(3, checks::sync_robustness(seed));
  if (enabled(4)) report(4, checks::decoder_margin(seed));
  if (enabled(5)) report(5, checks::gradient_check(seed));
  if (enabled(6)) report(6, matched_snr(seed));
  if (enabled(7)) report(7, mismatch(seed, mismatch_epochs));
  if (enabled(8)) report(8, checks::regeneration_integrity(seed));
  if (enabled(9)) report(9, determinism(seed, work));
  return failed == 0 ? 0 : 1;
}
