#include "ntn/models/evaluate.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ntn/models/realify.hpp"

namespace ntn::models {

namespace {

double real_mse(std::span<const cf64> a, std::span<const cf64> b) {
  return rx::symbol_mse(a, b) / 2.0;
}

}  // namespace

EvalReport evaluate(const TrainedModel& model, const EvalConfig& cfg) {
  if (cfg.n_bursts <= 0) throw std::invalid_argument("n_bursts must be positive");
  const LayoutDims d = layout_dims(model.stage, model.layout);
  if (model.mlp.input_dim() != d.input_dim || model.mlp.output_dim() != d.output_dim) {
    throw std::invalid_argument("model dims do not match stage " + to_string(model.stage) +
                                " with layout " + to_string(model.layout));
  }
  EvalReport report;
  report.curve = model.curve;
  for (const double snr : cfg.snr_grid) {
    EvalPoint pt;
    pt.snr_db = snr;
    double mse = 0.0, mse_pre = 0.0, ber_pre = 0.0, ber_post = 0.0;
    int crc_pre = 0, crc_post = 0;
    const std::uint64_t snr_key = std::bit_cast<std::uint64_t>(snr);
    for (int i = 0; i < cfg.n_bursts; ++i) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 1000) throw std::runtime_error("evaluation burst never synchronised");
        const std::uint64_t s = sub_seed(cfg.seed ^ snr_key, 0xE7A1 + attempt, i);
        const SimulatedBurst b = simulate_burst(s, snr, cfg.burst);
        if (!b.synced()) {
          ++pt.redraws;
          continue;
        }
        const auto& r = *b.rx;
        const CVec out = apply_model(model, stage_input(r, model.stage), r.cell.id());
        const CVec& truth = b.tx.pbch.symbols;
        mse += real_mse(out, truth);
        mse_pre += real_mse(r.post_mmse.symbols, truth);
        ber_pre += rx::compute_ber(b.tx.pbch.scrambled, rx::qpsk_demod_hard(r.post_mmse.symbols));
        ber_post += rx::compute_ber(b.tx.pbch.scrambled, rx::qpsk_demod_hard(out));
        crc_pre += r.decode.crc_pass;
        crc_post += rx::decode_symbols(out, r.cell, r.dmrs_hypothesis.issb, cfg.burst.pbch).crc_pass;
        if (i < cfg.constellation_bursts) {
          for (const auto& v : r.post_sync.symbols) report.constellation.push_back({snr, "post_sync", v});
          for (const auto& v : r.post_mmse.symbols) report.constellation.push_back({snr, "post_mmse", v});
          for (const auto& v : out) report.constellation.push_back({snr, "post_nn", v});
        }
        break;
      }
    }
    const double n = cfg.n_bursts;
    pt.bursts = cfg.n_bursts;
    pt.mse = mse / n;
    pt.mse_pre = mse_pre / n;
    pt.ber_pre = ber_pre / n;
    pt.ber_post = ber_post / n;
    pt.crc_pre = crc_pre / n;
    pt.crc_post = crc_post / n;
    report.points.push_back(pt);
  }
  return report;
}

EvalPoint evaluate_dataset(const TrainedModel& model, const SymbolDataset& ds) {
  ds.validate();
  if (ds.stage != model.stage) throw std::invalid_argument("dataset stage differs from the model's");
  if (ds.size() == 0) throw std::invalid_argument("empty dataset");
  EvalPoint pt;
  pt.snr_db = std::numeric_limits<double>::quiet_NaN();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  pt.mse_pre = pt.ber_pre = pt.crc_pre = nan;
  double mse = 0.0, mse_pre = 0.0, ber_pre = 0.0, ber_post = 0.0;
  int crc_pre = 0, crc_post = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const CVec truth = complexify(ds.target(i));
    const CVec out = apply_model(model, ds.input(i), ds.meta[i].cell_id);
    const Bits tx_bits = rx::qpsk_demod_hard(truth);
    mse += real_mse(out, truth);
    ber_post += rx::compute_ber(tx_bits, rx::qpsk_demod_hard(out));
    const tx::CellIdentity cell(ds.meta[i].cell_id);
    crc_post += rx::decode_symbols(out, cell, ds.meta[i].issb).crc_pass;
    if (ds.stage == DatasetStage::post_mmse) {
      const CVec pre = complexify(ds.input(i));
      mse_pre += real_mse(pre, truth);
      ber_pre += rx::compute_ber(tx_bits, rx::qpsk_demod_hard(pre));
      crc_pre += rx::decode_symbols(pre, cell, ds.meta[i].issb).crc_pass;
    }
  }
  const double n = static_cast<double>(ds.size());
  pt.bursts = static_cast<int>(ds.size());
  pt.mse = mse / n;
  pt.ber_post = ber_post / n;
  pt.crc_post = crc_post / n;
  if (ds.stage == DatasetStage::post_mmse) {
    pt.mse_pre = mse_pre / n;
    pt.ber_pre = ber_pre / n;
    pt.crc_pre = crc_pre / n;
  }
  return pt;
}

}  // namespace ntn::models
