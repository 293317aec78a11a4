#include "ntn/models/layout.hpp"

#include <array>
#include <stdexcept>

#include "ntn/tx/ssb_grid.hpp"

namespace ntn::models {

namespace {

constexpr int kLocalFeatures = 9;

// Per-RE neighbourhood used by the local layout, cached per DMRS shift.
struct LocalGeometry {
  struct Entry {
    int left;   // index into the 144 pilots
    int right;
    double frac;
    int symbol;
  };
  std::vector<Entry> entries;               // one per data RE
  std::array<std::vector<int>, 4> symbol_pilots;  // pilot indices per SSB symbol
};

LocalGeometry build_geometry(int shift) {
  const tx::CellIdentity cell(shift);
  const auto data = tx::pbch_data_indices(cell);
  const auto dmrs = tx::pbch_dmrs_indices(cell);
  LocalGeometry g;
  for (int p = 0; p < static_cast<int>(dmrs.size()); ++p) {
    g.symbol_pilots[dmrs[p] / kSsbSubcarriers].push_back(p);
  }
  for (const int re : data) {
    const int l = re / kSsbSubcarriers;
    const int k = re % kSsbSubcarriers;
    int left = -1, right = -1;
    for (const int p : g.symbol_pilots[l]) {
      const int kp = dmrs[p] % kSsbSubcarriers;
      // Same contiguous run: no more than 4 subcarriers away.
      if (kp <= k && k - kp < 4) left = p;
      if (kp >= k && kp - k < 4 && right < 0) right = p;
    }
    if (left < 0) left = right;
    if (right < 0) right = left;
    if (left < 0) throw std::logic_error("data RE without a neighbouring pilot");
    const int kl = dmrs[left] % kSsbSubcarriers;
    const int kr = dmrs[right] % kSsbSubcarriers;
    const double frac = kr == kl ? 0.0 : static_cast<double>(k - kl) / (kr - kl);
    g.entries.push_back({left, right, frac, l});
  }
  return g;
}

const LocalGeometry& geometry(int cell_id) {
  static const std::array<LocalGeometry, 4> cache = {build_geometry(0), build_geometry(1),
                                                     build_geometry(2), build_geometry(3)};
  return cache[static_cast<std::size_t>(cell_id % 4)];
}

}  // namespace

std::string to_string(RowLayout l) {
  switch (l) {
    case RowLayout::full: return "full";
    case RowLayout::symbol: return "symbol";
    case RowLayout::local: return "local";
  }
  return "?";
}

RowLayout parse_layout(const std::string& s) {
  if (s == "full") return RowLayout::full;
  if (s == "symbol") return RowLayout::symbol;
  if (s == "local") return RowLayout::local;
  throw std::invalid_argument("unknown layout '" + s + "' (full | symbol | local)");
}

RowLayout default_layout(DatasetStage s) {
  return s == DatasetStage::post_mmse ? RowLayout::symbol : RowLayout::local;
}

int default_hidden_width(RowLayout l) { return l == RowLayout::full ? 1024 : 32; }

LayoutDims layout_dims(DatasetStage stage, RowLayout layout) {
  switch (layout) {
    case RowLayout::full: return {stage_input_dim(stage), kTargetDim, 1};
    case RowLayout::symbol:
      if (stage != DatasetStage::post_mmse)
        throw std::invalid_argument("symbol layout needs post_mmse inputs");
      return {2, 2, kPbchDataRes};
    case RowLayout::local:
      if (stage != DatasetStage::post_sync)
        throw std::invalid_argument("local layout needs post_sync inputs");
      return {kLocalFeatures, 2, kPbchDataRes};
  }
  throw std::invalid_argument("bad layout");
}

nn::Matrix example_rows(DatasetStage stage, RowLayout layout, std::span<const double> input,
                        int cell_id) {
  const LayoutDims d = layout_dims(stage, layout);
  if (static_cast<int>(input.size()) != stage_input_dim(stage))
    throw std::invalid_argument("example has " + std::to_string(input.size()) + " values, stage " +
                                to_string(stage) + " needs " + std::to_string(stage_input_dim(stage)));
  nn::Matrix rows(d.input_dim, d.rows_per_example);
  if (layout == RowLayout::full) {
    for (int j = 0; j < d.input_dim; ++j) rows(j, 0) = input[j];
    return rows;
  }
  if (layout == RowLayout::symbol) {
    for (int i = 0; i < kPbchDataRes; ++i) {
      rows(0, i) = input[2 * i];
      rows(1, i) = input[2 * i + 1];
    }
    return rows;
  }
  const LocalGeometry& g = geometry(cell_id);
  const double* pilots = input.data() + 2 * kPbchDataRes;
  std::array<cf64, 4> mean{};
  for (int l = 0; l < kSsbSymbols; ++l) {
    if (g.symbol_pilots[l].empty()) continue;
    for (const int p : g.symbol_pilots[l]) mean[l] += cf64(pilots[2 * p], pilots[2 * p + 1]);
    mean[l] /= static_cast<double>(g.symbol_pilots[l].size());
  }
  for (int i = 0; i < kPbchDataRes; ++i) {
    const auto& e = g.entries[i];
    rows(0, i) = input[2 * i];
    rows(1, i) = input[2 * i + 1];
    rows(2, i) = pilots[2 * e.left];
    rows(3, i) = pilots[2 * e.left + 1];
    rows(4, i) = pilots[2 * e.right];
    rows(5, i) = pilots[2 * e.right + 1];
    rows(6, i) = e.frac;
    rows(7, i) = mean[e.symbol].real();
    rows(8, i) = mean[e.symbol].imag();
  }
  return rows;
}

nn::TrainData to_train_data(const SymbolDataset& ds, RowLayout layout) {
  ds.validate();
  const LayoutDims d = layout_dims(ds.stage, layout);
  const auto n = static_cast<Eigen::Index>(ds.size());
  nn::TrainData t;
  t.rows_per_example = d.rows_per_example;
  t.inputs.resize(d.input_dim, n * d.rows_per_example);
  t.targets.resize(d.output_dim, n * d.rows_per_example);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    t.inputs.middleCols(i * d.rows_per_example, d.rows_per_example) =
        example_rows(ds.stage, layout, ds.input(idx), ds.meta[idx].cell_id);
    const auto tgt = ds.target(idx);
    for (int r = 0; r < d.rows_per_example; ++r)
      for (int j = 0; j < d.output_dim; ++j)
        t.targets(j, i * d.rows_per_example + r) = tgt[static_cast<std::size_t>(r * d.output_dim + j)];
  }
  return t;
}

CVec rows_to_symbols(RowLayout layout, const nn::Matrix& outputs) {
  CVec out(kPbchDataRes);
  if (layout == RowLayout::full) {
    if (outputs.rows() != kTargetDim || outputs.cols() != 1)
      throw std::invalid_argument("full layout expects an 864 x 1 output");
    for (int i = 0; i < kPbchDataRes; ++i) out[i] = cf64(outputs(2 * i, 0), outputs(2 * i + 1, 0));
    return out;
  }
  if (outputs.rows() != 2 || outputs.cols() != kPbchDataRes)
    throw std::invalid_argument("per-RE layouts expect a 2 x 432 output");
  for (int i = 0; i < kPbchDataRes; ++i) out[i] = cf64(outputs(0, i), outputs(1, i));
  return out;
}

}  // namespace ntn::models
