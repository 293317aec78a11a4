#pragma once

#include "ntn/models/dataset.hpp"
#include "ntn/nn/train.hpp"

namespace ntn::models {

/// How one dataset example is presented to the MLP.
///  full:   one row, the whole block (864 or 1152 -> 864).
///  symbol: post_mmse only; one row per symbol, [re, im] -> [re, im].
///  local:  post_sync only; one row per data RE: received value, the pilot
///          estimates on either side in the same symbol, the fractional
///          position between them and the symbol's pilot mean (9 -> 2).
enum class RowLayout { full, symbol, local };

std::string to_string(RowLayout l);
RowLayout parse_layout(const std::string& s);
RowLayout default_layout(DatasetStage s);
int default_hidden_width(RowLayout l);

struct LayoutDims {
  int input_dim;
  int output_dim;
  int rows_per_example;
};
LayoutDims layout_dims(DatasetStage stage, RowLayout layout);

/// Rows (as columns, d_in x rows) of one example.
nn::Matrix example_rows(DatasetStage stage, RowLayout layout, std::span<const double> input,
                        int cell_id);

/// All examples of a dataset; targets follow the same row split.
nn::TrainData to_train_data(const SymbolDataset& ds, RowLayout layout);

/// Network outputs (d_out x rows) of one example back to 432 symbols.
CVec rows_to_symbols(RowLayout layout, const nn::Matrix& outputs);

}  // namespace ntn::models
