#pragma once

#include "ntn/models/scheme.hpp"

namespace ntn::models {

struct EvalPoint {
  double snr_db = 0.0;
  double mse = 0.0;      // network output vs transmitted symbols, per real component
  double mse_pre = 0.0;  // MMSE output vs transmitted symbols, same units
  double ber_pre = 0.0;  // coded bits from the MMSE output
  double ber_post = 0.0; // coded bits from the network output
  double crc_pre = 0.0;  // CRC pass rate of the classical receiver
  double crc_post = 0.0; // CRC pass rate decoding the network output
  int bursts = 0;
  long redraws = 0;
};

struct ConstellationPoint {
  double snr_db;
  std::string stage;  // post_sync | post_mmse | post_nn
  cf64 value;
};

struct EvalReport {
  std::vector<EvalPoint> points;
  std::vector<ConstellationPoint> constellation;
  nn::LearningCurve curve;
};

struct EvalConfig {
  std::vector<double> snr_grid = kDefaultSnrGrid;
  int n_bursts = 100;  // per SNR
  std::uint64_t seed = 0;
  BurstConfig burst;
  int constellation_bursts = 1;  // per SNR and stage
};

/// Fresh bursts per test SNR. The bursts depend only on (seed, SNR, index),
/// so different models see identical test data.
EvalReport evaluate(const TrainedModel& model, const EvalConfig& cfg);

/// Network MSE over a stored dataset (e.g. captured, regenerated labels).
/// BER and MSE before the network are filled for post_mmse datasets only.
EvalPoint evaluate_dataset(const TrainedModel& model, const SymbolDataset& ds);

}  // namespace ntn::models
