#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mvgcn/dataprep/encode.hpp"
#include "mvgcn/dataprep/flow_series.hpp"
#include "mvgcn/dataprep/scaler.hpp"
#include "mvgcn/dataprep/views.hpp"

namespace mvgcn::dataprep {

/// One model-ready example. View inputs are flattened to N x (C * l_v) with
/// column k*C+c holding channel c of the k-th key timestep (most recent
/// first); zero-length views stay empty.
struct TrainingInstance {
  std::array<numkit::Tensor, kViewCount> views;
  numkit::Tensor external;  // 1 x vocab width
  numkit::Tensor meta;      // 1 x 32
  numkit::Tensor target;    // N x C, scaled
  std::int64_t target_index = 0;
  std::int64_t origin = 0;  // first future step; target_index = origin + horizon - 1
};

struct DatasetConfig {
  ViewConfig views;
  ScaleRange range = ScaleRange::SymmetricUnit;
  std::int64_t utc_offset_minutes = 0;
  int horizon = 1;       // horizon-k model: target is origin + k - 1
  int test_weeks = 4;    // final weeks of targets
  int val_weeks = 4;     // weeks preceding the test span
};

struct Dataset {
  std::vector<TrainingInstance> instances;  // ascending target index
  std::vector<std::size_t> train_idx, val_idx, test_idx;
  Scaler scaler;
  ExternalVocab vocab;
  std::int64_t nodes = 0;
  std::int64_t channels = 0;
  ViewConfig views;
  int horizon = 1;

  const TrainingInstance& instance(std::size_t i) const { return instances[i]; }
};

/// Builds every feasible instance, fits the scaler and external vocabulary on
/// the training span only, and splits by target time: the last test_weeks of
/// targets are test, the preceding val_weeks validation, the rest training.
/// externals may be empty (no external view) or hold one record per timestep.
Dataset make_dataset(const FlowSeries& series, const std::vector<ExternalRecord>& externals,
                     const DatasetConfig& cfg);

}  // namespace mvgcn::dataprep
