#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mvgcn/numkit/tensor.hpp"

namespace mvgcn::dataprep {

/// One-hot hour of day (24) ++ one-hot day of week (7, Monday first) ++
/// weekend flag: a 1x32 row with exactly three ones.
numkit::Tensor encode_meta(std::int64_t epoch_seconds, std::int64_t utc_offset_minutes = 0);

/// Raw external observation for one timestep; negative codes and NaNs mark
/// missing fields.
struct ExternalRecord {
  int weather_code = -1;
  int holiday = -1;  // -1 missing, else 0/1
  double temperature = std::numeric_limits<double>::quiet_NaN();
  double wind_speed = std::numeric_limits<double>::quiet_NaN();
};

/// Encoding layout learned from the training span: which blocks exist and
/// the min/max used to scale temperature and wind speed into [0, 1].
struct ExternalVocab {
  int weather_types = 0;  // 0: dataset has no weather block
  bool has_temperature = false;
  bool has_wind = false;
  double temp_min = 0.0, temp_max = 0.0;
  double wind_min = 0.0, wind_max = 0.0;

  std::int64_t width() const {
    return weather_types + 1 + (has_temperature ? 1 : 0) + (has_wind ? 1 : 0);
  }

  /// Scans the first fit_count records; weather_types becomes max code + 1.
  static ExternalVocab fit(const std::vector<ExternalRecord>& records, std::size_t fit_count);
};

/// One-hot weather ++ holiday bit ++ scaled temperature ++ scaled wind.
/// Missing fields encode as zero blocks; an out-of-vocab weather code throws.
numkit::Tensor encode_external(const ExternalRecord& record, const ExternalVocab& vocab);

}  // namespace mvgcn::dataprep
