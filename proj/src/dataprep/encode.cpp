#include "mvgcn/dataprep/encode.hpp"

#include <cmath>
#include <stdexcept>

#include "mvgcn/dataprep/time.hpp"

namespace mvgcn::dataprep {

numkit::Tensor encode_meta(std::int64_t epoch_seconds, std::int64_t utc_offset_minutes) {
  const std::int64_t local = epoch_seconds + utc_offset_minutes * 60;
  numkit::Tensor meta = numkit::Tensor::zeros({1, 32});
  const int hour = hour_of_day(local);
  const int dow = day_of_week(local);
  meta.data[static_cast<std::size_t>(hour)] = 1.0;
  meta.data[static_cast<std::size_t>(24 + dow)] = 1.0;
  meta.data[31] = dow >= 5 ? 1.0 : 0.0;
  return meta;
}

ExternalVocab ExternalVocab::fit(const std::vector<ExternalRecord>& records,
                                 std::size_t fit_count) {
  ExternalVocab vocab;
  bool temp_seen = false, wind_seen = false;
  const std::size_t limit = std::min(fit_count, records.size());
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& r = records[i];
    if (r.weather_code >= 0) vocab.weather_types = std::max(vocab.weather_types, r.weather_code + 1);
    if (std::isfinite(r.temperature)) {
      if (!temp_seen) {
        vocab.temp_min = vocab.temp_max = r.temperature;
        temp_seen = true;
      }
      vocab.temp_min = std::min(vocab.temp_min, r.temperature);
      vocab.temp_max = std::max(vocab.temp_max, r.temperature);
    }
    if (std::isfinite(r.wind_speed)) {
      if (!wind_seen) {
        vocab.wind_min = vocab.wind_max = r.wind_speed;
        wind_seen = true;
      }
      vocab.wind_min = std::min(vocab.wind_min, r.wind_speed);
      vocab.wind_max = std::max(vocab.wind_max, r.wind_speed);
    }
  }
  vocab.has_temperature = temp_seen;
  vocab.has_wind = wind_seen;
  return vocab;
}

numkit::Tensor encode_external(const ExternalRecord& record, const ExternalVocab& vocab) {
  numkit::Tensor out = numkit::Tensor::zeros({1, vocab.width()});
  std::int64_t pos = 0;
  if (vocab.weather_types > 0) {
    if (record.weather_code >= vocab.weather_types)
      throw std::invalid_argument("encode_external: weather code outside vocabulary");
    if (record.weather_code >= 0) out.data[static_cast<std::size_t>(record.weather_code)] = 1.0;
    pos += vocab.weather_types;
  }
  out.data[static_cast<std::size_t>(pos)] = record.holiday == 1 ? 1.0 : 0.0;
  ++pos;
  auto scaled01 = [](double v, double lo, double hi) {
    if (hi == lo) return 0.0;
    return (v - lo) / (hi - lo);
  };
  if (vocab.has_temperature) {
    if (std::isfinite(record.temperature))
      out.data[static_cast<std::size_t>(pos)] = scaled01(record.temperature, vocab.temp_min, vocab.temp_max);
    ++pos;
  }
  if (vocab.has_wind) {
    if (std::isfinite(record.wind_speed))
      out.data[static_cast<std::size_t>(pos)] = scaled01(record.wind_speed, vocab.wind_min, vocab.wind_max);
    ++pos;
  }
  return out;
}

}  // namespace mvgcn::dataprep
