#pragma once

#include <cstdint>
#include <string>

namespace mvgcn::dataprep {

// Civil calendar <-> epoch conversions (proleptic Gregorian, UTC).

std::int64_t days_from_civil(std::int64_t year, int month, int day);
void civil_from_days(std::int64_t days, std::int64_t& year, int& month, int& day);

/// Parses "YYYY-MM-DDTHH:MM:SS" (also accepts a space separator and a
/// trailing 'Z') into epoch seconds. Throws on malformed input.
std::int64_t parse_iso8601(const std::string& text);
std::string format_iso8601(std::int64_t epoch_seconds);

/// 0 = Monday .. 6 = Sunday.
int day_of_week(std::int64_t epoch_seconds);
int hour_of_day(std::int64_t epoch_seconds);

}  // namespace mvgcn::dataprep
