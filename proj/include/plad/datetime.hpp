#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace plad::datetime {

/// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int year, unsigned month, unsigned day);

void civil_from_days(std::int64_t days, int& year, unsigned& month, unsigned& day);

/// Parses "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS", with optional fractional
/// seconds (truncated) and optional "Z" or "+HH:MM"/"-HH:MM" offset.
/// Returns unix seconds (UTC), or nullopt if the input does not parse or
/// names an impossible date.
std::optional<std::int64_t> parse_iso8601(std::string_view text);

/// "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(std::int64_t unix_seconds);

/// Floor of a timestamp to its UTC calendar day, as days since epoch.
inline std::int64_t utc_day(std::int64_t unix_seconds) {
  std::int64_t d = unix_seconds / 86400;
  if (unix_seconds % 86400 < 0) --d;
  return d;
}

std::string format_day(std::int64_t days_since_epoch);  // "YYYY-MM-DD"

}  // namespace plad::datetime
