#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "tsmeta/series.hpp"

namespace tsmeta {

/// Parses `YYYY-MM-DD`, optionally followed by `THH:MM[:SS]` (or a space
/// separator) and a trailing `Z`, into seconds since the Unix epoch (UTC).
std::optional<std::int64_t> parse_iso8601(std::string_view text);

std::string format_iso8601(std::int64_t epoch_seconds);

/// Reads a two-column `timestamp,value` CSV. Timestamps are either all
/// base-10 integers or all ISO-8601. Malformed input throws Error(ParseError);
/// series-level problems surface from validate_series.
TimeSeries parse_series_csv(std::istream& in, std::string id, int period);

/// The filename stem becomes the series id.
TimeSeries read_series_csv(const std::filesystem::path& path, int period);

void write_series_csv(std::ostream& out, const TimeSeries& ts);

}  // namespace tsmeta
