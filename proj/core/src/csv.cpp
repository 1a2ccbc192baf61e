#include "tsmeta/csv.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "tsmeta/error.hpp"

namespace tsmeta {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len, int& out) {
  if (pos + len > text.size()) return false;
  for (std::size_t i = pos; i < pos + len; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  return parse_number(text.substr(pos, len), out);
}

bool parse_value(std::string_view text, double& out) {
  // from_chars for double is incomplete on older toolchains; strtod is locale
  // dependent but the C locale is never changed by this library.
  std::string buf(text);
  if (buf.empty()) return false;
  char* end = nullptr;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size();
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  text = trim(text);
  if (!text.empty() && (text.back() == 'Z' || text.back() == 'z')) text.remove_suffix(1);
  int y = 0, mo = 0, d = 0, hh = 0, mm = 0, ss = 0;
  if (!parse_fixed(text, 0, 4, y) || text.size() < 10 || text[4] != '-' ||
      !parse_fixed(text, 5, 2, mo) || text[7] != '-' || !parse_fixed(text, 8, 2, d)) {
    return std::nullopt;
  }
  if (text.size() > 10) {
    if (text[10] != 'T' && text[10] != ' ') return std::nullopt;
    if (!parse_fixed(text, 11, 2, hh) || text.size() < 16 || text[13] != ':' ||
        !parse_fixed(text, 14, 2, mm)) {
      return std::nullopt;
    }
    if (text.size() > 16) {
      if (text.size() != 19 || text[16] != ':' || !parse_fixed(text, 17, 2, ss)) return std::nullopt;
    }
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || hh > 23 || mm > 59 || ss > 60) return std::nullopt;
  const sys_seconds tp = sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
  return tp.time_since_epoch().count();
}

std::string format_iso8601(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const sys_seconds tp{seconds{epoch_seconds}};
  const auto day_point = floor<days>(tp);
  const year_month_day ymd{day_point};
  const auto rem = (tp - day_point).count();
  char buf[64];
  if (rem == 0) {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
  } else {
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld",
                  static_cast<int>(ymd.year()), unsigned(ymd.month()), unsigned(ymd.day()),
                  static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                  static_cast<long long>(rem % 60));
  }
  return buf;
}

TimeSeries parse_series_csv(std::istream& in, std::string id, int period) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<std::string> stamps;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
      throw Error(Errc::ParseError, id + ":" + std::to_string(line_no) + ": expected two columns");
    }
    const std::string_view first = trim(view.substr(0, comma));
    const std::string_view second = trim(view.substr(comma + 1));
    if (!header_seen) {
      if (first != "timestamp" || second != "value") {
        throw Error(Errc::ParseError, id + ": header must be 'timestamp,value'");
      }
      header_seen = true;
      continue;
    }
    double v = 0.0;
    if (!parse_value(second, v)) {
      throw Error(Errc::ParseError,
                  id + ":" + std::to_string(line_no) + ": bad value '" + std::string(second) + "'");
    }
    stamps.emplace_back(first);
    values.push_back(v);
  }
  if (!header_seen) throw Error(Errc::ParseError, id + ": empty file");

  std::vector<RawPoint> raw(values.size());
  bool all_integer = true;
  for (std::size_t i = 0; i < stamps.size(); ++i) {
    std::int64_t t = 0;
    if (!parse_number(std::string_view(stamps[i]), t)) {
      all_integer = false;
      break;
    }
    raw[i] = RawPoint{t, values[i]};
  }
  TimeKind kind = TimeKind::Index;
  if (!all_integer) {
    kind = TimeKind::Instant;
    for (std::size_t i = 0; i < stamps.size(); ++i) {
      const auto t = parse_iso8601(stamps[i]);
      if (!t) throw Error(Errc::ParseError, id + ": bad timestamp '" + stamps[i] + "'");
      raw[i] = RawPoint{*t, values[i]};
    }
  }
  return validate_series(std::move(id), raw, period, kind);
}

TimeSeries read_series_csv(const std::filesystem::path& path, int period) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path.string());
  return parse_series_csv(in, path.stem().string(), period);
}

void write_series_csv(std::ostream& out, const TimeSeries& ts) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "timestamp,value\n";
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (ts.time_kind() == TimeKind::Instant) {
      buf << format_iso8601(ts.timestamps()[i]);
    } else {
      buf << ts.timestamps()[i];
    }
    buf << ',' << ts.values()[i] << '\n';
  }
  out << buf.str();
}

}  // namespace tsmeta
