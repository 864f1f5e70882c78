#include "dar/harness/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>

#include "dar/error.hpp"

namespace dar::harness {

namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

bool parse_signed_log(std::string_view text, numerics::SignedLog& out) {
  text = trim(text);
  if (text.empty()) return false;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ptr == text.data() + text.size() && ec == std::errc{} && std::isfinite(value)) {
    out = numerics::sl_encode(value);
    return true;
  }
  // Out of double range: split mantissa and decimal exponent by hand.
  const auto e_pos = text.find_first_of("eE");
  if (e_pos == std::string_view::npos) return false;
  const std::string_view mant_text = text.substr(0, e_pos);
  std::string_view exp_text = text.substr(e_pos + 1);
  if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
  double mantissa = 0.0;
  long long exponent = 0;
  const auto m = std::from_chars(mant_text.data(), mant_text.data() + mant_text.size(), mantissa);
  const auto x = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
  if (m.ec != std::errc{} || m.ptr != mant_text.data() + mant_text.size() || x.ec != std::errc{} ||
      x.ptr != exp_text.data() + exp_text.size() || !std::isfinite(mantissa)) {
    return false;
  }
  if (mantissa == 0.0) {
    out = {};
    return true;
  }
  out = numerics::SignedLog::from_log(mantissa > 0 ? 1 : -1,
                                      std::log(std::fabs(mantissa)) +
                                          static_cast<double>(exponent) * std::numbers::ln10);
  return true;
}

model::SignedLogSeries read_series(std::istream& in, const std::string& source) {
  model::SignedLogSeries series;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (line_no == 1 && text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
        static_cast<unsigned char>(text[1]) == 0xBB && static_cast<unsigned char>(text[2]) == 0xBF) {
      text.remove_prefix(3);  // UTF-8 byte-order mark
    }
    if (text.empty()) continue;
    numerics::SignedLog value;
    if (parse_signed_log(text, value)) {
      series.obs.push_back(value);
    } else if (!seen_content) {
      // A single leading header line is skipped.
    } else {
      throw Error(ErrorKind::Parse, source + ":" + std::to_string(line_no) +
                                        ": not a number: '" + std::string(text) + "'");
    }
    seen_content = true;
  }
  if (series.obs.empty()) {
    throw Error(ErrorKind::Parse, source + ": no observations found");
  }
  return series;
}

model::SignedLogSeries read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
  return read_series(in, path);
}

std::string format_signed_log(const numerics::SignedLog& v, int digits) {
  char buf[64];
  if (v.is_zero()) return "0";
  if (std::abs(v.exponent()) < 1000) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, v.scaled(0));
    return buf;
  }
  const double log10_abs = v.logmag() / std::numbers::ln10;
  const double exponent = std::floor(log10_abs);
  double mantissa = std::pow(10.0, log10_abs - exponent);
  std::snprintf(buf, sizeof buf, "%.*fe%+.0f", digits - 1, v.sign() * mantissa, exponent);
  return buf;
}

void write_series(std::ostream& out, const model::SignedLogSeries& series) {
  out << "y\n";
  for (const auto& v : series.obs) out << format_signed_log(v) << '\n';
}

}  // namespace dar::harness
