#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "dar/model/series.hpp"

namespace dar::harness {

/// Parses a decimal real into signed-log form. Exponents beyond the double
/// range (e.g. "3.2e+500") are accepted. Returns false on malformed text.
[[nodiscard]] bool parse_signed_log(std::string_view text, numerics::SignedLog& out);

/// One observation per line, optional single non-numeric header line, LF or
/// CRLF endings, blank lines ignored. Throws dar::Error(Parse) naming the line.
[[nodiscard]] model::SignedLogSeries read_series(std::istream& in, const std::string& source = "<input>");
[[nodiscard]] model::SignedLogSeries read_series_file(const std::string& path);

/// Writes header "y" then one value per line with 17 significant digits so the
/// series reads back unchanged; magnitudes beyond the double range are written
/// in decimal scientific notation from the signed-log form.
void write_series(std::ostream& out, const model::SignedLogSeries& series);

[[nodiscard]] std::string format_signed_log(const numerics::SignedLog& v, int digits = 17);

}  // namespace dar::harness
