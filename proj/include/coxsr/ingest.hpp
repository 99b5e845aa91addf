// On-disk formats.
//
// Tick CSV (UTF-8, LF or CRLF line endings):
//
//   day,t,symbol
//   0,301.25,AEP
//
// `day` is the 0-based trading-day ordinal, `t` seconds since the session
// open (decimal point only, no thousands separators). Records are returned
// sorted by (day, t).
//
// Metadata sidecar `<dataset>.meta.json` carries the generating parameters,
// session layout and seed. Fit reports are JSON with top-level keys params,
// residuals, sr and provenance. Series are CSV with a header row whose
// column names carry units.
#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxsr/estimation.hpp"
#include "coxsr/model.hpp"
#include "coxsr/session.hpp"
#include "coxsr/simulator.hpp"

namespace coxsr {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed tick input. lines() holds up to 20 offending line numbers.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::vector<std::size_t> lines)
      : std::runtime_error(message), lines_(std::move(lines)) {}
  const std::vector<std::size_t>& lines() const { return lines_; }

 private:
  std::vector<std::size_t> lines_;
};

struct ParseOptions {
  /// Keep only this symbol; empty keeps every record.
  std::string symbol;
  /// Reject t >= session_length.
  double session_length = 23400.0;
};

std::vector<TickRecord> parse_ticks(std::istream& in, const ParseOptions& options = {});
std::vector<TickRecord> parse_ticks(const std::filesystem::path& path,
                                    const ParseOptions& options = {});

void write_ticks(const std::vector<TickRecord>& records, std::ostream& out);
void write_ticks(const std::vector<TickRecord>& records, const std::filesystem::path& path);

struct DatasetMeta {
  ModelParams params;
  SessionSpec session;
  std::uint64_t seed = 0;

  bool operator==(const DatasetMeta&) const = default;
};

/// `aep.csv` -> `aep.meta.json`.
std::filesystem::path meta_path_for(const std::filesystem::path& dataset);

void write_meta(const DatasetMeta& meta, const std::filesystem::path& path);
DatasetMeta read_meta(const std::filesystem::path& path);

/// Writes gen_ticks output to `path` and the metadata sidecar next to it.
/// Returns the number of ticks written.
std::size_t synth_dataset(const ModelParams& params, const SessionSpec& session,
                          std::uint64_t seed, const std::filesystem::path& path,
                          const std::string& symbol = "SYN");

std::string report_to_json(const FitReport& report);
FitReport report_from_json(const std::string& text);
void write_report(const FitReport& report, const std::filesystem::path& path);
FitReport read_report(const std::filesystem::path& path);

void write_curve(const SnrCurve& curve, std::ostream& out);
void write_curve(const AutocorrFn& acf, std::ostream& out);
void write_curve(const RatePattern& pattern, std::ostream& out);
template <typename Curve>
void write_curve(const Curve& curve, const std::filesystem::path& path);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace coxsr
