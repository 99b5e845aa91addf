#include "coxsr/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

namespace coxsr {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kTickHeader = "day,t,symbol";
constexpr std::size_t kMaxReportedLines = 20;

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <typename T>
bool parse_number(std::string_view text, T& value) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

Json session_json(const SessionSpec& s) {
  return Json{{"session_length", s.session_length}, {"warmup_skip", s.warmup_skip},
              {"bin_width", s.bin_width},           {"bins_per_day", s.bins_per_day},
              {"days", s.days},                     {"tick_resolution", s.tick_resolution},
              {"restart_noise_each_day", s.restart_noise_each_day}};
}

SessionSpec session_from_json(const Json& j) {
  SessionSpec s;
  s.session_length = j.at("session_length").get<double>();
  s.warmup_skip = j.at("warmup_skip").get<double>();
  s.bin_width = j.at("bin_width").get<double>();
  s.bins_per_day = j.at("bins_per_day").get<int>();
  s.days = j.at("days").get<int>();
  s.tick_resolution = j.value("tick_resolution", 1.0);
  s.restart_noise_each_day = j.value("restart_noise_each_day", false);
  return s;
}

Json params_json(const ModelParams& p) {
  return Json{{"r0", p.r0}, {"a_s", p.a_s}, {"f_s", p.f_s}, {"sigma", p.sigma}, {"tau_c", p.tau_c}};
}

ModelParams params_from_json(const Json& j) {
  return ModelParams{.r0 = j.at("r0").get<double>(),
                     .a_s = j.at("a_s").get<double>(),
                     .f_s = j.at("f_s").get<double>(),
                     .sigma = j.at("sigma").get<double>(),
                     .tau_c = j.at("tau_c").get<double>()};
}

void write_rows(std::ostream& out, std::string_view header,
                const std::vector<const Eigen::ArrayXd*>& columns) {
  out << header << '\n';
  const Eigen::Index rows = columns.empty() ? 0 : columns.front()->size();
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (c > 0) out << ',';
      out << format_double((*columns[c])(i));
    }
    out << '\n';
  }
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buffer, ptr);
}

std::vector<TickRecord> parse_ticks(std::istream& in, const ParseOptions& options) {
  std::vector<TickRecord> records;
  std::vector<std::size_t> bad_lines;
  std::size_t bad_count = 0;
  auto reject = [&](std::size_t line_number) {
    ++bad_count;
    if (bad_lines.size() < kMaxReportedLines) bad_lines.push_back(line_number);
  };

  std::string line;
  std::size_t line_number = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    if (line_number == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (!have_header) {
      if (view != kTickHeader) {
        throw ParseError("line 1: expected header '" + std::string(kTickHeader) + "'", {1});
      }
      have_header = true;
      continue;
    }
    if (view.empty()) continue;

    const auto first = view.find(',');
    const auto second = first == std::string_view::npos ? first : view.find(',', first + 1);
    if (second == std::string_view::npos || view.find(',', second + 1) != std::string_view::npos) {
      reject(line_number);
      continue;
    }
    TickRecord record;
    const bool ok = parse_number(view.substr(0, first), record.day_index) &&
                    parse_number(view.substr(first + 1, second - first - 1), record.t);
    record.symbol = std::string(view.substr(second + 1));
    if (!ok || record.day_index < 0 || !std::isfinite(record.t) || record.t < 0.0 ||
        record.t >= options.session_length || record.symbol.empty()) {
      reject(line_number);
      continue;
    }
    if (!options.symbol.empty() && record.symbol != options.symbol) continue;
    records.push_back(std::move(record));
  }
  if (!have_header) throw ParseError("missing header '" + std::string(kTickHeader) + "'", {});
  if (bad_count > 0) {
    std::string message = std::to_string(bad_count) + " malformed record(s) at line(s)";
    for (auto n : bad_lines) message += " " + std::to_string(n);
    if (bad_count > bad_lines.size()) message += " ...";
    throw ParseError(message, bad_lines);
  }
  std::stable_sort(records.begin(), records.end(), [](const TickRecord& a, const TickRecord& b) {
    return a.day_index != b.day_index ? a.day_index < b.day_index : a.t < b.t;
  });
  return records;
}

std::vector<TickRecord> parse_ticks(const std::filesystem::path& path,
                                    const ParseOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  try {
    return parse_ticks(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.lines());
  }
}

void write_ticks(const std::vector<TickRecord>& records, std::ostream& out) {
  out << kTickHeader << '\n';
  for (const auto& r : records) {
    out << r.day_index << ',' << format_double(r.t) << ',' << r.symbol << '\n';
  }
}

void write_ticks(const std::vector<TickRecord>& records, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_ticks(records, out);
  finish_write(out, path);
}

std::filesystem::path meta_path_for(const std::filesystem::path& dataset) {
  std::filesystem::path meta = dataset;
  meta.replace_extension(".meta.json");
  return meta;
}

void write_meta(const DatasetMeta& meta, const std::filesystem::path& path) {
  Json j = params_json(meta.params);
  j.update(session_json(meta.session));
  j["seed"] = meta.seed;
  auto out = open_for_write(path);
  out << j.dump(2) << '\n';
  finish_write(out, path);
}

DatasetMeta read_meta(const std::filesystem::path& path) {
  try {
    const Json j = Json::parse(read_all(path));
    DatasetMeta meta;
    meta.params = params_from_json(j);
    meta.session = session_from_json(j);
    meta.seed = j.at("seed").get<std::uint64_t>();
    return meta;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::size_t synth_dataset(const ModelParams& params, const SessionSpec& session,
                          std::uint64_t seed, const std::filesystem::path& path,
                          const std::string& symbol) {
  const auto ticks = gen_ticks(params, session, seed, symbol);
  write_ticks(ticks, path);
  write_meta(DatasetMeta{params, session, seed}, meta_path_for(path));
  return ticks.size();
}

std::string report_to_json(const FitReport& r) {
  Json params = params_json(r.params);
  params["pattern_level"] = r.pattern_level;
  const Json residuals{{"pattern_sse", r.residuals.pattern_sse},
                       {"acf_mse", r.residuals.acf_mse},
                       {"pdf_sse", r.residuals.pdf_sse},
                       {"pdf_sigma", r.diagnostics.pdf_sigma},
                       {"pdf_sigma_corrected", r.diagnostics.pdf_sigma_corrected},
                       {"tau_at_grid_edge", r.diagnostics.tau_at_grid_edge},
                       {"sigma_at_bound", r.diagnostics.sigma_at_bound},
                       {"rounds", r.diagnostics.rounds},
                       {"empirical_noise_floor", r.diagnostics.empirical_noise_floor}};
  Json sr{{"tau_c_r0", r.sr.product},
          {"condition", r.sr.condition},
          {"curve_detected", r.sr.curve_detected},
          {"argmax_sigma", nullptr},
          {"peak_gain", r.sr.peak_gain}};
  if (r.sr.argmax_sigma) sr["argmax_sigma"] = *r.sr.argmax_sigma;
  const Json provenance{{"input", r.provenance.input_path},
                        {"session", session_json(r.provenance.session)},
                        {"seed", r.provenance.seed},
                        {"replicas", r.provenance.replicas},
                        {"tau_grid", r.provenance.tau_grid},
                        {"acf_max_lag", r.provenance.acf_max_lag},
                        {"sigma_upper", r.provenance.sigma_upper},
                        {"tick_count", r.provenance.tick_count}};
  const Json j{{"params", params}, {"residuals", residuals}, {"sr", sr}, {"provenance", provenance}};
  return j.dump(2) + "\n";
}

FitReport report_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    FitReport r;
    const Json& params = j.at("params");
    r.params = params_from_json(params);
    r.pattern_level = params.at("pattern_level").get<double>();
    const Json& res = j.at("residuals");
    r.residuals.pattern_sse = res.at("pattern_sse").get<double>();
    r.residuals.acf_mse = res.at("acf_mse").get<double>();
    r.residuals.pdf_sse = res.at("pdf_sse").get<double>();
    r.diagnostics.pdf_sigma = res.at("pdf_sigma").get<double>();
    r.diagnostics.pdf_sigma_corrected = res.at("pdf_sigma_corrected").get<double>();
    r.diagnostics.tau_at_grid_edge = res.at("tau_at_grid_edge").get<bool>();
    r.diagnostics.sigma_at_bound = res.at("sigma_at_bound").get<bool>();
    r.diagnostics.rounds = res.at("rounds").get<int>();
    r.diagnostics.empirical_noise_floor = res.at("empirical_noise_floor").get<double>();
    const Json& sr = j.at("sr");
    r.sr.product = sr.at("tau_c_r0").get<double>();
    r.sr.condition = sr.at("condition").get<bool>();
    r.sr.curve_detected = sr.at("curve_detected").get<bool>();
    if (!sr.at("argmax_sigma").is_null()) r.sr.argmax_sigma = sr.at("argmax_sigma").get<double>();
    r.sr.peak_gain = sr.at("peak_gain").get<double>();
    const Json& prov = j.at("provenance");
    r.provenance.input_path = prov.at("input").get<std::string>();
    r.provenance.session = session_from_json(prov.at("session"));
    r.provenance.seed = prov.at("seed").get<std::uint64_t>();
    r.provenance.replicas = prov.at("replicas").get<int>();
    r.provenance.tau_grid = prov.at("tau_grid").get<std::vector<double>>();
    r.provenance.acf_max_lag = prov.at("acf_max_lag").get<Eigen::Index>();
    r.provenance.sigma_upper = prov.at("sigma_upper").get<double>();
    r.provenance.tick_count = prov.at("tick_count").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
}

void write_report(const FitReport& report, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  out << report_to_json(report);
  finish_write(out, path);
}

FitReport read_report(const std::filesystem::path& path) {
  try {
    return report_from_json(read_all(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_curve(const SnrCurve& curve, std::ostream& out) {
  write_rows(out, "sigma,snr_raw,snr_normalized", {&curve.sigma_grid, &curve.raw, &curve.normalized});
}

void write_curve(const AutocorrFn& acf, std::ostream& out) {
  const Eigen::ArrayXd floor = Eigen::ArrayXd::Constant(acf.values.size(), acf.noise_floor);
  write_rows(out, "lag_s,value,noise_floor", {&acf.lags, &acf.values, &floor});
}

void write_curve(const RatePattern& pattern, std::ostream& out) {
  write_rows(out, "mid_time_s,rate_per_s", {&pattern.mid_time, &pattern.rate});
}

template <typename Curve>
void write_curve(const Curve& curve, const std::filesystem::path& path) {
  auto out = open_for_write(path);
  write_curve(curve, static_cast<std::ostream&>(out));
  finish_write(out, path);
}

template void write_curve<SnrCurve>(const SnrCurve&, const std::filesystem::path&);
template void write_curve<AutocorrFn>(const AutocorrFn&, const std::filesystem::path&);
template void write_curve<RatePattern>(const RatePattern&, const std::filesystem::path&);

}  // namespace coxsr
