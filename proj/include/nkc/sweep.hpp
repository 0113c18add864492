#pragma once

// Sweep driver and its output files:
//   summary.csv                 scenario_id,K,structure,tau,p,D
//   series_<id>.csv             t,normalized_performance
//   auction_log_<id>.csv        round,t,area,winner_id,winning_bid,clearing_price  (optional)
//   raw_<id>.csv                per-round, per-step dump                          (optional)
//   manifest.txt                version, hash and the resolved config
// CSV: comma separated, '.' decimal point, header row, LF line endings.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nkc/config.hpp"
#include "nkc/engine.hpp"
#include "nkc/metrics.hpp"

namespace nkc {

inline constexpr std::string_view kVersion = "1.0.0";

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string format_fixed(double v, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  return {buf, res.ptr};
}

inline void write_summary_csv(std::ostream& out, std::span<const ScenarioSummary> rows) {
  out << "scenario_id,K,structure,tau,p,D\n";
  for (const auto& r : rows)
    out << r.scenario_id << ',' << r.k << ',' << to_string(r.structure) << ',' << r.tau << ','
        << format_number(r.p) << ',' << format_fixed(r.distance, 9) << '\n';
}

inline void write_series_csv(std::ostream& out, const NormalizedSeries& series) {
  out << "t,normalized_performance\n";
  for (std::size_t t = 0; t < series.values.size(); ++t)
    out << t + 1 << ',' << format_fixed(series.values[t], 12) << '\n';
}

inline void write_auction_log_csv(std::ostream& out, std::span<const RoundResult> rounds) {
  out << "round,t,area,winner_id,winning_bid,clearing_price\n";
  for (const auto& round : rounds)
    for (const auto& rec : round.records)
      for (const auto& a : rec.auctions)
        out << round.round_index << ',' << rec.t << ',' << a.area << ',' << a.winner_id << ','
            << format_fixed(a.winning_bid, 12) << ',' << format_fixed(a.clearing_price, 12) << '\n';
}

inline void write_raw_csv(std::ostream& out, std::span<const RoundResult> rounds) {
  const std::size_t members = rounds.empty() || rounds.front().records.empty()
                                  ? 0
                                  : rounds.front().records.front().members.size();
  out << "round,t,strategy,raw_performance,normalized_performance";
  for (std::size_t s = 0; s < members; ++s) out << ",member_" << s;
  out << '\n';
  for (const auto& round : rounds)
    for (const auto& rec : round.records) {
      out << round.round_index << ',' << rec.t << ',' << rec.strategy.to_string() << ','
          << format_fixed(rec.raw_performance, 12) << ',' << format_fixed(rec.normalized_performance, 12);
      for (int id : rec.members) out << ',' << id;
      out << '\n';
    }
}

// Manifest lines starting with '#' are metadata; the rest is a valid config.
// Matrix paths are written absolute so the manifest works from any directory.
inline std::string manifest_text(SweepSpec spec) {
  for (auto& [cell, file] : spec.matrix_files) file = std::filesystem::absolute(spec.base_dir / file).string();
  return "# nkc sweep manifest\n# version = " + std::string(kVersion) + "\n# config_hash = " + config_hash(spec) +
         "\n# master_seed = " + std::to_string(spec.master_seed) + "\n" + to_text(spec);
}

struct SweepOptions {
  std::filesystem::path out_dir = "results";
  unsigned jobs = 1;
  bool raw_dump = false;
  bool auction_log = false;
  std::function<void(const ScenarioSummary&, std::size_t index, std::size_t total)> on_scenario;
};

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  body(out);
  out.flush();
  if (!out) throw OutputError("failed while writing " + path.string());
}

}  // namespace detail

// Runs every scenario of the grid in order and writes all output files.
inline std::vector<ScenarioSummary> run_sweep(const SweepSpec& spec, const SweepOptions& options) {
  const auto scenarios = expand(spec);

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec || !std::filesystem::is_directory(options.out_dir))
    throw OutputError("cannot create output directory " + options.out_dir.string());
  detail::write_file(options.out_dir / "manifest.txt", [&](std::ostream& out) { out << manifest_text(spec); });

  RunOptions run_options;
  run_options.record_auctions = options.auction_log;

  std::vector<ScenarioSummary> summaries;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto result = run_scenario(scenarios[i], options.jobs, run_options);
    const auto id = scenarios[i].scenario_id();
    detail::write_file(options.out_dir / ("series_" + id + ".csv"),
                       [&](std::ostream& out) { write_series_csv(out, result.series); });
    if (options.auction_log)
      detail::write_file(options.out_dir / ("auction_log_" + id + ".csv"),
                         [&](std::ostream& out) { write_auction_log_csv(out, result.rounds); });
    if (options.raw_dump)
      detail::write_file(options.out_dir / ("raw_" + id + ".csv"),
                         [&](std::ostream& out) { write_raw_csv(out, result.rounds); });
    summaries.push_back(result.summary());
    if (options.on_scenario) options.on_scenario(summaries.back(), i, scenarios.size());
  }

  detail::write_file(options.out_dir / "summary.csv", [&](std::ostream& out) { write_summary_csv(out, summaries); });
  return summaries;
}

}  // namespace nkc
