#ifndef TAILAVG_REPORT_HPP
#define TAILAVG_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tailavg/averaging.hpp"
#include "tailavg/errors.hpp"
#include "tailavg/rng.hpp"
#include "tailavg/sample.hpp"

namespace tailavg {

inline constexpr const char* kVersion = "0.1.0";

// 17 significant digits: enough for exact double round-trips and stable
// golden files.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Content hash of the ingested values (original file order, canonical
// 17-digit text), as 16 hex digits.
inline std::string digest_values(std::span<const double> values) {
  std::string canon;
  canon.reserve(values.size() * 24);
  for (double v : values) {
    canon += format_real(v);
    canon += '\n';
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(canon)));
  return buf;
}

struct ReportCandidate {
  std::size_t m = 0;
  double threshold = 0.0;
  double alpha = 0.0;
  double criterion = 0.0;
  double weight = 0.0;
  bool operator==(const ReportCandidate&) const = default;
};

struct ReportSkipped {
  std::size_t m = 0;
  std::string reason;
  bool operator==(const ReportSkipped&) const = default;
};

struct ReportMetadata {
  std::uint64_t seed = 0;
  std::string generator = SeededStream::generator_name;
  std::string input_digest;
  std::string version = kVersion;
  bool operator==(const ReportMetadata&) const = default;
};

struct Report {
  Method method = Method::pareto;
  std::size_t k_min = 0;
  std::size_t k_max = 0;
  std::size_t stride = 1;
  double alpha = 0.0;
  double xi = 0.0;
  double threshold = 0.0;
  std::size_t m_eff = 0;
  std::vector<ReportCandidate> candidates;
  std::vector<ReportSkipped> skipped;
  ReportMetadata metadata;
  bool operator==(const Report&) const = default;
};

enum class ReportFormat { json, csv };

inline Report make_report(const EstimateResult& res, const ThresholdGrid& grid,
                          std::uint64_t seed, const std::string& input_digest) {
  Report r;
  r.method = res.weighted.method;
  r.k_min = grid.k_min;
  r.k_max = grid.k_max;
  r.stride = grid.stride;
  r.alpha = res.weighted.alpha_bar;
  r.xi = res.weighted.xi_bar;
  r.threshold = res.weighted.threshold_bar;
  r.m_eff = res.weighted.m_eff;
  r.candidates.reserve(res.fits.size());
  for (std::size_t i = 0; i < res.fits.size(); ++i) {
    const CandidateFit& f = res.fits[i];
    const WeightEntry& w = res.weights.entries[i];
    r.candidates.push_back(ReportCandidate{f.m, f.threshold, f.alpha_hat, f.criterion, w.weight});
  }
  for (const SkippedCandidate& sk : res.weights.skipped) {
    r.skipped.push_back(ReportSkipped{sk.m, to_string(sk.reason)});
  }
  r.metadata.seed = seed;
  r.metadata.input_digest = input_digest;
  return r;
}

namespace detail {

inline std::string emit_report_json(const Report& r) {
  std::string out;
  out += "{\n";
  out += "  \"method\": \"" + std::string(to_string(r.method)) + "\",\n";
  out += "  \"grid\": {\"k_min\": " + std::to_string(r.k_min) +
         ", \"k_max\": " + std::to_string(r.k_max) +
         ", \"stride\": " + std::to_string(r.stride) + "},\n";
  out += "  \"weighted\": {\"alpha\": " + format_real(r.alpha) +
         ", \"xi\": " + format_real(r.xi) +
         ", \"threshold\": " + format_real(r.threshold) +
         ", \"m_eff\": " + std::to_string(r.m_eff) + "},\n";
  out += "  \"candidates\": [";
  for (std::size_t i = 0; i < r.candidates.size(); ++i) {
    const ReportCandidate& c = r.candidates[i];
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"m\": " + std::to_string(c.m) +
           ", \"threshold\": " + format_real(c.threshold) +
           ", \"alpha\": " + format_real(c.alpha) +
           ", \"criterion\": " + format_real(c.criterion) +
           ", \"weight\": " + format_real(c.weight) + "}";
  }
  out += r.candidates.empty() ? "],\n" : "\n  ],\n";
  out += "  \"skipped\": [";
  for (std::size_t i = 0; i < r.skipped.size(); ++i) {
    out += i == 0 ? "\n" : ",\n";
    out += "    {\"m\": " + std::to_string(r.skipped[i].m) +
           ", \"reason\": \"" + r.skipped[i].reason + "\"}";
  }
  out += r.skipped.empty() ? "],\n" : "\n  ],\n";
  out += "  \"metadata\": {\"seed\": " + std::to_string(r.metadata.seed) +
         ", \"generator\": \"" + r.metadata.generator +
         "\", \"input_digest\": \"" + r.metadata.input_digest +
         "\", \"version\": \"" + r.metadata.version + "\"}\n";
  out += "}\n";
  return out;
}

inline std::string emit_report_csv(const Report& r) {
  std::string out;
  out += "tailavg_report,1\n";
  out += "method," + std::string(to_string(r.method)) + "\n";
  out += "grid," + std::to_string(r.k_min) + "," + std::to_string(r.k_max) + "," +
         std::to_string(r.stride) + "\n";
  out += "weighted," + format_real(r.alpha) + "," + format_real(r.xi) + "," +
         format_real(r.threshold) + "," + std::to_string(r.m_eff) + "\n";
  for (const ReportCandidate& c : r.candidates) {
    out += "candidate," + std::to_string(c.m) + "," + format_real(c.threshold) + "," +
           format_real(c.alpha) + "," + format_real(c.criterion) + "," +
           format_real(c.weight) + "\n";
  }
  for (const ReportSkipped& s : r.skipped) {
    out += "skipped," + std::to_string(s.m) + "," + s.reason + "\n";
  }
  out += "metadata," + std::to_string(r.metadata.seed) + "," + r.metadata.generator + "," +
         r.metadata.input_digest + "," + r.metadata.version + "\n";
  return out;
}

inline Report parse_report_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("report json: ") + e.what());
  }
  try {
    Report r;
    r.method = method_from_string(j.at("method").get<std::string>());
    const auto& grid = j.at("grid");
    r.k_min = grid.at("k_min").get<std::size_t>();
    r.k_max = grid.at("k_max").get<std::size_t>();
    r.stride = grid.at("stride").get<std::size_t>();
    const auto& weighted = j.at("weighted");
    r.alpha = weighted.at("alpha").get<double>();
    r.xi = weighted.at("xi").get<double>();
    r.threshold = weighted.at("threshold").get<double>();
    r.m_eff = weighted.at("m_eff").get<std::size_t>();
    for (const auto& c : j.at("candidates")) {
      r.candidates.push_back(ReportCandidate{
          c.at("m").get<std::size_t>(), c.at("threshold").get<double>(),
          c.at("alpha").get<double>(), c.at("criterion").get<double>(),
          c.at("weight").get<double>()});
    }
    for (const auto& s : j.at("skipped")) {
      r.skipped.push_back(
          ReportSkipped{s.at("m").get<std::size_t>(), s.at("reason").get<std::string>()});
    }
    const auto& meta = j.at("metadata");
    r.metadata.seed = meta.at("seed").get<std::uint64_t>();
    r.metadata.generator = meta.at("generator").get<std::string>();
    r.metadata.input_digest = meta.at("input_digest").get<std::string>();
    r.metadata.version = meta.at("version").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse_error, std::string("report json: ") + e.what());
  }
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      fields.emplace_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return fields;
}

inline Report parse_report_csv(std::string_view text) {
  Report r;
  bool saw_header = false;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    try {
      if (f[0] == "tailavg_report") {
        saw_header = true;
      } else if (f[0] == "method") {
        r.method = method_from_string(f.at(1));
      } else if (f[0] == "grid") {
        r.k_min = std::stoull(f.at(1));
        r.k_max = std::stoull(f.at(2));
        r.stride = std::stoull(f.at(3));
      } else if (f[0] == "weighted") {
        r.alpha = std::stod(f.at(1));
        r.xi = std::stod(f.at(2));
        r.threshold = std::stod(f.at(3));
        r.m_eff = std::stoull(f.at(4));
      } else if (f[0] == "candidate") {
        r.candidates.push_back(ReportCandidate{std::stoull(f.at(1)), std::stod(f.at(2)),
                                               std::stod(f.at(3)), std::stod(f.at(4)),
                                               std::stod(f.at(5))});
      } else if (f[0] == "skipped") {
        r.skipped.push_back(ReportSkipped{std::stoull(f.at(1)), f.at(2)});
      } else if (f[0] == "metadata") {
        r.metadata.seed = std::stoull(f.at(1));
        r.metadata.generator = f.at(2);
        r.metadata.input_digest = f.at(3);
        r.metadata.version = f.at(4);
      } else {
        throw error(errc::parse_error,
                    "report csv: unknown record '" + f[0] + "' at line " + std::to_string(line_no),
                    line_no);
      }
    } catch (const error&) {
      throw;
    } catch (const std::exception&) {
      throw error(errc::parse_error, "report csv: malformed line " + std::to_string(line_no),
                  line_no);
    }
  }
  if (!saw_header) {
    throw error(errc::parse_error, "report csv: missing tailavg_report header");
  }
  return r;
}

}  // namespace detail

inline std::string emit_report(const Report& r, ReportFormat format) {
  return format == ReportFormat::json ? detail::emit_report_json(r)
                                      : detail::emit_report_csv(r);
}

inline Report parse_report(std::string_view text, ReportFormat format) {
  return format == ReportFormat::json ? detail::parse_report_json(text)
                                      : detail::parse_report_csv(text);
}

}  // namespace tailavg

#endif  // TAILAVG_REPORT_HPP
