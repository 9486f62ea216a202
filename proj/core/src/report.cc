// Copyright 2026 The PSP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psp/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "json_util.h"
#include "psp/error.h"

namespace psp {
namespace {

using internal::Json;

constexpr Metric kAllMetrics[] = {Metric::kRR, Metric::kAF,  Metric::kLF,
                                  Metric::kZF, Metric::kFAD, Metric::kPSD};

std::optional<double> MetricValue(const Scorecard& card, Metric metric) {
  switch (metric) {
    case Metric::kFAD: return card.fad ? std::optional(card.fad->total) : std::nullopt;
    case Metric::kPSD: return card.psd ? std::optional(card.psd->total) : std::nullopt;
    default: break;
  }
  const Dimension dim = static_cast<Dimension>(static_cast<int>(metric));
  auto it = card.per_dimension.find(dim);
  if (it == card.per_dimension.end() || !it->second.score) return std::nullopt;
  return it->second.score->mean_fidelity;
}

struct Delta {
  std::string system;
  double from = 0.0;
  double to = 0.0;
  double change = 0.0;
};

std::vector<Delta> CrossLanguageDeltas(std::span<const Scorecard> cards,
                                       const ReportOptions& options) {
  std::map<std::string, std::optional<double>> from;
  std::map<std::string, std::optional<double>> to;
  for (const Scorecard& c : cards) {
    if (c.kind != ScorecardKind::kSystem) continue;
    if (c.language == options.delta_from) from[c.system] = MetricValue(c, options.delta_metric);
    if (c.language == options.delta_to) to[c.system] = MetricValue(c, options.delta_metric);
  }
  std::vector<Delta> out;
  for (const auto& [system, a] : from) {
    auto it = to.find(system);
    if (!a || it == to.end() || !it->second || *a == 0.0) continue;
    out.push_back({system, *a, *it->second, PercentChange(*a, *it->second)});
  }
  return out;
}

std::vector<std::string> FingerprintWarnings(std::span<const Scorecard> cards) {
  std::map<Language, std::set<std::string>> prints;
  for (const Scorecard& c : cards) prints[c.language].insert(c.config_fingerprint);
  std::vector<std::string> warnings;
  for (const auto& [lang, set] : prints) {
    if (set.size() > 1) {
      warnings.push_back("FingerprintMismatch: " + std::to_string(set.size()) +
                         " distinct config fingerprints for " + std::string(LanguageCode(lang)));
    }
  }
  return warnings;
}

std::string Num(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

int MetricDigits(Metric m) { return (m == Metric::kFAD || m == Metric::kPSD) ? 1 : 3; }

}  // namespace

ReportFormat ParseReportFormat(std::string_view name) {
  if (name == "table") return ReportFormat::kTable;
  if (name == "json") return ReportFormat::kJson;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw Error(ErrorCode::kInvalidArgument, "unknown report format '" + std::string(name) + "'");
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kRR: return "RR";
    case Metric::kAF: return "AF";
    case Metric::kLF: return "LF";
    case Metric::kZF: return "ZF";
    case Metric::kFAD: return "FAD";
    case Metric::kPSD: return "PSD";
  }
  return "?";
}

bool LowerIsBetter(Metric metric) { return metric == Metric::kFAD || metric == Metric::kPSD; }

std::vector<LeaderboardRow> Leaderboard(std::span<const Scorecard> cards, Language language,
                                        Metric metric) {
  std::vector<LeaderboardRow> rows;
  for (const Scorecard& c : cards) {
    if (c.language != language || c.kind != ScorecardKind::kSystem) continue;
    if (auto v = MetricValue(c, metric)) rows.push_back({c.system, *v});
  }
  const bool lower = LowerIsBetter(metric);
  std::sort(rows.begin(), rows.end(), [lower](const LeaderboardRow& a, const LeaderboardRow& b) {
    if (a.value != b.value) return lower ? a.value < b.value : a.value > b.value;
    return a.system < b.system;
  });
  return rows;
}

double PercentChange(double from, double to) {
  if (from == 0.0) throw Error(ErrorCode::kInvalidArgument, "percent change from zero");
  return (to - from) / from;
}

std::string FormatPercentChange(double fraction) {
  const long pct = std::lround(fraction * 100.0);
  if (pct == 0) return "0%";
  return (pct > 0 ? "+" : "-") + std::to_string(std::labs(pct)) + "%";
}

Report RenderReport(std::span<const Scorecard> cards, const ReportOptions& options) {
  Report report;
  report.warnings = FingerprintWarnings(cards);
  std::set<Language> languages;
  for (const Scorecard& c : cards) languages.insert(c.language);
  const std::vector<Delta> deltas = CrossLanguageDeltas(cards, options);
  const std::string delta_title = std::string(MetricName(options.delta_metric)) + " " +
                                  std::string(LanguageCode(options.delta_from)) + " -> " +
                                  std::string(LanguageCode(options.delta_to));

  if (options.format == ReportFormat::kJson) {
    Json j;
    j["schema"] = "psp_report_v1";
    Json boards = Json::object();
    for (Language lang : languages) {
      Json per = Json::object();
      for (Metric m : kAllMetrics) {
        Json rows = Json::array();
        for (const LeaderboardRow& r : Leaderboard(cards, lang, m)) {
          rows.push_back({{"system", r.system}, {"value", r.value}});
        }
        if (!rows.empty()) per[std::string(MetricName(m))] = std::move(rows);
      }
      boards[std::string(LanguageCode(lang))] = std::move(per);
    }
    j["leaderboards"] = std::move(boards);
    Json d;
    d["metric"] = MetricName(options.delta_metric);
    d["from"] = LanguageCode(options.delta_from);
    d["to"] = LanguageCode(options.delta_to);
    Json rows = Json::array();
    for (const Delta& x : deltas) {
      rows.push_back({{"system", x.system},
                      {"from", x.from},
                      {"to", x.to},
                      {"change", x.change},
                      {"change_text", FormatPercentChange(x.change)}});
    }
    d["rows"] = std::move(rows);
    j["cross_language"] = std::move(d);
    j["warnings"] = report.warnings;
    report.text = j.dump(2) + "\n";
    return report;
  }

  const bool md = options.format == ReportFormat::kMarkdown;
  std::ostringstream out;
  for (Language lang : languages) {
    out << (md ? "## " : "== ") << LanguageCode(lang) << (md ? "\n\n" : " ==\n");
    for (Metric m : kAllMetrics) {
      const std::vector<LeaderboardRow> rows = Leaderboard(cards, lang, m);
      if (rows.empty()) continue;
      const char* arrow = LowerIsBetter(m) ? "lower is better" : "higher is better";
      if (md) {
        out << "### " << MetricName(m) << " (" << arrow << ")\n\n"
            << "| rank | system | " << MetricName(m) << " |\n|---:|---|---:|\n";
      } else {
        out << MetricName(m) << " (" << arrow << ")\n";
      }
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string v = Num(rows[i].value, MetricDigits(m));
        if (md) {
          out << "| " << i + 1 << " | " << rows[i].system << " | " << v << " |\n";
        } else {
          char line[256];
          std::snprintf(line, sizeof(line), "  %2zu. %-24s %10s\n", i + 1, rows[i].system.c_str(),
                        v.c_str());
          out << line;
        }
      }
      out << "\n";
    }
  }
  if (!deltas.empty()) {
    const int digits = MetricDigits(options.delta_metric);
    if (md) {
      out << "## " << delta_title << "\n\n| system | " << LanguageCode(options.delta_from)
          << " | " << LanguageCode(options.delta_to) << " | change |\n|---|---:|---:|---:|\n";
      for (const Delta& x : deltas) {
        out << "| " << x.system << " | " << Num(x.from, digits) << " | " << Num(x.to, digits)
            << " | " << FormatPercentChange(x.change) << " |\n";
      }
    } else {
      out << "== " << delta_title << " ==\n";
      for (const Delta& x : deltas) {
        char line[256];
        std::snprintf(line, sizeof(line), "  %-24s %10s %10s %6s\n", x.system.c_str(),
                      Num(x.from, digits).c_str(), Num(x.to, digits).c_str(),
                      FormatPercentChange(x.change).c_str());
        out << line;
      }
    }
  }
  report.text = out.str();
  return report;
}

}  // namespace psp
