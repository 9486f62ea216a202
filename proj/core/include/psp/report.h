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

#ifndef PSP_REPORT_H_
#define PSP_REPORT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psp/scorecard.h"
#include "psp/types.h"

namespace psp {

enum class ReportFormat { kTable, kJson, kMarkdown };

ReportFormat ParseReportFormat(std::string_view name);

// Leaderboard metrics, in column order.
enum class Metric { kRR, kAF, kLF, kZF, kFAD, kPSD };

std::string_view MetricName(Metric metric);
bool LowerIsBetter(Metric metric);

struct LeaderboardRow {
  std::string system;
  double value = 0.0;
};

// Systems with a value for `metric` in `language`, best first; ties broken by
// system name.
std::vector<LeaderboardRow> Leaderboard(std::span<const Scorecard> cards, Language language,
                                        Metric metric);

// (to - from) / from, as a fraction.
double PercentChange(double from, double to);
// Rounded whole percent with explicit sign, e.g. "-5%", "+51%".
std::string FormatPercentChange(double fraction);

struct ReportOptions {
  ReportFormat format = ReportFormat::kTable;
  Language delta_from = Language::kHindi;
  Language delta_to = Language::kTamil;
  Metric delta_metric = Metric::kFAD;
};

struct Report {
  std::string text;
  std::vector<std::string> warnings;  // fingerprint mismatches
};

Report RenderReport(std::span<const Scorecard> cards, const ReportOptions& options = {});

}  // namespace psp

#endif  // PSP_REPORT_H_
