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

#include "psp/scorecard.h"

#include <cstdio>
#include <sstream>

#include "json_util.h"
#include "psp/error.h"

namespace psp {
namespace {

using internal::Get;
using internal::Json;

Json OptionalNumber(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> ReadOptionalNumber(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}

Json FrechetJson(const std::optional<FrechetResult>& r) {
  if (!r) return nullptr;
  Json j;
  j["total"] = r->total;
  j["mean_dist"] = r->mean_dist;
  j["trace_term"] = r->trace_term;
  return j;
}

std::optional<FrechetResult> FrechetFromJson(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return FrechetResult{j.at("total").get<double>(), j.at("mean_dist").get<double>(),
                       j.at("trace_term").get<double>()};
}

DimensionStatus ParseStatus(const std::string& s) {
  if (s == "ok") return DimensionStatus::kOk;
  if (s == "n/a") return DimensionStatus::kNotApplicable;
  if (s == "error") return DimensionStatus::kError;
  throw Error(ErrorCode::kParse, "unknown dimension status '" + s + "'");
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string_view DimensionStatusName(DimensionStatus status) {
  switch (status) {
    case DimensionStatus::kOk: return "ok";
    case DimensionStatus::kNotApplicable: return "n/a";
    case DimensionStatus::kError: return "error";
  }
  return "error";
}

bool Scorecard::IsPartial() const {
  if (n_failed > 0) return true;
  for (const auto& [dim, result] : per_dimension) {
    if (result.status == DimensionStatus::kError) return true;
  }
  return !fad || !psd;
}

std::string ScorecardToJson(const Scorecard& card) {
  Json j;
  j["schema"] = kScorecardSchema;
  j["kind"] = card.kind == ScorecardKind::kNativeFloor ? "native_floor" : "system";
  j["system"] = card.system;
  j["language"] = LanguageCode(card.language);
  j["n_wavs"] = card.n_wavs;
  j["n_failed"] = card.n_failed;
  j["failed_utterances"] = card.failed_utterances;
  j["config_fingerprint"] = card.config_fingerprint;

  Json settings;
  settings["tau"] = card.settings.tau;
  settings["eps"] = card.settings.eps;
  settings["zscore_psd"] = card.settings.zscore_psd;
  Json boot;
  boot["method"] = "percentile";
  boot["replicates"] = card.settings.bootstrap.replicates;
  boot["alpha"] = card.settings.bootstrap.alpha;
  boot["seed"] = card.settings.bootstrap.seed;
  boot["resample_unit"] =
      card.settings.bootstrap.unit == ResampleUnit::kToken ? "token" : "utterance";
  boot["rng"] = "mt19937_64/splitmix64";
  settings["bootstrap"] = std::move(boot);
  j["settings"] = std::move(settings);
  j["lf_native_ratio"] = OptionalNumber(card.lf_native_ratio);

  Json dims = Json::object();
  for (const auto& [dim, result] : card.per_dimension) {
    Json d;
    d["status"] = DimensionStatusName(result.status);
    if (result.score) {
      const DimensionScore& s = *result.score;
      d["mean_fidelity"] = s.mean_fidelity;
      d["collapse_rate"] = s.has_collapse ? Json(s.collapse_rate) : Json(nullptr);
      d["n_tokens"] = s.n_tokens;
      d["ci"] = {s.ci_low, s.ci_high};
      d["collapse_ci"] = s.has_collapse ? Json({s.collapse_ci_low, s.collapse_ci_high})
                                        : Json(nullptr);
      d["normalized"] = OptionalNumber(s.normalized);
    }
    if (!result.note.empty()) d["note"] = result.note;
    dims[std::string(DimensionName(dim))] = std::move(d);
  }
  j["dimensions"] = std::move(dims);
  j["fad"] = FrechetJson(card.fad);
  if (!card.fad_note.empty()) j["fad_note"] = card.fad_note;
  j["psd"] = FrechetJson(card.psd);
  if (!card.psd_note.empty()) j["psd_note"] = card.psd_note;
  j["warnings"] = card.warnings;
  return j.dump(2) + "\n";
}

Scorecard ScorecardFromJson(std::string_view json_text) {
  const Json j = internal::ParseJson(std::string(json_text), "scorecard");
  const std::string what = "scorecard";
  if (Get<std::string>(j, "schema", what) != kScorecardSchema) {
    throw Error(ErrorCode::kParse, "unsupported scorecard schema");
  }
  try {
    Scorecard card;
    card.kind = Get<std::string>(j, "kind", what) == "native_floor" ? ScorecardKind::kNativeFloor
                                                                   : ScorecardKind::kSystem;
    card.system = Get<std::string>(j, "system", what);
    card.language = ParseLanguage(Get<std::string>(j, "language", what));
    card.n_wavs = j.value("n_wavs", 0);
    card.n_failed = j.value("n_failed", 0);
    card.failed_utterances = j.value("failed_utterances", std::vector<std::string>{});
    card.config_fingerprint = j.value("config_fingerprint", std::string());
    if (auto s = j.find("settings"); s != j.end()) {
      card.settings.tau = s->value("tau", kDefaultCollapseThreshold);
      card.settings.eps = s->value("eps", kDefaultFrechetEpsilon);
      card.settings.zscore_psd = s->value("zscore_psd", false);
      if (auto b = s->find("bootstrap"); b != s->end()) {
        card.settings.bootstrap.replicates = b->value("replicates", 1000);
        card.settings.bootstrap.alpha = b->value("alpha", 0.05);
        card.settings.bootstrap.seed = b->value("seed", std::uint64_t{0});
        card.settings.bootstrap.unit = b->value("resample_unit", std::string("utterance")) == "token"
                                           ? ResampleUnit::kToken
                                           : ResampleUnit::kUtterance;
      }
    }
    card.lf_native_ratio = ReadOptionalNumber(j, "lf_native_ratio");
    const Json dims = Get<Json>(j, "dimensions", what);
    for (const auto& [name, d] : dims.items()) {
      DimensionResult result;
      result.status = ParseStatus(Get<std::string>(d, "status", what));
      result.note = d.value("note", std::string());
      if (d.contains("mean_fidelity")) {
        DimensionScore s;
        s.dimension = ParseDimension(name);
        s.mean_fidelity = d.at("mean_fidelity").get<double>();
        s.has_collapse = !d.at("collapse_rate").is_null();
        s.n_tokens = d.at("n_tokens").get<long>();
        s.ci_low = d.at("ci").at(0).get<double>();
        s.ci_high = d.at("ci").at(1).get<double>();
        if (s.has_collapse) {
          s.collapse_rate = d.at("collapse_rate").get<double>();
          s.collapse_ci_low = d.at("collapse_ci").at(0).get<double>();
          s.collapse_ci_high = d.at("collapse_ci").at(1).get<double>();
        }
        s.normalized = ReadOptionalNumber(d, "normalized");
        result.score = s;
      }
      card.per_dimension[ParseDimension(name)] = std::move(result);
    }
    card.fad = FrechetFromJson(j.value("fad", Json(nullptr)));
    card.fad_note = j.value("fad_note", std::string());
    card.psd = FrechetFromJson(j.value("psd", Json(nullptr)));
    card.psd_note = j.value("psd_note", std::string());
    card.warnings = j.value("warnings", std::vector<std::string>{});
    return card;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("scorecard: ") + e.what());
  }
}

Scorecard ReadScorecard(const std::filesystem::path& path) {
  try {
    return ScorecardFromJson(internal::ReadTextFile(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WriteScorecard(const std::filesystem::path& path, const Scorecard& card) {
  internal::WriteTextFile(path, ScorecardToJson(card));
}

std::string RenderScorecardTable(const Scorecard& card) {
  std::ostringstream out;
  out << (card.kind == ScorecardKind::kNativeFloor ? "Native floor" : "System") << ": "
      << card.system << " [" << LanguageCode(card.language) << "]  wavs=" << card.n_wavs;
  if (card.n_failed > 0) out << "  failed=" << card.n_failed;
  out << "\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-4s %-6s %9s %17s %9s %17s %7s %10s\n", "dim", "status",
                "fidelity", "95% CI", "collapse", "95% CI", "tokens", "normalized");
  out << line;
  for (const auto& [dim, result] : card.per_dimension) {
    if (!result.score) {
      std::snprintf(line, sizeof(line), "%-4s %-6s %s\n", std::string(DimensionName(dim)).c_str(),
                    std::string(DimensionStatusName(result.status)).c_str(), result.note.c_str());
      out << line;
      continue;
    }
    const DimensionScore& s = *result.score;
    const std::string ci = "[" + Fixed(s.ci_low, 3) + ", " + Fixed(s.ci_high, 3) + "]";
    const std::string collapse = s.has_collapse ? Fixed(s.collapse_rate, 3) : "-";
    const std::string cci =
        s.has_collapse
            ? "[" + Fixed(s.collapse_ci_low, 3) + ", " + Fixed(s.collapse_ci_high, 3) + "]"
            : "-";
    std::snprintf(line, sizeof(line), "%-4s %-6s %9.3f %17s %9s %17s %7ld %10s\n",
                  std::string(DimensionName(dim)).c_str(),
                  std::string(DimensionStatusName(result.status)).c_str(), s.mean_fidelity,
                  ci.c_str(), collapse.c_str(), cci.c_str(), s.n_tokens,
                  s.normalized ? Fixed(*s.normalized, 3).c_str() : "-");
    out << line;
  }
  auto frechet_line = [&](const char* name, const std::optional<FrechetResult>& r,
                          const std::string& note) {
    if (r) {
      std::snprintf(line, sizeof(line), "%-4s total=%.4g  |mu_g-mu_n|=%.4g  tr-term=%.4g\n", name,
                    r->total, r->mean_dist, r->trace_term);
    } else {
      std::snprintf(line, sizeof(line), "%-4s error  %s\n", name, note.c_str());
    }
    out << line;
  };
  frechet_line("FAD", card.fad, card.fad_note);
  frechet_line("PSD", card.psd, card.psd_note);
  out << "fingerprint " << card.config_fingerprint << "\n";
  return out.str();
}

std::string Fnv1aHex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace psp
