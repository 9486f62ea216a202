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

#ifndef PSP_SRC_JSON_UTIL_H_
#define PSP_SRC_JSON_UTIL_H_

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "psp/error.h"

namespace psp::internal {

using Json = nlohmann::ordered_json;

inline std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

inline Json ParseJson(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, what + ": " + e.what());
  }
}

inline Json ReadJsonFile(const std::filesystem::path& path) {
  return ParseJson(ReadTextFile(path), path.string());
}

inline void WriteJsonFile(const std::filesystem::path& path, const Json& json) {
  WriteTextFile(path, json.dump(2) + "\n");
}

// Field access with a parse error naming the missing key.
template <typename T>
T Get(const Json& json, const char* key, const std::string& what) {
  auto it = json.find(key);
  if (it == json.end()) throw Error(ErrorCode::kParse, what + ": missing '" + key + "'");
  try {
    return it->get<T>();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, what + ": bad '" + key + "': " + e.what());
  }
}

}  // namespace psp::internal

#endif  // PSP_SRC_JSON_UTIL_H_
