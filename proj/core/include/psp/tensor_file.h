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

#ifndef PSP_TENSOR_FILE_H_
#define PSP_TENSOR_FILE_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "psp/types.h"

namespace psp {

// On-disk layout (all integers little-endian):
//
//   offset 0   4 bytes   magic "PSPT"
//   offset 4   u8        version (1)
//   offset 5   u8        dtype (0 = float32)
//   offset 6   u8        ndim (1 or 2)
//   offset 7   ndim*u32  dims
//   ...        payload   prod(dims) float32 values, row-major
//
// Nothing may follow the payload.
inline constexpr char kTensorMagic[4] = {'P', 'S', 'P', 'T'};
inline constexpr std::uint8_t kTensorVersion = 1;
inline constexpr std::uint8_t kTensorDtypeFloat32 = 0;
inline constexpr std::uint64_t kMaxTensorElements = std::uint64_t{1} << 31;

// Raw float32 tensor, exactly as stored. Kept separate from the double
// matrices used for computation so that read/write is bit-preserving.
struct Tensor {
  std::vector<std::uint32_t> dims;
  std::vector<float> values;

  std::uint64_t ElementCount() const;
  bool operator==(const Tensor&) const = default;
};

Tensor DecodeTensor(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> EncodeTensor(const Tensor& tensor);

Tensor ReadTensor(const std::filesystem::path& path);
void WriteTensor(const std::filesystem::path& path, const Tensor& tensor);

// Conversions to and from the computation types. ToMatrix accepts a 1-D
// tensor as a single row; ToVector accepts a 1-D tensor or a 2-D tensor with
// one row or one column.
Matrix ToMatrix(const Tensor& tensor);
Vector ToVector(const Tensor& tensor);
Tensor FromMatrix(const Matrix& matrix);
Tensor FromVector(const Vector& vector);

}  // namespace psp

#endif  // PSP_TENSOR_FILE_H_
