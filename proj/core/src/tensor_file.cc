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

#include "psp/tensor_file.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "psp/error.h"

namespace psp {
namespace {

std::uint32_t LoadU32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) | (std::uint32_t{p[2]} << 16) |
         (std::uint32_t{p[3]} << 24);
}

void StoreU32(std::uint32_t v, std::vector<std::uint8_t>& out) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::uint64_t CheckedElementCount(std::span<const std::uint32_t> dims) {
  std::uint64_t count = 1;
  for (std::uint32_t d : dims) {
    if (d == 0) throw Error(ErrorCode::kBadHeader, "zero-length dimension");
    count *= d;
    if (count > kMaxTensorElements) {
      throw Error(ErrorCode::kDimOverflow, "tensor exceeds 2^31 elements");
    }
  }
  return count;
}

}  // namespace

std::uint64_t Tensor::ElementCount() const {
  std::uint64_t count = 1;
  for (std::uint32_t d : dims) count *= d;
  return count;
}

Tensor DecodeTensor(std::span<const std::uint8_t> bytes) {
  constexpr std::size_t kFixedHeader = 7;
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kTensorMagic, 4) != 0) {
    throw Error(ErrorCode::kBadMagic, "missing PSPT magic");
  }
  if (bytes.size() < kFixedHeader) {
    throw Error(ErrorCode::kTruncatedPayload, "header truncated");
  }
  if (bytes[4] != kTensorVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                "tensor version " + std::to_string(bytes[4]));
  }
  if (bytes[5] != kTensorDtypeFloat32) {
    throw Error(ErrorCode::kBadHeader, "unsupported dtype " + std::to_string(bytes[5]));
  }
  const std::size_t ndim = bytes[6];
  if (ndim != 1 && ndim != 2) {
    throw Error(ErrorCode::kBadHeader, "ndim must be 1 or 2, got " + std::to_string(ndim));
  }
  const std::size_t header = kFixedHeader + 4 * ndim;
  if (bytes.size() < header) throw Error(ErrorCode::kTruncatedPayload, "dims truncated");

  Tensor tensor;
  for (std::size_t i = 0; i < ndim; ++i) {
    tensor.dims.push_back(LoadU32(bytes.data() + kFixedHeader + 4 * i));
  }
  const std::uint64_t count = CheckedElementCount(tensor.dims);
  const std::uint64_t payload = bytes.size() - header;
  if (payload < 4 * count) {
    throw Error(ErrorCode::kTruncatedPayload, "expected " + std::to_string(4 * count) +
                                                  " payload bytes, found " +
                                                  std::to_string(payload));
  }
  if (payload > 4 * count) {
    throw Error(ErrorCode::kTrailingBytes,
                std::to_string(payload - 4 * count) + " bytes after payload");
  }
  tensor.values.resize(count);
  const std::uint8_t* p = bytes.data() + header;
  for (std::uint64_t i = 0; i < count; ++i, p += 4) {
    tensor.values[i] = std::bit_cast<float>(LoadU32(p));
  }
  return tensor;
}

std::vector<std::uint8_t> EncodeTensor(const Tensor& tensor) {
  if (tensor.dims.size() != 1 && tensor.dims.size() != 2) {
    throw Error(ErrorCode::kBadHeader, "ndim must be 1 or 2");
  }
  const std::uint64_t count = CheckedElementCount(tensor.dims);
  if (count != tensor.values.size()) {
    throw Error(ErrorCode::kInvalidArgument, "dims do not match value count");
  }
  std::vector<std::uint8_t> out(std::begin(kTensorMagic), std::end(kTensorMagic));
  out.push_back(kTensorVersion);
  out.push_back(kTensorDtypeFloat32);
  out.push_back(static_cast<std::uint8_t>(tensor.dims.size()));
  for (std::uint32_t d : tensor.dims) StoreU32(d, out);
  out.reserve(out.size() + 4 * count);
  for (float v : tensor.values) StoreU32(std::bit_cast<std::uint32_t>(v), out);
  return out;
}

Tensor ReadTensor(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  try {
    return DecodeTensor(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void WriteTensor(const std::filesystem::path& path, const Tensor& tensor) {
  const std::vector<std::uint8_t> bytes = EncodeTensor(tensor);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Matrix ToMatrix(const Tensor& tensor) {
  const Eigen::Index rows = tensor.dims.size() == 2 ? tensor.dims[0] : 1;
  const Eigen::Index cols = tensor.dims.size() == 2 ? tensor.dims[1] : tensor.dims.at(0);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = tensor.values[i];
  return m;
}

Vector ToVector(const Tensor& tensor) {
  if (tensor.dims.size() == 2 && tensor.dims[0] != 1 && tensor.dims[1] != 1) {
    throw Error(ErrorCode::kInvalidArgument, "expected a vector tensor");
  }
  Vector v(static_cast<Eigen::Index>(tensor.values.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = tensor.values[i];
  return v;
}

Tensor FromMatrix(const Matrix& matrix) {
  Tensor t;
  t.dims = {static_cast<std::uint32_t>(matrix.rows()), static_cast<std::uint32_t>(matrix.cols())};
  t.values.resize(matrix.size());
  for (Eigen::Index i = 0; i < matrix.size(); ++i) {
    t.values[i] = static_cast<float>(matrix.data()[i]);
  }
  return t;
}

Tensor FromVector(const Vector& vector) {
  Tensor t;
  t.dims = {static_cast<std::uint32_t>(vector.size())};
  t.values.resize(vector.size());
  for (Eigen::Index i = 0; i < vector.size(); ++i) t.values[i] = static_cast<float>(vector[i]);
  return t;
}

}  // namespace psp
