// Copyright (c) 2026 The SyncGAN Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "image_io.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "data.hpp"

namespace syncgan {

namespace {

constexpr std::uint8_t kGutter = 128;

std::size_t widest(const std::vector<GrayImage>& v, bool height) {
  std::size_t m = 0;
  for (const auto& g : v) m = std::max(m, height ? g.height : g.width);
  return m;
}

}  // namespace

GrayImage to_gray(std::span<const double> values, const SampleShape& shape) {
  if (values.size() != shape.dim())
    throw DataError(DataError::Kind::kInvalid, "pgm: sample size does not match its shape");
  GrayImage g{shape.height, shape.width, {}};
  g.pixels.reserve(values.size());
  for (double v : values) g.pixels.push_back(unit_to_byte(v));
  return g;
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(DataError::Kind::kIo, "pgm: cannot write " + path.string());
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw DataError(DataError::Kind::kIo, "pgm: failed writing " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(DataError::Kind::kIo, "pgm: cannot open " + path.string());
  std::string magic;
  std::size_t maxval = 0;
  GrayImage g;
  in >> magic >> g.width >> g.height >> maxval;
  if (magic != "P5" || maxval != 255 || !in)
    throw DataError(DataError::Kind::kBadMagic, "pgm: " + path.string() + " is not an 8-bit P5 file");
  in.get();  // single whitespace byte before the raster
  g.pixels.resize(g.width * g.height);
  in.read(reinterpret_cast<char*>(g.pixels.data()), static_cast<std::streamsize>(g.pixels.size()));
  if (in.gcount() != static_cast<std::streamsize>(g.pixels.size()))
    throw DataError(DataError::Kind::kTruncated, "pgm: " + path.string() + " is truncated");
  return g;
}

GrayImage contact_sheet(const std::vector<GrayImage>& left, const std::vector<GrayImage>& right) {
  if (left.size() != right.size()) throw DataError(DataError::Kind::kInvalid, "contact sheet: unequal columns");
  const auto w1 = widest(left, false), w2 = widest(right, false);
  const auto row_h = std::max(widest(left, true), widest(right, true));
  GrayImage sheet;
  sheet.width = w1 + w2 + 3;
  sheet.height = left.size() * (row_h + 1) + 1;
  sheet.pixels.assign(sheet.width * sheet.height, kGutter);
  auto blit = [&](const GrayImage& g, std::size_t top, std::size_t col) {
    for (std::size_t r = 0; r < g.height; ++r)
      std::copy_n(g.pixels.begin() + r * g.width, g.width, sheet.pixels.begin() + (top + r) * sheet.width + col);
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    const auto top = 1 + i * (row_h + 1);
    blit(left[i], top, 1);
    blit(right[i], top, w1 + 2);
  }
  return sheet;
}

}  // namespace syncgan
