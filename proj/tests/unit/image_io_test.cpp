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

#include <gtest/gtest.h>

#include <fstream>

#include "data.hpp"
#include "image_io.hpp"
#include "tempdir.hpp"

namespace syncgan {
namespace {

TEST(PgmTest, RoundTripWithinQuantization) {
  Rng rng(3);
  std::vector<double> v(6 * 5);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  v[0] = -1.0;
  v[1] = 1.0;
  const auto img = to_gray(v, SampleShape{6, 5});
  testing::TempDir dir("pgm");
  write_pgm(dir.path() / "a.pgm", img);
  const auto back = read_pgm(dir.path() / "a.pgm");
  ASSERT_EQ(back.height, 6u);
  ASSERT_EQ(back.width, 5u);
  EXPECT_EQ(back.pixels, img.pixels);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(byte_to_unit(back.pixels[i]), v[i], 1.0 / 255.0);
  EXPECT_EQ(back.pixels[0], 0);
  EXPECT_EQ(back.pixels[1], 255);
}

TEST(PgmTest, RejectsForeignAndShortFiles) {
  testing::TempDir dir("pgm");
  std::ofstream(dir.path() / "x.pgm") << "P2\n2 2\n255\n0 0 0 0\n";
  EXPECT_THROW(read_pgm(dir.path() / "x.pgm"), DataError);
  std::ofstream(dir.path() / "y.pgm", std::ios::binary) << "P5\n4 4\n255\n" << std::string(3, 'a');
  EXPECT_THROW(read_pgm(dir.path() / "y.pgm"), DataError);
  EXPECT_THROW(to_gray(std::vector<double>(5), SampleShape{2, 2}), DataError);
}

TEST(PgmTest, ContactSheetLayout) {
  const GrayImage a{2, 3, std::vector<std::uint8_t>(6, 10)};
  const GrayImage b{2, 3, std::vector<std::uint8_t>(6, 200)};
  const auto sheet = contact_sheet({a, a}, {b, b});
  EXPECT_GT(sheet.width, 6u);
  EXPECT_GT(sheet.height, 4u);
  EXPECT_EQ(sheet.pixels.size(), sheet.width * sheet.height);
  EXPECT_THROW(contact_sheet({a}, {}), DataError);
}

}  // namespace
}  // namespace syncgan
