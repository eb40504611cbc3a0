// Copyright 2026 The maskforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "maskforge/image.hpp"

namespace maskforge {

using Bytes = std::vector<std::uint8_t>;

/// Parses binary (P5) or ASCII (P2) PGM. Header comments are skipped.
/// Sample values are returned as stored; maxval must not exceed 255.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);

/// Emits P5 with maxval 255.
Bytes write_pgm(const GrayImage& img);

/// Emits the ASCII variant; mostly useful for tests and hand inspection.
Bytes write_pgm_ascii(const GrayImage& img);

/// Emits binary PPM (P6), maxval 255.
Bytes write_ppm(const RgbImage& img);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, const std::string& text);

GrayImage load_pgm(const std::filesystem::path& path);
void save_pgm(const std::filesystem::path& path, const GrayImage& img);
/// Masks are stored as P5 with values exactly {0,255}.
void save_mask(const std::filesystem::path& path, const BinaryMask& mask);
BinaryMask load_mask(const std::filesystem::path& path);
void save_ppm(const std::filesystem::path& path, const RgbImage& img);

}  // namespace maskforge
