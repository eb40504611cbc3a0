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

#include "maskforge/pnm.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <optional>
#include <string_view>

namespace maskforge {

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string_view magic() {
    if (bytes_.size() < 2) throw Error(ErrorCode::MalformedHeader, "file too short");
    pos_ = 2;
    return {reinterpret_cast<const char*>(bytes_.data()), 2};
  }

  // Whitespace and '#' comments may appear between any two header tokens.
  void skip_separators() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::optional<long> number() {
    skip_separators();
    long value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000L) return std::nullopt;
      ++pos_;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
    return value;
  }

  long header_field(const char* name) {
    auto v = number();
    if (!v) throw Error(ErrorCode::MalformedHeader, std::string("bad or missing ") + name);
    return *v;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_whitespace() const { return pos_ < bytes_.size() && std::isspace(bytes_[pos_]); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

Bytes header(const char* magic, int w, int h) {
  const std::string s = std::string(magic) + "\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
  return Bytes(s.begin(), s.end());
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  HeaderReader in(bytes);
  const auto magic = in.magic();
  const bool binary = magic == "P5";
  if (!binary && magic != "P2") throw Error(ErrorCode::MalformedHeader, "not a P2/P5 PGM");

  const long width = in.header_field("width");
  const long height = in.header_field("height");
  const long maxval = in.header_field("maxval");
  if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension) {
    throw Error(ErrorCode::MalformedHeader, "dimensions out of range");
  }
  if (maxval < 1 || maxval > 65535) throw Error(ErrorCode::MalformedHeader, "maxval out of range");
  if (maxval > 255) throw Error(ErrorCode::UnsupportedMaxval, "maxval " + std::to_string(maxval));

  GrayImage img(static_cast<int>(width), static_cast<int>(height));
  auto px = img.pixels();
  if (binary) {
    if (!in.at_whitespace()) throw Error(ErrorCode::MalformedHeader, "missing separator after maxval");
    in.advance(1);
    if (in.remaining() < px.size()) throw Error(ErrorCode::TruncatedData, "raster shorter than header");
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(in.pos()), px.size(), px.begin());
  } else {
    for (auto& p : px) {
      auto v = in.number();
      if (!v) throw Error(ErrorCode::TruncatedData, "raster shorter than header");
      if (*v > maxval) throw Error(ErrorCode::MalformedHeader, "sample exceeds maxval");
      p = static_cast<std::uint8_t>(*v);
    }
  }
  for (auto p : px) {
    if (p > maxval) throw Error(ErrorCode::MalformedHeader, "sample exceeds maxval");
  }
  return img;
}

Bytes write_pgm(const GrayImage& img) {
  Bytes out = header("P5", img.width(), img.height());
  out.insert(out.end(), img.pixels().begin(), img.pixels().end());
  return out;
}

Bytes write_pgm_ascii(const GrayImage& img) {
  std::string s = "P2\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (x) s += ' ';
      s += std::to_string(img(y, x));
    }
    s += '\n';
  }
  return Bytes(s.begin(), s.end());
}

Bytes write_ppm(const RgbImage& img) {
  Bytes out = header("P6", img.width, img.height);
  out.insert(out.end(), img.data.begin(), img.data.end());
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot create " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

GrayImage load_pgm(const std::filesystem::path& path) { return read_pgm(read_file(path)); }

void save_pgm(const std::filesystem::path& path, const GrayImage& img) {
  write_file(path, write_pgm(img));
}

void save_mask(const std::filesystem::path& path, const BinaryMask& mask) {
  save_pgm(path, to_gray(mask));
}

BinaryMask load_mask(const std::filesystem::path& path) { return to_mask(load_pgm(path)); }

void save_ppm(const std::filesystem::path& path, const RgbImage& img) {
  write_file(path, write_ppm(img));
}

}  // namespace maskforge
