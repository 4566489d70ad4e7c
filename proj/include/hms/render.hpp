// Copyright 2026 The HMS Authors
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

#ifndef HMS_RENDER_HPP_
#define HMS_RENDER_HPP_

#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "hms/error.hpp"
#include "hms/model.hpp"

namespace hms {

struct Rgb {
  std::uint8_t r = 255, g = 255, b = 255;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using Palette = std::array<Rgb, 64>;

// 64 saturated hues in golden-angle order at alternating brightness. No
// entry is white.
inline Palette default_palette() {
  Palette p{};
  for (int i = 0; i < 64; ++i) {
    const double h = static_cast<double>((i * 37) % 64) / 64.0 * 6.0;
    const double v = (i % 2 == 0) ? 0.9 : 0.6;
    const double s = 0.85;
    const int sector = static_cast<int>(h) % 6;
    const double f = h - static_cast<int>(h);
    const double pp = v * (1 - s), q = v * (1 - s * f), t = v * (1 - s * (1 - f));
    double r = v, g = t, b = pp;
    switch (sector) {
      case 1: r = q; g = v; b = pp; break;
      case 2: r = pp; g = v; b = t; break;
      case 3: r = pp; g = q; b = v; break;
      case 4: r = t; g = pp; b = v; break;
      case 5: r = v; g = pp; b = q; break;
      default: break;
    }
    p[i] = {static_cast<std::uint8_t>(r * 255 + 0.5),
            static_cast<std::uint8_t>(g * 255 + 0.5),
            static_cast<std::uint8_t>(b * 255 + 0.5)};
  }
  return p;
}

// ASCII PPM (P3), one pixel per cell in displayed order, white background,
// color c drawn with palette[c % 64]. One text line per pixel row.
inline std::string render_ppm(const LabeledMatrix& m, const OrderingSolution& order,
                              const Palette& palette = default_palette()) {
  order.validate(m);
  const auto rpos = order.row_positions();
  const auto cpos = order.col_positions();
  std::vector<Color> grid(static_cast<std::size_t>(m.rows()) * m.cols(), kBackground);
  for (const Cell& c : m.cells()) {
    grid[static_cast<std::size_t>(rpos[c.row]) * m.cols() + cpos[c.col]] = c.color;
  }
  std::string out = "P3\n" + std::to_string(m.cols()) + " " +
                    std::to_string(m.rows()) + "\n255\n";
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      const Color v = grid[static_cast<std::size_t>(r) * m.cols() + c];
      const Rgb px = v == kBackground ? Rgb{} : palette[v % 64];
      if (c > 0) out += ' ';
      out += std::to_string(px.r) + ' ' + std::to_string(px.g) + ' ' +
             std::to_string(px.b);
    }
    out += '\n';
  }
  return out;
}

inline void write_ppm(const std::string& path, const LabeledMatrix& m,
                      const OrderingSolution& order,
                      const Palette& palette = default_palette()) {
  const std::string text = render_ppm(m, order, palette);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::kIo, "write failed for " + path);
}

}  // namespace hms

#endif  // HMS_RENDER_HPP_
