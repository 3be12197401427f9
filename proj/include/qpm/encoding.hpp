// Copyright 2026 The qpm Authors
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

#pragma once

// Image and database encoders (FRQI, NEQR, basis encoding, ideal amplitude
// injection) plus the digits CSV loader.
//
// Data-register layout: color qubits occupy the low bits, pixel-position
// qubits the high bits, so the basis index of |c>_C |z>_P is c + N_C * z.
// The index register of a database state sits above the data register.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qpm/core_sim.hpp"

namespace qpm {

class ImageData {
 public:
  ImageData(std::vector<int> intensities, int n_levels)
      : intensities_(std::move(intensities)), n_levels_(n_levels) {
    if (!is_power_of_two(intensities_.size()))
      throw std::invalid_argument("pixel count must be a power of two");
    if (n_levels_ < 2 || !is_power_of_two(static_cast<std::size_t>(n_levels_)))
      throw std::invalid_argument("color level count must be a power of two >= 2");
    for (int g : intensities_) {
      if (g < 0 || g >= n_levels_) {
        throw std::out_of_range("pixel intensity " + std::to_string(g) + " outside [0, " +
                                std::to_string(n_levels_ - 1) + "]");
      }
    }
  }

  std::size_t n_pixels() const { return intensities_.size(); }
  int n_levels() const { return n_levels_; }
  std::size_t pixel_qubits() const { return log2_exact(n_pixels()); }
  std::size_t color_qubits() const { return log2_exact(static_cast<std::size_t>(n_levels_)); }
  const std::vector<int>& intensities() const { return intensities_; }
  int operator[](std::size_t j) const { return intensities_[j]; }
  bool is_binary() const { return n_levels_ == 2; }

  friend bool operator==(const ImageData&, const ImageData&) = default;

 private:
  std::vector<int> intensities_;
  int n_levels_;
};

class Database {
 public:
  explicit Database(std::vector<ImageData> images, std::vector<std::string> labels = {})
      : images_(std::move(images)), labels_(std::move(labels)) {
    if (!is_power_of_two(images_.size()))
      throw std::invalid_argument("database size " + std::to_string(images_.size()) +
                                  " is not a power of two");
    for (const auto& im : images_) {
      if (im.n_pixels() != images_[0].n_pixels() || im.n_levels() != images_[0].n_levels())
        throw std::invalid_argument("database images must share pixel and level counts");
    }
    if (labels_.empty()) {
      for (std::size_t k = 0; k < images_.size(); ++k) labels_.push_back(std::to_string(k));
    } else if (labels_.size() != images_.size()) {
      throw std::invalid_argument("label count does not match image count");
    }
  }

  std::size_t size() const { return images_.size(); }
  std::size_t index_qubits() const { return log2_exact(images_.size()); }
  const ImageData& operator[](std::size_t k) const { return images_[k]; }
  const std::vector<ImageData>& images() const { return images_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<ImageData> images_;
  std::vector<std::string> labels_;
};

enum class EncodingScheme { kFrqi, kNeqr, kBasis, kIdealAmplitude };

inline std::string_view to_string(EncodingScheme s) {
  switch (s) {
    case EncodingScheme::kFrqi: return "frqi";
    case EncodingScheme::kNeqr: return "neqr";
    case EncodingScheme::kBasis: return "basis";
    case EncodingScheme::kIdealAmplitude: return "ideal";
  }
  return "?";
}

inline EncodingScheme parse_encoding_scheme(std::string_view s) {
  if (s == "frqi" || s == "FRQI") return EncodingScheme::kFrqi;
  if (s == "neqr" || s == "NEQR") return EncodingScheme::kNeqr;
  if (s == "basis" || s == "BASIS") return EncodingScheme::kBasis;
  if (s == "ideal" || s == "IDEAL_AMPLITUDE") return EncodingScheme::kIdealAmplitude;
  throw std::invalid_argument("unknown encoding scheme '" + std::string(s) + "'");
}

/// Data-register width for an image under FRQI (1 + n_P) or NEQR (n_C + n_P).
inline std::size_t data_qubits(const ImageData& image, EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::kFrqi: return 1 + image.pixel_qubits();
    case EncodingScheme::kNeqr: return image.color_qubits() + image.pixel_qubits();
    default: throw std::invalid_argument("data_qubits: scheme has no image layout");
  }
}

using AngleMap = std::function<double(int)>;

/// theta = g / (N_C - 1) * pi/2, which sends black to 0 and full intensity to pi/2.
inline AngleMap linear_angle_map(int n_levels) {
  return [n_levels](int g) {
    return static_cast<double>(g) / static_cast<double>(n_levels - 1) * (std::numbers::pi / 2.0);
  };
}

inline std::vector<double> frqi_amplitudes(const ImageData& image, const AngleMap& angle_map) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(image.n_pixels()));
  std::vector<double> amps(2 * image.n_pixels(), 0.0);
  for (std::size_t z = 0; z < image.n_pixels(); ++z) {
    const double theta = angle_map(image[z]);
    if (!(theta >= 0.0 && theta <= std::numbers::pi / 2.0 + 1e-15))
      throw std::out_of_range("FRQI angle outside [0, pi/2]");
    amps[2 * z] = scale * std::cos(theta);
    amps[2 * z + 1] = scale * std::sin(theta);
  }
  return amps;
}

inline std::vector<double> frqi_amplitudes(const ImageData& image) {
  return frqi_amplitudes(image, linear_angle_map(image.n_levels()));
}

inline Statevector frqi_state(const ImageData& image, const AngleMap& angle_map) {
  return Statevector::from_real(frqi_amplitudes(image, angle_map));
}

inline Statevector frqi_state(const ImageData& image) {
  return frqi_state(image, linear_angle_map(image.n_levels()));
}

inline std::vector<double> neqr_amplitudes(const ImageData& image) {
  const auto n_c = static_cast<std::size_t>(image.n_levels());
  const double scale = 1.0 / std::sqrt(static_cast<double>(image.n_pixels()));
  std::vector<double> amps(n_c * image.n_pixels(), 0.0);
  for (std::size_t z = 0; z < image.n_pixels(); ++z) {
    amps[static_cast<std::size_t>(image[z]) + n_c * z] = scale;
  }
  return amps;
}

inline Statevector neqr_state(const ImageData& image) {
  return Statevector::from_real(neqr_amplitudes(image));
}

inline std::vector<double> encode_image(const ImageData& image, EncodingScheme scheme) {
  switch (scheme) {
    case EncodingScheme::kFrqi: return frqi_amplitudes(image);
    case EncodingScheme::kNeqr: return neqr_amplitudes(image);
    default: throw std::invalid_argument("encode_image: use frqi or neqr");
  }
}

/// (1/sqrt(N_I)) sum_k |data(k)>|k> from per-item data vectors of equal length.
inline Statevector database_state_from_vectors(const std::vector<std::vector<double>>& items) {
  if (!is_power_of_two(items.size()))
    throw std::invalid_argument("database size " + std::to_string(items.size()) +
                                " is not a power of two");
  const std::size_t n_d = items.front().size();
  if (!is_power_of_two(n_d)) throw std::invalid_argument("data vector length must be a power of two");
  const double scale = 1.0 / std::sqrt(static_cast<double>(items.size()));
  std::vector<Complex> amps(n_d * items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].size() != n_d) throw std::invalid_argument("data vectors differ in length");
    for (std::size_t j = 0; j < n_d; ++j) amps[j + n_d * k] = scale * items[k][j];
  }
  return Statevector::from_amplitudes(std::move(amps));
}

inline Statevector database_state(const Database& db, EncodingScheme scheme) {
  std::vector<std::vector<double>> items;
  items.reserve(db.size());
  for (const auto& im : db.images()) items.push_back(encode_image(im, scheme));
  return database_state_from_vectors(items);
}

/// Basis encoding: each item is a set of N_BE distinct data-register basis
/// indices, all items carrying the same N_BE. With N_I = items.size(), every
/// listed |j>|k> gets amplitude 1/sqrt(N_I N_BE). A single item yields an
/// n_D-qubit state with no index register.
inline Statevector basis_encoded_state(const std::vector<std::vector<BasisIndex>>& items,
                                       std::size_t n_data_qubits) {
  if (items.empty() || !is_power_of_two(items.size()))
    throw std::invalid_argument("item count must be a power of two");
  const std::size_t n_be = items.front().size();
  if (n_be == 0) throw std::invalid_argument("items need at least one basis vector");
  const std::size_t n_d = std::size_t{1} << n_data_qubits;
  const double amp = 1.0 / std::sqrt(static_cast<double>(items.size() * n_be));
  std::vector<Complex> amps(n_d * items.size());
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (items[k].size() != n_be) throw std::invalid_argument("items must share N_BE");
    for (BasisIndex j : items[k]) {
      if (j >= n_d) throw std::out_of_range("basis index exceeds data register");
      auto& slot = amps[j + n_d * k];
      if (slot != 0.0) throw std::invalid_argument("duplicate basis index within one item");
      slot = amp;
    }
  }
  return Statevector::from_amplitudes(std::move(amps));
}

/// Ideal encoder: the state with exactly these amplitudes.
inline Statevector inject_amplitudes(std::span<const double> amplitudes) {
  if (!is_power_of_two(amplitudes.size()))
    throw std::invalid_argument("amplitude vector length must be a power of two");
  double norm2 = 0.0;
  for (double a : amplitudes) norm2 += a * a;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9)
    throw std::invalid_argument("amplitude vector is not normalized (norm " +
                                std::to_string(std::sqrt(norm2)) + ")");
  return Statevector::from_real(amplitudes);
}

// ---------------------------------------------------------------------------
// CNOT-count estimators for exact n-qubit state preparation.

enum class Connectivity { kAllToAll, kNearestNeighbor };

struct CnotEstimate {
  std::int64_t numerator;
  std::int64_t denominator;
  double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
  bool is_integer() const { return numerator % denominator == 0; }
};

/// All-to-all: 2^n - n - 1. Nearest neighbor:
/// (10/3) 2^n + 2n^2 - 12n + (14/3 for even n, 10/3 for odd n).
inline CnotEstimate cnot_count_estimate(int n, Connectivity mode) {
  if (n < 1 || n > 60) throw std::invalid_argument("cnot_count_estimate: n out of range");
  const std::int64_t pow2 = std::int64_t{1} << n;
  if (mode == Connectivity::kAllToAll) return {pow2 - n - 1, 1};
  // everything times 3
  std::int64_t num = 10 * pow2 + 6 * std::int64_t{n} * n - 36 * std::int64_t{n} + (n % 2 == 0 ? 14 : 10);
  std::int64_t den = 3;
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

// ---------------------------------------------------------------------------
// Toy 4-pixel binary images, named by hex: bit j of the nibble is pixel j.

inline ImageData binary_image(unsigned nibble) {
  if (nibble > 0xF) throw std::out_of_range("toy image id must be 0..15");
  std::vector<int> px(4);
  for (unsigned j = 0; j < 4; ++j) px[j] = static_cast<int>((nibble >> j) & 1U);
  return ImageData(std::move(px), 2);
}

inline std::string hex_name(unsigned nibble) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  return std::string(1, kDigits[nibble & 0xF]) + "h";
}

/// {0h, 2h, 4h, 6h, 8h, Ah, Ch, Eh}
inline Database toy16_database() {
  std::vector<ImageData> images;
  std::vector<std::string> labels;
  for (unsigned h = 0; h < 16; h += 2) {
    images.push_back(binary_image(h));
    labels.push_back(hex_name(h));
  }
  return Database(std::move(images), std::move(labels));
}

inline unsigned parse_toy_name(std::string_view s) {
  if (!s.empty() && (s.back() == 'h' || s.back() == 'H')) s.remove_suffix(1);
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, 16);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || v > 0xF)
    throw std::invalid_argument("bad toy image name '" + std::string(s) + "' (expected 0h..Fh)");
  return v;
}

// ---------------------------------------------------------------------------
// Handwritten digits, 8x8 with 0..16 intensities, one image per CSV line:
// 64 pixel integers then the integer label.

struct DigitsDataset {
  std::vector<ImageData> images;
  std::vector<int> labels;

  /// First image carrying each requested label, in request order.
  Database select(const std::vector<int>& wanted) const {
    std::vector<ImageData> picked;
    std::vector<std::string> names;
    for (int label : wanted) {
      bool found = false;
      for (std::size_t i = 0; i < images.size(); ++i) {
        if (labels[i] == label) {
          picked.push_back(images[i]);
          names.push_back("digit " + std::to_string(label));
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("no image with label " + std::to_string(label));
    }
    return Database(std::move(picked), std::move(names));
  }

  const ImageData& first_with_label(int label) const {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (labels[i] == label) return images[i];
    throw std::invalid_argument("no image with label " + std::to_string(label));
  }
};

inline constexpr int kDigitsLevels = 16;
inline constexpr int kDigitsRawMax = 16;

namespace detail {

inline std::optional<int> parse_int_field(std::string_view f) {
  while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
  while (!f.empty() && (f.back() == ' ' || f.back() == '\t' || f.back() == '\r')) f.remove_suffix(1);
  int v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) return std::nullopt;
  return v;
}

}  // namespace detail

inline DigitsDataset parse_digits_csv(std::istream& in) {
  DigitsDataset out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (;;) {
      auto pos = rest.find(',');
      fields.push_back(rest.substr(0, pos));
      if (pos == std::string_view::npos) break;
      rest.remove_prefix(pos + 1);
    }
    const bool numeric_head = detail::parse_int_field(fields.front()).has_value();
    if (line_no == 1 && !numeric_head) continue;  // header
    const std::string where = "digits csv line " + std::to_string(line_no) + ": ";
    if (fields.size() != 65)
      throw std::runtime_error(where + "expected 65 fields, got " + std::to_string(fields.size()));
    std::vector<int> px(64);
    for (std::size_t j = 0; j < 64; ++j) {
      auto v = detail::parse_int_field(fields[j]);
      if (!v) throw std::runtime_error(where + "non-integer pixel field");
      if (*v < 0 || *v > kDigitsRawMax)
        throw std::runtime_error(where + "pixel value " + std::to_string(*v) + " outside [0,16]");
      px[j] = std::min(*v, kDigitsLevels - 1);
    }
    auto label = detail::parse_int_field(fields[64]);
    if (!label) throw std::runtime_error(where + "non-integer label");
    out.images.emplace_back(std::move(px), kDigitsLevels);
    out.labels.push_back(*label);
  }
  return out;
}

inline DigitsDataset load_digits_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open digits csv '" + path + "'");
  return parse_digits_csv(in);
}

}  // namespace qpm
