// Copyright 2026 The Panoground Authors. All Rights Reserved.
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

#include "panoground/mask.h"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

#include "panoground/errors.h"

namespace panoground {

namespace {

size_t WordCount(int width, int height) {
  return (size_t(width) * height + 63) / 64;
}

void CheckSameShape(const BinaryMask& a, const BinaryMask& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw InvalidArgumentError(
        "mask dimension mismatch: " + std::to_string(a.width()) + "x" +
        std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
        std::to_string(b.height()));
  }
}

uint64_t RunIntersection(const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b) {
  // Walk both run lists in lockstep; odd-indexed runs are ones.
  size_t ia = 0, ib = 0;
  uint64_t ra = a.empty() ? 0 : a[0], rb = b.empty() ? 0 : b[0];
  uint64_t inter = 0;
  while (ia < a.size() && ib < b.size()) {
    const uint64_t step = std::min(ra, rb);
    if ((ia & 1) && (ib & 1)) inter += step;
    ra -= step;
    rb -= step;
    while (ra == 0 && ++ia < a.size()) ra = a[ia];
    while (rb == 0 && ++ib < b.size()) rb = b[ib];
  }
  return inter;
}

}  // namespace

BinaryMask::BinaryMask(int width, int height)
    : width_(width), height_(height), words_(WordCount(width, height), 0) {
  if (width < 0 || height < 0) {
    throw InvalidArgumentError("negative mask dimension");
  }
}

BinaryMask BinaryMask::FromRuns(int width, int height,
                                std::vector<uint32_t> runs) {
  if (width < 0 || height < 0) {
    throw InvalidArgumentError("negative mask dimension");
  }
  const uint64_t total = std::accumulate(runs.begin(), runs.end(), uint64_t{0});
  if (total != uint64_t(width) * height) {
    throw InvalidArgumentError("run lengths sum to " + std::to_string(total) +
                               ", expected " +
                               std::to_string(uint64_t(width) * height));
  }
  BinaryMask m;
  m.width_ = width;
  m.height_ = height;
  m.rle_ = true;
  for (size_t i = 1; i < runs.size(); i += 2) m.count_ += runs[i];
  m.runs_ = std::move(runs);
  return m;
}

BinaryMask BinaryMask::FromWords(int width, int height,
                                 std::vector<uint64_t> words) {
  if (words.size() != WordCount(width, height)) {
    throw InvalidArgumentError("word count does not match mask size");
  }
  BinaryMask m;
  m.width_ = width;
  m.height_ = height;
  for (uint64_t w : words) m.count_ += std::popcount(w);
  m.words_ = std::move(words);
  return m;
}

BinaryMask BinaryMask::ParseRle(std::string_view text) {
  std::vector<int64_t> values;
  size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc() || v < 0 ||
        (ptr < text.data() + text.size() &&
         !std::isspace(static_cast<unsigned char>(*ptr)))) {
      throw ParseError("offset " + std::to_string(pos),
                       "expected a non-negative integer in RLE string");
    }
    values.push_back(v);
    pos = static_cast<size_t>(ptr - text.data());
  }
  if (values.size() < 2) {
    throw ParseError("offset 0", "RLE string needs width and height");
  }
  std::vector<uint32_t> runs(values.begin() + 2, values.end());
  try {
    return FromRuns(static_cast<int>(values[0]), static_cast<int>(values[1]),
                    std::move(runs));
  } catch (const InvalidArgumentError& e) {
    throw ParseError("offset 0", e.what());
  }
}

bool BinaryMask::Get(int x, int y) const {
  if (!rle_) {
    const size_t i = size_t(y) * width_ + x;
    return (words_[i >> 6] >> (i & 63)) & 1;
  }
  const uint64_t target = uint64_t(x) * height_ + y;
  uint64_t pos = 0;
  for (size_t k = 0; k < runs_.size(); ++k) {
    pos += runs_[k];
    if (target < pos) return k & 1;
  }
  return false;
}

void BinaryMask::Set(int x, int y, bool value) {
  if (rle_) throw InvalidArgumentError("Set on a run-length mask");
  const size_t i = size_t(y) * width_ + x;
  uint64_t& w = words_[i >> 6];
  const uint64_t bit = uint64_t{1} << (i & 63);
  const bool was = w & bit;
  if (was == value) return;
  if (value) {
    w |= bit;
    ++count_;
  } else {
    w &= ~bit;
    --count_;
  }
}

std::vector<uint32_t> BinaryMask::Runs() const {
  if (rle_) return runs_;
  std::vector<uint32_t> runs;
  bool current = false;
  uint32_t length = 0;
  for (int x = 0; x < width_; ++x) {
    for (int y = 0; y < height_; ++y) {
      const bool v = Get(x, y);
      if (v != current) {
        runs.push_back(length);
        length = 0;
        current = v;
      }
      ++length;
    }
  }
  runs.push_back(length);
  return runs;
}

BinaryMask BinaryMask::ToRle() const {
  if (rle_) return *this;
  return FromRuns(width_, height_, Runs());
}

BinaryMask BinaryMask::ToDense() const {
  if (!rle_) return *this;
  BinaryMask m(width_, height_);
  uint64_t pos = 0;
  for (size_t k = 0; k < runs_.size(); ++k) {
    if (k & 1) {
      for (uint64_t p = pos; p < pos + runs_[k]; ++p) {
        m.Set(static_cast<int>(p / height_), static_cast<int>(p % height_));
      }
    }
    pos += runs_[k];
  }
  return m;
}

std::string BinaryMask::ToRleString() const {
  std::ostringstream out;
  out << width_ << ' ' << height_;
  for (uint32_t r : Runs()) out << ' ' << r;
  return out.str();
}

bool operator==(const BinaryMask& a, const BinaryMask& b) {
  if (a.width_ != b.width_ || a.height_ != b.height_ || a.count_ != b.count_) {
    return false;
  }
  return a.ToDense().words_ == b.ToDense().words_;
}

uint64_t IntersectionCount(const BinaryMask& a, const BinaryMask& b) {
  CheckSameShape(a, b);
  if (a.is_rle() && b.is_rle()) return RunIntersection(a.Runs(), b.Runs());
  const BinaryMask da = a.ToDense();
  const BinaryMask db = b.ToDense();
  uint64_t inter = 0;
  for (size_t i = 0; i < da.words().size(); ++i) {
    inter += std::popcount(da.words()[i] & db.words()[i]);
  }
  return inter;
}

uint64_t UnionCount(const BinaryMask& a, const BinaryMask& b) {
  return a.count() + b.count() - IntersectionCount(a, b);
}

double Iou(const BinaryMask& a, const BinaryMask& b) {
  const uint64_t inter = IntersectionCount(a, b);
  const uint64_t uni = a.count() + b.count() - inter;
  return uni == 0 ? 0.0 : double(inter) / double(uni);
}

double IouDense(const BinaryMask& a, const BinaryMask& b) {
  return Iou(a.ToDense(), b.ToDense());
}

double IouRle(const BinaryMask& a, const BinaryMask& b) {
  return Iou(a.ToRle(), b.ToRle());
}

BinaryMask MaskUnion(std::span<const BinaryMask> masks) {
  if (masks.empty()) return BinaryMask();
  std::vector<uint64_t> words(WordCount(masks[0].width(), masks[0].height()), 0);
  for (const BinaryMask& m : masks) {
    CheckSameShape(masks[0], m);
    const BinaryMask d = m.ToDense();
    for (size_t i = 0; i < words.size(); ++i) words[i] |= d.words()[i];
  }
  return BinaryMask::FromWords(masks[0].width(), masks[0].height(),
                               std::move(words));
}

}  // namespace panoground
