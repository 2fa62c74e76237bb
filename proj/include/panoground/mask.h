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

#ifndef PANOGROUND_MASK_H_
#define PANOGROUND_MASK_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace panoground {

// A width x height binary mask held either as a dense bitset (row-major) or
// as column-major run lengths. Run lists always start with a zero-run (which
// may be empty) and alternate zero/one runs, the COCO convention. Both
// payloads convert losslessly into each other.
class BinaryMask {
 public:
  BinaryMask() = default;
  // All-zero dense mask.
  BinaryMask(int width, int height);

  // Takes ownership of a column-major run list. Throws InvalidArgumentError
  // when the runs do not sum to width * height.
  static BinaryMask FromRuns(int width, int height, std::vector<uint32_t> runs);

  // Dense mask from row-major words (see words()). Bits past width * height
  // must be clear.
  static BinaryMask FromWords(int width, int height,
                              std::vector<uint64_t> words);

  // Parses "W H c0 c1 c2 ...". Throws ParseError.
  static BinaryMask ParseRle(std::string_view text);

  int width() const { return width_; }
  int height() const { return height_; }
  bool is_rle() const { return rle_; }
  uint64_t count() const { return count_; }
  bool empty() const { return count_ == 0; }

  bool Get(int x, int y) const;
  // Dense masks only.
  void Set(int x, int y, bool value = true);

  BinaryMask ToDense() const;
  BinaryMask ToRle() const;

  // Column-major runs; computed on the fly for dense masks.
  std::vector<uint32_t> Runs() const;
  std::string ToRleString() const;

  // Dense payload words (row-major, bit i of word k is pixel 64k + i).
  std::span<const uint64_t> words() const { return words_; }

  friend bool operator==(const BinaryMask& a, const BinaryMask& b);

 private:
  int width_ = 0;
  int height_ = 0;
  bool rle_ = false;
  uint64_t count_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint32_t> runs_;
};

// |a ∩ b| and |a ∪ b|. Both masks must share dimensions; otherwise
// InvalidArgumentError.
uint64_t IntersectionCount(const BinaryMask& a, const BinaryMask& b);
uint64_t UnionCount(const BinaryMask& a, const BinaryMask& b);

// Intersection over union; 0 when both masks are empty. Uses run merging when
// both operands are run-length encoded and word popcounts otherwise.
double Iou(const BinaryMask& a, const BinaryMask& b);
double IouDense(const BinaryMask& a, const BinaryMask& b);
double IouRle(const BinaryMask& a, const BinaryMask& b);

// Pixelwise OR of equally sized masks. Returns a dense mask; an empty input
// list yields an empty 0x0 mask.
BinaryMask MaskUnion(std::span<const BinaryMask> masks);

}  // namespace panoground

#endif  // PANOGROUND_MASK_H_
