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

// Lexicon-plus-suffix part-of-speech tagger and the noun phrase grammar
//   (Adjective | Cardinal)? (Noun | PluralNoun)+
// applied left to right, longest match, without overlap.

#ifndef PANOGROUND_PHRASE_CHUNKER_H_
#define PANOGROUND_PHRASE_CHUNKER_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "panoground/narrative_store.h"

namespace panoground {

enum class PosTag { kNoun, kPluralNoun, kAdjective, kCardinal, kOther };

std::string_view PosTagName(PosTag tag);
// Accepts NN/NNS/JJ/CD/OTHER and noun/plural/adjective/cardinal/other,
// case-insensitively.
std::optional<PosTag> ParsePosTag(std::string_view name);

inline bool IsNounTag(PosTag t) {
  return t == PosTag::kNoun || t == PosTag::kPluralNoun;
}

// Word -> tag exceptions consulted before the closed-class lists and suffix
// rules. The built-in table covers common irregular plurals, singular nouns
// ending in -s, nouns with adjective-like suffixes and frequent verbs.
class PosLexicon {
 public:
  static const PosLexicon& Default();

  // Built-in table overlaid with "word<TAB>tag" lines from `path`; file
  // entries win. Throws ParseError with the offending line.
  static PosLexicon LoadWithDefaults(const std::string& path);
  static PosLexicon Parse(std::string_view text, const std::string& source,
                          const PosLexicon* base);

  std::optional<PosTag> Lookup(std::string_view word) const;
  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, PosTag> entries_;
};

using TaggedToken = std::pair<std::string, PosTag>;

// Tags lowercased, punctuation-stripped words. Tokens without any letter or
// digit (punctuation that survived normalization) are tagged Other and act
// as phrase boundaries.
std::vector<TaggedToken> TagTokens(std::span<const std::string> tokens,
                                   const PosLexicon& lexicon);

struct NounPhrase {
  // Inclusive token span. From ChunkNounPhrases these index the tagged list;
  // from ExtractNounPhrases they index Narrative::tokens.
  int first_token = 0;
  int last_token = 0;
  std::string text;
  bool is_plural = false;
  // The Noun/PluralNoun words of the span, in order.
  std::vector<std::string> nouns;
};

std::vector<NounPhrase> ChunkNounPhrases(std::span<const TaggedToken> tagged);

struct ChunkWord {
  std::string text;
  int source_token = 0;
};

// Lowercases, splits on hyphens and peels punctuation and possessive 's off
// each token. Peeled punctuation is kept as separate boundary words.
std::vector<ChunkWord> NormalizeTokens(std::span<const TimedToken> tokens);
std::vector<ChunkWord> NormalizeText(std::string_view caption);

// Full pipeline over a narrative; phrase spans refer to narrative tokens.
// Phrases that would share a source token (hyphen splits) are merged.
std::vector<NounPhrase> ExtractNounPhrases(const Narrative& narrative,
                                           const PosLexicon& lexicon);

}  // namespace panoground

#endif  // PANOGROUND_PHRASE_CHUNKER_H_
