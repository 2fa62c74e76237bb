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

// WordNet noun database (WNDB text format) and the ranked agreement test
// between a noun phrase and a panoptic category name.

#ifndef PANOGROUND_LEXICAL_MATCHER_H_
#define PANOGROUND_LEXICAL_MATCHER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "panoground/panoptic_store.h"
#include "panoground/phrase_chunker.h"

namespace panoground {

// Lower is stronger.
enum class MatchRank {
  kExact = 1,
  kSynonym = 2,
  kHierarchical = 3,
  kMeronym = 4,
  kManual = 5,
};

std::string_view MatchRankName(MatchRank rank);
std::optional<MatchRank> ParseMatchRank(std::string_view name);

struct Synset {
  uint32_t offset = 0;
  std::vector<std::string> lemmas;  // lowercase, underscores for spaces
  std::vector<uint32_t> hypernyms;  // @ and @i
  std::vector<uint32_t> hyponyms;   // ~ and ~i
  std::vector<uint32_t> meronyms;   // %p, %m, %s
};

class WordNet {
 public:
  WordNet();
  WordNet(WordNet&&) noexcept;
  WordNet& operator=(WordNet&&) noexcept;
  ~WordNet();

  // Parses index.noun / data.noun text. `exceptions` is the optional
  // noun.exc content ("inflected base..." lines). Throws ParseError.
  static WordNet Parse(std::string_view index_text, std::string_view data_text,
                       std::string_view exceptions = {},
                       const std::string& source = "wordnet");
  // Loads <dir>/index.noun, <dir>/data.noun and, if present, <dir>/noun.exc.
  static WordNet LoadDirectory(const std::string& dir);

  // Synset offsets of a lemma in index (sense) order; empty when unknown.
  std::span<const uint32_t> SynsetsOf(std::string_view lemma) const;
  const Synset* FindSynset(uint32_t offset) const;
  size_t synset_count() const { return synsets_.size(); }

  // Transitive hypernym closure, excluding the synset itself; sorted.
  // Memoized; safe to call concurrently.
  const std::vector<uint32_t>& HypernymClosure(uint32_t offset) const;

  // Candidate lemma forms for lookup: the word, its noun.exc bases and the
  // morphological detachments (-s, -ses, -xes, -zes, -ches, -shes, -men,
  // -ies) in that order, deduplicated.
  std::vector<std::string> BaseForms(std::string_view word) const;

  // Union of the synsets of all base forms.
  std::set<uint32_t> SynsetsOfForms(std::string_view word) const;

 private:
  std::unordered_map<uint32_t, Synset> synsets_;
  std::unordered_map<std::string, std::vector<uint32_t>> lemma_index_;
  std::unordered_map<std::string, std::vector<std::string>> exceptions_;

  struct ClosureCache;
  std::unique_ptr<ClosureCache> cache_;
};

// Hand-curated word -> category names relations for words the ontology does
// not connect (clothing pieces, body parts, female figures -> "person").
class ManualTable {
 public:
  static const ManualTable& Default();
  // "word<TAB>category[,category...]" lines; '#' comments. Throws ParseError.
  static ManualTable Parse(std::string_view text, const std::string& source);
  static ManualTable Load(const std::string& path);

  // Category names related to `word`; empty set when none.
  const std::set<std::string>& Lookup(std::string_view word) const;
  size_t size() const { return entries_.size(); }

  // Throws IntegrityError naming every category absent from the index.
  void Validate(const CategoryIndex& categories) const;

  const std::map<std::string, std::set<std::string>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

// Rule-based: irregular exceptions, -ies -> -y, -sses/-uses/-xes/-zzes/-ches/
// -shes drop -es, any other -s drops -s.
std::string Singularize(std::string_view word);

// Lookup terms for a category name: the name with spaces as underscores and,
// for hyphenated panoptic names such as "sky-other-merged", the leading
// component.
std::vector<std::string> CategoryTerms(std::string_view name);

// Strongest relation between any candidate (the whole phrase, then each
// composing noun) and the category, or nullopt when nothing agrees.
std::optional<MatchRank> RankMatch(const NounPhrase& phrase,
                                   const CategoryRecord& category,
                                   const WordNet& wordnet,
                                   const ManualTable& manual);

// Same test for a single candidate word.
std::optional<MatchRank> RankCandidate(std::string_view candidate,
                                       const CategoryRecord& category,
                                       const WordNet& wordnet,
                                       const ManualTable& manual);

}  // namespace panoground

#endif  // PANOGROUND_LEXICAL_MATCHER_H_
