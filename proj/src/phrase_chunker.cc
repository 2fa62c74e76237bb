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

#include "panoground/phrase_chunker.h"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

#include "panoground/errors.h"

namespace panoground {

namespace {

// Singular nouns the plural rule would misread, nouns whose suffix looks
// adjectival or verbal, irregular plurals.
constexpr const char* kNouns[] = {
    "grass", "glass", "bus", "dress", "gas", "class", "boss", "cross",
    "moss", "mattress", "compass", "bonus", "cactus", "canvas", "lens",
    "news", "chess", "tennis", "walrus", "octopus", "iris", "lotus",
    "circus", "atlas", "virus", "campus", "status", "bass", "brass",
    "hummus", "asparagus", "hibiscus", "citrus", "thermos", "fungus",
    "hippopotamus", "rhinoceros", "series", "species", "gps", "canvas",
    "animal", "metal", "pedal", "petal", "canal", "medal", "cereal",
    "hospital", "signal", "sandal", "crystal", "mural", "capital",
    "terminal", "festival", "pedestal", "portal", "interval", "material",
    "mammal", "decal", "jackal", "total", "oval", "arsenal", "pascal",
    "fish", "dish", "goldfish", "starfish", "jellyfish", "catfish",
    "radish", "relish", "polish", "parish", "wish", "handful",
    "building", "ceiling", "clothing", "painting", "railing", "awning",
    "bedding", "pudding", "stuffing", "frosting", "icing", "evening",
    "morning", "lighting", "housing", "fencing", "flooring", "siding",
    "string", "spring", "swing", "thing", "ring", "king", "wing",
    "sibling", "seedling", "dumpling", "topping", "stocking", "wedding",
    "drawing", "carving", "sculpting", "opening", "crossing", "landing",
    "skiing", "surfing", "parking", "sailing", "boxing", "bowling",
    "bed", "shed", "sled", "seed", "weed", "reed", "speed",
    "family", "jelly", "lily", "belly", "butterfly", "dragonfly", "holly",
    "rally", "trolly", "bully", "ally", "gully",
    "sky", "tree", "road", "car", "person", "man", "woman", "child",
    "light", "top", "bottom", "front", "back", "middle", "background",
    "side", "image", "picture", "photo", "water", "sand", "snow", "floor",
    "wall", "table", "plate", "food", "cake", "pizza", "sheep", "deer",
    "aircraft", "moose", "bison", "salmon", "trout", "shrimp", "squid",
    "police", "staff", "crowd", "group", "couple", "pair", "bunch",
    "lot", "box", "house", "horse", "fence", "surface", "blouse",
};

constexpr const char* kPluralNouns[] = {
    "men", "women", "people", "children", "feet", "teeth", "mice", "geese",
    "oxen", "cattle", "persons", "lice", "dice", "glasses", "clothes",
    "pants", "jeans", "trousers", "shorts", "scissors", "goggles",
    "spectacles", "leggings", "tights", "pajamas", "headphones",
};

constexpr const char* kAdjectives[] = {
    "red", "blue", "green", "yellow", "white", "black", "brown", "gray",
    "grey", "orange", "pink", "purple", "violet", "golden", "silver",
    "dark", "bright", "big", "small", "large", "little", "tall", "short",
    "long", "huge", "tiny", "old", "new", "young", "wooden", "round",
    "open", "blurry", "cloudy", "sunny", "snowy", "rainy", "foggy",
    "different", "few", "many", "several", "other", "left", "right",
    "multicolored", "colorful", "beautiful", "wet", "dry", "empty", "full",
    "clear", "high", "low", "wide", "narrow", "thick", "thin", "fat",
    "heavy", "cute", "pretty", "ugly", "happy", "sad", "plain", "striped",
    "dotted", "checkered", "transparent", "visible", "blank", "hot",
    "cold", "warm", "fresh", "ripe", "raw", "cooked", "fried", "grilled",
    "sliced", "chopped", "leafy", "rocky", "sandy", "grassy", "dirty",
    "clean", "modern", "ancient", "wild", "idle", "electric", "digital",
    "same", "various", "outdoor", "indoor", "distant",
    "nearby", "far", "near", "closer", "smaller", "larger", "bigger",
    "taller", "whole", "entire", "half", "single", "double", "main",
    "lower", "upper", "inner", "outer", "rear", "first", "second",
    "third", "last", "next", "such", "own",
};

constexpr const char* kOther[] = {
    // determiners
    "a", "an", "the", "this", "that", "these", "those", "some", "any",
    "each", "every", "all", "both", "either", "neither", "no", "another",
    "what", "which", "whose", "my", "your", "his", "her", "its", "our",
    "their", "much", "more", "most", "less", "least",
    // pronouns
    "i", "we", "you", "he", "she", "it", "they", "me", "us", "him", "them",
    "there", "here", "someone", "something", "everything", "nothing",
    "anything", "somebody", "everyone", "itself", "themselves", "himself",
    "herself",
    // prepositions
    "in", "on", "at", "of", "to", "from", "with", "without", "by", "for",
    "into", "onto", "over", "under", "above", "below", "beside", "besides",
    "near", "behind", "between", "among", "around", "through", "across",
    "along", "against", "inside", "outside", "beneath", "upon", "towards",
    "toward", "within", "about", "like", "after", "before", "during",
    "beyond", "off", "up", "down", "out", "via", "underneath", "throughout",
    // conjunctions, wh-words, adverbs
    "and", "or", "but", "nor", "so", "yet", "also", "as", "if", "then",
    "than", "because", "while", "where", "when", "who", "whom", "how",
    "why", "very", "too", "just", "not", "only", "even", "still", "again",
    "always", "never", "often", "probably", "maybe", "almost", "partially",
    "completely", "slightly", "away", "together", "back", "forward",
    // verbs and auxiliaries
    "is", "are", "was", "were", "be", "been", "being", "am", "has", "have",
    "had", "do", "does", "did", "can", "could", "will", "would", "shall",
    "should", "may", "might", "must", "see", "seen", "saw", "look",
    "looks", "appear", "appears", "seem", "seems", "stand", "stands",
    "sit", "sits", "contain", "contains", "show", "shows", "hold", "holds",
    "wear", "wears", "walk", "walks", "play", "plays", "lie", "lies",
    "ride", "rides", "run", "runs", "fly", "flies", "hang", "hangs",
    "smile", "smiles", "eat", "eats", "include", "includes", "consist",
    "consists", "go", "goes", "come", "comes", "take", "takes", "make",
    "makes", "give", "gives", "get", "gets", "keep", "keeps", "cover",
    "covers", "kept", "placed", "attached", "made", "think",
    "guess", "says", "say", "let", "lets", "observe", "notice", "find",
    "found", "visible", "seated", "parked", "filled", "covered",
};

constexpr const char* kCardinals[] = {
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
    "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
    "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
    "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "hundred",
    "thousand", "million", "dozen",
};

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsNumeral(std::string_view w) {
  bool digit = false;
  for (char c : w) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != ',' && c != '.') {
      return false;
    }
  }
  return digit;
}

bool HasAlnum(std::string_view w) {
  return std::any_of(w.begin(), w.end(), [](unsigned char c) {
    return std::isalnum(c);
  });
}

const std::unordered_map<std::string, PosTag>& ClosedClass() {
  static const auto* table = [] {
    auto* t = new std::unordered_map<std::string, PosTag>;
    for (const char* w : kOther) t->emplace(w, PosTag::kOther);
    for (const char* w : kCardinals) t->emplace(w, PosTag::kCardinal);
    return t;
  }();
  return *table;
}

PosTag SuffixTag(std::string_view w) {
  if (EndsWith(w, "ful") || EndsWith(w, "ous") || EndsWith(w, "ish") ||
      (EndsWith(w, "al") && w.size() >= 5)) {
    return PosTag::kAdjective;
  }
  if (w.size() >= 3 && EndsWith(w, "s") && !EndsWith(w, "ss") &&
      !EndsWith(w, "us") && !EndsWith(w, "is")) {
    return PosTag::kPluralNoun;
  }
  // Participles and adverbs; the lexicon lists the nouns among them.
  if (w.size() >= 6 && EndsWith(w, "ing")) return PosTag::kOther;
  if (w.size() >= 5 && EndsWith(w, "ed")) return PosTag::kOther;
  if (w.size() >= 5 && EndsWith(w, "ly")) return PosTag::kOther;
  return PosTag::kNoun;
}

void AppendPieces(std::string_view raw, int source,
                  std::vector<ChunkWord>& out) {
  std::string lower(raw);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  std::vector<std::string> parts;
  std::string current;
  for (char c : lower) {
    if (c == '-') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);

  auto is_punct = [](char c) {
    return !std::isalnum(static_cast<unsigned char>(c)) && c != '\'';
  };
  for (std::string part : parts) {
    size_t b = 0;
    while (b < part.size() && (is_punct(part[b]) || part[b] == '\'')) ++b;
    if (b > 0) out.push_back({part.substr(0, b), source});
    part = part.substr(b);
    size_t e = part.size();
    while (e > 0 && (is_punct(part[e - 1]) || part[e - 1] == '\'')) --e;
    std::string tail = part.substr(e);
    part = part.substr(0, e);
    std::string possessive;
    if (EndsWith(part, "'s")) {
      possessive = "'s";
      part.resize(part.size() - 2);
    }
    std::string word;
    for (char c : part) {
      if (!is_punct(c) || c == '.' || c == ',') word += c;
    }
    if (!IsNumeral(word)) std::erase_if(word, [](char c) { return c == '.' || c == ','; });
    if (!word.empty()) out.push_back({word, source});
    if (!possessive.empty()) out.push_back({possessive, source});
    if (!tail.empty()) out.push_back({tail, source});
  }
}

}  // namespace

std::string_view PosTagName(PosTag tag) {
  switch (tag) {
    case PosTag::kNoun:
      return "NN";
    case PosTag::kPluralNoun:
      return "NNS";
    case PosTag::kAdjective:
      return "JJ";
    case PosTag::kCardinal:
      return "CD";
    case PosTag::kOther:
      return "OTHER";
  }
  return "OTHER";
}

std::optional<PosTag> ParsePosTag(std::string_view name) {
  std::string n(name);
  std::transform(n.begin(), n.end(), n.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (n == "nn" || n == "noun") return PosTag::kNoun;
  if (n == "nns" || n == "plural") return PosTag::kPluralNoun;
  if (n == "jj" || n == "adjective") return PosTag::kAdjective;
  if (n == "cd" || n == "cardinal") return PosTag::kCardinal;
  if (n == "other") return PosTag::kOther;
  return std::nullopt;
}

const PosLexicon& PosLexicon::Default() {
  static const PosLexicon* lexicon = [] {
    auto* lex = new PosLexicon;
    for (const char* w : kNouns) lex->entries_.emplace(w, PosTag::kNoun);
    for (const char* w : kPluralNouns) lex->entries_.emplace(w, PosTag::kPluralNoun);
    for (const char* w : kAdjectives) lex->entries_.emplace(w, PosTag::kAdjective);
    return lex;
  }();
  return *lexicon;
}

PosLexicon PosLexicon::Parse(std::string_view text, const std::string& source,
                             const PosLexicon* base) {
  PosLexicon lex;
  if (base != nullptr) lex.entries_ = base->entries_;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t tab = line.find('\t');
    const std::string where = source + ":" + std::to_string(number);
    if (tab == std::string::npos || tab == 0) {
      throw ParseError(where, "expected \"word<TAB>tag\"");
    }
    auto tag = ParsePosTag(line.substr(tab + 1));
    if (!tag) throw ParseError(where, "unknown tag \"" + line.substr(tab + 1) + "\"");
    std::string word = line.substr(0, tab);
    std::transform(word.begin(), word.end(), word.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    lex.entries_[word] = *tag;
  }
  return lex;
}

PosLexicon PosLexicon::LoadWithDefaults(const std::string& path) {
  return Parse(ReadFileToString(path), path, &Default());
}

std::optional<PosTag> PosLexicon::Lookup(std::string_view word) const {
  auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::vector<TaggedToken> TagTokens(std::span<const std::string> tokens,
                                   const PosLexicon& lexicon) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  const auto& closed = ClosedClass();
  for (const std::string& w : tokens) {
    PosTag tag;
    if (!HasAlnum(w)) {
      tag = PosTag::kOther;
    } else if (auto hit = lexicon.Lookup(w)) {
      tag = *hit;
    } else if (auto it = closed.find(w); it != closed.end()) {
      tag = it->second;
    } else if (IsNumeral(w)) {
      tag = PosTag::kCardinal;
    } else {
      tag = SuffixTag(w);
    }
    out.emplace_back(w, tag);
  }
  return out;
}

std::vector<NounPhrase> ChunkNounPhrases(std::span<const TaggedToken> tagged) {
  std::vector<NounPhrase> phrases;
  const int n = static_cast<int>(tagged.size());
  int i = 0;
  while (i < n) {
    if (!IsNounTag(tagged[i].second)) {
      ++i;
      continue;
    }
    NounPhrase ph;
    ph.first_token = i;
    if (i > 0 && (tagged[i - 1].second == PosTag::kAdjective ||
                  tagged[i - 1].second == PosTag::kCardinal)) {
      ph.first_token = i - 1;
    }
    int j = i;
    while (j < n && IsNounTag(tagged[j].second)) {
      ph.nouns.push_back(tagged[j].first);
      ph.is_plural |= tagged[j].second == PosTag::kPluralNoun;
      ++j;
    }
    ph.last_token = j - 1;
    for (int k = ph.first_token; k <= ph.last_token; ++k) {
      if (k > ph.first_token) ph.text += ' ';
      ph.text += tagged[k].first;
    }
    phrases.push_back(std::move(ph));
    i = j;
  }
  return phrases;
}

std::vector<ChunkWord> NormalizeTokens(std::span<const TimedToken> tokens) {
  std::vector<ChunkWord> out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    AppendPieces(tokens[i].text, static_cast<int>(i), out);
  }
  return out;
}

std::vector<ChunkWord> NormalizeText(std::string_view caption) {
  std::vector<ChunkWord> out;
  std::istringstream in{std::string(caption)};
  std::string word;
  int index = 0;
  while (in >> word) AppendPieces(word, index++, out);
  return out;
}

std::vector<NounPhrase> ExtractNounPhrases(const Narrative& narrative,
                                           const PosLexicon& lexicon) {
  const std::vector<ChunkWord> words = NormalizeTokens(narrative.tokens);
  std::vector<std::string> texts;
  texts.reserve(words.size());
  for (const ChunkWord& w : words) texts.push_back(w.text);
  std::vector<NounPhrase> phrases = ChunkNounPhrases(TagTokens(texts, lexicon));

  std::vector<NounPhrase> out;
  for (NounPhrase& ph : phrases) {
    const int first = words[ph.first_token].source_token;
    const int last = words[ph.last_token].source_token;
    if (!out.empty() && out.back().last_token >= first) {
      NounPhrase& prev = out.back();
      prev.last_token = last;
      prev.text += ' ' + ph.text;
      prev.is_plural |= ph.is_plural;
      prev.nouns.insert(prev.nouns.end(), ph.nouns.begin(), ph.nouns.end());
      continue;
    }
    ph.first_token = first;
    ph.last_token = last;
    out.push_back(std::move(ph));
  }
  return out;
}

}  // namespace panoground
