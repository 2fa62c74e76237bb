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

#include "panoground/lexical_matcher.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <mutex>
#include <sstream>

#include "panoground/errors.h"

namespace panoground {

namespace {

constexpr std::string_view kClothing[] = {
    "shirt", "jacket", "coat", "dress", "skirt", "jeans", "pants",
    "trousers", "shorts", "hat", "cap", "sweater", "hoodie", "blouse",
    "suit", "uniform", "scarf", "tie", "shoe", "shoes", "boot", "boots",
    "sock", "socks", "vest", "costume", "outfit", "clothes", "clothing",
    "sunglasses", "goggles", "spectacles", "jersey", "apron", "glove",
    "gloves", "sleeve", "collar", "belt",
};

constexpr std::string_view kBodyParts[] = {
    "hand", "hands", "head", "face", "hair", "leg", "legs", "arm", "arms",
    "eye", "eyes", "nose", "mouth", "ear", "ears", "finger", "fingers",
    "foot", "feet", "shoulder", "knee", "neck", "body", "lips", "beard",
    "mustache", "chest", "forehead", "cheek", "chin", "thumb",
};

constexpr std::string_view kFemaleFigures[] = {
    "woman", "women", "lady", "ladies", "girl", "girls", "mother",
    "daughter", "sister", "grandmother", "female", "bride", "queen",
    "wife", "aunt", "mom", "actress", "waitress",
};

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string Underscored(std::string_view s) {
  std::string out = Lower(s);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Whitespace tokenizer over one WNDB line that reports field positions.
class Fields {
 public:
  Fields(std::string_view line, std::string where)
      : line_(line), where_(std::move(where)) {}

  bool done() {
    Skip();
    return pos_ >= line_.size();
  }

  std::string_view Next() {
    Skip();
    if (pos_ >= line_.size()) Fail("unexpected end of line");
    const size_t b = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
    return line_.substr(b, pos_ - b);
  }

  uint32_t NextNumber(int base = 10) {
    const std::string_view f = Next();
    uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v, base);
    if (ec != std::errc() || ptr != f.data() + f.size()) {
      Fail("expected a number, got \"" + std::string(f) + "\"");
    }
    return v;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError(where_ + " col " + std::to_string(pos_ + 1), message);
  }

 private:
  void Skip() {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
  }

  std::string_view line_;
  std::string where_;
  size_t pos_ = 0;
};

template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  size_t pos = 0;
  int number = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++number;
    fn(line, number);
    pos = end + 1;
  }
}

}  // namespace

struct WordNet::ClosureCache {
  std::shared_mutex mutex;
  std::unordered_map<uint32_t, std::vector<uint32_t>> closures;
};

WordNet::WordNet() : cache_(std::make_unique<ClosureCache>()) {}
WordNet::WordNet(WordNet&&) noexcept = default;
WordNet& WordNet::operator=(WordNet&&) noexcept = default;
WordNet::~WordNet() = default;

std::string_view MatchRankName(MatchRank rank) {
  switch (rank) {
    case MatchRank::kExact:
      return "exact";
    case MatchRank::kSynonym:
      return "synonym";
    case MatchRank::kHierarchical:
      return "hierarchical";
    case MatchRank::kMeronym:
      return "meronym";
    case MatchRank::kManual:
      return "manual";
  }
  return "unknown";
}

std::optional<MatchRank> ParseMatchRank(std::string_view name) {
  for (MatchRank r : {MatchRank::kExact, MatchRank::kSynonym,
                      MatchRank::kHierarchical, MatchRank::kMeronym,
                      MatchRank::kManual}) {
    if (MatchRankName(r) == name) return r;
  }
  return std::nullopt;
}

WordNet WordNet::Parse(std::string_view index_text, std::string_view data_text,
                       std::string_view exceptions, const std::string& source) {
  WordNet wn;
  ForEachLine(data_text, [&](std::string_view line, int number) {
    if (line.empty() || line[0] == ' ') return;  // license header
    Fields f(line, source + " data.noun:" + std::to_string(number));
    Synset s;
    s.offset = f.NextNumber();
    f.Next();  // lex_filenum
    const std::string_view ss_type = f.Next();
    if (ss_type != "n") f.Fail("not a noun synset");
    const uint32_t words = f.NextNumber(16);
    for (uint32_t i = 0; i < words; ++i) {
      s.lemmas.push_back(Lower(f.Next()));
      f.Next();  // lex_id
    }
    const uint32_t pointers = f.NextNumber();
    for (uint32_t i = 0; i < pointers; ++i) {
      const std::string_view symbol = f.Next();
      const uint32_t target = f.NextNumber();
      const std::string_view pos = f.Next();
      f.Next();  // source/target word numbers
      if (pos != "n") continue;
      if (symbol == "@" || symbol == "@i") {
        s.hypernyms.push_back(target);
      } else if (symbol == "~" || symbol == "~i") {
        s.hyponyms.push_back(target);
      } else if (symbol == "%p" || symbol == "%m" || symbol == "%s") {
        s.meronyms.push_back(target);
      }
    }
    const uint32_t offset = s.offset;
    if (!wn.synsets_.emplace(offset, std::move(s)).second) {
      throw ParseError(source + " data.noun:" + std::to_string(number),
                       "duplicate synset offset " + std::to_string(offset));
    }
  });

  ForEachLine(index_text, [&](std::string_view line, int number) {
    if (line.empty() || line[0] == ' ') return;
    Fields f(line, source + " index.noun:" + std::to_string(number));
    std::string lemma = Lower(f.Next());
    if (f.Next() != "n") f.Fail("not a noun entry");
    const uint32_t synset_count = f.NextNumber();
    const uint32_t pointer_count = f.NextNumber();
    for (uint32_t i = 0; i < pointer_count; ++i) f.Next();
    f.NextNumber();  // sense_cnt
    f.NextNumber();  // tagsense_cnt
    std::vector<uint32_t> offsets;
    for (uint32_t i = 0; i < synset_count; ++i) offsets.push_back(f.NextNumber());
    wn.lemma_index_[std::move(lemma)] = std::move(offsets);
  });

  ForEachLine(exceptions, [&](std::string_view line, int) {
    std::istringstream in{std::string(line)};
    std::string inflected, base;
    if (!(in >> inflected)) return;
    while (in >> base) wn.exceptions_[Lower(inflected)].push_back(Lower(base));
  });
  return wn;
}

WordNet WordNet::LoadDirectory(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw NotFoundError("no WordNet directory " + dir);
  const std::string index = ReadFileToString((root / "index.noun").string());
  const std::string data = ReadFileToString((root / "data.noun").string());
  std::string exc;
  if (fs::exists(root / "noun.exc")) exc = ReadFileToString((root / "noun.exc").string());
  return Parse(index, data, exc, dir);
}

std::span<const uint32_t> WordNet::SynsetsOf(std::string_view lemma) const {
  auto it = lemma_index_.find(std::string(lemma));
  if (it == lemma_index_.end()) return {};
  return it->second;
}

const Synset* WordNet::FindSynset(uint32_t offset) const {
  auto it = synsets_.find(offset);
  return it == synsets_.end() ? nullptr : &it->second;
}

const std::vector<uint32_t>& WordNet::HypernymClosure(uint32_t offset) const {
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->closures.find(offset);
    if (it != cache_->closures.end()) return it->second;
  }
  std::set<uint32_t> seen;
  std::vector<uint32_t> stack = {offset};
  while (!stack.empty()) {
    const uint32_t cur = stack.back();
    stack.pop_back();
    const Synset* s = FindSynset(cur);
    if (s == nullptr) continue;
    for (uint32_t h : s->hypernyms) {
      if (h != offset && seen.insert(h).second) stack.push_back(h);
    }
  }
  std::vector<uint32_t> closure(seen.begin(), seen.end());
  std::unique_lock lock(cache_->mutex);
  return cache_->closures.try_emplace(offset, std::move(closure)).first->second;
}

std::vector<std::string> WordNet::BaseForms(std::string_view word) const {
  std::vector<std::string> forms;
  auto add = [&](std::string f) {
    if (!f.empty() && std::find(forms.begin(), forms.end(), f) == forms.end()) {
      forms.push_back(std::move(f));
    }
  };
  const std::string w = Lower(word);
  add(w);
  if (auto it = exceptions_.find(w); it != exceptions_.end()) {
    for (const std::string& b : it->second) add(b);
  }
  static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
      {"s", ""},     {"ses", "s"},   {"xes", "x"}, {"zes", "z"},
      {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
  };
  for (const auto& [suffix, replacement] : kRules) {
    if (w.size() > suffix.size() && EndsWith(w, suffix)) {
      add(w.substr(0, w.size() - suffix.size()) + std::string(replacement));
    }
  }
  return forms;
}

std::set<uint32_t> WordNet::SynsetsOfForms(std::string_view word) const {
  std::set<uint32_t> out;
  for (const std::string& f : BaseForms(word)) {
    for (uint32_t o : SynsetsOf(f)) out.insert(o);
  }
  return out;
}

const ManualTable& ManualTable::Default() {
  static const ManualTable* table = [] {
    auto* t = new ManualTable;
    for (auto list : {std::span<const std::string_view>(kClothing),
                      std::span<const std::string_view>(kBodyParts),
                      std::span<const std::string_view>(kFemaleFigures)}) {
      for (std::string_view w : list) t->entries_[std::string(w)].insert("person");
    }
    return t;
  }();
  return *table;
}

ManualTable ManualTable::Parse(std::string_view text,
                               const std::string& source) {
  ManualTable table;
  ForEachLine(text, [&](std::string_view line, int number) {
    if (line.empty() || line[0] == '#') return;
    const std::string where = source + ":" + std::to_string(number);
    const size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size()) {
      throw ParseError(where, "expected \"word<TAB>category[,category...]\"");
    }
    const std::string word = Underscored(line.substr(0, tab));
    std::string_view rest = line.substr(tab + 1);
    while (!rest.empty()) {
      const size_t comma = rest.find(',');
      std::string name = Lower(rest.substr(0, comma));
      name.erase(0, name.find_first_not_of(' '));
      name.erase(name.find_last_not_of(' ') + 1);
      if (name.empty()) throw ParseError(where, "empty category name");
      table.entries_[word].insert(name);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  });
  return table;
}

ManualTable ManualTable::Load(const std::string& path) {
  return Parse(ReadFileToString(path), path);
}

const std::set<std::string>& ManualTable::Lookup(std::string_view word) const {
  static const std::set<std::string> kEmpty;
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? kEmpty : it->second;
}

void ManualTable::Validate(const CategoryIndex& categories) const {
  std::set<std::string> known;
  for (const auto& [id, rec] : categories) known.insert(rec.name);
  std::set<std::string> missing;
  for (const auto& [word, names] : entries_) {
    for (const std::string& n : names) {
      if (!known.contains(n)) missing.insert(n);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& n : missing) list += (list.empty() ? "" : ", ") + n;
    throw IntegrityError("manual table names unknown categories: " + list);
  }
}

std::string Singularize(std::string_view word) {
  static const std::map<std::string, std::string, std::less<>> kIrregular = {
      {"men", "man"},       {"women", "woman"},   {"people", "person"},
      {"children", "child"}, {"feet", "foot"},    {"teeth", "tooth"},
      {"mice", "mouse"},    {"geese", "goose"},   {"oxen", "ox"},
      {"leaves", "leaf"},   {"knives", "knife"},  {"wives", "wife"},
      {"wolves", "wolf"},   {"shelves", "shelf"}, {"halves", "half"},
      {"loaves", "loaf"},   {"scarves", "scarf"}, {"calves", "calf"},
      {"lives", "life"},    {"thieves", "thief"}, {"persons", "person"},
      {"policemen", "policeman"}, {"firemen", "fireman"},
      {"tomatoes", "tomato"}, {"potatoes", "potato"}, {"heroes", "hero"},
      {"dice", "die"},      {"cacti", "cactus"},  {"fungi", "fungus"},
  };
  const std::string w = Lower(word);
  if (auto it = kIrregular.find(w); it != kIrregular.end()) return it->second;
  if (w.size() > 4 && EndsWith(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  for (std::string_view suffix : {"sses", "uses", "xes", "zzes", "ches", "shes"}) {
    if (w.size() > suffix.size() && EndsWith(w, suffix)) {
      return w.substr(0, w.size() - 2);
    }
  }
  if (w.size() > 2 && EndsWith(w, "s") && !EndsWith(w, "ss") &&
      !EndsWith(w, "us") && !EndsWith(w, "is")) {
    return w.substr(0, w.size() - 1);
  }
  return w;
}

std::vector<std::string> CategoryTerms(std::string_view name) {
  std::vector<std::string> terms = {Underscored(name)};
  const std::string lower = Lower(name);
  const size_t dash = lower.find('-');
  if (dash != std::string::npos && dash > 0) {
    std::string head = Underscored(lower.substr(0, dash));
    if (head != "other" && head != "merged" && head != terms[0]) {
      terms.push_back(std::move(head));
    }
  }
  return terms;
}

std::optional<MatchRank> RankCandidate(std::string_view candidate,
                                       const CategoryRecord& category,
                                       const WordNet& wordnet,
                                       const ManualTable& manual) {
  const std::vector<std::string> terms = CategoryTerms(category.name);
  std::vector<std::string> forms = wordnet.BaseForms(Underscored(candidate));
  const std::string singular = Singularize(Underscored(candidate));
  if (std::find(forms.begin(), forms.end(), singular) == forms.end()) {
    forms.push_back(singular);
  }

  for (const std::string& f : forms) {
    if (std::find(terms.begin(), terms.end(), f) != terms.end()) {
      return MatchRank::kExact;
    }
  }

  std::set<uint32_t> mine;
  for (const std::string& f : forms) {
    for (uint32_t o : wordnet.SynsetsOf(f)) mine.insert(o);
  }
  std::set<uint32_t> theirs;
  for (const std::string& t : terms) {
    for (uint32_t o : wordnet.SynsetsOf(t)) theirs.insert(o);
  }

  if (!mine.empty() && !theirs.empty()) {
    for (uint32_t o : mine) {
      if (theirs.contains(o)) return MatchRank::kSynonym;
    }
    for (uint32_t t : theirs) {
      const auto& up = wordnet.HypernymClosure(t);
      for (uint32_t m : mine) {
        if (std::binary_search(up.begin(), up.end(), m)) {
          return MatchRank::kHierarchical;
        }
        const auto& mine_up = wordnet.HypernymClosure(m);
        if (std::binary_search(mine_up.begin(), mine_up.end(), t)) {
          return MatchRank::kHierarchical;
        }
      }
    }
    for (uint32_t t : theirs) {
      const Synset* s = wordnet.FindSynset(t);
      if (s == nullptr) continue;
      for (uint32_t part : s->meronyms) {
        if (mine.contains(part)) return MatchRank::kMeronym;
      }
    }
  }

  for (const std::string& f : forms) {
    const auto& names = manual.Lookup(f);
    if (names.contains(category.name)) return MatchRank::kManual;
    for (const std::string& t : terms) {
      if (names.contains(t)) return MatchRank::kManual;
    }
  }
  return std::nullopt;
}

std::optional<MatchRank> RankMatch(const NounPhrase& phrase,
                                   const CategoryRecord& category,
                                   const WordNet& wordnet,
                                   const ManualTable& manual) {
  std::vector<std::string> candidates = {phrase.text};
  for (const std::string& n : phrase.nouns) {
    if (std::find(candidates.begin(), candidates.end(), n) == candidates.end()) {
      candidates.push_back(n);
    }
  }
  std::optional<MatchRank> best;
  for (const std::string& c : candidates) {
    auto r = RankCandidate(c, category, wordnet, manual);
    if (r && (!best || *r < *best)) best = r;
    if (best == MatchRank::kExact) break;
  }
  return best;
}

}  // namespace panoground
