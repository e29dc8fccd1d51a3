#include "topiary/tagger.hpp"

#include <cctype>
#include <fstream>

#include "topiary/error.hpp"
#include "topiary/text.hpp"

namespace topiary {

std::string_view to_string(PosTag tag) {
  switch (tag) {
    case PosTag::NN: return "NN";
    case PosTag::NNS: return "NNS";
    case PosTag::NNP: return "NNP";
    case PosTag::NNPS: return "NNPS";
    case PosTag::JJ: return "JJ";
    case PosTag::JJR: return "JJR";
    case PosTag::JJS: return "JJS";
    case PosTag::OTHER: return "OTHER";
  }
  return "OTHER";
}

PosTag tag_from_string(std::string_view name) {
  if (name == "NN") return PosTag::NN;
  if (name == "NNS") return PosTag::NNS;
  if (name == "NNP") return PosTag::NNP;
  if (name == "NNPS") return PosTag::NNPS;
  if (name == "JJ") return PosTag::JJ;
  if (name == "JJR") return PosTag::JJR;
  if (name == "JJS") return PosTag::JJS;
  if (name == "OTHER") return PosTag::OTHER;
  throw FormatError("unknown POS tag: " + std::string(name));
}

LexiconTagger::LexiconTagger(std::unordered_map<std::string, PosTag> lexicon)
    : lexicon_(std::move(lexicon)) {}

LexiconTagger LexiconTagger::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("cannot read lexicon file: " + path.string());
  std::unordered_map<std::string, PosTag> lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw FormatError("lexicon line " + std::to_string(line_no) +
                        " has no tab separator");
    }
    std::string term = to_lower_ascii(std::string_view(line).substr(0, tab));
    std::string tag = line.substr(tab + 1);
    while (!tag.empty() && (tag.back() == '\r' || tag.back() == ' ')) {
      tag.pop_back();
    }
    lexicon[term] = tag_from_string(tag);
  }
  return LexiconTagger(std::move(lexicon));
}

PosTag LexiconTagger::tag_word(const std::string& word) const {
  if (word.empty()) return PosTag::OTHER;
  std::string lowered = to_lower_ascii(word);
  if (auto it = lexicon_.find(lowered); it != lexicon_.end()) {
    return it->second;
  }
  if (std::isupper(static_cast<unsigned char>(word[0]))) return PosTag::NNP;

  auto ends = [&](std::string_view suf) {
    return lowered.size() > suf.size() &&
           lowered.compare(lowered.size() - suf.size(), suf.size(), suf) == 0;
  };
  if (ends("ness") || ends("ment") || ends("tion") || ends("ity")) {
    return PosTag::NN;
  }
  if (ends("ous") || ends("ful") || ends("ive") || ends("al") ||
      ends("able")) {
    return PosTag::JJ;
  }
  if (lowered.size() > 1 && lowered.back() == 's') {
    auto it = lexicon_.find(lowered.substr(0, lowered.size() - 1));
    if (it != lexicon_.end() && it->second == PosTag::NN) return PosTag::NNS;
  }
  return PosTag::NN;
}

TaggedSentence LexiconTagger::tag_sentence(const std::string& sentence) const {
  std::vector<std::string> words = surface_tokens(sentence);
  if (words.empty()) {
    throw TagError("cannot tag an empty sentence");
  }
  TaggedSentence tagged;
  tagged.tokens.reserve(words.size());
  for (std::string& w : words) {
    PosTag tag = tag_word(w);
    tagged.tokens.push_back({std::move(w), tag});
  }
  return tagged;
}

}  // namespace topiary
