#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace topiary {

enum class PosTag { NN, NNS, NNP, NNPS, JJ, JJR, JJS, OTHER };

std::string_view to_string(PosTag tag);
PosTag tag_from_string(std::string_view name);

inline bool is_noun(PosTag tag) {
  return tag == PosTag::NN || tag == PosTag::NNS || tag == PosTag::NNP ||
         tag == PosTag::NNPS;
}

inline bool is_adjective(PosTag tag) {
  return tag == PosTag::JJ || tag == PosTag::JJR || tag == PosTag::JJS;
}

struct TaggedToken {
  std::string surface;
  PosTag tag = PosTag::OTHER;
};

struct TaggedSentence {
  std::vector<TaggedToken> tokens;
  int source_doc = -1;
  int source_topic = -1;
};

/// Tagging interface; the pipeline only needs noun/adjective decisions,
/// so an external tagger can be swapped in behind this.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual TaggedSentence tag_sentence(const std::string& sentence) const = 0;
};

/// Lexicon lookup with fallbacks, applied in order:
///   1. lexicon hit (case-folded)
///   2. capitalized unknown word -> NNP
///   3. suffix rules (-ness/-ment/-tion/-ity -> NN,
///      -ous/-ful/-ive/-al/-able -> JJ, -s after a known NN -> NNS)
///   4. NN
/// The NN default trades precision for candidate recall; the term-count
/// filter downstream prunes what it lets through.
class LexiconTagger : public PosTagger {
 public:
  explicit LexiconTagger(std::unordered_map<std::string, PosTag> lexicon);

  static LexiconTagger from_file(const std::filesystem::path& path);

  TaggedSentence tag_sentence(const std::string& sentence) const override;

  PosTag tag_word(const std::string& word) const;

  std::size_t lexicon_size() const { return lexicon_.size(); }

 private:
  std::unordered_map<std::string, PosTag> lexicon_;
};

}  // namespace topiary
