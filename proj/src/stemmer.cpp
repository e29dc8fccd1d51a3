#include "topiary/stemmer.hpp"

#include <array>
#include <cctype>
#include <utility>

namespace topiary {

namespace {

bool is_consonant(const std::string& w, std::size_t i) {
  char c = w[i];
  if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') return false;
  if (c == 'y') return i == 0 || !is_consonant(w, i - 1);
  return true;
}

// m in the [C](VC)^m[V] decomposition of the stem.
int measure(const std::string& w, std::size_t len) {
  int m = 0;
  std::size_t i = 0;
  while (i < len && is_consonant(w, i)) ++i;
  while (i < len) {
    while (i < len && !is_consonant(w, i)) ++i;
    if (i >= len) break;
    ++m;
    while (i < len && is_consonant(w, i)) ++i;
  }
  return m;
}

bool contains_vowel(const std::string& w, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (!is_consonant(w, i)) return true;
  }
  return false;
}

bool ends_double_consonant(const std::string& w) {
  std::size_t n = w.size();
  return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// cvc at the end, where the final c is not w, x or y.
bool ends_cvc(const std::string& w, std::size_t len) {
  if (len < 3) return false;
  if (!(is_consonant(w, len - 3) && !is_consonant(w, len - 2) &&
        is_consonant(w, len - 1))) {
    return false;
  }
  char c = w[len - 1];
  return c != 'w' && c != 'x' && c != 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
  return w.size() >= suf.size() &&
         w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

// Longest matching suffix wins; a failed measure condition still ends the
// step without trying shorter suffixes.
void apply_rules(std::string& w, const Rule* rules, std::size_t count,
                 int min_measure) {
  const Rule* best = nullptr;
  for (std::size_t i = 0; i < count; ++i) {
    if (ends_with(w, rules[i].suffix) &&
        (!best || rules[i].suffix.size() > best->suffix.size())) {
      best = &rules[i];
    }
  }
  if (!best) return;
  std::size_t stem_len = w.size() - best->suffix.size();
  if (measure(w, stem_len) > min_measure) {
    w.resize(stem_len);
    w.append(best->replacement);
  }
}

void step1a(std::string& w) {
  static constexpr std::array<Rule, 4> rules{
      Rule{"sses", "ss"}, Rule{"ies", "i"}, Rule{"ss", "ss"}, Rule{"s", ""}};
  for (const Rule& r : rules) {
    if (ends_with(w, r.suffix)) {
      w.resize(w.size() - r.suffix.size());
      w.append(r.replacement);
      return;
    }
  }
}

void step1b(std::string& w) {
  if (ends_with(w, "eed")) {
    if (measure(w, w.size() - 3) > 0) w.pop_back();
    return;
  }
  std::size_t stem_len = 0;
  if (ends_with(w, "ed") && contains_vowel(w, w.size() - 2)) {
    stem_len = w.size() - 2;
  } else if (ends_with(w, "ing") && contains_vowel(w, w.size() - 3)) {
    stem_len = w.size() - 3;
  } else {
    return;
  }
  w.resize(stem_len);
  if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
    w.push_back('e');
  } else if (ends_double_consonant(w)) {
    char c = w.back();
    if (c != 'l' && c != 's' && c != 'z') w.pop_back();
  } else if (measure(w, w.size()) == 1 && ends_cvc(w, w.size())) {
    w.push_back('e');
  }
}

void step1c(std::string& w) {
  if (ends_with(w, "y") && contains_vowel(w, w.size() - 1)) {
    w.back() = 'i';
  }
}

void step2(std::string& w) {
  static constexpr std::array<Rule, 20> rules{
      Rule{"ational", "ate"}, Rule{"tional", "tion"}, Rule{"enci", "ence"},
      Rule{"anci", "ance"},   Rule{"izer", "ize"},    Rule{"abli", "able"},
      Rule{"alli", "al"},     Rule{"entli", "ent"},   Rule{"eli", "e"},
      Rule{"ousli", "ous"},   Rule{"ization", "ize"}, Rule{"ation", "ate"},
      Rule{"ator", "ate"},    Rule{"alism", "al"},    Rule{"iveness", "ive"},
      Rule{"fulness", "ful"}, Rule{"ousness", "ous"}, Rule{"aliti", "al"},
      Rule{"iviti", "ive"},   Rule{"biliti", "ble"}};
  apply_rules(w, rules.data(), rules.size(), 0);
}

void step3(std::string& w) {
  static constexpr std::array<Rule, 7> rules{
      Rule{"icate", "ic"}, Rule{"ative", ""}, Rule{"alize", "al"},
      Rule{"iciti", "ic"}, Rule{"ical", "ic"}, Rule{"ful", ""},
      Rule{"ness", ""}};
  apply_rules(w, rules.data(), rules.size(), 0);
}

void step4(std::string& w) {
  static constexpr std::array<std::string_view, 19> suffixes{
      "al",    "ance", "ence", "er",  "ic",  "able", "ible",
      "ant",   "ement", "ment", "ent", "ion", "ou",   "ism",
      "ate",   "iti",  "ous",  "ive", "ize"};
  std::string_view best;
  for (std::string_view suf : suffixes) {
    if (ends_with(w, suf) && suf.size() > best.size()) best = suf;
  }
  if (best.empty()) return;
  std::size_t stem_len = w.size() - best.size();
  if (measure(w, stem_len) > 1) {
    if (best == "ion") {
      char c = w[stem_len - 1];
      if (c != 's' && c != 't') return;
    }
    w.resize(stem_len);
  }
}

void step5a(std::string& w) {
  if (!ends_with(w, "e")) return;
  std::size_t stem_len = w.size() - 1;
  int m = measure(w, stem_len);
  if (m > 1 || (m == 1 && !ends_cvc(w, stem_len))) w.pop_back();
}

void step5b(std::string& w) {
  if (measure(w, w.size()) > 1 && ends_double_consonant(w) && w.back() == 'l') {
    w.pop_back();
  }
}

}  // namespace

std::string porter_stem(std::string_view word) {
  std::string w(word);
  if (w.size() <= 2) return w;
  step1a(w);
  step1b(w);
  step1c(w);
  step2(w);
  step3(w);
  step4(w);
  step5a(w);
  step5b(w);
  return w;
}

}  // namespace topiary
