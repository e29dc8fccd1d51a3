#include "topiary/text.hpp"

#include <cctype>

namespace topiary {

namespace {

bool is_word_byte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> alnum_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (unsigned char c : s) {
    if (is_word_byte(c)) {
      cur.push_back(static_cast<char>(c));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> surface_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      std::size_t a = i;
      std::size_t b = j;
      while (a < b && !is_word_byte(static_cast<unsigned char>(s[a]))) ++a;
      while (b > a && !is_word_byte(static_cast<unsigned char>(s[b - 1]))) --b;
      if (b > a) out.emplace_back(s.substr(a, b - a));
    }
    i = j;
  }
  return out;
}

std::string strip_urls(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  const std::size_t n = s.size();
  auto chunk_is_url = [](std::string_view chunk) {
    return chunk.starts_with("http://") || chunk.starts_with("https://") ||
           chunk.starts_with("www.");
  };
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(s[i]))) {
      out.push_back(s[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    std::string_view chunk = s.substr(i, j - i);
    if (!chunk_is_url(chunk)) out.append(chunk);
    i = j;
  }
  return out;
}

std::string normalize_phrase(std::string_view s) {
  std::string out;
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
    } else {
      if (pending_space) {
        out.push_back(' ');
        pending_space = false;
      }
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  constexpr std::uint64_t prime = 1099511628211ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= prime;
  }
  return h;
}

std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t h) {
  char buf[8];
  for (int i = 0; i < 8; ++i) {
    buf[i] = static_cast<char>((value >> (8 * i)) & 0xff);
  }
  return fnv1a(std::string_view(buf, 8), h);
}

std::string to_hex(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace topiary
