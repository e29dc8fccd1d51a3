#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace topiary {

std::string to_lower_ascii(std::string_view s);

/// Splits on any non-alphanumeric byte. Hyphenated forms come apart
/// ("dial-up" -> "dial", "up"). Bytes >= 0x80 are treated as word
/// characters so multibyte UTF-8 sequences stay intact.
std::vector<std::string> alnum_tokens(std::string_view s);

/// Whitespace-delimited words with leading/trailing punctuation stripped.
/// Interior hyphens and apostrophes survive ("dial-up" stays one word).
/// Case is preserved.
std::vector<std::string> surface_tokens(std::string_view s);

/// Blanks out whitespace-delimited chunks that start with http://,
/// https:// or www.
std::string strip_urls(std::string_view s);

/// Lowercase, collapse runs of whitespace to single spaces, trim ends.
std::string normalize_phrase(std::string_view s);

std::string join_words(const std::vector<std::string>& words);

// FNV-1a, used for corpus/config fingerprints in run manifests.
inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = kFnvOffset);
std::uint64_t fnv1a_u64(std::uint64_t value, std::uint64_t h);

std::string to_hex(std::uint64_t value);

}  // namespace topiary
