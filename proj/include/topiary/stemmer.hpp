#pragma once

#include <string>
#include <string_view>

namespace topiary {

/// Porter stemmer, the original 1980 algorithm. Input is expected to be
/// a lowercase ASCII word; words of length <= 2 pass through unchanged.
std::string porter_stem(std::string_view word);

}  // namespace topiary
