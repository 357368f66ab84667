#pragma once

#include <string_view>

// Data files compiled into the library; each can be replaced at run time by
// a file of the same format.
namespace crisislens::bundled {

std::string_view tracking_terms();  // one term per line
std::string_view gazetteer();       // place<TAB>region
std::string_view stopwords();       // one word per line
std::string_view lexicon();         // term<TAB>polarity

}  // namespace crisislens::bundled
