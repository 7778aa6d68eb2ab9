#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "error.hpp"

namespace abstractrank {

/// Ordered lowercase tokens. Never holds an empty token or whitespace.
using TokenStream = std::vector<std::string>;
using StopList = std::unordered_set<std::string>;

struct PosLexicon {
  std::unordered_set<std::string> noun_set;
};

namespace detail {

inline bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
inline bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }

// Bytes >= 0x80 are treated as word characters so UTF-8 words stay whole.
inline bool is_token_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) != 0;
}

inline char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

inline constexpr std::array<std::string_view, 31> kAbbreviations{
    "al",   "approx", "ca",  "cf",  "co",  "dr",   "e.g", "eq",  "eqs", "fig", "figs",
    "i.e",  "inc",    "jr",  "ltd", "mr",  "mrs",  "ms",  "no",  "nos", "pp",  "prof",
    "ref",  "refs",   "sr",  "st",  "tab", "vol",  "vs",  "viz", "resp"};

// The '.' at `dot` closes an abbreviation such as "Fig." or "et al.".
inline bool ends_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0) {
    const char c = text[begin - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '.') {
      --begin;
    } else {
      break;
    }
  }
  if (begin == dot) return false;
  std::string word;
  for (std::size_t i = begin; i < dot; ++i) word.push_back(lower(text[i]));
  // Single-letter initials ("J. Smith").
  if (word.size() == 1 && is_upper(text[begin])) return true;
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) != kAbbreviations.end();
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Splits on '.', '!' or '?' (optionally followed by closing quotes or
/// brackets) when the terminator is followed by whitespace and an uppercase
/// letter, or ends the text. Known abbreviations never end a sentence.
/// Returned sentences are trimmed; a text without boundaries is returned
/// whole, and a blank text yields no sentences.
inline std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    while (j < n && (text[j] == '.' || text[j] == '!' || text[j] == '?' || text[j] == ')' || text[j] == ']' ||
                     text[j] == '"' || text[j] == '\''))
      ++j;
    if (j >= n || !detail::is_space(text[j])) {
      i = j - 1;
      continue;
    }
    std::size_t k = j;
    while (k < n && detail::is_space(text[k])) ++k;
    if (k < n && !detail::is_upper(text[k])) {
      i = j - 1;
      continue;
    }
    if (c == '.' && detail::ends_abbreviation(text, i)) {
      i = j - 1;
      continue;
    }
    const auto sentence = detail::trim(text.substr(start, j - start));
    if (!sentence.empty()) out.emplace_back(sentence);
    start = k;
    i = k == 0 ? 0 : k - 1;
  }
  if (start < n) {
    const auto tail = detail::trim(text.substr(start));
    if (!tail.empty()) out.emplace_back(tail);
  }
  return out;
}

/// Lowercased runs of alphanumeric characters; runs shorter than two
/// characters are dropped, digit-only tokens are kept.
inline TokenStream tokenize(std::string_view text) {
  TokenStream tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2) tokens.push_back(current);
    current.clear();
  };
  for (const char c : text) {
    if (detail::is_token_char(c)) {
      current.push_back(detail::lower(c));
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

inline TokenStream remove_stopwords(const TokenStream& ts, const StopList& stoplist) {
  TokenStream out;
  out.reserve(ts.size());
  std::copy_if(ts.begin(), ts.end(), std::back_inserter(out), [&](const std::string& t) { return !stoplist.contains(t); });
  return out;
}

inline TokenStream filter_nouns(const TokenStream& ts, const PosLexicon& lex) {
  if (lex.noun_set.empty()) detail::fail(Errc::EmptyLexicon, "noun lexicon has no entries");
  TokenStream out;
  std::copy_if(ts.begin(), ts.end(), std::back_inserter(out), [&](const std::string& t) { return lex.noun_set.contains(t); });
  return out;
}

/// 1-based position ratio: the first of four sentences is 0.25.
inline double sentence_position(std::size_t index, std::size_t total) {
  if (total == 0 || index < 1 || index > total)
    detail::fail(Errc::IndexOutOfRange, std::to_string(index) + " of " + std::to_string(total));
  return static_cast<double>(index) / static_cast<double>(total);
}

/// One entry per line; blank lines and lines starting with '#' are skipped,
/// entries are trimmed and lowercased.
inline std::unordered_set<std::string> read_word_list(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = detail::trim(line);
    if (word.empty() || word.front() == '#') continue;
    std::string lowered(word);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), detail::lower);
    words.insert(std::move(lowered));
  }
  return words;
}

inline std::unordered_set<std::string> load_word_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) detail::fail(Errc::Io, "cannot open " + path.string());
  return read_word_list(in);
}

inline PosLexicon load_pos_lexicon(const std::filesystem::path& path) {
  PosLexicon lex{load_word_list(path)};
  if (lex.noun_set.empty()) detail::fail(Errc::EmptyLexicon, path.string());
  return lex;
}

/// tokenize -> stop-word removal -> optional nouns-only filter.
struct Preprocessor {
  StopList stoplist;
  std::optional<PosLexicon> nouns;

  TokenStream operator()(std::string_view text) const {
    auto tokens = remove_stopwords(tokenize(text), stoplist);
    if (nouns) tokens = filter_nouns(tokens, *nouns);
    return tokens;
  }
};

}  // namespace abstractrank
