// Copyright 2026 The offlang Authors.
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

#ifndef OFFLANG_TEXT_H_
#define OFFLANG_TEXT_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace offlang {

using TokenList = std::vector<std::string>;

enum class TokenKind { kWord, kMention, kHashtag, kUrl };

// A token plus the byte range it was taken from in the source text.
struct TokenSpan {
  std::string text;  // lowercased
  std::size_t begin = 0;
  std::size_t end = 0;
  TokenKind kind = TokenKind::kWord;
};

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
// a time.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
void append_utf8(char32_t cp, std::string &out);

// Number of Unicode scalar values.
std::size_t codepoint_count(std::string_view s);

// Simple case folding covering ASCII, Latin-1, Latin Extended-A, Greek and
// Cyrillic.
char32_t to_lower(char32_t cp);
std::string to_lower(std::string_view s);

bool is_word_char(char32_t cp);

std::string_view trim(std::string_view s);

// Lowercased tokens with byte offsets. Mentions (@x), hashtags (#x) and
// http(s):// URLs are kept whole; everything else splits on runs of
// non-alphanumeric characters.
std::vector<TokenSpan> tokenize_spans(std::string_view text);

TokenList tokenize(std::string_view text);

}  // namespace offlang

#endif  // OFFLANG_TEXT_H_
