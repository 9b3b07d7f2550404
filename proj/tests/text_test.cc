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

#include "offlang/text.h"

#include <gtest/gtest.h>

#include "offlang/random.h"

namespace offlang {
namespace {

TEST(TokenizeTest, LowercasesAndSplits) {
  EXPECT_EQ(tokenize("Fuck I cried"), (TokenList{"fuck", "i", "cried"}));
}

TEST(TokenizeTest, KeepsMentionsAndHashtags) {
  EXPECT_EQ(tokenize("@USER is a #pervert!"),
            (TokenList{"@user", "is", "a", "#pervert"}));
  EXPECT_EQ(tokenize("#under_score @a_b"), (TokenList{"#under_score", "@a_b"}));
}

TEST(TokenizeTest, EmptyInput) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  !?.. ").empty());
}

TEST(TokenizeTest, UrlsAreSingleTokens) {
  EXPECT_EQ(tokenize("see https://t.co/AbC?x=1. now"),
            (TokenList{"see", "https://t.co/abc?x=1", "now"}));
  EXPECT_EQ(tokenize("(http://x.dk/a)"), (TokenList{"http://x.dk/a"}));
}

TEST(TokenizeTest, UnicodeLetters) {
  EXPECT_EQ(tokenize("Ærlig talt, ØL på Å!"),
            (TokenList{"ærlig", "talt", "øl", "på", "å"}));
  EXPECT_EQ(tokenize("don't"), (TokenList{"don", "t"}));
}

TEST(TokenizeTest, SpansPointIntoTheInput) {
  const std::string text = "Hej @Bo, se #DK http://a.b";
  const auto spans = tokenize_spans(text);
  ASSERT_EQ(spans.size(), 5u);
  EXPECT_EQ(spans[1].kind, TokenKind::kMention);
  EXPECT_EQ(spans[3].kind, TokenKind::kHashtag);
  EXPECT_EQ(spans[4].kind, TokenKind::kUrl);
  for (const auto &s : spans) {
    EXPECT_EQ(to_lower(text.substr(s.begin, s.end - s.begin)), s.text);
  }
}

TEST(Utf8Test, RoundTripAndCounting) {
  const std::string s = "blåbærgrød ☃ 𝄞";
  EXPECT_EQ(encode_utf8(decode_utf8(s)), s);
  EXPECT_EQ(codepoint_count(s), 14u);
  EXPECT_EQ(codepoint_count(""), 0u);
}

TEST(Utf8Test, InvalidBytesDoNotCrash) {
  const std::string bad = "a\xC3";
  EXPECT_NO_THROW(decode_utf8(bad));
  EXPECT_NO_THROW(tokenize(std::string("\xFF\xFE ok \xE2\x82")));
}

TEST(TrimTest, StripsWhitespace) {
  EXPECT_EQ(trim("  a b\t\n"), "a b");
  EXPECT_EQ(trim(""), "");
}

// Property: tokenization is idempotent on its own space-joined output and
// every token is lowercase.
TEST(TokenizeProperty, IdempotentOnJoinedTokens) {
  const std::string alphabet = "abcXYZ æø@#.!? 12_-/:";
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    const std::size_t len = rng.index(40);
    for (std::size_t i = 0; i < len; ++i) {
      // Pick whole UTF-8 sequences so the input stays valid.
      const std::u32string cps = decode_utf8(alphabet);
      append_utf8(cps[rng.index(cps.size())], text);
    }
    const TokenList once = tokenize(text);
    std::string joined;
    for (const auto &t : once) joined += t + " ";
    EXPECT_EQ(tokenize(joined), once) << "input: " << text;
    for (const auto &t : once) EXPECT_EQ(to_lower(t), t);
  }
}

}  // namespace
}  // namespace offlang
