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

#include "offlang/embeddings.h"

#include <gtest/gtest.h>

#include "offlang/errors.h"
#include "offlang/random.h"
#include "offlang/text.h"
#include "support.h"

namespace offlang {
namespace {

TEST(InitRandomTest, DeterministicWithZeroPadding) {
  const std::vector<std::string> vocab = {"a", "b", "c"};
  const EmbeddingMatrix m1 = init_random(vocab, 4, 17);
  const EmbeddingMatrix m2 = init_random(vocab, 4, 17);
  EXPECT_EQ(m1.weights(), m2.weights());
  EXPECT_NE(m1.weights(), init_random(vocab, 4, 18).weights());
  EXPECT_EQ(m1.rows(), 5u);
  for (double x : m1.row(EmbeddingMatrix::kPad)) EXPECT_EQ(x, 0.0);
  EXPECT_TRUE(m1.trainable());
  for (std::size_t r = EmbeddingMatrix::kReserved; r < m1.rows(); ++r) {
    for (double x : m1.row(r)) {
      EXPECT_GE(x, -kEmbeddingInitRange);
      EXPECT_LE(x, kEmbeddingInitRange);
    }
  }
}

TEST(InitRandomTest, MeanNearZero) {
  std::vector<std::string> vocab;
  for (int i = 0; i < 1000; ++i) vocab.push_back("w" + std::to_string(i));
  const EmbeddingMatrix m = init_random(vocab, 50, 3);
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t r = EmbeddingMatrix::kReserved; r < m.rows(); ++r) {
    for (double x : m.row(r)) {
      sum += x;
      ++n;
    }
  }
  EXPECT_NEAR(sum / static_cast<double>(n), 0.0, 0.005);
}

TEST(InitRandomTest, Errors) {
  EXPECT_THROW(init_random({"a", "a"}, 4, 1), ArgumentError);
  EXPECT_THROW(init_random({"a"}, 0, 1), ArgumentError);
}

TEST(ParseVecTest, UnkIsMeanOfVectors) {
  const EmbeddingMatrix m = parse_vec("2 3\na 1 2 3\nb 3 2 1\n", "mem");
  EXPECT_EQ(m.dim(), 3u);
  EXPECT_FALSE(m.trainable());
  const auto unk = m.row(EmbeddingMatrix::kUnk);
  EXPECT_EQ(std::vector<double>(unk.begin(), unk.end()),
            (std::vector<double>{2, 2, 2}));
  const auto a = m.vector("a");
  EXPECT_EQ(std::vector<double>(a.begin(), a.end()), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(m.lookup("zzz"), EmbeddingMatrix::kUnk);
}

TEST(ParseVecTest, HeaderIsOptional) {
  const EmbeddingMatrix m = parse_vec("a 1 2\nb 3 4\n", "mem");
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_EQ(m.tokens().size(), 2u);
}

TEST(ParseVecTest, DimensionMismatchReportsLine) {
  try {
    parse_vec("2 3\na 1 2 3\nb 3 2\n", "bad.vec");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_vec("", "empty.vec"), ParseError);
  EXPECT_THROW(parse_vec("a 1 x\n", "num.vec"), ParseError);
}

TEST(ParseVecTest, KeepFilterStillAveragesAllVectors) {
  const std::unordered_set<std::string> keep = {"a"};
  const EmbeddingMatrix m = parse_vec("a 1 2 3\nb 3 2 1\n", "mem", &keep);
  EXPECT_EQ(m.tokens(), (std::vector<std::string>{"a"}));
  EXPECT_EQ(m.row(EmbeddingMatrix::kUnk)[0], 2.0);
}

TEST(VecFileTest, SaveLoadRoundTrip) {
  const EmbeddingMatrix m = init_random({"x", "y", "ø"}, 5, 2);
  const auto dir = testing::temp_dir("vec");
  save_vec(m, dir / "m.vec");
  const EmbeddingMatrix back = load_pretrained_vec(dir / "m.vec");
  EXPECT_EQ(back.tokens(), m.tokens());
  for (const auto &t : m.tokens()) {
    const auto a = m.vector(t);
    const auto b = back.vector(t);
    for (std::size_t k = 0; k < m.dim(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
  }
  EXPECT_THROW(load_pretrained_vec(dir / "missing.vec"), Error);
}

TEST(ChecksumTest, SensitiveToWeightsAndTokens) {
  const EmbeddingMatrix m = init_random({"a", "b"}, 3, 1);
  EXPECT_EQ(m.checksum(), init_random({"a", "b"}, 3, 1).checksum());
  EXPECT_NE(m.checksum(), init_random({"a", "b"}, 3, 2).checksum());
  EXPECT_NE(m.checksum(), init_random({"a", "c"}, 3, 1).checksum());
}

TEST(EncodeTest, Examples) {
  const EmbeddingMatrix m({"the", "cat"}, 2, std::vector<double>(8, 0.0), false);
  const EncodedSequence s = encode(m, {"the", "dog"}, 4);
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{2, 1, 0, 0}));
  EXPECT_EQ(s.true_len, 2u);
  const EncodedSequence cut = encode(m, {"the", "cat", "the"}, 2);
  EXPECT_EQ(cut.indices, (std::vector<std::size_t>{2, 3}));
  EXPECT_EQ(cut.true_len, 2u);
  const EncodedSequence empty = encode(m, {}, 3);
  EXPECT_EQ(empty.indices, (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(empty.true_len, 0u);
  EXPECT_THROW(encode(m, {"a"}, 0), ArgumentError);
}

// Property: encoded length is max_len, the prefix holds min(len, max_len)
// non-padding indices and the rest is padding.
TEST(EncodeProperty, LengthAndPaddingLayout) {
  const EmbeddingMatrix m = init_random({"a", "b", "c"}, 2, 1);
  const std::vector<std::string> words = {"a", "b", "c", "zz", "yy"};
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    TokenList doc;
    for (std::size_t i = 0, n = rng.index(15); i < n; ++i) {
      doc.push_back(words[rng.index(words.size())]);
    }
    const std::size_t max_len = 1 + rng.index(10);
    const EncodedSequence s = encode(m, doc, max_len);
    ASSERT_EQ(s.indices.size(), max_len);
    EXPECT_EQ(s.true_len, std::min(doc.size(), max_len));
    for (std::size_t t = 0; t < max_len; ++t) {
      if (t < s.true_len) {
        EXPECT_NE(s.indices[t], EmbeddingMatrix::kPad);
        EXPECT_EQ(s.indices[t], m.lookup(doc[t]));
      } else {
        EXPECT_EQ(s.indices[t], EmbeddingMatrix::kPad);
      }
    }
  }
}

TEST(BuildVocabTest, FirstSeenOrderAndMinCount) {
  const std::vector<TokenList> docs = {{"b", "a", "b"}, {"c", "a"}};
  EXPECT_EQ(build_vocab(docs), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(build_vocab(docs, 2), (std::vector<std::string>{"b", "a"}));
}

}  // namespace
}  // namespace offlang
