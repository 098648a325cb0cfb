// Copyright 2026 The Chronoret Authors.
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

#include <string>

#include "chronoret/corpus.hpp"
#include "chronoret/error.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

const std::string kUser = R"({"kind":"user","id":"u1"})";
const std::string kMemory =
    R"({"kind":"memory","id":"m1","speaker_id":"u1","text":"hiking in the alps","image_ref":"images/m1.ppm","time":"2015/06/01"})";
const std::string kDialogue =
    R"({"kind":"dialogue","id":"d1","context":["A: any trips lately?"],"image_ref":"images/d1.ppm","time":"2016/01/01"})";

std::string episode(std::string_view memory_ids, std::string_view extra = "") {
  return std::string(R"({"kind":"episode","id":"e1","dialogue_id":"d1","responder_id":"u1","response":"I loved the alps",)") +
         R"("memory_ids":[)" + std::string(memory_ids) + "]" + std::string(extra) +
         R"(,"stage":"later","split":"train"})";
}

std::string lines(std::initializer_list<std::string> ls) {
  std::string out;
  for (const auto& l : ls) out += l + "\n";
  return out;
}

Corpus minimal_corpus() {
  return parse_corpus(lines({kUser, kMemory, kDialogue, episode(R"("m1")", R"(,"grounding_memory_id":"m1")")}));
}

TEST_CASE("a four-record file loads with one of each") {
  const Corpus c = minimal_corpus();
  CHECK(c.users.size() == 1);
  CHECK(c.memories.size() == 1);
  CHECK(c.dialogues.size() == 1);
  CHECK(c.episodes.size() == 1);
  CHECK(c.memories.at("m1").time == DateStamp{2015, 6, 1});
  CHECK(c.episodes.at("e1").grounding_memory_id == "m1");
  CHECK(validate_corpus(c).ok());
}

TEST_CASE("an unknown memory reference is reported with its line number") {
  const std::string text = lines({kUser, kMemory, kDialogue, episode(R"("m1","m9")")});
  try {
    parse_corpus(text, "c.jsonl");
    FAIL("expected an integrity error");
  } catch (const IntegrityError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("c.jsonl:4") != std::string::npos);
    CHECK(msg.find("m9") != std::string::npos);
  }
}

TEST_CASE("malformed records are rejected") {
  CHECK_THROWS_AS(parse_corpus(lines({kUser, kUser})), IntegrityError);
  CHECK_THROWS_AS(parse_corpus(lines({R"({"kind":"alien","id":"x"})"})), IntegrityError);
  CHECK_THROWS(parse_corpus(lines({kUser, R"({"kind":"memory","id":"m1","speaker_id":"u1","text":"x","image_ref":"i","time":"2019/02/29"})"})));
  CHECK_THROWS(parse_corpus("{not json\n"));
}

TEST_CASE("an empty file is an empty corpus with a warning") {
  const Corpus c = parse_corpus("");
  CHECK(c.episodes.empty());
  CHECK(c.memories.empty());
  const ValidationReport r = validate_corpus(c);
  CHECK(r.ok());
  CHECK_FALSE(r.warnings.empty());
}

TEST_CASE("serialization round-trips") {
  const Corpus c = minimal_corpus();
  const std::string text = corpus_to_jsonl(c);
  CHECK(corpus_to_jsonl(parse_corpus(text)) == text);
}

TEST_CASE("grounding after the dialogue violates temporal order") {
  const std::string late_memory =
      R"({"kind":"memory","id":"m1","speaker_id":"u1","text":"hiking","image_ref":"i","time":"2017/01/01"})";
  const Corpus c = parse_corpus(lines({kUser, late_memory, kDialogue, episode(R"("m1")", R"(,"grounding_memory_id":"m1")")}));
  const ValidationReport r = validate_corpus(c);
  CHECK(r.has("temporal-order"));
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations.front().id == "e1");
}

TEST_CASE("an early episode may not carry a grounding memory") {
  std::string text = lines({kUser, kMemory, kDialogue, episode(R"("m1")", R"(,"grounding_memory_id":"m1")")});
  const auto at = text.find(R"("stage":"later")");
  text.replace(at, 15, R"("stage":"early")");
  const ValidationReport r = validate_corpus(parse_corpus(text));
  CHECK(r.has("early-stage-grounding"));
}

TEST_CASE("memories must belong to the responder") {
  const std::string other = R"({"kind":"user","id":"u2"})";
  const std::string foreign =
      R"({"kind":"memory","id":"m2","speaker_id":"u2","text":"boats","image_ref":"i","time":"2015/01/01"})";
  const Corpus c = parse_corpus(lines({kUser, other, kMemory, foreign, kDialogue, episode(R"("m1","m2")")}));
  CHECK(validate_corpus(c).has("memory-owner"));
}

TEST_CASE("the sentinel takes the dialogue date and the white image") {
  const DateStamp t{2018, 3, 4};
  const MemoryEntry s = make_sentinel("u1", t);
  CHECK(s.is_sentinel());
  CHECK(s.text == kNoMemoryText);
  CHECK(s.image_ref == kWhiteImageRef);
  CHECK(s.time == t);

  const auto augmented = augment_no_memory({minimal_corpus().memories.at("m1")}, t);
  REQUIRE(augmented.size() == 2);
  CHECK(augmented.back().is_sentinel());
  CHECK_THROWS_AS(augment_no_memory(augmented, t), ConfigError);
}

TEST_CASE("word helpers") {
  CHECK(word_count("  one two\tthree \n") == 3);
  CHECK(word_count("") == 0);
  CHECK(truncate_words("a b c d", 2) == "a b");
  CHECK(truncate_words("a b", 5) == "a b");
}

}  // namespace
}  // namespace chronoret
