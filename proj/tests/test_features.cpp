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

#include <cmath>
#include <filesystem>
#include <limits>

#include "chronoret/embedding_store.hpp"
#include "chronoret/error.hpp"
#include "chronoret/feature_vector.hpp"
#include "chronoret/featurize.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/generator.hpp"
#include "chronoret/image.hpp"
#include "chronoret/image_encoder.hpp"
#include "chronoret/rng.hpp"
#include "chronoret/serialize.hpp"
#include "chronoret/tasks.hpp"
#include "chronoret/text_encoder.hpp"
#include "doctest.h"

namespace chronoret {
namespace {

constexpr uint64_t kSeed = 0;

Dialogue ml_dialogue(DateStamp t = {2015, 1, 1}) {
  Dialogue d;
  d.id = "d";
  d.context = {"what is ml?"};
  d.time = t;
  return d;
}

MemoryEntry ml_memory(DateStamp t = {2017, 6, 1}) {
  MemoryEntry m;
  m.id = "m";
  m.speaker_id = "u";
  m.text = "ml study";
  m.time = t;
  return m;
}

TEST_CASE("a lone dialogue serializes without a delimiter") {
  SerializationConfig cfg;
  CHECK(serialize_text(ml_dialogue(), {}, cfg) == "what is ml? 2015/01/01");
}

TEST_CASE("memories carry relative time tokens") {
  const SerializationConfig cfg;
  const std::string s = serialize_text(ml_dialogue(), {ml_memory()}, cfg);
  CHECK(s == "what is ml? 2015/01/01 [SEP] ml study 2017/06/01 rel:future ml|rel:future study|rel:future");
  CHECK(relative_time_token({2014, 1, 1}, {2015, 1, 1}) == "rel:past");
  CHECK(relative_time_token({2015, 1, 1}, {2015, 1, 1}) == "rel:same");
  CHECK(relative_time_token({2016, 1, 1}, {2015, 1, 1}) == "rel:future");
}

TEST_CASE("time-stripped serialization ignores every timestamp") {
  const SerializationConfig cfg = SerializationConfig::time_stripped();
  CHECK_FALSE(cfg.uses_time());
  const std::string a = serialize_text(ml_dialogue({2015, 1, 1}), {ml_memory({2017, 6, 1})}, cfg);
  const std::string b = serialize_text(ml_dialogue({2009, 3, 3}), {ml_memory({2005, 2, 2})}, cfg);
  CHECK(a == b);
  CHECK(serialize_candidate_memory(ml_memory(), {2010, 1, 1}, cfg) == "ml study");
}

TEST_CASE("candidate memory serialization") {
  const SerializationConfig cfg;
  const DateStamp t{2018, 5, 6};
  const std::string s = serialize_candidate_memory(make_sentinel("u", t), t, cfg);
  CHECK(s.find("No Memory") != std::string::npos);
  CHECK(s.find("2018/05/06") != std::string::npos);
  CHECK(s.find("rel:same") != std::string::npos);
  const std::string f = serialize_candidate_memory(ml_memory({2019, 5, 6}), t, cfg);
  CHECK(f.find("rel:future") != std::string::npos);
  SerializationConfig bad;
  bad.delimiter = "";
  CHECK_THROWS_AS(bad.check(), ConfigError);
}

TEST_CASE("tokenizer keeps dates and relative tokens whole") {
  const auto toks = tokenize("What is ML? 2015/01/01 [SEP] ml|rel:past rel:same Don't");
  const std::vector<std::string> want = {"what", "is", "ml", "2015/01/01", "ml|rel:past", "rel:same", "don", "t"};
  CHECK(toks == want);
}

TEST_CASE("hashed text encoder") {
  const FeatureVector a = encode_text_reference("ml ml study", 256, kSeed);
  CHECK(a == encode_text_reference("ml ml study", 256, kSeed));
  CHECK(std::abs(a.norm() - 1.0) < 1e-6);
  CHECK(encode_text_reference("", 256, kSeed).is_zero());
  CHECK(encode_text_reference("[SEP] ...", 256, kSeed).is_zero());
  const FeatureVector b = encode_text_reference("ml study", 256, kSeed);
  const FeatureVector c = encode_text_reference("cooking recipe", 256, kSeed);
  CHECK(cosine(a.span(), b.span()) > cosine(b.span(), c.span()));
  CHECK(encode_text_reference("ML Study!", 256, kSeed) == b);
  CHECK_THROWS_AS(encode_text_reference("x", 4, kSeed), ConfigError);
  CHECK_NOTHROW(encode_text_reference("x", 8, kSeed));
}

TEST_CASE("text encoder outputs are unit length or zero") {
  Rng rng(3);
  const std::vector<std::string> words = {"ml", "2015/01/01", "rel:past", "cat", "dog", "study", "x|rel:same"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string s;
    const std::size_t n = rng.index(8);
    for (std::size_t i = 0; i < n; ++i) s += rng.pick(words) + " ";
    const FeatureVector v = encode_text_reference(s, 64, kSeed);
    CHECK(v.all_finite());
    if (!v.is_zero()) CHECK(std::abs(v.norm() - 1.0) < 1e-6);
  }
}

TEST_CASE("white images encode identically at every size") {
  const FeatureVector small = encode_image(Image(8, 8), 256, kSeed);
  CHECK(std::abs(small.norm() - 1.0) < 1e-6);
  for (auto [w, h] : {std::pair{1, 1}, std::pair{32, 32}, std::pair{17, 5}, std::pair{64, 48}}) {
    const FeatureVector v = encode_image(Image(w, h), 256, kSeed);
    for (std::size_t i = 0; i < v.dim(); ++i) CHECK(v[i] == doctest::Approx(small[i]).epsilon(1e-12));
  }
  CHECK(encode_image_reference(encode_ppm(Image(8, 8)), 256, kSeed) == small);
  CHECK_THROWS_AS(encode_image_reference("P3\n1 1\n255\n", 256, kSeed), ParseError);
  CHECK_THROWS_AS(encode_image(Image(8, 8), 4, kSeed), ConfigError);
}

TEST_CASE("generator palettes separate topics") {
  GeneratorConfig cfg;
  cfg.n_episodes = 100;
  const auto g = generate_synthetic_corpus(cfg, 7);
  std::vector<std::pair<std::string, FeatureVector>> feats;
  for (const auto& m : g.corpus.memories) {
    feats.emplace_back(*m.topic, encode_image_reference(g.images.bytes(m.image_ref), 256, kSeed));
    if (feats.size() == 120) break;
  }
  double cross = 0.0, same = 0.0;
  std::size_t n_cross = 0, n_same = 0;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    for (std::size_t j = i + 1; j < feats.size(); ++j) {
      const double cs = cosine(feats[i].second.span(), feats[j].second.span());
      if (feats[i].first == feats[j].first) {
        same += cs;
        ++n_same;
      } else {
        cross += cs;
        ++n_cross;
      }
    }
  }
  REQUIRE(n_same > 0);
  REQUIRE(n_cross > 0);
  CHECK(cross / static_cast<double>(n_cross) < 0.5);
  CHECK(same / static_cast<double>(n_same) > cross / static_cast<double>(n_cross));
}

TEST_CASE("mean pooling") {
  const FeatureVector v(std::vector<double>{0.3, -0.4});
  CHECK(mean_pool({v}) == v);
  const FeatureVector copies = mean_pool({v, v, v});
  for (std::size_t i = 0; i < v.dim(); ++i) CHECK(copies[i] == doctest::Approx(v[i]).epsilon(1e-15));
  const FeatureVector e1(std::vector<double>{1, 0}), e2(std::vector<double>{0, 1});
  const FeatureVector m = mean_pool({e1, e2});
  CHECK(m[0] == 0.5);
  CHECK(m[1] == 0.5);
  CHECK(m.norm() < 1.0);
  CHECK(mean_pool({e2, e1}) == m);
  CHECK_THROWS_AS(mean_pool({}), ConfigError);
  CHECK_THROWS_AS(mean_pool({e1, FeatureVector(3)}), ConfigError);
}

TEST_CASE("cosine is scale invariant and dot is not") {
  const std::vector<double> a = {1, 2, 3}, b = {-1, 0.5, 2}, b3 = {-3, 1.5, 6};
  CHECK(cosine(a, b) == doctest::Approx(cosine(a, b3)).epsilon(1e-12));
  CHECK(dot(a, b3) == doctest::Approx(3 * dot(a, b)));
  CHECK(cosine(a, std::vector<double>{0, 0, 0}) == 0.0);
}

std::string record(const std::string& id, std::size_t dim, const std::string& value = "0.5") {
  std::string vals;
  for (std::size_t i = 0; i < dim; ++i) vals += (i ? "," : "") + value;
  return R"({"id":")" + id + R"(","dim":)" + std::to_string(dim) + R"(,"values":[)" + vals + "]}\n";
}

TEST_CASE("external embeddings load with a uniform dim") {
  const auto store = parse_external_embeddings(record("a", 512) + record("b", 512) + record("c", 512));
  CHECK(store.size() == 3);
  CHECK(store.dim() == 512);
  CHECK(store.at("b").dim() == 512);
  CHECK(store.find("z") == nullptr);
  CHECK_THROWS_AS(store.at("z"), IntegrityError);

  try {
    parse_external_embeddings(record("a", 512) + record("short", 256));
    FAIL("expected a dim mismatch");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("short") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_external_embeddings(R"({"id":"n","dim":2,"values":["NaN",1]})"
                                            "\n"),
                  ParseError);
  EmbeddingStore direct(2);
  CHECK_THROWS_AS(direct.add("n", FeatureVector(std::vector<double>{std::numeric_limits<double>::quiet_NaN(), 0})),
                  ParseError);
  CHECK(text_fingerprint("abc") == text_fingerprint("abc"));
  CHECK(text_fingerprint("abc") != text_fingerprint("abd"));
}

TEST_CASE("encoders prefer external stores when given") {
  MemoryImageSource images;
  images.add("img/a.ppm", encode_ppm(Image(4, 4, {10, 20, 30})));
  EmbeddingStore vision(3);
  vision.add("img/a.ppm", FeatureVector(std::vector<double>{1, 2, 3}));
  FeatureConfig fcfg;
  fcfg.dim = 16;
  Encoders reference(fcfg, &images);
  CHECK(reference.vision_dim() == 16);
  CHECK(reference.image("img/a.ppm").dim() == 16);
  Encoders external(fcfg, &images, nullptr, &vision);
  CHECK(external.vision_dim() == 3);
  CHECK(external.text_dim() == 16);
  CHECK(external.image("img/a.ppm")[2] == 3.0);
}

TEST_CASE("prepared TGMP sets share feature rows and keep labels") {
  GeneratorConfig gcfg;
  gcfg.n_episodes = 100;
  const auto g = generate_synthetic_corpus(gcfg, 7);
  const auto tgmp = build_tgmp(g.corpus, 10, 7);
  FeatureConfig fcfg;
  fcfg.dim = 64;
  Encoders enc(fcfg, &g.images);
  const PreparedSet set = prepare_tgmp(g.corpus, tgmp, enc, SerializationConfig{}, fcfg);
  REQUIRE(set.items.size() == tgmp.size());
  CHECK(set.bank.text_dim() == 64);
  CHECK(set.bank.text_rows() < tgmp.size() * 11);
  for (std::size_t i = 0; i < tgmp.size(); ++i) {
    const PreparedInstance& p = set.items[i];
    CHECK(p.episode_id == tgmp[i].episode_id);
    CHECK(p.label == tgmp[i].label_index);
    CHECK(p.label_kind == tgmp[i].label_kind);
    CHECK(p.n_candidates() == 10);
    CHECK(p.cand_vision.size() == 10);
  }

  const DateStamp t{2012, 1, 1};
  const auto& e = g.corpus.episodes.items().front();
  const auto with = query_memories(g.corpus, e.memory_ids, t, fcfg);
  CHECK(with.size() == e.memory_ids.size() + 1);
  CHECK(with.back().is_sentinel());
  FeatureConfig no_sentinel = fcfg;
  no_sentinel.query_no_memory = false;
  CHECK(query_memories(g.corpus, e.memory_ids, t, no_sentinel).size() == e.memory_ids.size());
}

}  // namespace
}  // namespace chronoret
