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

#include "chronoret/generator.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <set>
#include <sstream>

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/hash.hpp"
#include "chronoret/rng.hpp"

namespace chronoret {
namespace {

constexpr std::array<std::string_view, 56> kTopicNames = {
    "hiking",      "baking",     "chess",      "surfing",     "gardening",  "painting",
    "cycling",     "fishing",    "camping",    "knitting",    "photography", "pottery",
    "skiing",      "climbing",   "running",    "yoga",        "guitar",     "piano",
    "drumming",    "singing",    "dancing",    "cooking",     "brewing",    "birdwatching",
    "astronomy",   "woodworking", "sailing",   "kayaking",    "archery",    "fencing",
    "boxing",      "skating",    "snowboarding", "tennis",    "golf",       "bowling",
    "origami",     "calligraphy", "sculpting", "juggling",    "magic",      "gaming",
    "coding",      "robotics",   "beekeeping", "foraging",    "diving",     "rowing",
    "quilting",    "embroidery", "scrapbooking", "volunteering", "karaoke",  "meditation",
    "skateboarding", "puzzles",
};

constexpr std::array<std::string_view, 24> kSyllables = {
    "ka", "lo", "mi", "ra", "ven", "to", "shi", "bel", "dor", "fin", "gal", "hup",
    "jor", "ket", "lum", "mor", "nel", "pix", "quo", "rin", "sal", "tev", "vok", "zar",
};

// Captions for memories whose topic lives only in the picture.
constexpr std::array<std::string_view, 6> kPlainCaptions = {
    "a photo i took that day",
    "one of my favorite moments",
    "a picture from last weekend",
    "looking back at this one",
    "a snapshot from my camera roll",
    "found this in my gallery",
};

constexpr std::array<std::string_view, 4> kOpeners = {
    "A: have you ever tried {0} with {1}?",
    "A: do you know anything about {0} and {1}?",
    "A: i just got into {0}, the {1} part is hard",
    "A: what do you think about {0} and {1}?",
};
constexpr std::array<std::string_view, 4> kReplies = {
    "B: maybe, why do you ask about {0}?",
    "B: it depends, is {0} involved?",
    "B: not sure, tell me more about {0}",
    "B: hmm {0} and {1}, go on",
};
constexpr std::array<std::string_view, 4> kFollowUps = {
    "A: i want to find a good {0} for {1}",
    "A: my friend says {0} is the best part of {1}",
    "A: i am looking for tips on {0} and {1}",
    "A: is {0} worth it for {1}?",
};
constexpr std::array<std::string_view, 3> kPlainDialogue = {
    "A: look at this photo i took",
    "B: oh nice, where was that?",
    "A: what would you say about it?",
};

constexpr std::array<std::string_view, 4> kGroundedResponses = {
    "i remember my {0} and {1}, it was a great time",
    "oh yes, i did {t} with {0} back then and loved it",
    "that reminds me of the {0} at the {1}, so much fun",
    "i have done {t} before, the {0} was my favorite part",
};
constexpr std::array<std::string_view, 4> kOpinionResponses = {
    "{t} is fun, people say {0} matters most",
    "i think {0} and {1} are the key parts of {t}",
    "good question, {t} needs patience and a good {0}",
    "from what i read, {0} makes {t} easier",
};

struct Topic {
  std::string name;
  std::vector<std::string> words;  // words[0] == name
  std::array<Rgb, 3> palette;
};

std::string substitute(std::string_view tmpl, const std::vector<std::string>& args,
                       std::string_view topic_name = {}) {
  std::string out;
  for (std::size_t i = 0; i < tmpl.size(); ++i) {
    if (tmpl[i] == '{' && i + 2 < tmpl.size() && tmpl[i + 2] == '}') {
      const char k = tmpl[i + 1];
      if (k == 't') {
        out += topic_name;
      } else {
        const std::size_t idx = static_cast<std::size_t>(k - '0');
        out += idx < args.size() ? args[idx] : args.back();
      }
      i += 2;
    } else {
      out.push_back(tmpl[i]);
    }
  }
  return out;
}

std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

uint8_t clamp_channel(double v) {
  return static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
}

Rgb level_color(int r, int g, int b) {
  return Rgb{static_cast<uint8_t>(r * 51), static_cast<uint8_t>(g * 51), static_cast<uint8_t>(b * 51)};
}

// Coarse 4x4 block image; each block takes a color from pick() with jitter.
template <typename Pick>
Image block_image(Rng& rng, int size, Pick pick) {
  Image img(size, size);
  constexpr int kGrid = 4;
  for (int by = 0; by < kGrid; ++by) {
    for (int bx = 0; bx < kGrid; ++bx) {
      const Rgb base = pick();
      const double jr = rng.uniform(-10, 10), jg = rng.uniform(-10, 10), jb = rng.uniform(-10, 10);
      const int x0 = bx * size / kGrid, x1 = (bx + 1) * size / kGrid;
      const int y0 = by * size / kGrid, y1 = (by + 1) * size / kGrid;
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
          const double n = rng.uniform(-8, 8);
          img.set(x, y, Rgb{clamp_channel(base.r + jr + n), clamp_channel(base.g + jg + n),
                            clamp_channel(base.b + jb + n)});
        }
      }
    }
  }
  return img;
}

Rgb random_color(Rng& rng) {
  return level_color(static_cast<int>(rng.uniform_int(0, 5)), static_cast<int>(rng.uniform_int(0, 5)),
                     static_cast<int>(rng.uniform_int(0, 5)));
}

Image topic_image(Rng& rng, const Topic& t, const GeneratorConfig& cfg) {
  return block_image(rng, cfg.image_size, [&] {
    if (rng.bernoulli(cfg.image_noise_blocks)) return random_color(rng);
    return t.palette[rng.index(t.palette.size())];
  });
}

// Blocks of arbitrary colors: the picture carries no topic signal.
Image neutral_image(Rng& rng, const GeneratorConfig& cfg) {
  return block_image(rng, cfg.image_size, [&] { return random_color(rng); });
}

std::vector<Topic> make_topics(Rng& rng, const GeneratorConfig& cfg) {
  std::set<std::string> used(kTopicNames.begin(), kTopicNames.end());
  std::set<int> used_colors;
  std::vector<Topic> topics;
  for (int t = 0; t < cfg.n_topics; ++t) {
    Topic topic;
    topic.name = t < static_cast<int>(kTopicNames.size())
                     ? std::string(kTopicNames[static_cast<std::size_t>(t)])
                     : "topic" + std::to_string(t);
    topic.words.push_back(topic.name);
    while (static_cast<int>(topic.words.size()) < cfg.topic_vocab) {
      std::string w;
      const int n = static_cast<int>(rng.uniform_int(2, 3));
      for (int k = 0; k < n; ++k) w += kSyllables[rng.index(kSyllables.size())];
      if (used.insert(w).second) topic.words.push_back(w);
    }
    // Non-gray palette colors, kept distinct across topics while possible.
    for (auto& c : topic.palette) {
      for (int attempt = 0;; ++attempt) {
        const int r = static_cast<int>(rng.uniform_int(0, 5));
        const int g = static_cast<int>(rng.uniform_int(0, 5));
        const int b = static_cast<int>(rng.uniform_int(0, 5));
        if (r == g && g == b) continue;
        const int code = r * 36 + g * 6 + b;
        if (used_colors.count(code) && attempt < 50) continue;
        used_colors.insert(code);
        c = level_color(r, g, b);
        break;
      }
    }
    topics.push_back(std::move(topic));
  }
  return topics;
}

// One of the user's interests other than own, or own when there is no other.
int other_topic(Rng& rng, const std::vector<int>& interests, int own) {
  std::vector<int> rest;
  for (int t : interests) {
    if (t != own) rest.push_back(t);
  }
  return rest.empty() ? own : rest[rng.index(rest.size())];
}

enum class UnitKind { kPair, kGrounded, kUngrounded };

struct UserState {
  std::string id;
  std::vector<int> topics;
  std::vector<std::size_t> memories;  // indices into the memory list
  std::vector<std::size_t> unused;    // memories not yet used as grounding
};

struct MemoryDraft {
  MemoryEntry entry;
  int topic = 0;
  bool text_signal = true;
  bool image_signal = true;
  std::vector<std::string> caption_words;
};

std::string numbered(char prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%c%05zu", prefix, n);
  return buf;
}

std::vector<std::string> mentions(Rng& rng, const Topic& t, const std::vector<std::string>& caption,
                                  const GeneratorConfig& cfg, int n) {
  std::vector<std::string> out;
  for (int k = 0; k < n; ++k) {
    if (!caption.empty() && rng.bernoulli(cfg.dialogue_overlap)) {
      out.push_back(caption[rng.index(caption.size())]);
    } else {
      out.push_back(t.words[rng.index(t.words.size())]);
    }
  }
  return out;
}

std::string with_extra(std::string line, const std::vector<std::string>& words) {
  for (std::size_t k = 2; k < words.size(); ++k) line += " and " + words[k];
  return line;
}

std::vector<std::string> make_context(Rng& rng, const Topic& t, const std::vector<std::string>& caption,
                                      bool text_signal, const GeneratorConfig& cfg) {
  const int n = std::max(1, cfg.dialogue_mentions);
  std::vector<std::string> ctx;
  if (!text_signal) {
    // Plain lines padded with words of the decoy topic t.
    for (std::string_view line : kPlainDialogue) {
      std::string padded(line);
      for (int k = 0; k < n; ++k) padded += " " + t.words[rng.index(t.words.size())];
      ctx.push_back(std::move(padded));
    }
    return ctx;
  }
  auto w = mentions(rng, t, caption, cfg, n);
  ctx.push_back(with_extra(substitute(kOpeners[rng.index(kOpeners.size())], w), w));
  w = mentions(rng, t, caption, cfg, n);
  ctx.push_back(with_extra(substitute(kReplies[rng.index(kReplies.size())], w), w));
  w = mentions(rng, t, caption, cfg, n);
  ctx.push_back(with_extra(substitute(kFollowUps[rng.index(kFollowUps.size())], w), w));
  return ctx;
}

// Splits pairs and singles into exact per-split quotas. Pairs never straddle
// splits; the split furthest below its quota (relatively) takes the unit.
std::vector<Split> assign_splits(Rng& rng, const std::vector<UnitKind>& units, int n_episodes,
                                 const GeneratorConfig& cfg) {
  const int n_test = static_cast<int>(std::lround(n_episodes * cfg.test_fraction));
  const int n_val = static_cast<int>(std::lround(n_episodes * cfg.val_fraction));
  const std::array<int, 3> quota = {n_episodes - n_test - n_val, n_val, n_test};
  std::array<int, 3> left = quota;
  std::vector<std::size_t> order(units.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  // Pairs first so the singles can absorb parity at the end.
  std::stable_partition(order.begin(), order.end(),
                        [&](std::size_t i) { return units[i] == UnitKind::kPair; });
  std::vector<Split> out(units.size(), Split::kTrain);
  for (std::size_t i : order) {
    const int size = units[i] == UnitKind::kPair ? 2 : 1;
    int best = -1;
    double best_share = -1.0;
    for (int s = 0; s < 3; ++s) {
      if (left[s] < size || quota[s] == 0) continue;
      const double share = static_cast<double>(left[s]) / quota[s];
      if (share > best_share) {
        best = s;
        best_share = share;
      }
    }
    if (best < 0) best = 0;
    left[static_cast<std::size_t>(best)] -= size;
    out[i] = static_cast<Split>(best);
  }
  return out;
}

}  // namespace

std::string_view to_string(ModalityMode m) {
  return m == ModalityMode::kBalanced ? "balanced" : "modality-switch";
}

ModalityMode parse_modality_mode(std::string_view s) {
  if (s == "balanced") return ModalityMode::kBalanced;
  if (s == "modality-switch" || s == "switch") return ModalityMode::kModalitySwitch;
  throw ConfigError("unknown modality_mode '" + std::string(s) + "'");
}

void GeneratorConfig::check() const {
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(n_users >= 2, "n_users must be >= 2");
  need(memories_per_user >= 1, "memories_per_user must be >= 1");
  need(n_episodes >= 4, "n_episodes must be >= 4");
  need(n_topics >= 2, "n_topics must be >= 2");
  need(topic_vocab >= caption_topic_words && caption_topic_words >= 1,
       "topic_vocab must be >= caption_topic_words >= 1");
  need(topics_per_user >= 1 && topics_per_user < n_topics,
       "topics_per_user must be in [1, n_topics) so ungrounded topics exist");
  need(year_start <= year_end, "year_start must not exceed year_end");
  need(early_offset_min_years >= 1 && early_offset_min_years <= early_offset_max_years,
       "early offsets must satisfy 1 <= min <= max");
  const int64_t span = to_days(DateStamp{year_end, 12, 31}) - to_days(DateStamp{year_start, 1, 1});
  need(span >= static_cast<int64_t>(early_offset_min_years) * 365 + 1,
       "year range too narrow to place an earlier dialogue time");
  need(image_size >= 4, "image_size must be >= 4");
  need(val_fraction >= 0 && test_fraction >= 0 && val_fraction + test_fraction < 1,
       "split fractions must be non-negative and leave room for training");
  const int grounded_units = (n_episodes / 4) * 2;
  need(grounded_units <= n_users * memories_per_user,
       "not enough memories to ground the requested episodes");
}

std::string GeneratorConfig::fingerprint() const {
  std::ostringstream ss;
  ss << "users=" << n_users << ";mpu=" << memories_per_user << ";episodes=" << n_episodes
     << ";topics=" << n_topics << ";vocab=" << topic_vocab << ";tpu=" << topics_per_user
     << ";caption=" << caption_topic_words << ";years=" << year_start << "-" << year_end
     << ";offset=" << early_offset_min_years << "-" << early_offset_max_years
     << ";mode=" << to_string(modality_mode) << ";image=" << image_size
     << ";noise=" << image_noise_blocks << ";overlap=" << dialogue_overlap
     << ";mentions=" << dialogue_mentions << ";val=" << val_fraction << ";test=" << test_fraction;
  return hex64(seeded_hash(0xc0ffee, ss.str()));
}

GeneratedCorpus generate_synthetic_corpus(const GeneratorConfig& cfg, uint64_t seed,
                                          ChatClient* client) {
  cfg.check();
  Rng rng(hash_combine(seed, 0x67656e));
  GeneratedCorpus out;
  Corpus& c = out.corpus;
  c.generator_config_fingerprint = cfg.fingerprint() + ":" + std::to_string(seed);
  out.images.add(std::string(kWhiteImageRef), encode_ppm(Image(cfg.image_size, cfg.image_size)));

  const std::vector<Topic> topics = make_topics(rng, cfg);
  const int64_t day_lo = to_days(DateStamp{cfg.year_start, 1, 1});
  const int64_t day_hi = to_days(DateStamp{cfg.year_end, 12, 31});
  const bool switching = cfg.modality_mode == ModalityMode::kModalitySwitch;

  // Users and their memories.
  std::vector<UserState> users;
  std::vector<MemoryDraft> drafts;
  for (int u = 0; u < cfg.n_users; ++u) {
    UserState us;
    us.id = numbered('u', static_cast<std::size_t>(u));
    for (std::size_t t : rng.sample_indices(topics.size(), static_cast<std::size_t>(cfg.topics_per_user))) {
      us.topics.push_back(static_cast<int>(t));
    }
    for (int j = 0; j < cfg.memories_per_user; ++j) {
      MemoryDraft d;
      d.topic = us.topics[static_cast<std::size_t>(j % cfg.topics_per_user)];
      const Topic& t = topics[static_cast<std::size_t>(d.topic)];
      if (switching) {
        d.text_signal = rng.bernoulli(0.5);
        d.image_signal = !d.text_signal;
      }
      for (std::size_t k : rng.sample_indices(t.words.size(), static_cast<std::size_t>(cfg.caption_topic_words))) {
        d.caption_words.push_back(t.words[k]);
      }
      d.entry.id = numbered('m', drafts.size());
      d.entry.speaker_id = us.id;
      // Topic words only: shared function words would dominate every query.
      const Topic& decoy = switching ? topics[static_cast<std::size_t>(other_topic(rng, us.topics, d.topic))] : t;
      if (d.text_signal) {
        d.entry.text = join_words(d.caption_words);
      } else {
        d.entry.text = std::string(kPlainCaptions[rng.index(kPlainCaptions.size())]);
        for (int k = 0; k < cfg.caption_topic_words; ++k) {
          d.entry.text += " " + decoy.words[rng.index(decoy.words.size())];
        }
      }
      d.entry.image_ref = "images/" + d.entry.id + ".ppm";
      d.entry.time = from_days(rng.uniform_int(day_lo, day_hi));
      d.entry.topic = t.name;
      out.images.add(d.entry.image_ref,
                     encode_ppm(d.image_signal ? topic_image(rng, t, cfg) : neutral_image(rng, cfg)));
      us.memories.push_back(drafts.size());
      drafts.push_back(std::move(d));
    }
    us.unused = us.memories;
    c.users.push_back(us.id);
    users.push_back(std::move(us));
  }
  for (const auto& d : drafts) c.memories.insert(d.entry);

  // Episode units: p pairs, p grounded singles and the rest ungrounded, which
  // gives Later:Early = 3:1 and grounded-Later:Early = 2:1.
  const int p = cfg.n_episodes / 4;
  std::vector<UnitKind> units;
  for (int k = 0; k < p; ++k) units.push_back(UnitKind::kPair);
  for (int k = 0; k < p; ++k) units.push_back(UnitKind::kGrounded);
  for (int k = 0; k < cfg.n_episodes - 3 * p; ++k) units.push_back(UnitKind::kUngrounded);
  rng.shuffle(units);
  const std::vector<Split> splits = assign_splits(rng, units, cfg.n_episodes, cfg);

  const int64_t off_lo = static_cast<int64_t>(cfg.early_offset_min_years) * 365;
  const int64_t off_hi = std::min<int64_t>(static_cast<int64_t>(cfg.early_offset_max_years) * 365,
                                           day_hi - day_lo);
  std::size_t n_dialogues = 0;
  std::size_t n_episodes = 0;

  for (std::size_t ui = 0; ui < units.size(); ++ui) {
    const UnitKind kind = units[ui];
    UserState* user = nullptr;
    const MemoryDraft* grounding = nullptr;
    int topic_index = 0;
    if (kind == UnitKind::kUngrounded) {
      user = &users[rng.index(users.size())];
      std::vector<int> foreign;
      for (int t = 0; t < cfg.n_topics; ++t) {
        if (std::find(user->topics.begin(), user->topics.end(), t) == user->topics.end()) foreign.push_back(t);
      }
      topic_index = rng.pick(foreign);
    } else {
      for (;;) {
        user = &users[rng.index(users.size())];
        // Pairs need a memory after the first day of the range.
        std::vector<std::size_t> eligible;
        for (std::size_t m : user->unused) {
          if (kind == UnitKind::kGrounded || to_days(drafts[m].entry.time) > day_lo) eligible.push_back(m);
        }
        if (eligible.empty()) continue;
        const std::size_t chosen = rng.pick(eligible);
        user->unused.erase(std::find(user->unused.begin(), user->unused.end(), chosen));
        grounding = &drafts[chosen];
        topic_index = grounding->topic;
        break;
      }
    }
    const Topic& topic = topics[static_cast<std::size_t>(topic_index)];
    bool text_signal = true;
    bool image_signal = true;
    if (grounding != nullptr) {
      text_signal = grounding->text_signal;
      image_signal = grounding->image_signal;
    } else if (switching) {
      text_signal = rng.bernoulli(0.5);
      image_signal = !text_signal;
    }
    const std::vector<std::string> caption = grounding ? grounding->caption_words : std::vector<std::string>{};

    int64_t later_day = 0;
    int64_t early_day = 0;
    if (kind == UnitKind::kPair) {
      const int64_t tm = to_days(grounding->entry.time);
      const int64_t off = rng.uniform_int(off_lo, off_hi);
      const int64_t lo = std::max(tm, day_lo + off);
      const int64_t hi = std::min(day_hi, tm + off - 1);
      later_day = rng.uniform_int(lo, std::max(lo, hi));
      early_day = later_day - off;
    } else if (kind == UnitKind::kGrounded) {
      later_day = rng.uniform_int(to_days(grounding->entry.time), day_hi);
    } else {
      later_day = rng.uniform_int(day_lo, day_hi);
    }

    Dialogue d;
    d.id = numbered('d', n_dialogues++);
    const Topic& decoy =
        switching ? topics[static_cast<std::size_t>(other_topic(rng, user->topics, topic_index))] : topic;
    d.context = make_context(rng, text_signal ? topic : decoy, caption, text_signal, cfg);
    d.image_ref = "images/" + d.id + ".ppm";
    d.time = from_days(later_day);
    d.topic = topic.name;
    out.images.add(d.image_ref,
                   encode_ppm(image_signal ? topic_image(rng, topic, cfg) : neutral_image(rng, cfg)));

    std::vector<std::string> memory_ids;
    for (std::size_t m : user->memories) memory_ids.push_back(drafts[m].entry.id);

    std::vector<std::string> args = caption.empty()
                                        ? mentions(rng, topic, caption, cfg, 2)
                                        : std::vector<std::string>{caption[0], caption.size() > 1 ? caption[1] : caption[0]};
    Episode later;
    later.id = numbered('e', n_episodes++);
    later.dialogue_id = d.id;
    later.responder_id = user->id;
    later.response = grounding ? substitute(kGroundedResponses[rng.index(kGroundedResponses.size())], args, topic.name)
                               : substitute(kOpinionResponses[rng.index(kOpinionResponses.size())], args, topic.name);
    later.memory_ids = memory_ids;
    if (grounding) later.grounding_memory_id = grounding->entry.id;
    later.stage = Stage::kLater;
    later.split = splits[ui];

    if (kind == UnitKind::kPair) {
      Dialogue early_dialogue = d;
      early_dialogue.id = numbered('d', n_dialogues++);
      early_dialogue.time = from_days(early_day);
      std::vector<MemoryEntry> known;
      for (std::size_t m : user->memories) {
        if (drafts[m].entry.time <= early_dialogue.time) known.push_back(drafts[m].entry);
      }
      Episode early;
      early.id = numbered('e', n_episodes++);
      early.dialogue_id = early_dialogue.id;
      early.responder_id = user->id;
      early.response = generate_early_response(early_dialogue, known, client).text;
      early.memory_ids = memory_ids;
      early.stage = Stage::kEarly;
      early.counterpart_episode_id = later.id;
      early.split = splits[ui];
      later.counterpart_episode_id = early.id;
      c.dialogues.insert(std::move(d));
      c.dialogues.insert(std::move(early_dialogue));
      c.episodes.insert(std::move(later));
      c.episodes.insert(std::move(early));
    } else {
      c.dialogues.insert(std::move(d));
      c.episodes.insert(std::move(later));
    }
  }
  return out;
}

void write_corpus_images(const MemoryImageSource& images, const std::string& root) {
  for (const auto& [ref, bytes] : images.images()) {
    write_file_atomic(root + "/" + ref, bytes);
  }
}

}  // namespace chronoret
