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

#include "chronoret/checkpoint.hpp"

#include "chronoret/error.hpp"
#include "chronoret/fs_util.hpp"
#include "chronoret/hash.hpp"
#include "json.hpp"

namespace chronoret {

using nlohmann::json;

std::string Checkpoint::fingerprint() const {
  const std::string s = std::string(to_string(task)) + "|" + model.fingerprint() + "|" + train.fingerprint() +
                        "|" + serialization.fingerprint() + "|" + features.fingerprint();
  return hex64(seeded_hash(0xc4e7, s));
}

Checkpoint make_checkpoint(TaskKind task, const TrainResult& r, const TrainConfig& train,
                           const SerializationConfig& ser, const FeatureConfig& features) {
  Checkpoint c;
  c.task = task;
  c.model = r.model.config();
  c.train = train;
  c.serialization = ser;
  c.features = features;
  c.params.assign(r.model.params().begin(), r.model.params().end());
  c.loss_history = r.loss_history;
  c.epoch = r.epochs_run;
  return c;
}

std::string checkpoint_to_json(const Checkpoint& c) {
  const Model m = c.build_model();
  json blocks = json::array();
  for (const auto& b : m.layout()) {
    blocks.push_back({{"name", b.name},
                      {"shape", {b.rows, b.cols}},
                      {"values", std::vector<double>(c.params.begin() + static_cast<std::ptrdiff_t>(b.offset),
                                                     c.params.begin() +
                                                         static_cast<std::ptrdiff_t>(b.offset + b.size()))}});
  }
  json j = {
      {"task", to_string(c.task)},
      {"model",
       {{"head", to_string(c.model.head)},
        {"atm_mode", to_string(c.model.atm_mode)},
        {"similarity", to_string(c.model.similarity)},
        {"temperature", c.model.temperature},
        {"projections", c.model.projections},
        {"dim", c.model.dim},
        {"text_in", c.model.text_in},
        {"vision_in", c.model.vision_in}}},
      {"train",
       {{"epochs", c.train.epochs},
        {"batch_size", c.train.batch_size},
        {"learning_rate", c.train.learning_rate},
        {"weight_decay", c.train.weight_decay},
        {"beta1", c.train.beta1},
        {"beta2", c.train.beta2},
        {"adam_eps", c.train.adam_eps},
        {"seed", std::to_string(c.train.seed)},
        {"C", c.train.n_candidates},
        {"m", c.train.max_memories}}},
      {"serialization",
       {{"include_time", c.serialization.include_time},
        {"include_relative_time_tokens", c.serialization.include_relative_time_tokens},
        {"compound_topic_time_tokens", c.serialization.compound_topic_time_tokens},
        {"delimiter", c.serialization.delimiter}}},
      {"features",
       {{"dim", c.features.dim},
        {"encoder_seed", std::to_string(c.features.encoder_seed)},
        {"query_no_memory", c.features.query_no_memory},
        {"input", to_string(c.features.input)}}},
      {"parameters", blocks},
      {"n_parameters", c.params.size()},
      {"loss_history", c.loss_history},
      {"epoch", c.epoch},
      {"fingerprint", c.fingerprint()},
  };
  return j.dump(1) + "\n";
}

Checkpoint parse_checkpoint(const std::string& text, const std::string& origin) {
  try {
    const json j = json::parse(text);
    Checkpoint c;
    c.task = parse_task_kind(j.at("task").get<std::string>());
    const json& m = j.at("model");
    c.model.head = parse_head_kind(m.at("head").get<std::string>());
    c.model.atm_mode = parse_atm_mode(m.at("atm_mode").get<std::string>());
    c.model.similarity = parse_similarity(m.at("similarity").get<std::string>());
    c.model.temperature = m.at("temperature").get<double>();
    c.model.projections = m.at("projections").get<bool>();
    c.model.dim = m.at("dim").get<std::size_t>();
    c.model.text_in = m.at("text_in").get<std::size_t>();
    c.model.vision_in = m.at("vision_in").get<std::size_t>();
    const json& t = j.at("train");
    c.train.epochs = t.at("epochs").get<int>();
    c.train.batch_size = t.at("batch_size").get<int>();
    c.train.learning_rate = t.at("learning_rate").get<double>();
    c.train.weight_decay = t.at("weight_decay").get<double>();
    c.train.beta1 = t.at("beta1").get<double>();
    c.train.beta2 = t.at("beta2").get<double>();
    c.train.adam_eps = t.at("adam_eps").get<double>();
    c.train.seed = std::stoull(t.at("seed").get<std::string>());
    c.train.n_candidates = t.at("C").get<std::size_t>();
    c.train.max_memories = t.at("m").get<std::size_t>();
    const json& s = j.at("serialization");
    c.serialization.include_time = s.at("include_time").get<bool>();
    c.serialization.include_relative_time_tokens = s.at("include_relative_time_tokens").get<bool>();
    c.serialization.compound_topic_time_tokens = s.at("compound_topic_time_tokens").get<bool>();
    c.serialization.delimiter = s.at("delimiter").get<std::string>();
    const json& f = j.at("features");
    c.features.dim = f.at("dim").get<std::size_t>();
    c.features.encoder_seed = std::stoull(f.at("encoder_seed").get<std::string>());
    c.features.query_no_memory = f.at("query_no_memory").get<bool>();
    c.features.input = parse_input_setting(f.at("input").get<std::string>());
    const Model shape(c.model, 0);
    c.params.assign(shape.n_params(), 0.0);
    const json& blocks = j.at("parameters");
    if (blocks.size() != shape.layout().size()) throw IntegrityError(origin + ": parameter block count mismatch");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      const ParamBlock& b = shape.layout()[i];
      const json& jb = blocks[i];
      const auto values = jb.at("values").get<std::vector<double>>();
      const auto dims = jb.at("shape").get<std::vector<std::size_t>>();
      if (jb.at("name").get<std::string>() != b.name || dims.size() != 2 || dims[0] != b.rows ||
          dims[1] != b.cols || values.size() != b.size()) {
        throw IntegrityError(origin + ": parameter block '" + b.name + "' has inconsistent shape");
      }
      std::copy(values.begin(), values.end(), c.params.begin() + static_cast<std::ptrdiff_t>(b.offset));
    }
    c.loss_history = j.at("loss_history").get<std::vector<double>>();
    c.epoch = j.at("epoch").get<int>();
    if (j.contains("fingerprint") && j.at("fingerprint").get<std::string>() != c.fingerprint()) {
      throw IntegrityError(origin + ": fingerprint does not match stored configuration");
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(origin + ": malformed checkpoint: " + e.what());
  }
}

Checkpoint load_checkpoint(const std::string& path) { return parse_checkpoint(read_file(path), path); }

void save_checkpoint(const Checkpoint& c, const std::string& path) { write_file_atomic(path, checkpoint_to_json(c)); }

}  // namespace chronoret
