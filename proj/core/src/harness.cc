// harness.cc
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
//
// Copyright 2026 The mtht Authors.
//
#include "mtht/harness.h"

#include <filesystem>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "mtht/embeddings.h"
#include "mtht/error.h"
#include "mtht/text.h"
#include "mtht/trigram_lm.h"

namespace mtht {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string resolve_path(const std::string &path, const std::string &base_dir) {
  if (path.empty() || base_dir.empty() || fs::path(path).is_absolute()) return path;
  return (fs::path(base_dir) / path).lexically_normal().string();
}

std::string display_name(const Condition &c) {
  return std::string("MT_") + (c.mt_modified ? "modf" : "orig") + " & HT_" +
         (c.ht_modified ? "modf" : "orig");
}

std::string directory_name(const Condition &c) {
  std::string name = c.name();
  for (char &ch : name) {
    if (ch == '&') ch = '_';
  }
  return name;
}

template <typename T>
T get_or(const ordered_json &j, const char *key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void reject_unknown(const ordered_json &j, std::initializer_list<std::string_view> known,
                    const std::string &where) {
  for (const auto &item : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || item.key() == k;
    if (!ok) throw Error("unknown key '" + item.key() + "' in " + where);
  }
}

// One corpus side (MT or HT) with its lazily reduced variant.
struct Side {
  Label label;
  LabeledCorpus original;
  std::optional<LabeledCorpus> modified;
  std::optional<ReplacementPlan> plan;
  std::string reduce_error;
};

class Bundle {
 public:
  Bundle(fs::path root, ExperimentSummary &summary) : root_(std::move(root)), summary_(summary) {}

  void write(const std::string &relative, const std::string &contents) {
    const fs::path path = root_ / relative;
    fs::create_directories(path.parent_path());
    write_file(path.string(), contents);
    summary_.files.push_back(relative);
  }

 private:
  fs::path root_;
  ExperimentSummary &summary_;
};

ordered_json parse_json_object(const std::string &text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("invalid report JSON: ") + e.what());
  }
}

std::string fixed(double v, int precision = 4) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(precision) << v;
  return ss.str();
}

}  // namespace

std::string Condition::name() const {
  return std::string(mt_modified ? "modf" : "orig") + "&" + (ht_modified ? "modf" : "orig");
}

Condition Condition::parse(std::string_view name) {
  auto parts = split_fields(name, '&');
  auto side = [&](std::string_view s) {
    if (s == "orig") return false;
    if (s == "modf") return true;
    throw Error("unknown condition '" + std::string(name) + "' (expected e.g. orig&modf)");
  };
  if (parts.size() != 2) throw Error("unknown condition '" + std::string(name) + "'");
  return Condition{side(parts[0]), side(parts[1])};
}

ExperimentConfig ExperimentConfig::from_json(std::string_view text, const std::string &base_dir) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error("config must be a JSON object");
  reject_unknown(j,
                 {"mt", "ht", "format", "embeddings", "lexicon", "ratios", "seed", "reducer",
                  "conditions", "output_dir", "lowercase", "mtld", "wmd_weighting",
                  "discriminative"},
                 "config");
  ExperimentConfig cfg;
  try {
    cfg.mt_path = resolve_path(get_or<std::string>(j, "mt", ""), base_dir);
    cfg.ht_path = resolve_path(get_or<std::string>(j, "ht", ""), base_dir);
    cfg.format = parse_format(get_or<std::string>(j, "format", "annotated"));
    cfg.embeddings_path = resolve_path(get_or<std::string>(j, "embeddings", ""), base_dir);
    cfg.lexicon_path = resolve_path(get_or<std::string>(j, "lexicon", ""), base_dir);
    if (j.contains("ratios")) {
      const auto r = j.at("ratios").get<std::vector<double>>();
      if (r.size() != 3) throw Error("ratios must have 3 entries (train, test, validation)");
      cfg.ratios = {r[0], r[1], r[2]};
    }
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    if (j.contains("reducer")) {
      const auto &r = j.at("reducer");
      reject_unknown(r, {"freq_threshold", "top_k", "restrict_vocab"}, "reducer");
      cfg.reducer.freq_threshold = get_or<std::size_t>(r, "freq_threshold", cfg.reducer.freq_threshold);
      cfg.reducer.top_k = get_or<std::size_t>(r, "top_k", cfg.reducer.top_k);
      cfg.reducer.restrict_vocab = get_or<std::size_t>(r, "restrict_vocab", cfg.reducer.restrict_vocab);
    }
    if (j.contains("conditions")) {
      cfg.conditions.clear();
      for (const auto &c : j.at("conditions")) cfg.conditions.push_back(Condition::parse(c.get<std::string>()));
    }
    cfg.output_dir = resolve_path(get_or<std::string>(j, "output_dir", cfg.output_dir), base_dir);
    cfg.lowercase = get_or<bool>(j, "lowercase", cfg.lowercase);
    if (j.contains("mtld")) {
      const auto &m = j.at("mtld");
      reject_unknown(m, {"threshold", "unit"}, "mtld");
      cfg.mtld.ttr_threshold = get_or<double>(m, "threshold", cfg.mtld.ttr_threshold);
      if (m.contains("unit")) cfg.mtld.unit = parse_unit(m.at("unit").get<std::string>());
    }
    if (j.contains("wmd_weighting")) cfg.wmd_weighting = parse_weighting(j.at("wmd_weighting").get<std::string>());
    if (j.contains("discriminative")) {
      const auto &d = j.at("discriminative");
      reject_unknown(d, {"enabled", "dimension_bits", "epochs", "learning_rate", "hash_seed", "shuffle_seed"},
                     "discriminative");
      auto &dc = cfg.discriminative_config;
      cfg.discriminative = get_or<bool>(d, "enabled", cfg.discriminative);
      dc.dimension_bits = get_or<unsigned>(d, "dimension_bits", dc.dimension_bits);
      dc.epochs = get_or<int>(d, "epochs", dc.epochs);
      dc.learning_rate = get_or<double>(d, "learning_rate", dc.learning_rate);
      dc.hash_seed = get_or<std::uint64_t>(d, "hash_seed", dc.hash_seed);
      dc.shuffle_seed = get_or<std::uint64_t>(d, "shuffle_seed", dc.shuffle_seed);
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error(std::string("invalid config value: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string &path) {
  return from_json(read_file(path), fs::path(path).parent_path().string());
}

namespace {

ordered_json canonical(const ExperimentConfig &cfg, bool with_conditions) {
  ordered_json j;
  j["mt"] = cfg.mt_path;
  j["ht"] = cfg.ht_path;
  j["format"] = cfg.format == CorpusFormat::kRaw ? "raw" : "annotated";
  j["embeddings"] = cfg.embeddings_path;
  j["lexicon"] = cfg.lexicon_path;
  j["ratios"] = {cfg.ratios.train, cfg.ratios.test, cfg.ratios.validation};
  j["seed"] = cfg.seed;
  j["reducer"] = {{"freq_threshold", cfg.reducer.freq_threshold},
                  {"top_k", cfg.reducer.top_k},
                  {"restrict_vocab", cfg.reducer.restrict_vocab}};
  if (with_conditions) {
    j["conditions"] = ordered_json::array();
    for (const auto &c : cfg.conditions) j["conditions"].push_back(c.name());
  }
  j["lowercase"] = cfg.lowercase;
  j["mtld"] = {{"threshold", cfg.mtld.ttr_threshold},
               {"unit", cfg.mtld.unit == DiversityUnit::kLemma ? "lemma" : "surface"}};
  j["wmd_weighting"] = cfg.wmd_weighting == WmdWeighting::kIdf ? "idf" : "uniform";
  const auto &d = cfg.discriminative_config;
  j["discriminative"] = {{"enabled", cfg.discriminative},
                         {"dimension_bits", d.dimension_bits},
                         {"epochs", d.epochs},
                         {"learning_rate", d.learning_rate},
                         {"hash_seed", d.hash_seed},
                         {"shuffle_seed", d.shuffle_seed}};
  return j;
}

}  // namespace

std::string ExperimentConfig::to_json() const { return canonical(*this, true).dump(2) + "\n"; }

// The condition list is left out so that a condition's artifacts do not
// change when other conditions are added or removed.
std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical(*this, false).dump())); }

void ExperimentConfig::validate() const {
  if (mt_path.empty() || ht_path.empty()) throw Error("config needs both 'mt' and 'ht' corpus paths");
  for (const auto *p : {&mt_path, &ht_path, &embeddings_path, &lexicon_path}) {
    if (!p->empty() && !fs::exists(*p)) throw IoError(*p, "no such file");
  }
  if (conditions.empty()) throw Error("config needs at least one condition");
  split_sizes(3, ratios);
  if (reducer.freq_threshold < 1 || reducer.top_k < 1) {
    throw Error("reducer freq_threshold and top_k must be at least 1");
  }
  if (!(mtld.ttr_threshold > 0 && mtld.ttr_threshold < 1)) throw Error("mtld threshold must be in (0, 1)");
  if (output_dir.empty()) throw Error("config needs an output_dir");
}

bool ExperimentSummary::all_ok() const {
  for (const auto &c : conditions) {
    if (!c.ok) return false;
  }
  return true;
}

std::string ExperimentSummary::to_json() const {
  ordered_json j;
  j["config_hash"] = config_hash;
  j["conditions"] = ordered_json::array();
  for (const auto &c : conditions) {
    ordered_json row;
    row["name"] = c.name;
    row["ok"] = c.ok;
    if (!c.ok) row["error"] = c.error;
    j["conditions"].push_back(row);
  }
  j["files"] = files;
  return j.dump(2) + "\n";
}

ExperimentSummary run_experiment(const ExperimentConfig &cfg, unsigned workers, std::ostream *log) {
  cfg.validate();
  auto say = [&](const std::string &msg) {
    if (log) *log << "[experiment] " << msg << '\n';
  };

  ExperimentSummary summary;
  summary.config_hash = cfg.hash();
  Bundle bundle(cfg.output_dir, summary);

  TagLexicon lexicon;
  if (!cfg.lexicon_path.empty()) {
    lexicon = TagLexicon::load_file(cfg.lexicon_path);
  }
  auto load = [&](const std::string &path) {
    Corpus c = read_corpus_file(path, cfg.format, cfg.lexicon_path.empty() ? nullptr : &lexicon);
    return cfg.lowercase ? lowercase_surfaces(c) : c;
  };
  Side mt{Label::kMT, {Label::kMT, load(cfg.mt_path), {}}, {}, {}, {}};
  Side ht{Label::kHT, {Label::kHT, load(cfg.ht_path), {}}, {}, {}, {}};
  say("loaded " + std::to_string(mt.original.sentences.size()) + " MT and " +
      std::to_string(ht.original.sentences.size()) + " HT sentences");
  if (cfg.lexicon_path.empty() && cfg.format == CorpusFormat::kAnnotated) {
    Corpus both = mt.original.sentences;
    both.insert(both.end(), ht.original.sentences.begin(), ht.original.sentences.end());
    lexicon = TagLexicon::build(both);
  }

  std::unique_ptr<EmbeddingStore> store;
  if (!cfg.embeddings_path.empty()) {
    store = std::make_unique<EmbeddingStore>(EmbeddingStore::load_file(cfg.embeddings_path));
    say("loaded " + std::to_string(store->size()) + " vectors of dimension " +
        std::to_string(store->dimension()));
  }

  ordered_json config_json = canonical(cfg, true);
  config_json["config_hash"] = summary.config_hash;
  bundle.write("config.json", config_json.dump(2) + "\n");

  // Same seed on both sides: for a line-aligned pair the test sentences of
  // MT and HT are translations of the same source lines.
  for (Side *side : {&mt, &ht}) {
    side->original = split(std::move(side->original), cfg.ratios, cfg.seed);
    const std::string tag = side->label == Label::kMT ? "mt" : "ht";
    bundle.write("splits/" + tag + ".json", split_manifest_json(side->original, cfg.ratios, cfg.seed));
  }

  // The reducer runs on the whole corpus before splitting; the modified
  // corpus inherits the split of the original, position for position.
  bool need_modified[2] = {false, false};
  for (const auto &c : cfg.conditions) {
    need_modified[0] = need_modified[0] || c.mt_modified;
    need_modified[1] = need_modified[1] || c.ht_modified;
  }
  for (Side *side : {&mt, &ht}) {
    if (!need_modified[side->label == Label::kMT ? 0 : 1]) continue;
    const std::string tag = side->label == Label::kMT ? "mt" : "ht";
    try {
      if (!store) throw Error("modified corpora need an embeddings file");
      Reduction red = reduce_diversity(side->original.sentences, *store, lexicon, cfg.reducer, workers);
      LabeledCorpus modified{side->label, std::move(red.corpus), side->original.split};
      side->modified = std::move(modified);
      std::ostringstream plan;
      red.plan.save(plan);
      bundle.write("plans/" + tag + ".plan.tsv", plan.str());
      side->plan = std::move(red.plan);
      say(tag + ": " + std::to_string(red.rare_lemmas) + " rare lemmas, " +
          std::to_string(side->plan->replaced()) + " replacements, " +
          std::to_string(side->plan->skipped()) + " skipped");
    } catch (const std::exception &e) {
      side->reduce_error = e.what();
      say(tag + ": reduction failed: " + side->reduce_error);
    }
  }

  // MTLD per corpus version, in file order.
  ordered_json mtld_json;
  mtld_json["config_hash"] = summary.config_hash;
  mtld_json["unit"] = cfg.mtld.unit == DiversityUnit::kLemma ? "lemma" : "surface";
  mtld_json["threshold"] = cfg.mtld.ttr_threshold;
  std::ostringstream mtld_table;
  mtld_table << std::left << std::setw(9) << "MTLD" << std::setw(12) << "Original" << "Modified\n";
  for (Side *side : {&mt, &ht}) {
    ordered_json row;
    const std::string name(label_name(side->label));
    mtld_table << std::setw(9) << name;
    auto measure = [&](const LabeledCorpus *corpus, const char *key, bool last) {
      std::string cell = "-";
      if (corpus) {
        try {
          const MtldResult r = mtld(corpus->sentences, cfg.mtld);
          row[key] = parse_json_object(r.to_json());
          cell = fixed(r.mtld, 2);
        } catch (const Error &e) {
          row[key] = {{"error", e.what()}};
          cell = "undefined";
        }
      } else {
        row[key] = nullptr;
      }
      if (!last) mtld_table << std::setw(12);
      mtld_table << cell;
    };
    measure(&side->original, "original", false);
    measure(side->modified ? &*side->modified : nullptr, "modified", true);
    mtld_table << '\n';
    mtld_json[name] = row;
  }
  bundle.write("mtld.json", mtld_json.dump(2) + "\n");

  std::ostringstream trigram_tables, disc_tables, metric_rows;
  for (const auto &cond : cfg.conditions) {
    ConditionOutcome outcome{cond.name(), false, {}};
    const std::string dir = "conditions/" + directory_name(cond) + "/";
    try {
      auto pick = [&](const Side &side, bool modified) -> const LabeledCorpus & {
        if (!modified) return side.original;
        if (!side.modified) {
          throw Error(std::string(label_name(side.label)) + " modified corpus unavailable: " + side.reduce_error);
        }
        return *side.modified;
      };
      const LabeledCorpus &mt_c = pick(mt, cond.mt_modified);
      const LabeledCorpus &ht_c = pick(ht, cond.ht_modified);
      const Corpus mt_train = mt_c.subset(SplitTag::kTrain), ht_train = ht_c.subset(SplitTag::kTrain);
      const Corpus mt_test = mt_c.subset(SplitTag::kTest), ht_test = ht_c.subset(SplitTag::kTest);

      const TrigramModel p_mt = TrigramModel::train(mt_train, Label::kMT);
      const TrigramModel p_ht = TrigramModel::train(ht_train, Label::kHT);
      const ClassificationReport trigram = evaluate(p_mt, p_ht, mt_test, ht_test, workers);

      std::optional<ClassificationReport> disc;
      if (cfg.discriminative) {
        const auto model = train_discriminative(mt_train, ht_train, cfg.discriminative_config);
        disc = evaluate(model, mt_test, ht_test, workers);
      }

      const BleuResult bleu = corpus_bleu(mt_c.sentences, ht_c.sentences);
      std::optional<CorpusWmdResult> wmd_result;
      if (store) {
        const auto hyp = surfaces(mt_c.sentences), ref = surfaces(ht_c.sentences);
        wmd_result = corpus_wmd_score(hyp, ref, *store, cfg.wmd_weighting, workers);
      }

      auto report_json = [&](const ClassificationReport &r, const char *model) {
        ordered_json j;
        j["config_hash"] = summary.config_hash;
        j["condition"] = cond.name();
        j["model"] = model;
        j["report"] = parse_json_object(r.to_json());
        return j.dump(2) + "\n";
      };
      bundle.write(dir + "trigram.json", report_json(trigram, "trigram-witten-bell"));
      trigram_tables << trigram.to_table(display_name(cond)) << '\n';
      if (disc) {
        bundle.write(dir + "discriminative.json", report_json(*disc, "hashed-ngram-logistic"));
        disc_tables << disc->to_table(display_name(cond)) << '\n';
      }
      ordered_json metrics;
      metrics["config_hash"] = summary.config_hash;
      metrics["condition"] = cond.name();
      metrics["bleu"] = parse_json_object(bleu.to_json());
      if (wmd_result) {
        metrics["wmd"] = parse_json_object(wmd_result->to_json());
      } else {
        metrics["wmd"] = {{"metric", "wmd-static"}, {"skipped", "no embeddings configured"}};
      }
      bundle.write(dir + "metrics.json", metrics.dump(2) + "\n");
      metric_rows << std::left << std::setw(22) << display_name(cond) << std::setw(10)
                  << fixed(bleu.score) << (wmd_result ? fixed(wmd_result->mean_similarity) : "-")
                  << '\n';
      outcome.ok = true;
      say(cond.name() + ": total " + fixed(trigram.total_acc) + " (MT " + fixed(trigram.mt_acc) +
          ", HT " + fixed(trigram.ht_acc) + ")");
    } catch (const std::exception &e) {
      outcome.error = e.what();
      say(cond.name() + ": failed: " + outcome.error);
    }
    summary.conditions.push_back(std::move(outcome));
  }

  std::ostringstream tables;
  tables << "== Trigram classification accuracy ==\n\n" << trigram_tables.str();
  if (cfg.discriminative) {
    tables << "== Discriminative classification accuracy ==\n\n" << disc_tables.str();
  }
  tables << "== MTLD ==\n\n" << mtld_table.str() << '\n';
  tables << "== MT against HT reference ==\n"
         << "(wmd-static similarity is 1/(1+distance); only its ordering is meaningful)\n\n"
         << std::left << std::setw(22) << "Condition" << std::setw(10) << "BLEU" << "wmd-static\n"
         << metric_rows.str();
  bundle.write("tables.txt", tables.str());
  summary.files.push_back("summary.json");
  write_file((fs::path(cfg.output_dir) / "summary.json").string(), summary.to_json());
  return summary;
}

}  // namespace mtht
