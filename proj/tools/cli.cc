// cli.cc
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
#include "cli.h"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtht/classifier.h"
#include "mtht/corpus.h"
#include "mtht/embeddings.h"
#include "mtht/error.h"
#include "mtht/harness.h"
#include "mtht/lexdiv.h"
#include "mtht/metrics.h"
#include "mtht/reducer.h"
#include "mtht/text.h"
#include "mtht/trigram_lm.h"

namespace mtht {

namespace {

using nlohmann::ordered_json;

struct CorpusOptions {
  std::string format = "raw";
  std::string lexicon;
  bool lowercase = false;

  void attach(CLI::App *cmd, const std::string &default_format = "raw") {
    format = default_format;
    cmd->add_option("--format", format, "Input format: raw (one sentence per line) or annotated (4-column TSV)")
        ->check(CLI::IsMember({"raw", "annotated", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--lexicon", lexicon, "Tag lexicon TSV used to tag raw input");
    cmd->add_flag("--lowercase", lowercase, "Lowercase surface forms after reading");
  }

  Corpus read(const std::string &path) const {
    std::optional<TagLexicon> lex;
    if (!lexicon.empty()) lex = TagLexicon::load_file(lexicon);
    Corpus c = read_corpus_file(path, parse_format(format), lex ? &*lex : nullptr);
    return lowercase ? lowercase_surfaces(c) : c;
  }
};

SplitRatios ratios_or_default(const std::string &csv) {
  return csv.empty() ? SplitRatios{} : parse_ratios(csv);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Machine vs. human translation analytics: trigram classification, "
               "lexical diversity and translation metrics"};
  app.name("mtht");
  app.require_subcommand(1);
  app.fallthrough();
  unsigned workers = 1;
  app.add_option("--workers", workers, "Worker threads for scoring")->capture_default_str();

  // ingest
  auto *ingest = app.add_subcommand("ingest", "Tokenize/annotate a corpus, emit annotated TSV and a split manifest");
  std::string ingest_input, ingest_output, ingest_manifest, ingest_build_lexicon, ingest_ratios;
  std::uint64_t ingest_seed = 42;
  CorpusOptions ingest_opts;
  ingest->add_option("--input", ingest_input, "Input corpus")->required();
  ingest_opts.attach(ingest);
  ingest->add_option("--output", ingest_output, "Annotated TSV output (stdout when absent)");
  ingest->add_option("--split-manifest", ingest_manifest, "Write a JSON split manifest here");
  ingest->add_option("--ratios", ingest_ratios, "train,test,validation fractions (default 0.7,0.1,0.2)");
  ingest->add_option("--seed", ingest_seed, "Split seed")->capture_default_str();
  ingest->add_option("--build-lexicon", ingest_build_lexicon, "Write a most-frequent-tag lexicon built from the input");

  // train-lm
  auto *train = app.add_subcommand("train-lm", "Train a Witten-Bell trigram model");
  std::string train_input, train_output, train_label;
  CorpusOptions train_opts;
  train->add_option("--input", train_input, "Training corpus")->required();
  train->add_option("--label", train_label, "MT or HT")->required()->check(CLI::IsMember({"MT", "HT", "mt", "ht"}));
  train->add_option("--output", train_output, "Model file")->required();
  train_opts.attach(train);

  // classify
  auto *classify = app.add_subcommand("classify", "Classify sentences by comparing an MT and an HT model");
  std::string mt_model, ht_model, mt_test, ht_test, classify_input;
  CorpusOptions classify_opts;
  classify->add_option("--mt-model", mt_model, "Model trained on MT")->required();
  classify->add_option("--ht-model", ht_model, "Model trained on HT")->required();
  classify->add_option("--mt-test", mt_test, "MT test corpus (report mode)");
  classify->add_option("--ht-test", ht_test, "HT test corpus (report mode)");
  classify->add_option("--input", classify_input, "Corpus to label sentence by sentence");
  classify_opts.attach(classify);

  // mtld
  auto *mtld_cmd = app.add_subcommand("mtld", "Measure of textual lexical diversity per input file");
  std::vector<std::string> mtld_inputs;
  std::string mtld_unit = "surface";
  double mtld_threshold = 0.72;
  CorpusOptions mtld_opts;
  mtld_cmd->add_option("--input", mtld_inputs, "Input corpus (repeatable)")->required();
  mtld_cmd->add_option("--unit", mtld_unit, "surface (lowercased) or lemma")
      ->check(CLI::IsMember({"surface", "lemma"}))
      ->capture_default_str();
  mtld_cmd->add_option("--threshold", mtld_threshold, "Factor TTR threshold")->capture_default_str();
  mtld_opts.attach(mtld_cmd);

  // reduce
  auto *reduce = app.add_subcommand("reduce", "Replace rare lemmas by tag-compatible embedding neighbors");
  std::string reduce_input, reduce_embeddings, reduce_output, reduce_plan;
  ReducerConfig reducer;
  CorpusOptions reduce_opts;
  reduce->add_option("--input", reduce_input, "Corpus to modify")->required();
  reduce->add_option("--embeddings", reduce_embeddings, "Word vectors (text format, no header)")->required();
  reduce->add_option("--output", reduce_output, "Modified corpus, annotated TSV")->required();
  reduce->add_option("--plan", reduce_plan, "Replacement audit log (TSV)");
  reduce->add_option("--freq-threshold", reducer.freq_threshold, "Rare means lemma count below this")->capture_default_str();
  reduce->add_option("--topk", reducer.top_k, "Neighbors considered per rare word")->capture_default_str();
  reduce->add_option("--restrict-vocab", reducer.restrict_vocab, "Neighbor search limited to the first N vectors")
      ->capture_default_str();
  reduce_opts.attach(reduce, "annotated");

  // bleu
  auto *bleu = app.add_subcommand("bleu", "Corpus BLEU of a hypothesis against a single reference");
  std::string bleu_hyp, bleu_ref;
  CorpusOptions bleu_opts;
  bleu->add_option("--hyp", bleu_hyp, "Hypothesis corpus")->required();
  bleu->add_option("--ref", bleu_ref, "Reference corpus")->required();
  bleu_opts.attach(bleu);

  // wmd
  auto *wmd_cmd = app.add_subcommand("wmd", "Average wmd-static similarity over aligned sentence pairs");
  std::string wmd_hyp, wmd_ref, wmd_embeddings, wmd_weighting = "uniform";
  CorpusOptions wmd_opts;
  wmd_cmd->add_option("--hyp", wmd_hyp, "Hypothesis corpus")->required();
  wmd_cmd->add_option("--ref", wmd_ref, "Reference corpus")->required();
  wmd_cmd->add_option("--embeddings", wmd_embeddings, "Word vectors (text format, no header)")->required();
  wmd_cmd->add_option("--weighting", wmd_weighting, "uniform or idf")
      ->check(CLI::IsMember({"uniform", "idf"}))
      ->capture_default_str();
  wmd_opts.attach(wmd_cmd);

  // experiment
  auto *experiment = app.add_subcommand("experiment", "Run the full condition matrix and write a report bundle");
  std::string config_path, exp_output, exp_ratios;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_freq, exp_topk, exp_restrict;
  bool exp_lowercase = false;
  experiment->add_option("--config", config_path, "Experiment config (JSON)")->required();
  experiment->add_option("--output-dir", exp_output, "Override output_dir");
  experiment->add_option("--seed", exp_seed, "Override seed");
  experiment->add_option("--ratios", exp_ratios, "Override ratios, e.g. 0.7,0.1,0.2");
  experiment->add_option("--freq-threshold", exp_freq, "Override reducer.freq_threshold");
  experiment->add_option("--topk", exp_topk, "Override reducer.top_k");
  experiment->add_option("--restrict-vocab", exp_restrict, "Override reducer.restrict_vocab");
  experiment->add_flag("--lowercase", exp_lowercase, "Override lowercase = true");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "mtht: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*ingest) {
      Corpus corpus = ingest_opts.read(ingest_input);
      const std::string tsv = emit_annotated(corpus);
      std::size_t tokens = 0;
      for (const auto &s : corpus) tokens += s.tokens.size();
      if (!ingest_build_lexicon.empty()) {
        std::ofstream lex = open_output(ingest_build_lexicon);
        TagLexicon::build(corpus).save(lex);
      }
      ordered_json summary = {{"sentences", corpus.size()}, {"tokens", tokens}};
      if (!ingest_manifest.empty()) {
        const SplitRatios ratios = ratios_or_default(ingest_ratios);
        LabeledCorpus labeled{Label::kHT, std::move(corpus), {}};
        labeled = split(std::move(labeled), ratios, ingest_seed);
        write_file(ingest_manifest, split_manifest_json(labeled, ratios, ingest_seed));
        const auto sizes = split_sizes(labeled.sentences.size(), ratios);
        summary["train"] = sizes[0];
        summary["test"] = sizes[1];
        summary["validation"] = sizes[2];
      }
      if (ingest_output.empty()) {
        out << tsv;
        err << summary.dump() << '\n';
      } else {
        write_file(ingest_output, tsv);
        out << summary.dump() << '\n';
      }
    } else if (*train) {
      const Corpus corpus = train_opts.read(train_input);
      const TrigramModel model = TrigramModel::train(corpus, parse_label(train_label));
      model.save_file(train_output);
      out << ordered_json{{"label", label_name(model.label())},
                          {"N", model.total_tokens()},
                          {"V", model.vocab_size()},
                          {"sentences", corpus.size()}}
                 .dump()
          << '\n';
    } else if (*classify) {
      const TrigramModel p_mt = TrigramModel::load_file(mt_model);
      const TrigramModel p_ht = TrigramModel::load_file(ht_model);
      if (!mt_test.empty() || !ht_test.empty()) {
        if (mt_test.empty() || ht_test.empty()) {
          err << "mtht: classify needs both --mt-test and --ht-test\n";
          return kExitUsage;
        }
        const auto report =
            evaluate(p_mt, p_ht, classify_opts.read(mt_test), classify_opts.read(ht_test), workers);
        out << report.to_json() << '\n';
        err << report.to_table("Trigram classification");
      } else if (!classify_input.empty()) {
        for (const auto &s : classify_opts.read(classify_input)) {
          const auto tokens = s.surfaces();
          const double a = p_mt.sentence_logprob(tokens), b = p_ht.sentence_logprob(tokens);
          out << ordered_json{{"id", s.source_id},
                              {"label", label_name(decide(a, b))},
                              {"logprob_mt", a},
                              {"logprob_ht", b}}
                     .dump()
              << '\n';
        }
      } else {
        err << "mtht: classify needs --mt-test/--ht-test or --input\n\n" << classify->help();
        return kExitUsage;
      }
    } else if (*mtld_cmd) {
      MtldConfig cfg{mtld_threshold, parse_unit(mtld_unit)};
      for (const auto &path : mtld_inputs) out << mtld(mtld_opts.read(path), cfg).to_json() << '\n';
    } else if (*reduce) {
      const Corpus corpus = reduce_opts.read(reduce_input);
      const EmbeddingStore store = EmbeddingStore::load_file(reduce_embeddings);
      const TagLexicon lexicon =
          reduce_opts.lexicon.empty() ? TagLexicon::build(corpus) : TagLexicon::load_file(reduce_opts.lexicon);
      const Reduction red = reduce_diversity(corpus, store, lexicon, reducer, workers);
      write_file(reduce_output, emit_annotated(red.corpus));
      if (!reduce_plan.empty()) {
        std::ofstream plan = open_output(reduce_plan);
        red.plan.save(plan);
      }
      out << ordered_json{{"sentences", red.corpus.size()},
                          {"rare_lemmas", red.rare_lemmas},
                          {"replaced", red.plan.replaced()},
                          {"skipped", red.plan.skipped()}}
                 .dump()
          << '\n';
    } else if (*bleu) {
      out << corpus_bleu(bleu_opts.read(bleu_hyp), bleu_opts.read(bleu_ref)).to_json() << '\n';
    } else if (*wmd_cmd) {
      const EmbeddingStore store = EmbeddingStore::load_file(wmd_embeddings);
      const auto hyp = surfaces(wmd_opts.read(wmd_hyp));
      const auto ref = surfaces(wmd_opts.read(wmd_ref));
      out << corpus_wmd_score(hyp, ref, store, parse_weighting(wmd_weighting), workers).to_json() << '\n';
    } else if (*experiment) {
      ExperimentConfig cfg = ExperimentConfig::load_file(config_path);
      if (!exp_output.empty()) cfg.output_dir = exp_output;
      if (exp_seed) cfg.seed = *exp_seed;
      if (!exp_ratios.empty()) cfg.ratios = parse_ratios(exp_ratios);
      if (exp_freq) cfg.reducer.freq_threshold = *exp_freq;
      if (exp_topk) cfg.reducer.top_k = *exp_topk;
      if (exp_restrict) cfg.reducer.restrict_vocab = *exp_restrict;
      if (exp_lowercase) cfg.lowercase = true;
      const ExperimentSummary summary = run_experiment(cfg, workers, &err);
      out << summary.to_json();
      return summary.all_ok() ? kExitOk : kExitData;
    }
  } catch (const std::exception &e) {
    err << "mtht: error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace mtht
