// lexdiv.cc
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
#include "mtht/lexdiv.h"

#include <algorithm>
#include <string_view>
#include <unordered_set>

#include <json.hpp>

#include "mtht/error.h"
#include "mtht/text.h"

namespace mtht {

namespace {

template <typename It>
double scan_factors(It begin, It end, double threshold) {
  double factors = 0;
  std::unordered_set<std::string_view> types;
  std::size_t tokens = 0;
  double ttr = 1.0;
  for (It it = begin; it != end; ++it) {
    types.insert(*it);
    ++tokens;
    ttr = static_cast<double>(types.size()) / static_cast<double>(tokens);
    if (ttr <= threshold) {
      factors += 1.0;
      types.clear();
      tokens = 0;
      ttr = 1.0;
    }
  }
  if (tokens > 0) factors += (1.0 - ttr) / (1.0 - threshold);
  return factors;
}

void check(const MtldConfig &cfg) {
  if (!(cfg.ttr_threshold > 0.0 && cfg.ttr_threshold < 1.0)) {
    throw Error("MTLD threshold must lie strictly between 0 and 1");
  }
}

}  // namespace

DiversityUnit parse_unit(std::string_view name) {
  if (name == "surface" || name == "surface-lowercased") return DiversityUnit::kSurfaceLower;
  if (name == "lemma") return DiversityUnit::kLemma;
  throw Error("unknown diversity unit '" + std::string(name) + "' (expected surface or lemma)");
}

std::string MtldResult::to_json() const {
  nlohmann::ordered_json j;
  j["mtld"] = mtld;
  j["factors_fwd"] = factors_fwd;
  j["factors_bwd"] = factors_bwd;
  j["n_tokens"] = n_tokens;
  return j.dump();
}

double mtld_forward(std::span<const std::string> tokens, const MtldConfig &cfg) {
  check(cfg);
  return scan_factors(tokens.begin(), tokens.end(), cfg.ttr_threshold);
}

MtldResult mtld(std::span<const std::string> tokens, const MtldConfig &cfg) {
  check(cfg);
  if (tokens.empty()) throw Error("MTLD needs at least one token");
  MtldResult r;
  r.n_tokens = tokens.size();
  r.factors_fwd = scan_factors(tokens.begin(), tokens.end(), cfg.ttr_threshold);
  r.factors_bwd = scan_factors(tokens.rbegin(), tokens.rend(), cfg.ttr_threshold);
  if (r.factors_fwd == 0.0 || r.factors_bwd == 0.0) {
    throw UndefinedMtld("MTLD undefined: a scan of " + std::to_string(tokens.size()) +
                        " tokens completed no factor");
  }
  const double n = static_cast<double>(tokens.size());
  r.mtld = (n / r.factors_fwd + n / r.factors_bwd) / 2.0;
  return r;
}

std::vector<std::string> diversity_tokens(std::span<const AnnotatedSentence> corpus,
                                          DiversityUnit unit) {
  std::vector<std::string> out;
  for (const auto &s : corpus) {
    for (const auto &t : s.tokens) {
      out.push_back(unit == DiversityUnit::kLemma ? t.lemma : ascii_lower(t.surface));
    }
  }
  return out;
}

MtldResult mtld(std::span<const AnnotatedSentence> corpus, const MtldConfig &cfg) {
  const auto tokens = diversity_tokens(corpus, cfg.unit);
  return mtld(std::span<const std::string>(tokens), cfg);
}

}  // namespace mtht
