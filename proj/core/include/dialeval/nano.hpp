//
// Copyright 2026 The DialectEval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DIALEVAL_NANO_H_
#define DIALEVAL_NANO_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dialeval/rng.hpp"
#include "dialeval/tag.hpp"

namespace dialeval {

// Maps a URL's country-code TLD to an uppercase region ("...example.in"
// -> "IN"). Generic TLDs and unparseable hosts yield nullopt.
std::optional<std::string> ExtractRegionFromUrl(std::string_view url);

struct LabeledSentence {
  std::string text;
  DialectTag langid_tag;
  std::optional<std::string> url_region;
  DialectTag gold_tag;
};

// Resolves LangID output against URL-region evidence. For languages whose
// LangID carries a locale (zh, pt) the two must agree; for other languages
// the URL region supplies the locale. Returns nullopt with `drop_reason`
// set when the sentence is filtered.
std::optional<LabeledSentence> CombineLangidRegion(
    const std::string& sentence, const DialectTag& langid_tag,
    const std::optional<std::string>& url_region,
    std::string* drop_reason = nullptr);

struct SamplerConfig {
  double lambda = 1.0;         // dialect-vs-language tag balance, >= 0
  double pos_neg_ratio = 1.0;  // positives per negative, > 0
  std::vector<DialectTag> tag_universe;
  std::uint64_t seed = 0;
};

// Ships the WMT language/region inventory used as the default negative
// universe.
std::vector<DialectTag> DefaultTagUniverse();
std::vector<DialectTag> LoadTagUniverse(std::istream& in);

enum class TagKind { kDialect, kLanguage };
enum class Polarity { kPositive, kNegative };

struct SampledTag {
  DialectTag tag;
  TagKind kind = TagKind::kDialect;
  Polarity polarity = Polarity::kPositive;
};

// Positive with probability r/(1+r); dialect tag with probability
// lambda/(1+lambda). Positive dialect draws the gold tag itself; positive
// language draws "<lang>-any"; negatives draw uniformly from the
// admissible universe.
SampledTag SampleTag(const DialectTag& gold, const SamplerConfig& config,
                     Rng& rng);

struct TaggedTrainingExample {
  std::string input;
  std::string target;  // "0" or "1"
  DialectTag gold_tag;
  DialectTag sampled_tag;
  TagKind tag_kind = TagKind::kDialect;
  Polarity polarity = Polarity::kPositive;
};

enum class InputMode { kPretrain, kWithin, kQe, kQeWithRef };

// Byte-exact input strings:
//   pretrain:    "candidate: {s} language: {tag}"
//   within:      "candidate: {s} reference: {r} language: {tag}"
//   qe:          "candidate: {s} source: {src} language: {tag}"
//   qe_with_ref: "candidate: {s} reference: {r} source: {src} language: {tag}"
std::string FormatInput(InputMode mode, const std::string& sentence,
                        const DialectTag& tag,
                        const std::optional<std::string>& reference = std::nullopt,
                        const std::optional<std::string>& source = std::nullopt);

TaggedTrainingExample MakePretrainExample(const LabeledSentence& sentence,
                                          const SampledTag& sampled);

struct NanoDocument {
  std::string url;
  std::string text;
  std::optional<DialectTag> langid_tag;
};

std::vector<NanoDocument> LoadNanoDocuments(std::istream& in);

struct NanoBuildStats {
  long sentences_in = 0;
  long sentences_kept = 0;
  std::map<std::string, long> drop_reasons;
  long positives = 0;
  long dialect_tags = 0;
  long total_examples = 0;
  std::map<std::string, long> sampled_tag_histogram;
  double PositiveFraction() const {
    return total_examples ? static_cast<double>(positives) / total_examples : 0.0;
  }
  double DialectTagFraction() const {
    return total_examples ? static_cast<double>(dialect_tags) / total_examples
                          : 0.0;
  }
};

// Sharded streaming build: documents -> sentences -> labels -> samples ->
// formatted lines. Each shard derives its random stream from (seed, shard
// index); output is concatenated by shard index, so reruns are
// byte-identical regardless of scheduling.
NanoBuildStats BuildNanoDataset(const std::vector<NanoDocument>& documents,
                                const SamplerConfig& config, std::ostream& out,
                                int shards = 1);

std::string FormatTrainingLine(const TaggedTrainingExample& ex);

// External LangID over the metrics line protocol; the child answers each
// {"id", "candidate"} request with {"id", "label"} where label is a
// dialect tag or "" for unidentified text.
class SubprocessLabeler {
 public:
  explicit SubprocessLabeler(std::string command);
  ~SubprocessLabeler();

  SubprocessLabeler(const SubprocessLabeler&) = delete;
  SubprocessLabeler& operator=(const SubprocessLabeler&) = delete;

  std::vector<std::optional<DialectTag>> Label(
      const std::vector<std::string>& sentences);

 private:
  struct Impl;
  Impl* impl_;
};

}  // namespace dialeval

#endif  // DIALEVAL_NANO_H_
