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

#include "dialeval/nano.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "dialeval/dataset.hpp"
#include "dialeval/text.hpp"
#include "json.hpp"

namespace dialeval {

namespace {

using nlohmann::json;

// ccTLD -> ISO region. Aliases: uk -> GB.
const std::unordered_map<std::string, std::string>& CcTldTable() {
  static const std::unordered_map<std::string, std::string> table = {
      {"ad", "AD"}, {"ae", "AE"}, {"af", "AF"}, {"ag", "AG"}, {"al", "AL"},
      {"am", "AM"}, {"ao", "AO"}, {"ar", "AR"}, {"at", "AT"}, {"au", "AU"},
      {"az", "AZ"}, {"ba", "BA"}, {"bd", "BD"}, {"be", "BE"}, {"bf", "BF"},
      {"bg", "BG"}, {"bh", "BH"}, {"bm", "BM"}, {"bo", "BO"}, {"br", "BR"},
      {"bs", "BS"}, {"bt", "BT"}, {"bw", "BW"}, {"by", "BY"}, {"bz", "BZ"},
      {"ca", "CA"}, {"ch", "CH"}, {"ci", "CI"}, {"cl", "CL"}, {"cm", "CM"},
      {"cn", "CN"}, {"co", "CO"}, {"cr", "CR"}, {"cu", "CU"}, {"cy", "CY"},
      {"cz", "CZ"}, {"de", "DE"}, {"dk", "DK"}, {"do", "DO"}, {"dz", "DZ"},
      {"ec", "EC"}, {"ee", "EE"}, {"eg", "EG"}, {"es", "ES"}, {"et", "ET"},
      {"fi", "FI"}, {"fj", "FJ"}, {"fk", "FK"}, {"fr", "FR"}, {"gb", "GB"},
      {"ge", "GE"}, {"gh", "GH"}, {"gi", "GI"}, {"gp", "GP"}, {"gr", "GR"},
      {"gt", "GT"}, {"gy", "GY"}, {"hk", "HK"}, {"hn", "HN"}, {"hr", "HR"},
      {"ht", "HT"}, {"hu", "HU"}, {"id", "ID"}, {"ie", "IE"}, {"il", "IL"},
      {"in", "IN"}, {"iq", "IQ"}, {"ir", "IR"}, {"is", "IS"}, {"it", "IT"},
      {"jm", "JM"}, {"jo", "JO"}, {"jp", "JP"}, {"ke", "KE"}, {"kg", "KG"},
      {"kh", "KH"}, {"kp", "KP"}, {"kr", "KR"}, {"kw", "KW"}, {"ky", "KY"},
      {"kz", "KZ"}, {"la", "LA"}, {"lb", "LB"}, {"li", "LI"}, {"lk", "LK"},
      {"lr", "LR"}, {"lt", "LT"}, {"lu", "LU"}, {"lv", "LV"}, {"ma", "MA"},
      {"md", "MD"}, {"mm", "MM"}, {"mn", "MN"}, {"mo", "MO"}, {"mt", "MT"},
      {"mx", "MX"}, {"my", "MY"}, {"mz", "MZ"}, {"ng", "NG"}, {"ni", "NI"},
      {"nl", "NL"}, {"no", "NO"}, {"np", "NP"}, {"nz", "NZ"}, {"pa", "PA"},
      {"pe", "PE"}, {"ph", "PH"}, {"pk", "PK"}, {"pl", "PL"}, {"pn", "PN"},
      {"pt", "PT"}, {"py", "PY"}, {"qa", "QA"}, {"ro", "RO"}, {"rs", "RS"},
      {"ru", "RU"}, {"sa", "SA"}, {"se", "SE"}, {"sg", "SG"}, {"sh", "SH"},
      {"si", "SI"}, {"sk", "SK"}, {"sn", "SN"}, {"sr", "SR"}, {"sv", "SV"},
      {"sy", "SY"}, {"th", "TH"}, {"tm", "TM"}, {"tn", "TN"}, {"tr", "TR"},
      {"tt", "TT"}, {"tw", "TW"}, {"tz", "TZ"}, {"ua", "UA"}, {"ug", "UG"},
      {"uk", "GB"}, {"us", "US"}, {"uy", "UY"}, {"uz", "UZ"}, {"ve", "VE"},
      {"vn", "VN"}, {"ye", "YE"}, {"za", "ZA"}, {"zm", "ZM"}, {"zw", "ZW"},
  };
  return table;
}

// Languages whose LangID output carries a locale of its own.
bool LangidCarriesLocale(const std::string& language) {
  return language == "zh" || language == "pt";
}

std::string_view KindName(TagKind kind) {
  return kind == TagKind::kDialect ? "dialect" : "language";
}

}  // namespace

std::optional<std::string> ExtractRegionFromUrl(std::string_view url) {
  // Strip scheme.
  if (const auto scheme = url.find("://"); scheme != std::string_view::npos) {
    url = url.substr(scheme + 3);
  }
  // Host ends at the first of / ? # :.
  const auto end = url.find_first_of("/?#:");
  std::string_view host = end == std::string_view::npos ? url : url.substr(0, end);
  if (host.empty()) return std::nullopt;
  // Drop userinfo if present.
  if (const auto at = host.rfind('@'); at != std::string_view::npos) {
    host = host.substr(at + 1);
  }
  const auto dot = host.rfind('.');
  if (dot == std::string_view::npos || dot + 1 >= host.size()) return std::nullopt;
  std::string tld;
  for (char c : host.substr(dot + 1)) {
    tld.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  const auto& table = CcTldTable();
  const auto it = table.find(tld);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

std::optional<LabeledSentence> CombineLangidRegion(
    const std::string& sentence, const DialectTag& langid_tag,
    const std::optional<std::string>& url_region, std::string* drop_reason) {
  const auto drop = [&](const char* reason) -> std::optional<LabeledSentence> {
    if (drop_reason) *drop_reason = reason;
    return std::nullopt;
  };
  if (langid_tag.language.empty()) return drop("missing_langid");
  if (LangidCarriesLocale(langid_tag.language)) {
    if (langid_tag.IsLanguageOnly()) return drop("missing_langid_locale");
    if (!url_region) return drop("missing_url_region");
    if (*url_region != langid_tag.region) return drop("locale_disagreement");
    return LabeledSentence{sentence, langid_tag, url_region, langid_tag};
  }
  if (!url_region) return drop("missing_url_region");
  return LabeledSentence{sentence, langid_tag, url_region,
                         DialectTag{langid_tag.language, *url_region}};
}

std::vector<DialectTag> DefaultTagUniverse() {
  static const std::vector<std::pair<const char*, std::vector<const char*>>>
      inventory = {
          {"en", {"AU", "BZ", "BM", "BR", "CA", "KY", "CK", "CU", "DO", "FK",
                  "GI", "GP", "GT", "GY", "HN", "IE", "LR", "MX", "NF", "PN",
                  "SH", "ZA", "SR", "GB", "US", "VE", "IN"}},
          {"cs", {"AT", "CZ", "PL", "SK"}},
          {"de", {"AT", "BE", "CZ", "DK", "FR", "DE", "HU", "IT", "LI", "LU",
                  "NL", "PL", "RO", "SK", "SI", "CH"}},
          {"ja", {"JP"}},
          {"km", {"KH", "LA", "TH", "VN"}},
          {"pl", {"BY", "CZ", "DE", "LT", "PL", "RU", "SK", "UA"}},
          {"ps", {"PK"}},
          {"ru", {"BY", "CN", "EE", "FI", "GE", "KZ", "KP", "KG", "LV", "LT",
                  "MD", "MN", "NO", "PL", "RO", "RU", "TM", "UA", "UZ"}},
          {"ta", {"IN", "LK"}},
          {"zh", {"CN", "KP", "LA", "VN", "TW", "MM", "MN", "RU", "HK"}},
      };
  std::vector<DialectTag> universe;
  for (const auto& [lang, regions] : inventory) {
    for (const char* region : regions) {
      universe.push_back(DialectTag{lang, region});
    }
  }
  return universe;
}

std::vector<DialectTag> LoadTagUniverse(std::istream& in) {
  std::vector<DialectTag> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tag = DialectTag::Parse(line);
    if (!tag) throw DataError(line_no, "bad tag: " + line);
    out.push_back(*tag);
  }
  return out;
}

SampledTag SampleTag(const DialectTag& gold, const SamplerConfig& config,
                     Rng& rng) {
  if (config.lambda < 0.0) throw ConfigError("lambda must be >= 0");
  if (config.pos_neg_ratio <= 0.0) {
    throw ConfigError("pos:neg ratio must be > 0");
  }
  const double p_positive = config.pos_neg_ratio / (1.0 + config.pos_neg_ratio);
  const double p_dialect = config.lambda / (1.0 + config.lambda);
  const bool positive = rng.NextBernoulli(p_positive);
  const bool dialect = rng.NextBernoulli(p_dialect);

  SampledTag out;
  out.kind = dialect ? TagKind::kDialect : TagKind::kLanguage;
  out.polarity = positive ? Polarity::kPositive : Polarity::kNegative;
  if (positive) {
    out.tag = dialect ? gold : DialectTag::LanguageOnly(gold.language);
    return out;
  }
  if (dialect) {
    std::vector<const DialectTag*> candidates;
    for (const auto& t : config.tag_universe) {
      if (!t.IsLanguageOnly() && t != gold) candidates.push_back(&t);
    }
    if (candidates.empty()) {
      throw ConfigError("no admissible negative dialect tag for " +
                        gold.Render());
    }
    out.tag = *candidates[rng.NextBelow(candidates.size())];
    return out;
  }
  std::set<std::string> languages;
  for (const auto& t : config.tag_universe) {
    if (t.language != gold.language) languages.insert(t.language);
  }
  if (languages.empty()) {
    throw ConfigError("no admissible negative language tag for " +
                      gold.Render());
  }
  auto it = languages.begin();
  std::advance(it, static_cast<long>(rng.NextBelow(languages.size())));
  out.tag = DialectTag::LanguageOnly(*it);
  return out;
}

std::string FormatInput(InputMode mode, const std::string& sentence,
                        const DialectTag& tag,
                        const std::optional<std::string>& reference,
                        const std::optional<std::string>& source) {
  const bool needs_reference =
      mode == InputMode::kWithin || mode == InputMode::kQeWithRef;
  const bool needs_source = mode == InputMode::kQe || mode == InputMode::kQeWithRef;
  if (needs_reference && !reference) {
    throw ConfigError("missing field: reference");
  }
  if (needs_source && !source) throw ConfigError("missing field: source");

  std::string out = "candidate: " + sentence;
  if (needs_reference) out += " reference: " + *reference;
  if (needs_source) out += " source: " + *source;
  out += " language: " + tag.Render();
  return out;
}

TaggedTrainingExample MakePretrainExample(const LabeledSentence& sentence,
                                          const SampledTag& sampled) {
  TaggedTrainingExample ex;
  ex.input = FormatInput(InputMode::kPretrain, sentence.text, sampled.tag);
  ex.target = sampled.polarity == Polarity::kPositive ? "1" : "0";
  ex.gold_tag = sentence.gold_tag;
  ex.sampled_tag = sampled.tag;
  ex.tag_kind = sampled.kind;
  ex.polarity = sampled.polarity;
  return ex;
}

std::vector<NanoDocument> LoadNanoDocuments(std::istream& in) {
  std::vector<NanoDocument> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
      throw DataError(line_no, "unparseable record");
    }
    NanoDocument doc;
    if (!j.contains("url") || !j["url"].is_string() || !j.contains("text") ||
        !j["text"].is_string()) {
      throw DataError(line_no, "missing url or text");
    }
    doc.url = j["url"].get<std::string>();
    doc.text = ComposeCanonical(j["text"].get<std::string>());
    if (j.contains("langid_tag")) {
      const auto tag = DialectTag::Parse(j["langid_tag"].get<std::string>());
      if (!tag) throw DataError(line_no, "bad langid_tag");
      doc.langid_tag = tag;
    }
    out.push_back(std::move(doc));
  }
  return out;
}

std::string FormatTrainingLine(const TaggedTrainingExample& ex) {
  return json{{"input", ex.input},
              {"target", ex.target},
              {"meta",
               {{"gold_tag", ex.gold_tag.Render()},
                {"sampled_tag", ex.sampled_tag.Render()},
                {"tag_kind", std::string(KindName(ex.tag_kind))}}}}
      .dump();
}

NanoBuildStats BuildNanoDataset(const std::vector<NanoDocument>& documents,
                                const SamplerConfig& config, std::ostream& out,
                                int shards) {
  if (shards < 1) throw ConfigError("shards must be >= 1");
  if (config.tag_universe.empty()) throw ConfigError("empty tag universe");

  NanoBuildStats stats;
  // Shards own disjoint document slices; streams derive from (seed, shard)
  // so the concatenated output does not depend on scheduling.
  std::vector<std::string> shard_output(static_cast<std::size_t>(shards));
  for (int s = 0; s < shards; ++s) {
    Rng rng = Rng::ForShard(config.seed, static_cast<std::uint64_t>(s));
    std::string& sink = shard_output[static_cast<std::size_t>(s)];
    for (std::size_t d = static_cast<std::size_t>(s); d < documents.size();
         d += static_cast<std::size_t>(shards)) {
      const auto& doc = documents[d];
      const auto region = ExtractRegionFromUrl(doc.url);
      for (const auto& sentence : SplitSentences(doc.text)) {
        ++stats.sentences_in;
        if (!doc.langid_tag) {
          ++stats.drop_reasons["missing_langid"];
          continue;
        }
        std::string reason;
        const auto labeled =
            CombineLangidRegion(sentence, *doc.langid_tag, region, &reason);
        if (!labeled) {
          ++stats.drop_reasons[reason];
          continue;
        }
        ++stats.sentences_kept;
        const auto sampled = SampleTag(labeled->gold_tag, config, rng);
        const auto ex = MakePretrainExample(*labeled, sampled);
        sink += FormatTrainingLine(ex);
        sink += '\n';
        ++stats.total_examples;
        if (ex.polarity == Polarity::kPositive) ++stats.positives;
        if (ex.tag_kind == TagKind::kDialect) ++stats.dialect_tags;
        ++stats.sampled_tag_histogram[ex.sampled_tag.Render()];
      }
    }
  }
  for (const auto& chunk : shard_output) out << chunk;
  return stats;
}

}  // namespace dialeval
