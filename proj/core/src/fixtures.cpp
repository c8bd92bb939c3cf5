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

#include "dialeval/fixtures.hpp"

#include <array>
#include <ostream>
#include <sstream>

#include "dialeval/rng.hpp"
#include "json.hpp"

namespace dialeval {

namespace {

using nlohmann::json;

struct SynonymPair {
  const char* word;
  const char* synonym;
};

constexpr std::array<SynonymPair, 20> kSynonyms = {{
    {"committee", "panel"},     {"approved", "endorsed"},
    {"budget", "proposal"},     {"meeting", "session"},
    {"started", "commenced"},   {"finished", "concluded"},
    {"house", "residence"},     {"bought", "purchased"},
    {"quickly", "rapidly"},     {"children", "youngsters"},
    {"doctor", "physician"},    {"car", "automobile"},
    {"street", "road"},         {"happy", "glad"},
    {"angry", "furious"},       {"large", "sizable"},
    {"small", "modest"},        {"said", "stated"},
    {"asked", "requested"},     {"helped", "assisted"},
}};

constexpr std::array<const char*, 8> kNumbers = {
    "two", "three", "four", "five", "six", "seven", "eight", "nine"};

std::string PadId(const char* prefix, int i) {
  std::ostringstream os;
  os << prefix;
  if (i < 1000) os << '0';
  if (i < 100) os << '0';
  if (i < 10) os << '0';
  os << i;
  return os.str();
}

}  // namespace

std::vector<MicroExample> MakeAdversarialMicroDataset(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<MicroExample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Five distinct synonym pairs plus one number word per example.
    std::array<std::size_t, 5> picks{};
    for (std::size_t k = 0; k < picks.size(); ++k) {
      bool fresh = false;
      while (!fresh) {
        picks[k] = rng.NextBelow(kSynonyms.size());
        fresh = true;
        for (std::size_t m = 0; m < k; ++m) {
          if (picks[m] == picks[k]) fresh = false;
        }
      }
    }
    const std::size_t num = rng.NextBelow(kNumbers.size() - 1);

    const auto build = [&](bool synonyms, std::size_t number_index) {
      std::string s = "the ";
      s += synonyms ? kSynonyms[picks[0]].synonym : kSynonyms[picks[0]].word;
      s += ' ';
      s += synonyms ? kSynonyms[picks[1]].synonym : kSynonyms[picks[1]].word;
      s += " the ";
      s += synonyms ? kSynonyms[picks[2]].synonym : kSynonyms[picks[2]].word;
      s += " with ";
      s += kNumbers[number_index];
      s += ' ';
      s += synonyms ? kSynonyms[picks[3]].synonym : kSynonyms[picks[3]].word;
      s += ' ';
      s += synonyms ? kSynonyms[picks[4]].synonym : kSynonyms[picks[4]].word;
      return s;
    };

    MicroExample ex;
    ex.id = PadId("adv", i);
    ex.base = build(false, num);
    ex.dialect_rewrites.push_back({"synonym_shift", build(true, num)});
    ex.perturbations["replace"] = build(false, num + 1);
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<ScoreRecord> MakeOracleScores(const std::vector<MicroExample>& dataset,
                                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScoreRecord> out;
  out.reserve(dataset.size() * 2);
  for (const auto& ex : dataset) {
    // Dialect rewrites preserve meaning, perturbations do not; scores
    // encode that directly.
    const double dialect = 0.85 + 0.10 * rng.NextDouble();
    const double perturb = 0.30 + 0.20 * rng.NextDouble();
    out.push_back({"oracle", ex.id, Condition::Dialect(), dialect});
    out.push_back({"oracle", ex.id, Condition::Perturb(), perturb});
  }
  return out;
}

std::vector<NanoDocument> MakeNanoDocuments(int n_documents, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NanoDocument> out;
  out.reserve(static_cast<std::size_t>(n_documents));
  for (int i = 0; i < n_documents; ++i) {
    const auto scenario = rng.NextBelow(10);
    NanoDocument doc;
    std::string lang;
    if (scenario < 2) {  // pt-BR, agreeing URL
      doc.langid_tag = DialectTag{"pt", "BR"};
      doc.url = "https://noticia" + std::to_string(i) + ".example.br/artigo";
      lang = "pt";
    } else if (scenario < 4) {  // pt-PT, agreeing URL
      doc.langid_tag = DialectTag{"pt", "PT"};
      doc.url = "https://jornal" + std::to_string(i) + ".example.pt/artigo";
      lang = "pt";
    } else if (scenario < 6) {  // zh-CN
      doc.langid_tag = DialectTag{"zh", "CN"};
      doc.url = "https://xinwen" + std::to_string(i) + ".example.cn/wenzhang";
      lang = "zh";
    } else if (scenario < 7) {  // zh-TW
      doc.langid_tag = DialectTag{"zh", "TW"};
      doc.url = "https://site" + std::to_string(i) + ".example.tw/wenzhang";
      lang = "zh";
    } else if (scenario < 8) {  // en + region from URL
      doc.langid_tag = DialectTag::LanguageOnly("en");
      doc.url = "https://news" + std::to_string(i) + ".example.in/story";
      lang = "en";
    } else if (scenario < 9) {  // locale disagreement, filtered downstream
      doc.langid_tag = DialectTag{"pt", "BR"};
      doc.url = "https://loja" + std::to_string(i) + ".example.pt/pagina";
      lang = "pt";
    } else {  // generic TLD, no region evidence
      doc.langid_tag = DialectTag::LanguageOnly("en");
      doc.url = "https://blog" + std::to_string(i) + ".example.com/post";
      lang = "en";
    }
    const int sentences = 1 + static_cast<int>(rng.NextBelow(3));
    std::string text;
    for (int s = 0; s < sentences; ++s) {
      const auto serial = std::to_string(i) + "-" + std::to_string(s);
      if (lang == "pt") {
        text += "Esta é a frase número " + serial + " do documento. ";
      } else if (lang == "zh") {
        text += "这是文档中的第" + serial + "句话。";
      } else {
        text += "This is sentence number " + serial + " of the document. ";
      }
    }
    doc.text = text;
    out.push_back(std::move(doc));
  }
  return out;
}

void WriteMicroDataset(std::ostream& out, const std::vector<MicroExample>& data) {
  for (const auto& ex : data) {
    json rewrites = json::array();
    for (const auto& r : ex.dialect_rewrites) {
      rewrites.push_back({{"feature", r.feature}, {"text", r.text}});
    }
    json perts = json::object();
    for (const auto& [type, text] : ex.perturbations) perts[type] = text;
    out << json{{"id", ex.id},
                {"base", ex.base},
                {"dialect_rewrites", rewrites},
                {"perturbations", perts}}
               .dump()
        << '\n';
  }
}

void WriteScoreFile(std::ostream& out, const std::vector<ScoreRecord>& records) {
  out.precision(17);
  for (const auto& r : records) {
    out << r.metric << '\t' << r.example_id << '\t' << r.condition.Render()
        << '\t' << r.score << '\n';
  }
}

void WriteNanoDocuments(std::ostream& out, const std::vector<NanoDocument>& docs) {
  for (const auto& d : docs) {
    json j{{"url", d.url}, {"text", d.text}};
    if (d.langid_tag) j["langid_tag"] = d.langid_tag->Render();
    out << j.dump() << '\n';
  }
}

}  // namespace dialeval
