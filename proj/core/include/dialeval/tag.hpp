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

#ifndef DIALEVAL_TAG_H_
#define DIALEVAL_TAG_H_

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace dialeval {

// A dialect identifier such as "pt-BR", or a whole-language wildcard such
// as "pt-any".
struct DialectTag {
  std::string language;  // lowercase, nonempty
  std::string region;    // "any" or 2-letter uppercase

  // Accepts "pt-BR", "pt-any", or a bare language "pt" (treated as "-any").
  static std::optional<DialectTag> Parse(std::string_view text);

  static DialectTag LanguageOnly(std::string language) {
    return DialectTag{std::move(language), "any"};
  }

  bool IsLanguageOnly() const { return region == "any"; }
  std::string Render() const { return language + "-" + region; }

  auto operator<=>(const DialectTag&) const = default;
};

enum class ConditionKind { kBase, kDialect, kPerturb, kMt };

// The role a scored text pair plays in the statistical design.
struct Condition {
  ConditionKind kind = ConditionKind::kBase;
  std::string detail;  // dialect tag or perturbation type, may be empty

  // Accepts "base", "dialect", "perturb", "mt", "dialect:<tag>",
  // "perturb:<type>" with type in {replace, insert, delete}.
  static std::optional<Condition> Parse(std::string_view text);

  static Condition Base() { return {ConditionKind::kBase, ""}; }
  static Condition Dialect(std::string detail = "") {
    return {ConditionKind::kDialect, std::move(detail)};
  }
  static Condition Perturb(std::string detail = "") {
    return {ConditionKind::kPerturb, std::move(detail)};
  }
  static Condition Mt() { return {ConditionKind::kMt, ""}; }

  std::string Render() const;

  auto operator<=>(const Condition&) const = default;
};

std::string_view ToString(ConditionKind kind);

}  // namespace dialeval

#endif  // DIALEVAL_TAG_H_
