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

#include "dialeval/tag.hpp"

#include <cctype>

namespace dialeval {

namespace {

bool IsLowerAlpha(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::islower(static_cast<unsigned char>(c)) && c != '-') return false;
  }
  return true;
}

bool IsUpperRegion(std::string_view s) {
  if (s.size() != 2) return false;
  return std::isupper(static_cast<unsigned char>(s[0])) &&
         std::isupper(static_cast<unsigned char>(s[1]));
}

}  // namespace

std::optional<DialectTag> DialectTag::Parse(std::string_view text) {
  const auto dash = text.rfind('-');
  if (dash == std::string_view::npos) {
    if (!IsLowerAlpha(text)) return std::nullopt;
    return DialectTag{std::string(text), "any"};
  }
  std::string_view lang = text.substr(0, dash);
  std::string_view region = text.substr(dash + 1);
  if (!IsLowerAlpha(lang)) return std::nullopt;
  if (region != "any" && !IsUpperRegion(region)) return std::nullopt;
  return DialectTag{std::string(lang), std::string(region)};
}

std::string_view ToString(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kBase:
      return "base";
    case ConditionKind::kDialect:
      return "dialect";
    case ConditionKind::kPerturb:
      return "perturb";
    case ConditionKind::kMt:
      return "mt";
  }
  return "?";
}

std::optional<Condition> Condition::Parse(std::string_view text) {
  std::string_view head = text;
  std::string detail;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    head = text.substr(0, colon);
    detail = std::string(text.substr(colon + 1));
    if (detail.empty()) return std::nullopt;
  }
  if (head == "base" && detail.empty()) return Base();
  if (head == "mt" && detail.empty()) return Mt();
  if (head == "dialect") {
    if (!detail.empty() && !DialectTag::Parse(detail)) return std::nullopt;
    return Dialect(std::move(detail));
  }
  if (head == "perturb") {
    if (!detail.empty() && detail != "replace" && detail != "insert" &&
        detail != "delete") {
      return std::nullopt;
    }
    return Perturb(std::move(detail));
  }
  return std::nullopt;
}

std::string Condition::Render() const {
  std::string out{ToString(kind)};
  if (!detail.empty()) {
    out += ':';
    out += detail;
  }
  return out;
}

}  // namespace dialeval
