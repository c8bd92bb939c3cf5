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

#include "dialeval/text.hpp"

#include <array>
#include <unordered_map>

namespace dialeval {

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = 0xFFFD;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    if (i + len > text.size()) {
      out.push_back(0xFFFD);
      break;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    out.push_back(ok ? cp : 0xFFFD);
    i += ok ? len : 1;
  }
  return out;
}

void AppendUtf8(std::string* out, char32_t cp) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string EncodeUtf8(const std::vector<char32_t>& codepoints) {
  std::string out;
  out.reserve(codepoints.size());
  for (char32_t cp : codepoints) AppendUtf8(&out, cp);
  return out;
}

bool IsUnicodeSpace(char32_t cp) {
  switch (cp) {
    case U' ':
    case U'\t':
    case U'\n':
    case U'\r':
    case U'\f':
    case U'\v':
    case 0x0085:
    case 0x00A0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

namespace {

struct ComposePair {
  char32_t base;
  char32_t mark;
  char32_t composed;
};

// Latin precomposition table for the combining marks seen in the supported
// languages (Portuguese diacritics plus the usual western European set).
constexpr std::array<ComposePair, 62> kComposeTable = {{
    // grave U+0300
    {U'a', 0x300, 0x00E0}, {U'e', 0x300, 0x00E8}, {U'i', 0x300, 0x00EC},
    {U'o', 0x300, 0x00F2}, {U'u', 0x300, 0x00F9}, {U'A', 0x300, 0x00C0},
    {U'E', 0x300, 0x00C8}, {U'I', 0x300, 0x00CC}, {U'O', 0x300, 0x00D2},
    {U'U', 0x300, 0x00D9},
    // acute U+0301
    {U'a', 0x301, 0x00E1}, {U'e', 0x301, 0x00E9}, {U'i', 0x301, 0x00ED},
    {U'o', 0x301, 0x00F3}, {U'u', 0x301, 0x00FA}, {U'y', 0x301, 0x00FD},
    {U'A', 0x301, 0x00C1}, {U'E', 0x301, 0x00C9}, {U'I', 0x301, 0x00CD},
    {U'O', 0x301, 0x00D3}, {U'U', 0x301, 0x00DA}, {U'Y', 0x301, 0x00DD},
    {U'c', 0x301, 0x0107}, {U'C', 0x301, 0x0106},
    // circumflex U+0302
    {U'a', 0x302, 0x00E2}, {U'e', 0x302, 0x00EA}, {U'i', 0x302, 0x00EE},
    {U'o', 0x302, 0x00F4}, {U'u', 0x302, 0x00FB}, {U'A', 0x302, 0x00C2},
    {U'E', 0x302, 0x00CA}, {U'I', 0x302, 0x00CE}, {U'O', 0x302, 0x00D4},
    {U'U', 0x302, 0x00DB},
    // tilde U+0303
    {U'a', 0x303, 0x00E3}, {U'o', 0x303, 0x00F5}, {U'n', 0x303, 0x00F1},
    {U'A', 0x303, 0x00C3}, {U'O', 0x303, 0x00D5}, {U'N', 0x303, 0x00D1},
    // diaeresis U+0308
    {U'a', 0x308, 0x00E4}, {U'e', 0x308, 0x00EB}, {U'i', 0x308, 0x00EF},
    {U'o', 0x308, 0x00F6}, {U'u', 0x308, 0x00FC}, {U'y', 0x308, 0x00FF},
    {U'A', 0x308, 0x00C4}, {U'E', 0x308, 0x00CB}, {U'I', 0x308, 0x00CF},
    {U'O', 0x308, 0x00D6}, {U'U', 0x308, 0x00DC},
    // ring U+030A
    {U'a', 0x30A, 0x00E5}, {U'A', 0x30A, 0x00C5},
    // caron U+030C
    {U'c', 0x30C, 0x010D}, {U'C', 0x30C, 0x010C}, {U's', 0x30C, 0x0161},
    {U'S', 0x30C, 0x0160}, {U'z', 0x30C, 0x017E}, {U'Z', 0x30C, 0x017D},
    // cedilla U+0327
    {U'c', 0x327, 0x00E7}, {U'C', 0x327, 0x00C7},
    {U's', 0x327, 0x015F},
}};

char32_t LookupComposed(char32_t base, char32_t mark) {
  for (const auto& p : kComposeTable) {
    if (p.base == base && p.mark == mark) return p.composed;
  }
  return 0;
}

bool IsCombiningMark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

}  // namespace

std::string ComposeCanonical(std::string_view text) {
  const auto cps = DecodeUtf8(text);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (!out.empty() && IsCombiningMark(cp)) {
      if (const char32_t composed = LookupComposed(out.back(), cp)) {
        out.back() = composed;
        continue;
      }
    }
    out.push_back(cp);
  }
  return EncodeUtf8(out);
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  const auto cps = DecodeUtf8(text);
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : cps) {
    if (IsUnicodeSpace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      AppendUtf8(&current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> SplitCodepoints(std::string_view text) {
  const auto cps = DecodeUtf8(text);
  std::vector<std::string> tokens;
  tokens.reserve(cps.size());
  for (char32_t cp : cps) {
    if (IsUnicodeSpace(cp)) continue;
    std::string tok;
    AppendUtf8(&tok, cp);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

namespace {

bool IsTerminal(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?' || cp == 0x3002 ||
         cp == 0xFF01 || cp == 0xFF1F;
}

}  // namespace

std::vector<std::string> SplitSentences(std::string_view document) {
  const auto cps = DecodeUtf8(document);
  std::vector<std::string> sentences;
  std::vector<char32_t> current;
  auto flush = [&] {
    std::size_t begin = 0, end = current.size();
    while (begin < end && IsUnicodeSpace(current[begin])) ++begin;
    while (end > begin && IsUnicodeSpace(current[end - 1])) --end;
    if (end > begin) {
      sentences.push_back(EncodeUtf8(
          std::vector<char32_t>(current.begin() + begin, current.begin() + end)));
    }
    current.clear();
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    current.push_back(cps[i]);
    if (!IsTerminal(cps[i])) continue;
    const bool at_end = i + 1 == cps.size();
    const bool full_width = cps[i] >= 0x3000;
    // Full-width terminals end a sentence even without trailing space.
    if (at_end || IsUnicodeSpace(cps[i + 1]) || full_width) flush();
  }
  flush();
  return sentences;
}

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace dialeval
