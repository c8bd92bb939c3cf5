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

#ifndef DIALEVAL_TEXT_H_
#define DIALEVAL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dialeval {

// Decodes UTF-8 into codepoints. Invalid bytes decode to U+FFFD.
std::vector<char32_t> DecodeUtf8(std::string_view text);
std::string EncodeUtf8(const std::vector<char32_t>& codepoints);
void AppendUtf8(std::string* out, char32_t cp);

bool IsUnicodeSpace(char32_t cp);

// Composes base + combining-mark pairs into their precomposed forms for the
// Latin repertoire (grave, acute, circumflex, tilde, diaeresis, cedilla and
// friends). Applied to all ingested text before hashing or n-gram
// extraction so mixed-normalization inputs compare equal.
std::string ComposeCanonical(std::string_view text);

// Splits on Unicode whitespace; never returns empty tokens.
std::vector<std::string> SplitWhitespace(std::string_view text);

// One token per non-space codepoint; used for languages written without
// word boundaries.
std::vector<std::string> SplitCodepoints(std::string_view text);

// Sentence segmentation on terminal punctuation (. ! ? and the full-width
// forms) followed by whitespace or end of text.
std::vector<std::string> SplitSentences(std::string_view document);

// FNV-1a, used for dataset content hashes embedded in report headers.
std::uint64_t Fnv1a64(std::string_view bytes);

}  // namespace dialeval

#endif  // DIALEVAL_TEXT_H_
