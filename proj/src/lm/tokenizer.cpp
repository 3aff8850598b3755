// Copyright 2026 The certguide Authors
// SPDX-License-Identifier: Apache-2.0

#include "certguide/lm/tokenizer.hpp"

namespace certguide::lm {

std::vector<TokenId> Tokenizer::random_segmentation(std::string_view bytes, std::mt19937_64& rng) const {
  const std::size_t n = bytes.size();
  // ends[i]: tokens matching at offset i, as (id, length).
  std::vector<std::vector<std::pair<TokenId, std::size_t>>> ends(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t at = lexical::TokenTrie::root();
    for (std::size_t j = i; j < n; ++j) {
      auto next = trie_.child(at, static_cast<unsigned char>(bytes[j]));
      if (!next) break;
      at = *next;
      if (auto id = trie_.node(at).token) ends[i].emplace_back(*id, j - i + 1);
    }
  }
  std::vector<bool> reachable(n + 1, false);
  reachable[n] = true;
  for (std::size_t i = n; i-- > 0;) {
    for (const auto& [id, len] : ends[i]) {
      if (reachable[i + len]) {
        reachable[i] = true;
        break;
      }
    }
  }
  if (!reachable[0]) throw lexical::VocabularyError("text cannot be segmented with this vocabulary");

  std::vector<TokenId> out;
  std::vector<std::pair<TokenId, std::size_t>> options;
  for (std::size_t pos = 0; pos < n;) {
    options.clear();
    for (const auto& e : ends[pos]) {
      if (reachable[pos + e.second]) options.push_back(e);
    }
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    const auto& [id, len] = options[pick(rng)];
    out.push_back(id);
    pos += len;
  }
  return out;
}

std::size_t Tokenizer::byte_length(std::span<const TokenId> ids) const {
  std::size_t n = 0;
  for (TokenId id : ids) n += vocab_.token(id).size();
  return n;
}

lexical::Vocabulary default_vocabulary() {
  return lexical::Vocabulary::byte_level_with({
      "[[",       "]]",     "]]\n",   ")]]",     "]] ",     "\n[[",     " [[",      "infer:",  "axiom:",
      "goal:",    "prop:",  "object:", "relation:", "(not ", " -> ",    " ->",      "nothing", "'x",
      "'x)",      "(",      ") ",     "Answer:", " True",   " False",   " Unknown", "The ",    " is ",
      " are ",    "Every ", "Each ",  "This ",   "goal.",   "Reasoning:", "Formalized", " context:",
      "wren",     "th",     "er",     "in",      "an",      "ing",      "ed",       "es",      "s ",
  });
}

std::shared_ptr<const Tokenizer> make_tokenizer(lexical::Vocabulary vocab) {
  return std::make_shared<const Tokenizer>(std::move(vocab));
}

}  // namespace certguide::lm
