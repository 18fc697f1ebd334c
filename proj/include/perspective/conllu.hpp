#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace perspective {

// Universal POS tags, UD v2.
enum class Upos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT,
  SCONJ, SYM, VERB, X
};

std::optional<Upos> parse_upos(std::string_view tag);
std::string_view to_string(Upos tag);

using Features = std::map<std::string, std::string>;

// "_" -> empty; otherwise "Key=Value|Key=Value". Throws on malformed pairs.
Features parse_features(std::string_view text);
std::string format_features(const Features& feats);

struct Token {
  int index = 0;  // 1-based position in the sentence
  std::string form;
  std::string lemma;
  Upos upos = Upos::X;
  std::string xpos;
  Features feats;
  int head = 0;  // 0 = syntactic root
  std::string deprel;
  std::string deps;
  std::string misc;

  // Looks up a morphological feature, empty view when absent.
  std::string_view feature(std::string_view key) const;

  friend bool operator==(const Token&, const Token&) = default;
};

// Surface token spanning several syntactic words ("3-4" lines).
struct MultiwordToken {
  int first = 0;
  int last = 0;
  std::string form;
  std::string misc;
  friend bool operator==(const MultiwordToken&, const MultiwordToken&) = default;
};

struct Sentence {
  std::string sent_id;
  std::string text;
  std::vector<Token> tokens;
  std::vector<MultiwordToken> multiword;

  int size() const { return static_cast<int>(tokens.size()); }
  // 0-based position -> token.
  const Token& at(int position) const { return tokens.at(static_cast<std::size_t>(position)); }
  // 0-based position of the token with head == 0.
  int root_position() const;
  // Number of head links from the token at `position` up to the root.
  int depth(int position) const;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct ParsedSentence {
  std::string doc_id;
  Sentence sentence;
};

// Reads CoNLL-U. Sentences without a preceding "# newdoc id" belong to "doc0".
// Multiword ranges and empty nodes are kept out of the tree. Throws
// Error(input) naming the offending line on any format or tree violation.
std::vector<ParsedSentence> parse_conllu(std::istream& in);
std::vector<ParsedSentence> parse_conllu(std::string_view text);

// Checks token numbering and the tree shape; throws Error(input) on failure.
// `where` names the sentence in messages; `lines`, when given, holds the
// input line of each token so errors can point at it.
void validate_tree(const Sentence& sentence, const std::string& where,
                   std::span<const int> lines = {});

// Writes sentences grouped by document; emits "# newdoc id" on doc changes.
void write_conllu(std::ostream& out, const std::vector<ParsedSentence>& sentences);

// Reconstructs a sentence text from forms and SpaceAfter=No.
std::string surface_text(const Sentence& sentence);

}  // namespace perspective
