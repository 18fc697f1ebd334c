#include "perspective/conllu.hpp"

#include <array>
#include <set>
#include <sstream>

#include "perspective/error.hpp"
#include "text_util.hpp"

namespace perspective {

using detail::line_ref;
using detail::split;
using detail::to_int;
using detail::trim;

namespace {

constexpr std::array<std::string_view, 17> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

std::string empty_to_underscore(const std::string& s) { return s.empty() ? "_" : s; }
std::string underscore_to_empty(std::string_view s) { return s == "_" ? std::string() : std::string(s); }

// Parses "# key = value" comments; returns false for other comment text.
bool parse_comment(std::string_view line, std::string_view& key, std::string_view& value) {
  std::string_view body = trim(line.substr(1));
  const std::size_t eq = body.find('=');
  if (eq == std::string_view::npos) {
    key = body;
    value = {};
    return false;
  }
  key = trim(body.substr(0, eq));
  value = trim(body.substr(eq + 1));
  return true;
}

class ConlluReader {
 public:
  std::vector<ParsedSentence> run(std::istream& in) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no_;
      std::string_view line(raw);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (trim(line).empty()) {
        finish_sentence();
        continue;
      }
      if (line.front() == '#') {
        comment(line);
        continue;
      }
      token_line(line);
    }
    finish_sentence();
    return std::move(out_);
  }

 private:
  void comment(std::string_view line) {
    std::string_view key, value;
    const bool has_value = parse_comment(line, key, value);
    if (key == "newdoc id" || (key == "newdoc" && !has_value) ||
        key.substr(0, 6) == "newdoc") {
      const bool named = has_value && !value.empty();
      doc_id_ = named ? std::string(value) : "doc" + std::to_string(++newdoc_count_);
      return;
    }
    if (!has_value) return;
    if (key == "sent_id") {
      sent_id_ = std::string(value);
      if (block_start_ == 0) block_start_ = line_no_;
    } else if (key == "text") {
      text_ = std::string(value);
      has_text_ = true;
    }
  }

  void token_line(std::string_view line) {
    if (block_start_ == 0) block_start_ = line_no_;
    const auto cols = split(line, '\t');
    if (cols.size() != 10) {
      throw input_error("malformed_conllu", "expected 10 columns at " + line_ref(line_no_) +
                                                ", found " + std::to_string(cols.size()));
    }
    const std::string_view id = cols[0];
    if (id.find('.') != std::string_view::npos) return;  // empty node
    if (const auto dash = id.find('-'); dash != std::string_view::npos) {
      const auto first = to_int(id.substr(0, dash));
      const auto last = to_int(id.substr(dash + 1));
      if (!first || !last || *last < *first) {
        throw input_error("malformed_conllu", "bad multiword range \"" + std::string(id) +
                                                  "\" at " + line_ref(line_no_));
      }
      sentence_.multiword.push_back(
          MultiwordToken{*first, *last, std::string(cols[1]), underscore_to_empty(cols[9])});
      return;
    }
    Token tok;
    const auto index = to_int(id);
    if (!index) {
      throw input_error("malformed_conllu",
                        "non-integer token id \"" + std::string(id) + "\" at " + line_ref(line_no_));
    }
    tok.index = *index;
    tok.form = std::string(cols[1]);
    tok.lemma = std::string(cols[2]);
    const auto upos = parse_upos(cols[3]);
    if (!upos) {
      throw input_error("malformed_conllu",
                        "unknown UPOS \"" + std::string(cols[3]) + "\" at " + line_ref(line_no_));
    }
    tok.upos = *upos;
    tok.xpos = underscore_to_empty(cols[4]);
    try {
      tok.feats = parse_features(cols[5]);
    } catch (const Error& e) {
      throw input_error("malformed_conllu", std::string(e.what()) + " at " + line_ref(line_no_));
    }
    const auto head = to_int(cols[6]);
    if (!head) {
      throw input_error("malformed_conllu",
                        "non-integer head \"" + std::string(cols[6]) + "\" at " + line_ref(line_no_));
    }
    tok.head = *head;
    tok.deprel = std::string(cols[7]);
    tok.deps = underscore_to_empty(cols[8]);
    tok.misc = underscore_to_empty(cols[9]);
    sentence_.tokens.push_back(std::move(tok));
    token_lines_.push_back(line_no_);
  }

  void finish_sentence() {
    if (sentence_.tokens.empty()) {
      if (!sentence_.multiword.empty()) {
        throw input_error("malformed_conllu",
                          "sentence without syntactic words at " + line_ref(block_start_));
      }
      reset();
      return;
    }
    if (sent_id_.empty()) {
      throw input_error("malformed_conllu",
                        "missing sent_id for sentence at " + line_ref(block_start_));
    }
    sentence_.sent_id = sent_id_;
    validate_tree(sentence_, "sentence " + sent_id_, token_lines_);
    sentence_.text = has_text_ ? text_ : surface_text(sentence_);
    if (!seen_[doc_id_].insert(sent_id_).second) {
      throw input_error("duplicate_sent_id", "duplicate sent_id \"" + sent_id_ + "\" in document \"" +
                                                 doc_id_ + "\" at " + line_ref(block_start_));
    }
    out_.push_back(ParsedSentence{doc_id_, std::move(sentence_)});
    reset();
  }

  void reset() {
    sentence_ = Sentence{};
    token_lines_.clear();
    sent_id_.clear();
    text_.clear();
    has_text_ = false;
    block_start_ = 0;
  }

  int line_no_ = 0;
  int block_start_ = 0;
  int newdoc_count_ = 0;
  std::string doc_id_ = "doc0";
  std::string sent_id_;
  std::string text_;
  bool has_text_ = false;
  Sentence sentence_;
  std::vector<int> token_lines_;
  std::map<std::string, std::set<std::string>> seen_;
  std::vector<ParsedSentence> out_;
};

}  // namespace

std::optional<Upos> parse_upos(std::string_view tag) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i) {
    if (kUposNames[i] == tag) return static_cast<Upos>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Upos tag) { return kUposNames[static_cast<std::size_t>(tag)]; }

Features parse_features(std::string_view text) {
  Features feats;
  if (text.empty() || text == "_") return feats;
  for (std::string_view pair : split(text, '|')) {
    const std::size_t eq = pair.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == pair.size()) {
      throw input_error("malformed_conllu", "bad feature \"" + std::string(pair) + "\"");
    }
    feats.emplace(std::string(pair.substr(0, eq)), std::string(pair.substr(eq + 1)));
  }
  return feats;
}

std::string format_features(const Features& feats) {
  if (feats.empty()) return "_";
  std::string out;
  for (const auto& [k, v] : feats) {
    if (!out.empty()) out += '|';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

std::string_view Token::feature(std::string_view key) const {
  const auto it = feats.find(std::string(key));
  return it == feats.end() ? std::string_view{} : std::string_view(it->second);
}

int Sentence::root_position() const {
  for (int i = 0; i < size(); ++i) {
    if (tokens[static_cast<std::size_t>(i)].head == 0) return i;
  }
  return -1;
}

int Sentence::depth(int position) const {
  int d = 0;
  int head = at(position).head;
  while (head != 0 && d <= size()) {
    ++d;
    head = at(head - 1).head;
  }
  return d;
}

void validate_tree(const Sentence& sentence, const std::string& where, std::span<const int> lines) {
  const int n = sentence.size();
  const auto at_token = [&](int pos) {
    if (static_cast<std::size_t>(pos) < lines.size()) return line_ref(lines[static_cast<std::size_t>(pos)]);
    return where + ", token " + std::to_string(pos + 1);
  };
  if (n == 0) throw input_error("malformed_tree", where + ": no tokens");
  int roots = 0;
  for (int pos = 0; pos < n; ++pos) {
    const Token& t = sentence.at(pos);
    if (t.index != pos + 1) {
      throw input_error("malformed_tree", "token ids must run 1..n; expected " +
                                              std::to_string(pos + 1) + " at " + at_token(pos));
    }
    if (t.head < 0 || t.head > n) {
      throw input_error("malformed_tree", "head " + std::to_string(t.head) + " out of range at " +
                                              at_token(pos));
    }
    if (t.head == t.index) {
      throw input_error("malformed_tree", "token is its own head at " + at_token(pos));
    }
    if ((t.deprel == "root") != (t.head == 0)) {
      throw input_error("malformed_tree",
                        "deprel \"root\" must coincide with head 0 at " + at_token(pos));
    }
    if (t.head == 0) ++roots;
  }
  if (roots != 1) {
    throw input_error("malformed_tree", where + ": expected exactly one root, found " +
                                            std::to_string(roots));
  }
  for (int pos = 0; pos < n; ++pos) {
    int head = sentence.at(pos).head;
    int steps = 0;
    while (head != 0) {
      if (++steps > n) throw input_error("malformed_tree", "cyclic tree at " + at_token(pos));
      head = sentence.at(head - 1).head;
    }
  }
}

std::string surface_text(const Sentence& sentence) {
  std::string text;
  const auto space_after = [](const std::string& misc) {
    for (std::string_view item : split(misc, '|')) {
      if (item == "SpaceAfter=No") return false;
    }
    return true;
  };
  std::size_t mwt = 0;
  for (int pos = 0; pos < sentence.size();) {
    const Token& t = sentence.at(pos);
    if (mwt < sentence.multiword.size() && sentence.multiword[mwt].first == t.index) {
      const MultiwordToken& m = sentence.multiword[mwt++];
      text += m.form;
      if (space_after(m.misc)) text += ' ';
      pos = m.last;
      continue;
    }
    text += t.form;
    if (space_after(t.misc)) text += ' ';
    ++pos;
  }
  while (!text.empty() && text.back() == ' ') text.pop_back();
  return text;
}

std::vector<ParsedSentence> parse_conllu(std::istream& in) { return ConlluReader{}.run(in); }

std::vector<ParsedSentence> parse_conllu(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_conllu(in);
}

void write_conllu(std::ostream& out, const std::vector<ParsedSentence>& sentences) {
  const std::string* current_doc = nullptr;
  for (const ParsedSentence& ps : sentences) {
    if (current_doc == nullptr || *current_doc != ps.doc_id) {
      out << "# newdoc id = " << ps.doc_id << '\n';
      current_doc = &ps.doc_id;
    }
    const Sentence& s = ps.sentence;
    out << "# sent_id = " << s.sent_id << '\n';
    out << "# text = " << s.text << '\n';
    std::size_t mwt = 0;
    for (const Token& t : s.tokens) {
      while (mwt < s.multiword.size() && s.multiword[mwt].first == t.index) {
        const MultiwordToken& m = s.multiword[mwt++];
        out << m.first << '-' << m.last << '\t' << m.form << "\t_\t_\t_\t_\t_\t_\t_\t"
            << empty_to_underscore(m.misc) << '\n';
      }
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << to_string(t.upos) << '\t'
          << empty_to_underscore(t.xpos) << '\t' << format_features(t.feats) << '\t' << t.head
          << '\t' << t.deprel << '\t' << empty_to_underscore(t.deps) << '\t'
          << empty_to_underscore(t.misc) << '\n';
    }
    out << '\n';
  }
}

}  // namespace perspective
