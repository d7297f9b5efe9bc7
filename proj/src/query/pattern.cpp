#include <cctype>
#include <optional>

#include "gopprre/query.hpp"

namespace gopprre::query {
namespace {

// Grammar, whitespace separated:
//   [select ?v ... where] ['{'] slot slot slot ('.' slot slot slot)* ['.'] ['}']
// Keywords are case-insensitive; `a` abbreviates rdf:type.
class PatternParser {
 public:
  PatternParser(std::string_view text, const kg::Vocabulary& vocab) : s_(text), vocab_(vocab) {}

  Pattern parse() {
    Pattern out;
    if (keyword("select")) {
      while (peek() == '?') out.select.push_back(variable_name());
      if (out.select.empty() && peek() == '*') ++pos_;
      if (!keyword("where")) fail("expected 'where' after select list");
    }
    const bool braced = peek() == '{';
    if (braced) ++pos_;
    while (true) {
      const char c = peek();
      if (c == '\0' || c == '}') break;
      TriplePattern t{slot(), slot(), slot()};
      out.triples.push_back(std::move(t));
      if (peek() == '.') ++pos_;
      else if (peek() != '\0' && peek() != '}') fail("expected '.' between triple patterns");
    }
    if (braced) {
      if (peek() != '}') fail("missing closing '}'");
      ++pos_;
    }
    if (peek() != '\0') fail("trailing text after pattern");
    check_pattern(out);
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::MalformedPattern, "", message + " at offset " + std::to_string(pos_));
  }

  char peek() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  static bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string_view word() {
    peek();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (word_char(s_[pos_]) || s_[pos_] == ':')) ++pos_;
    return s_.substr(start, pos_ - start);
  }

  bool keyword(std::string_view kw) {
    peek();
    if (s_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(s_[pos_ + i])) != kw[i]) return false;
    }
    if (pos_ + kw.size() < s_.size() && word_char(s_[pos_ + kw.size()])) return false;
    pos_ += kw.size();
    return true;
  }

  std::string variable_name() {
    ++pos_;  // '?'
    const std::size_t start = pos_;
    while (pos_ < s_.size() && word_char(s_[pos_])) ++pos_;
    if (pos_ == start) fail("empty variable name");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string iri_ref() {
    ++pos_;  // '<'
    const auto end = s_.find('>', pos_);
    if (end == std::string_view::npos) fail("unterminated IRI");
    std::string iri(s_.substr(pos_, end - pos_));
    pos_ = end + 1;
    return iri;
  }

  std::string expand(std::string_view prefixed) {
    const auto colon = prefixed.find(':');
    if (colon == std::string_view::npos) fail("expected a prefixed name, got '" + std::string(prefixed) + "'");
    const auto prefix = prefixed.substr(0, colon);
    const std::string local(prefixed.substr(colon + 1));
    if (prefix == "se") return vocab_.base() + local;
    if (prefix == "rdf") return std::string(kg::ns::kRdf) + local;
    if (prefix == "rdfs") return std::string(kg::ns::kRdfs) + local;
    if (prefix == "owl") return std::string(kg::ns::kOwl) + local;
    if (prefix == "xsd") return std::string(kg::ns::kXsd) + local;
    fail("unknown prefix '" + std::string(prefix) + "'");
  }

  Term make_iri(std::string iri) {
    try {
      return Term::iri(std::move(iri));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Term literal() {
    ++pos_;  // '"'
    std::string lexical;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape");
        const char e = s_[pos_++];
        switch (e) {
          case 'n': lexical += '\n'; break;
          case 'r': lexical += '\r'; break;
          case 't': lexical += '\t'; break;
          case '"': lexical += '"'; break;
          case '\\': lexical += '\\'; break;
          default: fail(std::string("unknown escape '\\") + e + "'");
        }
        continue;
      }
      lexical += c;
    }
    std::string datatype;
    if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      datatype = pos_ < s_.size() && s_[pos_] == '<' ? iri_ref() : expand(word());
    }
    try {
      return Term::literal(std::move(lexical), std::move(datatype));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Slot slot() {
    const char c = peek();
    if (c == '\0') fail("incomplete triple pattern");
    if (c == '?') return Variable{variable_name()};
    if (c == '<') return make_iri(iri_ref());
    if (c == '"') return literal();
    const auto w = word();
    if (w.empty()) fail(std::string("unexpected character '") + c + "'");
    if (w == "a") return Vocabulary::rdf_type();
    return make_iri(expand(w));
  }

  using Vocabulary = kg::Vocabulary;

  std::string_view s_;
  const kg::Vocabulary& vocab_;
  std::size_t pos_ = 0;
};

}  // namespace

Pattern parse_pattern(std::string_view text, const kg::Vocabulary& vocab) {
  return PatternParser(text, vocab).parse();
}

}  // namespace gopprre::query
