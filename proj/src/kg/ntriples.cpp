#include <array>
#include <cstdint>
#include <map>
#include <utility>

#include "gopprre/kg.hpp"

namespace gopprre::kg {
namespace {

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Cursor over one N-Triples line.
class LineParser {
 public:
  LineParser(std::string_view line, std::size_t line_no) : s_(line), line_no_(line_no) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw Error(ErrorCode::SyntaxError, "", message, SourcePosition{line_no_, pos_ + 1});
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool at_end_or_comment() {
    skip_ws();
    return pos_ >= s_.size() || s_[pos_] == '#';
  }

  Term term() {
    skip_ws();
    if (pos_ >= s_.size()) fail("expected a term");
    const char c = s_[pos_];
    if (c == '<') return Term::iri(iri());
    if (c == '"') return literal();
    if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') fail("blank nodes are not supported");
    fail(std::string("unexpected character '") + c + "'");
  }

  void expect_dot() {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != '.') fail("missing terminating '.'");
    ++pos_;
    if (!at_end_or_comment()) fail("trailing characters after '.'");
  }

 private:
  std::uint32_t hex(std::size_t digits) {
    if (pos_ + digits > s_.size()) fail("truncated unicode escape");
    std::uint32_t v = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char h = s_[pos_++];
      v <<= 4;
      if (h >= '0' && h <= '9') v |= static_cast<std::uint32_t>(h - '0');
      else if (h >= 'a' && h <= 'f') v |= static_cast<std::uint32_t>(h - 'a' + 10);
      else if (h >= 'A' && h <= 'F') v |= static_cast<std::uint32_t>(h - 'A' + 10);
      else fail("bad hex digit in unicode escape");
    }
    if (v > 0x10FFFF || (v >= 0xD800 && v <= 0xDFFF)) fail("unicode escape out of range");
    return v;
  }

  std::string iri() {
    ++pos_;  // '<'
    std::string out;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated IRI");
      const char c = s_[pos_++];
      if (c == '>') break;
      if (c == '\\') {
        if (pos_ >= s_.size()) fail("unterminated escape in IRI");
        const char e = s_[pos_++];
        if (e == 'u') append_utf8(out, hex(4));
        else if (e == 'U') append_utf8(out, hex(8));
        else fail("only \\u and \\U escapes are allowed in IRIs");
        continue;
      }
      out += c;
    }
    if (!is_absolute_iri(out)) fail("not an absolute IRI: <" + out + ">");
    return out;
  }

  Term literal() {
    ++pos_;  // '"'
    std::string lexical;
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated literal");
      const char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lexical += c;
        continue;
      }
      if (pos_ >= s_.size()) fail("unterminated escape in literal");
      switch (const char e = s_[pos_++]) {
        case 't': lexical += '\t'; break;
        case 'b': lexical += '\b'; break;
        case 'n': lexical += '\n'; break;
        case 'r': lexical += '\r'; break;
        case 'f': lexical += '\f'; break;
        case '"': lexical += '"'; break;
        case '\'': lexical += '\''; break;
        case '\\': lexical += '\\'; break;
        case 'u': append_utf8(lexical, hex(4)); break;
        case 'U': append_utf8(lexical, hex(8)); break;
        default: fail(std::string("unknown escape '\\") + e + "'");
      }
    }
    if (pos_ < s_.size() && s_[pos_] == '@') fail("language-tagged literals are not supported");
    if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '^') {
      pos_ += 2;
      if (pos_ >= s_.size() || s_[pos_] != '<') fail("expected datatype IRI after '^^'");
      std::string datatype = iri();
      try {
        return Term::literal(std::move(lexical), std::move(datatype));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    return Term::literal(std::move(lexical));
  }

  std::string_view s_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_ntriples(const TripleSet& ts) {
  std::string out;
  for (const auto& t : ts) {
    out += t.ntriples();
    out += '\n';
  }
  return out;
}

TripleSet parse_ntriples(std::string_view text) {
  TripleSet out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    start = end + 1;

    LineParser p(line, line_no);
    if (p.at_end_or_comment()) continue;
    Term s = p.term();
    if (!s.is_iri()) p.fail("subject must be an IRI");
    Term pred = p.term();
    if (!pred.is_iri()) p.fail("predicate must be an IRI");
    Term o = p.term();
    p.expect_dot();
    out.emplace(std::move(s), std::move(pred), std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Turtle

namespace {

bool is_simple_local(std::string_view local) {
  if (local.empty()) return false;
  for (char c : local) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_')) {
      return false;
    }
  }
  return true;
}

class Abbreviator {
 public:
  explicit Abbreviator(const Vocabulary& vocab)
      : prefixes_{{{"owl", std::string(ns::kOwl)},
                   {"rdf", std::string(ns::kRdf)},
                   {"rdfs", std::string(ns::kRdfs)},
                   {"se", vocab.base()},
                   {"xsd", std::string(ns::kXsd)}}} {}

  std::string header() const {
    std::string out;
    for (const auto& [prefix, iri] : prefixes_) out += "@prefix " + prefix + ": <" + iri + "> .\n";
    return out;
  }

  std::string iri(const std::string& full) const {
    // Longest matching namespace wins, so a base nested in a standard
    // namespace still abbreviates sensibly.
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& entry : prefixes_) {
      if (full.size() > entry.second.size() && full.compare(0, entry.second.size(), entry.second) == 0 &&
          is_simple_local(std::string_view(full).substr(entry.second.size())) &&
          (!best || entry.second.size() > best->second.size())) {
        best = &entry;
      }
    }
    if (!best) return "<" + full + ">";
    return best->first + ":" + full.substr(best->second.size());
  }

  std::string term(const Term& t) const {
    if (t.is_iri()) return iri(t.value());
    const std::string& nt = t.ntriples();
    if (t.datatype().empty()) return nt;
    // N-Triples literal text up to the closing quote, then a prefixed datatype.
    return nt.substr(0, nt.size() - t.datatype().size() - 4) + "^^" + iri(t.datatype());
  }

 private:
  std::array<std::pair<std::string, std::string>, 5> prefixes_;
};

}  // namespace

std::string serialize_turtle(const TripleSet& ts, const Vocabulary& vocab) {
  const Abbreviator abbr(vocab);
  const Term type = Vocabulary::rdf_type();
  std::string out = abbr.header();

  const Term* subject = nullptr;
  for (const auto& t : ts) {
    if (!subject || !(*subject == t.subject)) {
      if (subject) out += " .\n";
      out += "\n" + abbr.term(t.subject) + " ";
      subject = &t.subject;
    } else {
      out += " ;\n    ";
    }
    out += (t.predicate == type ? std::string("a") : abbr.term(t.predicate)) + " " + abbr.term(t.object);
  }
  if (subject) out += " .\n";
  return out;
}

}  // namespace gopprre::kg
