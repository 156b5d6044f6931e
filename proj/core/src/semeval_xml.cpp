#include <expat.h>

#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "pdn/dataset.hpp"
#include "pdn/errors.hpp"
#include "pdn/tokenize.hpp"

namespace pdn {

// defined in dataset.cpp
Example make_example(const std::string& text, const std::string& aspect, long from, long to,
                     const std::string& polarity, const std::string& where);
void reset_parse_warnings();

namespace {

struct AspectTerm {
  std::string term;
  std::string polarity;
  long from = -1;
  long to = -1;
  int line = 0;
};

struct ParseState {
  std::string path;
  std::string text;
  bool capturing = false;
  std::vector<AspectTerm> terms;
  std::vector<Example> out;
  std::string error;
  XML_Parser parser = nullptr;
};

const char* attr_value(const char** attrs, const char* name) {
  for (int i = 0; attrs[i]; i += 2)
    if (std::strcmp(attrs[i], name) == 0) return attrs[i + 1];
  return nullptr;
}

void XMLCALL on_start(void* user, const char* name, const char** attrs) {
  auto* st = static_cast<ParseState*>(user);
  if (!st->error.empty()) return;
  if (std::strcmp(name, "sentence") == 0) {
    st->text.clear();
    st->terms.clear();
  } else if (std::strcmp(name, "text") == 0) {
    st->capturing = true;
    st->text.clear();
  } else if (std::strcmp(name, "aspectTerm") == 0) {
    AspectTerm t;
    t.line = static_cast<int>(XML_GetCurrentLineNumber(st->parser));
    if (const char* v = attr_value(attrs, "term")) t.term = v;
    if (const char* v = attr_value(attrs, "polarity")) t.polarity = v;
    if (const char* v = attr_value(attrs, "from")) t.from = std::strtol(v, nullptr, 10);
    if (const char* v = attr_value(attrs, "to")) t.to = std::strtol(v, nullptr, 10);
    if (t.term.empty() || t.polarity.empty()) {
      st->error = st->path + ":" + std::to_string(t.line) + ": aspectTerm missing term/polarity attribute";
      return;
    }
    st->terms.push_back(std::move(t));
  }
}

void XMLCALL on_end(void* user, const char* name) {
  auto* st = static_cast<ParseState*>(user);
  if (!st->error.empty()) return;
  if (std::strcmp(name, "text") == 0) {
    st->capturing = false;
  } else if (std::strcmp(name, "sentence") == 0) {
    for (const AspectTerm& t : st->terms) {
      if (t.polarity == "conflict") continue;  // removed from all experiments
      try {
        st->out.push_back(make_example(st->text, t.term, t.from, t.to, t.polarity,
                                       st->path + ":" + std::to_string(t.line)));
      } catch (const std::exception& e) {
        st->error = e.what();
        return;
      }
    }
  }
}

void XMLCALL on_chars(void* user, const char* s, int len) {
  auto* st = static_cast<ParseState*>(user);
  if (st->capturing) st->text.append(s, len);
}

}  // namespace

std::vector<Example> parse_semeval_xml(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");

  reset_parse_warnings();
  ParseState st;
  st.path = path;
  XML_Parser parser = XML_ParserCreate(nullptr);
  st.parser = parser;
  XML_SetUserData(parser, &st);
  XML_SetElementHandler(parser, on_start, on_end);
  XML_SetCharacterDataHandler(parser, on_chars);

  char buf[65536];
  bool done = false;
  while (!done) {
    in.read(buf, sizeof(buf));
    const auto got = in.gcount();
    done = got < static_cast<std::streamsize>(sizeof(buf));
    if (XML_Parse(parser, buf, static_cast<int>(got), done) == XML_STATUS_ERROR) {
      const std::string msg = path + ":" + std::to_string(XML_GetCurrentLineNumber(parser)) + ": " +
                              XML_ErrorString(XML_GetErrorCode(parser));
      XML_ParserFree(parser);
      throw DataError(msg);
    }
    if (!st.error.empty()) break;
  }
  XML_ParserFree(parser);
  if (!st.error.empty()) throw DataError(st.error);
  return st.out;
}

}  // namespace pdn
