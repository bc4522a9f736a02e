#pragma once

// Presentation files for connected graded algebras k<Q>/(R).
//
// Format (UTF-8 text, statements separated by newlines or ';', '#' comments):
//   field = <prime or 0>          0 selects the rationals
//   gen <name>:<adams_degree>     repeatable, comma-separated lists allowed
//   rel <nc-polynomial>           repeatable; '*' concatenates, '^' repeats,
//                                 integer coefficients
//   cutoff_adams = <S>            optional defaults for the CLI
//   cutoff_hom = <N>

#include "aext/monomial.hpp"

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aext {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int ln, const std::string& msg)
      : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

struct Generator {
  std::string name;
  int adams;
};

struct AlgebraPresentation {
  long long field_p = 0;  // 0 = rationals, otherwise a prime
  std::vector<Generator> generators;
  std::vector<NcPolynomial> relations;
  std::optional<int> cutoff_adams;
  std::optional<int> cutoff_hom;

  std::vector<std::string> gen_names() const {
    std::vector<std::string> v;
    for (const auto& g : generators) v.push_back(g.name);
    return v;
  }
  int gen_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].name == name) return static_cast<int>(i);
    return -1;
  }
  NcMonomial make_monomial(std::vector<int> word) const {
    NcMonomial m;
    m.word = std::move(word);
    m.adams = 0;
    for (int g : m.word) m.adams += generators[g].adams;
    return m;
  }
};

namespace detail {

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

class PolyParser {
 public:
  PolyParser(const AlgebraPresentation& pres, const std::string& text, int line)
      : pres_(pres), s_(text), line_(line) {}

  NcPolynomial parse() {
    NcPolynomial poly;
    skip_ws();
    bool first = true;
    while (pos_ < s_.size()) {
      long long sign = 1;
      if (s_[pos_] == '+' || s_[pos_] == '-') {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-' between terms");
      }
      auto [coeff, word] = parse_term();
      poly.add(pres_.make_monomial(std::move(word)), sign * coeff);
      skip_ws();
      first = false;
    }
    if (first) fail("empty polynomial");
    return poly;
  }

 private:
  std::pair<long long, std::vector<int>> parse_term() {
    long long coeff = 1;
    std::vector<int> word;
    bool expect_factor = true;
    while (expect_factor) {
      skip_ws();
      if (pos_ >= s_.size()) fail("unexpected end of term");
      if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        coeff *= parse_int();
      } else if (is_name_char(s_[pos_])) {
        std::string name = parse_name();
        int g = pres_.gen_index(name);
        if (g < 0) fail("unknown generator '" + name + "'");
        long long e = 1;
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
          ++pos_;
          skip_ws();
          e = parse_int();
          if (e < 1) fail("exponent must be >= 1");
        }
        for (long long k = 0; k < e; ++k) word.push_back(g);
      } else {
        fail(std::string("unexpected character '") + s_[pos_] + "'");
      }
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        expect_factor = true;
      } else {
        expect_factor = false;
      }
    }
    return {coeff, std::move(word)};
  }

  long long parse_int() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }
  std::string parse_name() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  static bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(line_, msg); }

  const AlgebraPresentation& pres_;
  std::string s_;
  int line_;
  std::size_t pos_ = 0;
};

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace detail

inline AlgebraPresentation parse_presentation(const std::string& text) {
  AlgebraPresentation pres;
  bool field_seen = false;
  struct Stmt { std::string text; int line; };
  std::vector<Stmt> stmts;
  {
    int line = 1;
    std::string cur;
    auto flush = [&](int ln) {
      std::string t = detail::trim(cur);
      if (!t.empty() && t[0] != '#') stmts.push_back({t, ln});
      cur.clear();
    };
    for (char c : text) {
      if (c == '\n' || c == ';') {
        flush(line);
        if (c == '\n') ++line;
      } else {
        cur += c;
      }
    }
    flush(line);
  }

  // relations are parsed after all generators are known
  std::vector<std::pair<std::string, int>> rel_texts;

  for (const auto& [stmt, line] : stmts) {
    auto fail = [&](const std::string& msg) -> void { throw ParseError(line, msg); };
    if (stmt.rfind("field", 0) == 0) {
      std::size_t eq = stmt.find('=');
      if (eq == std::string::npos) fail("expected 'field = <prime or 0>'");
      long long p;
      try {
        p = std::stoll(detail::trim(stmt.substr(eq + 1)));
      } catch (const std::exception&) {
        fail("invalid field specification");
      }
      if (p != 0 && !detail::is_prime(p)) fail("field must be 0 (rationals) or a prime");
      pres.field_p = p;
      field_seen = true;
    } else if (stmt.rfind("gen", 0) == 0 && stmt.size() > 3 &&
               std::isspace(static_cast<unsigned char>(stmt[3]))) {
      std::string body = detail::trim(stmt.substr(4));
      std::size_t pos = 0;
      while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string item = detail::trim(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        pos = comma == std::string::npos ? body.size() : comma + 1;
        if (item.empty()) fail("empty generator entry");
        std::size_t colon = item.find(':');
        if (colon == std::string::npos) fail("generator needs ':<adams_degree>'");
        std::string name = detail::trim(item.substr(0, colon));
        int deg;
        try {
          deg = std::stoi(detail::trim(item.substr(colon + 1)));
        } catch (const std::exception&) {
          fail("invalid Adams degree for generator '" + name + "'");
        }
        if (deg < 1) fail("generator '" + name + "' has Adams degree < 1");
        if (pres.gen_index(name) >= 0) fail("duplicate generator '" + name + "'");
        pres.generators.push_back({name, deg});
      }
    } else if (stmt.rfind("rel", 0) == 0 && stmt.size() > 3 && std::isspace(static_cast<unsigned char>(stmt[3]))) {
      rel_texts.emplace_back(detail::trim(stmt.substr(4)), line);
    } else if (stmt.rfind("cutoff_adams", 0) == 0) {
      std::size_t eq = stmt.find('=');
      if (eq == std::string::npos) fail("expected 'cutoff_adams = <S>'");
      pres.cutoff_adams = std::stoi(detail::trim(stmt.substr(eq + 1)));
    } else if (stmt.rfind("cutoff_hom", 0) == 0) {
      std::size_t eq = stmt.find('=');
      if (eq == std::string::npos) fail("expected 'cutoff_hom = <N>'");
      pres.cutoff_hom = std::stoi(detail::trim(stmt.substr(eq + 1)));
    } else {
      fail("unrecognized statement: " + stmt);
    }
  }

  if (!field_seen) throw ParseError(1, "missing 'field =' statement");

  for (const auto& [rel_text, line] : rel_texts) {
    NcPolynomial poly = detail::PolyParser(pres, rel_text, line).parse();
    if (poly.terms.empty()) continue;  // relation cancelled to zero
    if (!poly.homogeneous())
      throw ParseError(line, "inhomogeneous relation: " + rel_text);
    for (const auto& [m, c] : poly.terms)
      if (m.word.size() < 2)
        throw ParseError(line, "relation has a constant or linear term: " + rel_text);
    pres.relations.push_back(std::move(poly));
  }
  return pres;
}

}  // namespace aext
