#pragma once

// Noncommutative monomials (words in the generators) and integer-coefficient
// polynomials, ordered degree-lexicographically: Adams degree first, then word
// length, then the letter sequence. Every pivot choice downstream flows from
// this one order.

#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace aext {

struct NcMonomial {
  std::vector<int> word;  // generator indices
  int adams = 0;          // sum of the letters' Adams degrees

  bool operator==(const NcMonomial& o) const {
    return adams == o.adams && word == o.word;
  }
};

struct DeglexLess {
  bool operator()(const NcMonomial& a, const NcMonomial& b) const {
    if (a.adams != b.adams) return a.adams < b.adams;
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  }
};

// Integer-coefficient element of the free algebra; the scalar field is chosen
// later, when a presentation is instantiated over a concrete field.
struct NcPolynomial {
  std::map<NcMonomial, long long, DeglexLess> terms;

  bool homogeneous() const {
    if (terms.empty()) return true;
    int d = terms.begin()->first.adams;
    for (const auto& [m, c] : terms)
      if (m.adams != d) return false;
    return true;
  }
  int adams() const { return terms.empty() ? 0 : terms.begin()->first.adams; }
  void add(const NcMonomial& m, long long c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (c != 0) terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
};

inline std::string monomial_str(const NcMonomial& m,
                                const std::vector<std::string>& gen_names) {
  if (m.word.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.word.size(); ++i) {
    if (i) out += "*";
    out += gen_names[m.word[i]];
  }
  return out;
}

inline std::string polynomial_str(const NcPolynomial& p,
                                  const std::vector<std::string>& gen_names) {
  if (p.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms) {
    long long a = c;
    if (first) {
      if (a < 0) { out += "-"; a = -a; }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    if (a != 1 || m.word.empty()) {
      out += std::to_string(a);
      if (!m.word.empty()) out += "*";
    }
    if (!m.word.empty()) out += monomial_str(m, gen_names);
  }
  return out;
}

}  // namespace aext
