#pragma once

#include <dfree/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace dfree {

enum class Relation { eq, le, ge };

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::eq: return "==";
    case Relation::le: return "<=";
    case Relation::ge: return ">=";
  }
  return "?";
}

/// One exact check: lhs <relation> rhs.
struct Clause {
  std::string name;
  Rational lhs;
  Relation relation = Relation::eq;
  Rational rhs;
  bool pass = false;
  std::string note;
};

inline Clause check(std::string name, const Rational& lhs, Relation rel, const Rational& rhs,
                    std::string note = {}) {
  bool ok = false;
  switch (rel) {
    case Relation::eq: ok = lhs == rhs; break;
    case Relation::le: ok = lhs <= rhs; break;
    case Relation::ge: ok = lhs >= rhs; break;
  }
  return Clause{std::move(name), lhs, rel, rhs, ok, std::move(note)};
}

/// A boolean structural check recorded as 1 == 1 or 0 == 1.
inline Clause check_true(std::string name, bool ok, std::string note = {}) {
  return Clause{std::move(name), Rational(ok ? 1 : 0), Relation::eq, Rational(1), ok, std::move(note)};
}

struct Report {
  std::vector<Clause> clauses;

  bool all_pass() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
  }

  const Clause* find(const std::string& name) const {
    for (const auto& c : clauses)
      if (c.name == name) return &c;
    return nullptr;
  }

  void append(const Report& other) {
    clauses.insert(clauses.end(), other.clauses.begin(), other.clauses.end());
  }
};

inline nlohmann::json to_json(const Clause& c) {
  nlohmann::json j{{"name", c.name},
                   {"lhs", to_string(c.lhs)},
                   {"relation", to_string(c.relation)},
                   {"rhs", to_string(c.rhs)},
                   {"pass", c.pass}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline nlohmann::json to_json(const Report& r) {
  auto arr = nlohmann::json::array();
  for (const auto& c : r.clauses) arr.push_back(to_json(c));
  return arr;
}

}  // namespace dfree
