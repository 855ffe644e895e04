#pragma once

#include <dfree/errors.hpp>
#include <dfree/family.hpp>

#include <json.hpp>

#include <charconv>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace dfree::io {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty())
    throw ParseError("expected integer for " + std::string(what) + ", got '" + std::string(text) + "'");
  return value;
}

/// Parses "{}", "1,2,5" or "{1,2,5}" into a subset of [n].
inline Subset parse_subset(std::string_view text, int n) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '{' && text.back() == '}') {
    text.remove_prefix(1);
    text.remove_suffix(1);
    text = trim(text);
  }
  Subset s;
  if (text.empty()) return s;
  while (true) {
    const auto comma = text.find(',');
    const int e = parse_int(text.substr(0, comma), "set element");
    if (e < 1 || e > n)
      throw ParseError("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
    if (s.contains(e)) throw ParseError("repeated element " + std::to_string(e));
    s = s.with(e);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return s;
}

/// Parses "key=value"; nullopt when the line has a different shape.
inline std::optional<std::pair<std::string, std::string>> split_key(std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  const auto key = trim(line.substr(0, eq));
  if (key.empty()) return std::nullopt;
  for (char ch : key)
    if (!((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_')) return std::nullopt;
  return std::pair{std::string(key), std::string(trim(line.substr(eq + 1)))};
}

/// Line-based family format: `n=<int>` then one member per line.
inline std::string to_text(const Family& family) {
  std::string out = "n=" + std::to_string(family.n()) + "\n";
  for (Subset s : family) out += to_string(s) + "\n";
  return out;
}

inline Family parse_text(std::istream& in) {
  std::string line;
  std::optional<int> n;
  std::vector<Subset> members;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!n) {
      auto kv = split_key(t);
      if (!kv || kv->first != "n") throw ParseError("family text must start with 'n=<int>'");
      n = parse_int(kv->second, "n");
      if (*n < 0 || *n > kMaxGround)
        throw ParseError("n=" + std::to_string(*n) + " outside 0.." + std::to_string(kMaxGround));
      continue;
    }
    members.push_back(parse_subset(t, *n));
  }
  if (!n) throw ParseError("empty family text");
  return Family(*n, std::move(members));
}

inline Family parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_text(in);
}

/// The array-of-arrays form, one sorted element list per member.
inline nlohmann::json members_to_json(const Family& family) {
  auto arr = nlohmann::json::array();
  for (Subset s : family) arr.push_back(s.elements());
  return arr;
}

/// {"n": <int>, "family": [[...], ...]}
inline nlohmann::json to_json(const Family& family) {
  return nlohmann::json{{"n", family.n()}, {"family", members_to_json(family)}};
}

inline Family members_from_json(const nlohmann::json& arr, int n) {
  if (!arr.is_array()) throw ParseError("family JSON must be an array of arrays");
  std::vector<Subset> members;
  for (const auto& set : arr) {
    if (!set.is_array()) throw ParseError("family JSON member must be an array");
    Subset s;
    for (const auto& e : set) {
      if (!e.is_number_integer()) throw ParseError("set element must be an integer");
      const int v = e.get<int>();
      if (v < 1 || v > n) throw ParseError("element " + std::to_string(v) + " outside 1.." + std::to_string(n));
      if (s.contains(v)) throw ParseError("repeated element " + std::to_string(v));
      s = s.with(v);
    }
    members.push_back(s);
  }
  return Family(n, std::move(members));
}

/// Accepts the object form, or a bare array of arrays when `n` is supplied.
inline Family from_json(const nlohmann::json& j, std::optional<int> n = std::nullopt) {
  if (j.is_object()) {
    if (!j.contains("n") || !j.contains("family")) throw ParseError("family JSON needs 'n' and 'family'");
    const int jn = j.at("n").get<int>();
    if (jn < 0 || jn > kMaxGround) throw ParseError("n outside supported range");
    return members_from_json(j.at("family"), jn);
  }
  if (!n) throw ParseError("bare family array needs an explicit n");
  return members_from_json(j, *n);
}

/// Text or JSON, detected from the first non-blank character.
inline Family parse_any(const std::string& text) {
  for (char ch : text) {
    if (ch == ' ' || ch == '\n' || ch == '\t' || ch == '\r') continue;
    if (ch == '{' || ch == '[') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid family JSON: ") + e.what());
      }
      return from_json(j);
    }
    break;
  }
  return parse_text(text);
}

}  // namespace dfree::io
