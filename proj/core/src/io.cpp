#include "multirel/io.hpp"

#include <algorithm>
#include <cctype>

namespace multirel {

namespace {

constexpr std::string_view kEmptySet = "\xE2\x88\x85";  // ∅

nlohmann::json element_json(const Universe& u, const ObjType& t, std::size_t index) {
  if (t.depth == 0) return u.element_name(t, index);
  nlohmann::json arr = nlohmann::json::array();
  const ObjType in = t.inner();
  for (std::size_t i = 0; i < 64; ++i) {
    if ((index >> i) & 1U) arr.push_back(element_json(u, in, i));
  }
  return arr;
}

std::size_t element_from_json(const Universe& u, const ObjType& t, const nlohmann::json& j) {
  const std::size_t n = u.cardinality(t);
  if (t.depth == 0) {
    if (!j.is_string()) throw Error(ErrorKind::TypeError, "expected an element of " + t.to_string());
    const std::string name = j.get<std::string>();
    for (std::size_t i = 0; i < n; ++i) {
      if (u.element_name(t, i) == name) return i;
    }
    throw Error(ErrorKind::TypeError, "no element " + name + " in " + t.to_string());
  }
  if (!j.is_array()) throw Error(ErrorKind::TypeError, "expected a set of " + t.inner().to_string());
  std::size_t mask = 0;
  for (const auto& e : j) mask |= std::size_t{1} << element_from_json(u, t.inner(), e);
  return mask;
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  RelationLiteral parse() {
    RelationLiteral lit;
    skip();
    if (eat_empty()) {
      expect_end();
      return lit;
    }
    expect('{');
    skip();
    if (peek() != '}') {
      for (;;) {
        expect('(');
        ElementLiteral a = element();
        expect(',');
        ElementLiteral b = element();
        expect(')');
        lit.pairs.emplace_back(std::move(a), std::move(b));
        skip();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        break;
      }
    }
    expect('}');
    expect_end();
    return lit;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool eat_empty() {
    skip();
    if (text_.substr(pos_, kEmptySet.size()) == kEmptySet) {
      pos_ += kEmptySet.size();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw SourceError(ErrorKind::SyntaxError, 1, pos_ + 1, what + " in relation literal");
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_end() {
    skip();
    if (pos_ != text_.size()) fail("trailing input");
  }

  ElementLiteral element() {
    if (eat_empty()) return ElementLiteral{std::vector<ElementLiteral>{}};
    const char c = peek();
    if (c == '{') {
      ++pos_;
      std::vector<ElementLiteral> items;
      if (peek() != '}') {
        for (;;) {
          items.push_back(element());
          if (peek() == ',') {
            ++pos_;
            continue;
          }
          break;
        }
      }
      expect('}');
      return ElementLiteral{std::move(items)};
    }
    if (c >= 'a' && c <= 'z') {
      ++pos_;
      return ElementLiteral{static_cast<std::size_t>(c - 'a')};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t v = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        v = v * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (v > Mask::kMaxBits) fail("element index too large");
        ++pos_;
      }
      return ElementLiteral{v};
    }
    fail("expected an element");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::size_t typed_element(const Universe& u, const ElementLiteral& e, const ObjType& t) {
  const std::size_t n = u.cardinality(t);
  if (t.depth == 0) {
    if (!e.is_atom()) throw Error(ErrorKind::TypeError, "a set where an element of " + t.to_string() + " is expected");
    const std::size_t i = std::get<std::size_t>(e.value);
    if (i >= n) throw Error(ErrorKind::TypeError, "element index " + std::to_string(i) + " outside " + t.to_string());
    return i;
  }
  if (e.is_atom()) throw Error(ErrorKind::TypeError, "an atom where a subset of " + t.inner().to_string() + " is expected");
  std::size_t mask = 0;
  for (const auto& child : std::get<std::vector<ElementLiteral>>(e.value)) {
    mask |= std::size_t{1} << typed_element(u, child, t.inner());
  }
  return mask;
}

}  // namespace

ObjType parse_objtype(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  unsigned depth = 0;
  while (s.size() > 2 && s[0] == 'P' && trim(s.substr(1)).front() == '(') {
    s = trim(s.substr(1));
    if (s.back() != ')') throw Error(ErrorKind::SyntaxError, "unbalanced object type " + std::string(text));
    s = trim(s.substr(1, s.size() - 2));
    ++depth;
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
      })) {
    throw Error(ErrorKind::SyntaxError, "bad object type " + std::string(text));
  }
  return ObjType{std::string(s), depth};
}

std::string to_text(const Universe& u, const Relation& r) {
  if (r.empty()) return std::string(kEmptySet);
  std::string s = "{";
  bool first = true;
  for (auto [i, j] : r.pairs()) {
    if (!first) s += ",";
    first = false;
    s += "(" + u.element_name(r.src(), i) + "," + u.element_name(r.tgt(), j) + ")";
  }
  return s + "}";
}

nlohmann::json to_json(const Universe& u, const Relation& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (auto [i, j] : r.pairs()) {
    pairs.push_back(nlohmann::json::array({element_json(u, r.src(), i), element_json(u, r.tgt(), j)}));
  }
  nlohmann::json j;
  j["src"] = r.src().to_string();
  j["tgt"] = r.tgt().to_string();
  j["pairs"] = std::move(pairs);
  return j;
}

Relation relation_from_json(const Universe& u, const nlohmann::json& j) {
  const ObjType src = parse_objtype(j.at("src").get<std::string>());
  const ObjType tgt = parse_objtype(j.at("tgt").get<std::string>());
  Relation r = Relation::of_type(u, src, tgt);
  for (const auto& p : j.at("pairs")) {
    if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::SyntaxError, "pair must be a 2-element array");
    r.insert(element_from_json(u, src, p[0]), element_from_json(u, tgt, p[1]));
  }
  return r;
}

std::optional<int> ElementLiteral::exact_depth() const {
  if (is_atom()) return 0;
  for (const auto& child : std::get<std::vector<ElementLiteral>>(value)) {
    if (auto d = child.exact_depth()) return *d + 1;
  }
  return std::nullopt;
}

int ElementLiteral::lower_depth() const {
  if (is_atom()) return 0;
  int d = 0;
  for (const auto& child : std::get<std::vector<ElementLiteral>>(value)) d = std::max(d, child.lower_depth());
  return d + 1;
}

long ElementLiteral::max_atom() const {
  if (is_atom()) return static_cast<long>(std::get<std::size_t>(value));
  long m = -1;
  for (const auto& child : std::get<std::vector<ElementLiteral>>(value)) m = std::max(m, child.max_atom());
  return m;
}

RelationLiteral parse_relation_literal(std::string_view text) { return LiteralParser(text).parse(); }

Relation to_relation(const Universe& u, const RelationLiteral& lit, const ObjType& src, const ObjType& tgt) {
  Relation r = Relation::of_type(u, src, tgt);
  for (const auto& [a, b] : lit.pairs) r.insert(typed_element(u, a, src), typed_element(u, b, tgt));
  return r;
}

}  // namespace multirel
