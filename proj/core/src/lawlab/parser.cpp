#include "multirel/lawlab/parser.hpp"

#include <cctype>
#include <set>

#include "multirel/error.hpp"

namespace multirel::lawlab {

namespace {

enum class Tok { Ident, Number, Symbol, LawName, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
  // For fused comparison tokens like "=S": the plain operator and the
  // identifier it swallowed, in case the fused reading does not parse.
  std::string split_op;
  std::string split_ident;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

const std::set<std::string, std::less<>> kReserved = {
    "set",  "var",  "law",  "forall", "exists", "and",   "or",    "not",  "cup",
    "cap",  "icup", "icap", "up",     "down",   "conv",  "dom",   "plift", "klift",
    "syq",  "P",
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.loc = loc_;
      if (pos_ >= src_.size()) {
        t.kind = Tok::End;
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (ident_start(c)) {
        const std::size_t b = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
        t.kind = Tok::Ident;
        t.text = std::string(src_.substr(b, pos_ - b));
        out.push_back(t);
        if (t.text == "law") lex_law_name(out);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t b = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(b, pos_ - b));
        out.push_back(t);
        continue;
      }
      t.kind = Tok::Symbol;
      lex_symbol(t);
      out.push_back(t);
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++loc_.line;
      loc_.column = 1;
    } else {
      ++loc_.column;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool starts(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }
  bool ident_at(std::size_t p) const { return p < src_.size() && ident_char(src_[p]); }

  // `law name:` with names that may contain '-' and '.'.
  void lex_law_name(std::vector<Token>& out) {
    skip_space();
    std::size_t p = pos_;
    auto name_char = [](char c) { return ident_char(c) || c == '-' || c == '.'; };
    while (p < src_.size() && name_char(src_[p])) ++p;
    if (p == pos_) return;
    std::size_t q = p;
    while (q < src_.size() && (src_[q] == ' ' || src_[q] == '\t')) ++q;
    if (q >= src_.size() || src_[q] != ':') return;
    Token t;
    t.kind = Tok::LawName;
    t.loc = loc_;
    t.text = std::string(src_.substr(pos_, p - pos_));
    while (pos_ <= q) advance();
    out.push_back(t);
  }

  void lex_symbol(Token& t) {
    // Fused comparisons: only when the suffix is not the start of a longer identifier.
    for (std::string_view op : {"<=", "="}) {
      if (!starts(op)) continue;
      for (std::string_view suf : {"EM", "H", "S"}) {
        const std::size_t p = pos_ + op.size();
        if (src_.substr(p, suf.size()) == suf && !ident_at(p + suf.size())) {
          t.text = std::string(op) + std::string(suf);
          t.split_op = std::string(op);
          t.split_ident = std::string(suf);
          for (std::size_t i = 0; i < t.text.size(); ++i) advance();
          return;
        }
      }
    }
    static constexpr std::string_view kSymbols[] = {"<->", "->", "<=", ">=", "!=", "^i", "^d", "=", "<",
                                                    "^",   ";",  "*",  "@",  "/",  "\\", "~",  "-", "(",
                                                    ")",   "[",  "]",  ",",  ":",  "."};
    for (std::string_view s : kSymbols) {
      if (!starts(s)) continue;
      if ((s == "^i" || s == "^d") && ident_at(pos_ + 2)) continue;
      t.text = std::string(s);
      for (std::size_t i = 0; i < s.size(); ++i) advance();
      return;
    }
    throw SourceError(ErrorKind::SyntaxError, loc_.line, loc_.column,
                      std::string("unexpected character '") + src_[pos_] + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Loc loc_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  LawFile file() {
    LawFile f;
    while (!at_end()) {
      if (is_word("set")) {
        next();
        const Token name = expect_ident("set name");
        expect("=");
        const Token n = peek();
        if (n.kind != Tok::Number) fail(n, "expected a cardinality");
        next();
        f.sets.emplace_back(name.text, std::stoul(n.text));
      } else if (is_word("var")) {
        next();
        std::vector<Token> names{expect_ident("variable name")};
        while (accept(",")) names.push_back(expect_ident("variable name"));
        expect(":");
        const RelTypeDecl ty = rel_type();
        for (const auto& n : names) f.vars.push_back(VarDecl{n.text, ty, n.loc});
      } else if (is_word("law")) {
        Law law;
        law.loc = next().loc;
        if (peek().kind == Tok::LawName) law.name = next().text;
        law.formula = formula();
        f.laws.push_back(std::move(law));
      } else {
        fail(peek(), "expected 'set', 'var' or 'law'");
      }
    }
    return f;
  }

  TermPtr whole_term() {
    TermPtr t = term();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after term");
    return t;
  }

  FormulaPtr whole_formula() {
    FormulaPtr f = formula();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after formula");
    return f;
  }

  RelTypeDecl whole_rel_type() {
    RelTypeDecl t = rel_type();
    if (!at_end()) fail(peek(), "unexpected '" + peek().text + "' after type");
    return t;
  }

 private:
  // ---- token helpers ----
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool at_end() const { return peek().kind == Tok::End; }
  bool is_sym(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Symbol && peek(k).text == s;
  }
  bool is_word(std::string_view s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  bool accept(std::string_view s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    far_ = std::max(far_, pos_);
    throw SourceError(ErrorKind::SyntaxError, t.loc.line, t.loc.column, msg);
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail(peek(), "expected '" + std::string(s) + "' but found " + describe(peek()));
  }
  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
  }
  Token expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || kReserved.count(t.text) || const_by_name(t.text) || pred_by_name(t.text)) {
      fail(t, std::string("expected ") + what + " but found " + describe(t));
    }
    return next();
  }

  // Replaces a fused token like "=S" by "=" followed by identifier "S".
  void unfuse() {
    Token& t = toks_[pos_];
    Token id;
    id.kind = Tok::Ident;
    id.text = t.split_ident;
    id.loc = Loc{t.loc.line, t.loc.column + t.split_op.size()};
    t.text = t.split_op;
    t.split_op.clear();
    t.split_ident.clear();
    toks_.insert(toks_.begin() + static_cast<std::ptrdiff_t>(pos_) + 1, id);
  }

  // ---- types ----
  ObjType obj_type() {
    const Token& t = peek();
    if (is_word("P") && is_sym("(", 1)) {
      next();
      next();
      ObjType in = obj_type();
      expect(")");
      return in.pow();
    }
    if (t.kind != Tok::Ident || kReserved.count(t.text)) fail(t, "expected an object type but found " + describe(t));
    next();
    return ObjType::of(t.text);
  }

  RelTypeDecl rel_type() {
    ObjType s = obj_type();
    expect("<->");
    ObjType t = obj_type();
    return RelTypeDecl{std::move(s), std::move(t)};
  }

  // ---- terms ----
  bool starts_term() const {
    const Token& t = peek();
    if (t.kind == Tok::Number) return t.text == "0";
    if (t.kind == Tok::Symbol) return t.text == "(" || t.text == "~";
    if (t.kind != Tok::Ident) return false;
    static const std::set<std::string, std::less<>> kTermWords = {"up", "down", "conv", "dom", "plift", "klift", "syq"};
    return kTermWords.count(t.text) || !kReserved.count(t.text);
  }

  template <class Sub>
  TermPtr left_assoc(Sub sub, std::initializer_list<std::pair<std::string_view, BinOp>> ops, bool words) {
    TermPtr lhs = (this->*sub)();
    for (;;) {
      bool matched = false;
      for (auto [s, op] : ops) {
        if (words ? is_word(s) : is_sym(s)) {
          const Loc loc = next().loc;
          TermPtr rhs = (this->*sub)();
          lhs = Term::binary(op, lhs, rhs, loc);
          matched = true;
          break;
        }
      }
      if (!matched) return lhs;
    }
  }

  TermPtr term() { return left_assoc(&Parser::cup_level, {{"-", BinOp::Minus}}, false); }
  TermPtr cup_level() { return left_assoc(&Parser::cap_level, {{"cup", BinOp::Cup}, {"icup", BinOp::ICup}}, true); }
  TermPtr cap_level() { return left_assoc(&Parser::peleg_level, {{"cap", BinOp::Cap}, {"icap", BinOp::ICap}}, true); }
  TermPtr peleg_level() {
    return left_assoc(&Parser::compose_level, {{"*", BinOp::Peleg}, {"@", BinOp::CoCompose}}, false);
  }
  TermPtr compose_level() {
    return left_assoc(&Parser::prefix, {{";", BinOp::Compose}, {"/", BinOp::LeftRes}, {"\\", BinOp::RightRes}},
                      false);
  }

  TermPtr prefix() {
    if (is_sym("~")) {
      const Loc loc = next().loc;
      return Term::unary(UnOp::Complement, prefix(), loc);
    }
    return postfix();
  }

  TermPtr postfix() {
    TermPtr t = primary();
    for (;;) {
      if (is_sym("^")) {
        t = Term::unary(UnOp::Converse, t, next().loc);
      } else if (is_sym("^i")) {
        t = Term::unary(UnOp::InnerComplement, t, next().loc);
      } else if (is_sym("^d")) {
        t = Term::unary(UnOp::Dual, t, next().loc);
      } else {
        return t;
      }
    }
  }

  TermPtr primary() {
    const Token tok = peek();
    if (accept("(")) {
      TermPtr t = term();
      expect(")");
      return t;
    }
    if (tok.kind == Tok::Number) {
      if (tok.text != "0") fail(tok, "only 0 is a numeric constant");
      next();
      return Term::constant_of(ConstName::Zero, type_args(), tok.loc);
    }
    if (tok.kind != Tok::Ident) fail(tok, "expected a term but found " + describe(tok));
    static const std::pair<std::string_view, UnOp> kFuncs[] = {{"up", UnOp::Up},       {"down", UnOp::Down},
                                                                {"conv", UnOp::Convex},  {"dom", UnOp::Dom},
                                                                {"plift", UnOp::Plift}, {"klift", UnOp::Klift}};
    for (auto [name, op] : kFuncs) {
      if (tok.text == name) {
        next();
        expect("(");
        TermPtr a = term();
        expect(")");
        return Term::unary(op, a, tok.loc);
      }
    }
    if (tok.text == "syq") {
      next();
      expect("(");
      TermPtr a = term();
      expect(",");
      TermPtr b = term();
      expect(")");
      return Term::binary(BinOp::Syq, a, b, tok.loc);
    }
    if (auto c = const_by_name(tok.text)) {
      next();
      return Term::constant_of(*c, type_args(), tok.loc);
    }
    if (kReserved.count(tok.text) || pred_by_name(tok.text)) fail(tok, "expected a term but found " + describe(tok));
    next();
    return Term::var(tok.text, tok.loc);
  }

  std::vector<ObjType> type_args() {
    std::vector<ObjType> args;
    if (!accept("[")) return args;
    args.push_back(obj_type());
    while (accept(",")) args.push_back(obj_type());
    expect("]");
    return args;
  }

  // ---- formulas ----
  FormulaPtr make(Formula::Kind k, Loc loc, std::vector<FormulaPtr> kids) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->loc = loc;
    f->kids = std::move(kids);
    return f;
  }

  FormulaPtr formula() {
    if (is_word("forall") || is_word("exists")) return quantified();
    return iff();
  }

  FormulaPtr quantified() {
    const Token q = next();
    auto f = make(q.text == "forall" ? Formula::Kind::Forall : Formula::Kind::Exists, q.loc, {});
    std::size_t group_start = 0;
    for (;;) {
      f->binders.push_back(Binder{expect_ident("bound variable").text, std::nullopt, -1, {}});
      if (accept(",")) continue;
      if (accept(":")) {
        const RelTypeDecl ty = rel_type();
        for (std::size_t i = group_start; i < f->binders.size(); ++i) f->binders[i].type = ty;
        group_start = f->binders.size();
        if (accept(",")) continue;
      }
      break;
    }
    expect(".");
    f->kids.push_back(formula());
    return f;
  }

  FormulaPtr iff() {
    FormulaPtr lhs = implies();
    while (is_sym("<->")) {
      const Loc loc = next().loc;
      lhs = make(Formula::Kind::Iff, loc, {lhs, implies()});
    }
    return lhs;
  }

  FormulaPtr implies() {
    FormulaPtr lhs = disjunction();
    if (is_sym("->")) {
      const Loc loc = next().loc;
      return make(Formula::Kind::Implies, loc, {lhs, tail(&Parser::implies)});
    }
    return lhs;
  }

  // A quantifier may close any connective chain and extends to the end.
  FormulaPtr tail(FormulaPtr (Parser::*sub)()) {
    if (is_word("forall") || is_word("exists")) return quantified();
    return (this->*sub)();
  }

  FormulaPtr disjunction() {
    FormulaPtr lhs = conjunction();
    while (is_word("or")) {
      const Loc loc = next().loc;
      lhs = make(Formula::Kind::Or, loc, {lhs, tail(&Parser::conjunction)});
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    FormulaPtr lhs = negation();
    while (is_word("and")) {
      const Loc loc = next().loc;
      lhs = make(Formula::Kind::And, loc, {lhs, tail(&Parser::negation)});
    }
    return lhs;
  }

  FormulaPtr negation() {
    if (is_word("not")) {
      const Loc loc = next().loc;
      return make(Formula::Kind::Not, loc, {tail(&Parser::negation)});
    }
    if (is_word("forall") || is_word("exists")) return quantified();
    return atom();
  }

  FormulaPtr atom() {
    const Token tok = peek();
    if (tok.kind == Tok::Ident && is_sym("(", 1)) {
      if (auto p = pred_by_name(tok.text)) {
        next();
        next();
        auto f = make(Formula::Kind::Pred, tok.loc, {});
        f->pred = *p;
        f->terms.push_back(term());
        expect(")");
        return f;
      }
    }
    if (tok.kind == Tok::Symbol && tok.text == "(") {
      // Either a parenthesised formula or a term starting with '('.
      const std::size_t save = pos_;
      const std::vector<Token> saved = toks_;
      far_ = 0;
      try {
        return comparison();
      } catch (const SourceError& as_term) {
        const std::size_t far = far_;
        pos_ = save;
        toks_ = saved;
        far_ = 0;
        try {
          next();
          FormulaPtr f = formula();
          expect(")");
          return f;
        } catch (const SourceError&) {
          if (far_ <= far) throw as_term;
          throw;
        }
      }
    }
    return comparison();
  }

  FormulaPtr comparison() {
    const Token start = peek();
    TermPtr lhs = term();
    Token op = peek();
    static const std::pair<std::string_view, CmpOp> kOps[] = {
        {"=", CmpOp::Eq},       {"!=", CmpOp::Ne},     {"<=", CmpOp::Le},   {">=", CmpOp::Ge},
        {"<", CmpOp::Lt},       {"<=H", CmpOp::LeH},   {"<=S", CmpOp::LeS}, {"<=EM", CmpOp::LeEM},
        {"=H", CmpOp::EqH},     {"=S", CmpOp::EqS},    {"=EM", CmpOp::EqEM}};
    if (op.kind == Tok::Symbol && !op.split_op.empty()) {
      // "R=S": the fused reading needs a term to follow.
      const std::size_t save = pos_;
      next();
      const bool term_follows = starts_term();
      pos_ = save;
      if (!term_follows) {
        unfuse();
        op = peek();
      }
    }
    for (auto [s, c] : kOps) {
      if (op.kind == Tok::Symbol && op.text == s) {
        next();
        auto f = make(Formula::Kind::Cmp, start.loc, {});
        f->cmp = c;
        f->terms = {lhs, term()};
        return f;
      }
    }
    fail(op, "expected a comparison operator but found " + describe(op));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  mutable std::size_t far_ = 0;  // furthest failure position, for choosing error messages
};

}  // namespace

LawFile parse_law_file(std::string_view text) { return Parser(text).file(); }
TermPtr parse_term(std::string_view text) { return Parser(text).whole_term(); }
FormulaPtr parse_formula(std::string_view text) { return Parser(text).whole_formula(); }
RelTypeDecl parse_rel_type(std::string_view text) { return Parser(text).whole_rel_type(); }

}  // namespace multirel::lawlab
