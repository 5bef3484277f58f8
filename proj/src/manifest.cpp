#include "nilprod/cli.hpp"
#include "nilprod/exactlin.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nilprod::cli {

namespace {

// ---------------------------------------------------------------------------
// Lexing

struct Token {
  enum class T { Ident, Num, Punct, End };
  T t = T::End;
  std::string s;  // ident text or the punctuation character
  Int v = 0;      // for Num (unsigned; signs are handled by the parsers)
  int line = 1, col = 1;
};

[[noreturn]] void syntax_error(int line, int col, const std::string& msg) {
  fail("SyntaxError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                          msg);
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  const Token& peek() {
    if (!cached_) cached_ = scan();
    return *cached_;
  }

  Token take() {
    Token t = peek();
    pos_ = after_pos_;
    line_ = after_line_;
    col_ = after_col_;
    cached_.reset();
    return t;
  }

  // Raw capture up to the end of the current line (comment stripped,
  // whitespace trimmed); consumes the line.  Works whether or not a token
  // has been peeked past the capture start.
  std::string rest_of_line() {
    cached_.reset();
    size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    std::string s = text_.substr(pos_, end - pos_);
    if (size_t h = s.find('#'); h != std::string::npos) s.erase(h);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (end < text_.size()) ++end;  // swallow the newline
    pos_ = end;
    ++line_;
    col_ = 1;
    return s;
  }

 private:
  Token scan() {
    after_pos_ = pos_;
    after_line_ = line_;
    after_col_ = col_;
    skip_ws();
    Token t;
    t.line = after_line_;
    t.col = after_col_;
    if (after_pos_ >= text_.size()) {
      t.t = Token::T::End;
      return t;
    }
    const char c = text_[after_pos_];
    if (ident_start(c)) {
      t.t = Token::T::Ident;
      while (after_pos_ < text_.size() && ident_char(text_[after_pos_])) {
        t.s += text_[after_pos_];
        step();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.t = Token::T::Num;
      std::string digits;
      while (after_pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[after_pos_]))) {
        digits += text_[after_pos_];
        step();
      }
      t.v = Int(digits);
      t.s = digits;
      return t;
    }
    if (std::string("[]=,^+-*/").find(c) != std::string::npos) {
      t.t = Token::T::Punct;
      t.s = std::string(1, c);
      step();
      return t;
    }
    syntax_error(t.line, t.col, std::string("unexpected character '") + c + "'");
  }

  void skip_ws() {
    while (after_pos_ < text_.size()) {
      const char c = text_[after_pos_];
      if (c == '#') {
        while (after_pos_ < text_.size() && text_[after_pos_] != '\n') step();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        step();
      } else {
        return;
      }
    }
  }

  void step() {
    if (text_[after_pos_] == '\n') {
      ++after_line_;
      after_col_ = 1;
    } else {
      ++after_col_;
    }
    ++after_pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  // scan position while a token is cached
  size_t after_pos_ = 0;
  int after_line_ = 1, after_col_ = 1;
  std::optional<Token> cached_;
};

// ---------------------------------------------------------------------------
// Parsing helpers

const std::set<std::string> kKinds = {"fgab", "gp",    "operad", "nil2alg", "sc",
                                      "lie",  "lierep", "xmod",   "central", "cmd"};
const std::set<std::string> kVarieties = {"lie", "leibniz", "assoc", "commassoc", "none"};
const std::set<std::string> kPresets = {"comm", "assoc", "lie", "leib"};

class Parser {
 public:
  explicit Parser(const std::string& text) : lx_(text) {}

  Manifest parse() {
    Manifest m;
    while (lx_.peek().t != Token::T::End) {
      parse_section(m);
    }
    check_duplicates(m);
    resolve(m);
    return m;
  }

 private:
  Token expect_punct(const std::string& p) {
    Token t = lx_.take();
    if (t.t != Token::T::Punct || t.s != p)
      syntax_error(t.line, t.col, "expected '" + p + "'");
    return t;
  }

  Token expect_ident(const std::string& what) {
    Token t = lx_.take();
    if (t.t != Token::T::Ident) syntax_error(t.line, t.col, "expected " + what);
    return t;
  }

  bool accept_punct(const std::string& p) {
    const Token& t = lx_.peek();
    if (t.t == Token::T::Punct && t.s == p) {
      lx_.take();
      return true;
    }
    return false;
  }

  Int parse_int() {
    bool neg = accept_punct("-");
    Token t = lx_.take();
    if (t.t != Token::T::Num) syntax_error(t.line, t.col, "expected an integer");
    return neg ? Int(-t.v) : t.v;
  }

  int parse_small_int(const std::string& what) {
    Token at = lx_.peek();
    Int v = parse_int();
    if (v < 0 || v > 1000000) syntax_error(at.line, at.col, what + " out of range");
    return static_cast<int>(v);
  }

  Rat parse_rat() {
    bool neg = accept_punct("-");
    Token t = lx_.take();
    if (t.t != Token::T::Num) syntax_error(t.line, t.col, "expected a number");
    Int num = t.v, den = 1;
    if (accept_punct("/")) {
      Token d = lx_.take();
      if (d.t != Token::T::Num || d.v == 0)
        syntax_error(d.line, d.col, "expected a nonzero denominator");
      den = d.v;
    }
    Rat r(num, den);
    return neg ? Rat(-r) : r;
  }

  std::vector<Int> parse_int_list() {
    std::vector<Int> out;
    expect_punct("[");
    if (accept_punct("]")) return out;
    out.push_back(parse_int());
    while (accept_punct(",")) out.push_back(parse_int());
    expect_punct("]");
    return out;
  }

  std::vector<Rat> parse_rat_list() {
    std::vector<Rat> out;
    expect_punct("[");
    if (accept_punct("]")) return out;
    out.push_back(parse_rat());
    while (accept_punct(",")) out.push_back(parse_rat());
    expect_punct("]");
    return out;
  }

  template <typename Row>
  std::vector<Row> parse_matrix(Row (Parser::*row)()) {
    std::vector<Row> out;
    Token at = lx_.peek();
    expect_punct("[");
    if (accept_punct("]")) return out;
    out.push_back((this->*row)());
    while (accept_punct(",")) out.push_back((this->*row)());
    expect_punct("]");
    for (const Row& r : out)
      if (r.size() != out.front().size())
        syntax_error(at.line, at.col, "matrix rows of unequal length");
    return out;
  }

  std::vector<std::string> parse_ident_list() {
    std::vector<std::string> out;
    expect_punct("[");
    if (accept_punct("]")) return out;
    out.push_back(expect_ident("a name").s);
    while (accept_punct(",")) out.push_back(expect_ident("a name").s);
    expect_punct("]");
    return out;
  }

  RingSpec parse_ring(bool field_only) {
    Token t = expect_ident("a ring (Z, Q or F<p>)");
    if (t.s == "Z" && !field_only) return {'Z', 0};
    if (t.s == "Q") return {'Q', 0};
    if (t.s.size() > 1 && t.s[0] == 'F' &&
        std::all_of(t.s.begin() + 1, t.s.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      const long p = std::stol(t.s.substr(1));
      if (!exactlin::is_prime(p))
        syntax_error(t.line, t.col, std::to_string(p) + " is not prime");
      return {'F', p};
    }
    syntax_error(t.line, t.col, field_only ? "expected a field (Q or F<p>)"
                                           : "expected a ring (Z, Q or F<p>)");
  }

  // e<k>, 1-based in the text, returned 0-based
  int parse_basis(int dim) {
    Token t = expect_ident("a basis vector e<k>");
    if (t.s.size() < 2 || t.s[0] != 'e' ||
        !std::all_of(t.s.begin() + 1, t.s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      syntax_error(t.line, t.col, "expected a basis vector e<k>");
    const long k = std::stol(t.s.substr(1));
    if (k < 1 || k > dim)
      syntax_error(t.line, t.col, "basis index out of range (dim " + std::to_string(dim) + ")");
    return static_cast<int>(k - 1);
  }

  bool peek_basis() {
    const Token& t = lx_.peek();
    return t.t == Token::T::Ident && t.s.size() >= 2 && t.s[0] == 'e' &&
           std::all_of(t.s.begin() + 1, t.s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  // linear combination of basis vectors: "2 e1 - e3 + 1/2 e4", or "0"
  std::vector<std::pair<int, Rat>> parse_lincomb(int dim) {
    std::map<int, Rat> acc;
    bool first = true;
    while (true) {
      int sign = 1;
      if (accept_punct("+")) {
      } else if (accept_punct("-")) {
        sign = -1;
      } else if (!first) {
        break;
      }
      const Token& t = lx_.peek();
      if (t.t == Token::T::Num) {
        Rat c = parse_rat();
        accept_punct("*");
        if (peek_basis()) {
          const int k = parse_basis(dim);
          acc[k] += sign * c;
        } else if (c != 0) {
          syntax_error(t.line, t.col, "coefficient without a basis vector");
        }
      } else if (peek_basis()) {
        const int k = parse_basis(dim);
        acc[k] += sign;
      } else {
        syntax_error(t.line, t.col, "expected a linear combination of basis vectors");
      }
      first = false;
      const Token& n = lx_.peek();
      if (!(n.t == Token::T::Punct && (n.s == "+" || n.s == "-"))) break;
    }
    std::vector<std::pair<int, Rat>> out;
    for (const auto& [k, c] : acc)
      if (c != 0) out.emplace_back(k, c);
    return out;
  }

  // Is the next token the start of a new statement or section?
  bool at_section_or_end() {
    const Token& t = lx_.peek();
    return t.t == Token::T::End || (t.t == Token::T::Punct && t.s == "[");
  }

  // key of the next `key = ...` statement, without consuming it
  std::string peek_key() {
    const Token& t = lx_.peek();
    if (t.t != Token::T::Ident)
      syntax_error(t.line, t.col, "expected a statement (key = value)");
    return t.s;
  }

  // ------------------------------------------------------------------
  // Sections

  void parse_section(Manifest& m) {
    Token open = expect_punct("[");
    Token kind = expect_ident("a section kind");
    if (!kKinds.count(kind.s))
      syntax_error(kind.line, kind.col, "unknown section kind '" + kind.s + "'");
    Token name = expect_ident("a section name");
    if (kKinds.count(name.s))
      syntax_error(name.line, name.col, "name '" + name.s + "' collides with a section kind");
    expect_punct("]");

    Declaration d;
    d.kind = kind.s;
    d.name = name.s;
    header_line_.push_back(open.line);
    do_line_.push_back(open.line);

    if (kind.s == "fgab") d.payload = parse_fgab();
    else if (kind.s == "gp") d.payload = parse_gp();
    else if (kind.s == "operad") d.payload = parse_operad();
    else if (kind.s == "nil2alg") d.payload = parse_nil2alg();
    else if (kind.s == "sc" || kind.s == "lie") d.payload = parse_sc(kind.s == "lie");
    else if (kind.s == "lierep") d.payload = parse_lierep();
    else if (kind.s == "xmod") d.payload = parse_xmod();
    else if (kind.s == "central") d.payload = parse_central();
    else d.payload = parse_cmd();
    m.decls.push_back(std::move(d));
  }

  FgabDecl parse_fgab() {
    FgabDecl d;
    bool seen = false;
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      if (key.s != "factors") syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      if (seen) syntax_error(key.line, key.col, "duplicate key 'factors'");
      seen = true;
      expect_punct("=");
      d.factors = parse_int_list();
    }
    return d;
  }

  GpDecl parse_gp() {
    GpDecl d;
    bool seen_gens = false;
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      expect_punct("=");
      if (key.s == "generators") {
        if (seen_gens) syntax_error(key.line, key.col, "duplicate key 'generators'");
        seen_gens = true;
        d.generators = parse_ident_list();
        std::set<std::string> names;
        for (const std::string& g : d.generators) {
          if (g == "generators" || g == "relator")
            syntax_error(key.line, key.col, "generator name '" + g + "' collides with a keyword");
          if (!names.insert(g).second)
            syntax_error(key.line, key.col, "duplicate generator '" + g + "'");
        }
      } else if (key.s == "relator") {
        if (!seen_gens) syntax_error(key.line, key.col, "generators must come before relators");
        std::vector<std::pair<int, Int>> word;
        Token first = lx_.peek();
        // A word ends at the first identifier that is not a declared
        // generator (necessarily the key of the next statement).
        while (lx_.peek().t == Token::T::Ident) {
          const auto it = std::find(d.generators.begin(), d.generators.end(), lx_.peek().s);
          if (it == d.generators.end()) break;
          lx_.take();
          Int e = 1;
          if (accept_punct("^")) e = parse_int();
          word.emplace_back(static_cast<int>(it - d.generators.begin()), e);
        }
        if (word.empty())
          syntax_error(first.line, first.col,
                       first.t == Token::T::Ident ? "unknown generator '" + first.s + "'"
                                                  : "empty relator");
        d.relators.push_back(std::move(word));
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    return d;
  }

  OperadDecl parse_operad() {
    OperadDecl d;
    d.ring = {'Q', 0};
    bool seen_preset = false, seen_ring = false;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      expect_punct("=");
      if (key.s == "preset") {
        if (seen_preset) syntax_error(key.line, key.col, "duplicate key 'preset'");
        seen_preset = true;
        Token p = expect_ident("a preset (comm, assoc, lie, leib)");
        if (!kPresets.count(p.s))
          syntax_error(p.line, p.col, "unknown preset '" + p.s + "'");
        d.preset = p.s;
      } else if (key.s == "ring") {
        if (seen_ring) syntax_error(key.line, key.col, "duplicate key 'ring'");
        seen_ring = true;
        d.ring = parse_ring(false);
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_preset) syntax_error(at.line, at.col, "operad section needs a preset");
    return d;
  }

  Nil2AlgDecl parse_nil2alg() {
    Nil2AlgDecl d;
    bool seen_op = false, seen_mod = false;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      expect_punct("=");
      if (key.s == "operad") {
        if (seen_op) syntax_error(key.line, key.col, "duplicate key 'operad'");
        seen_op = true;
        d.operad = expect_ident("an operad name").s;
      } else if (key.s == "free" || key.s == "abelian") {
        if (seen_mod)
          syntax_error(key.line, key.col, "exactly one of 'free' or 'abelian' is allowed");
        seen_mod = true;
        d.free = key.s == "free";
        d.module = parse_int_list();
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_op) syntax_error(at.line, at.col, "nil2alg section needs an operad");
    if (!seen_mod) syntax_error(at.line, at.col, "nil2alg section needs 'free' or 'abelian'");
    return d;
  }

  ScDecl parse_sc(bool lie_form) {
    ScDecl d;
    d.antisymmetrise = lie_form;
    if (lie_form) d.variety = "lie";
    bool seen_dim = false, seen_field = false, seen_var = false;
    std::set<std::pair<int, int>> pairs;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      if (key.s == "bracket") {
        if (!seen_dim) syntax_error(key.line, key.col, "dim must be set before bracket lines");
        BracketLine b;
        b.i = parse_basis(d.dim);
        b.j = parse_basis(d.dim);
        if (lie_form && b.i == b.j)
          syntax_error(key.line, key.col, "lie bracket of a vector with itself is zero");
        if (!pairs.insert({b.i, b.j}).second)
          syntax_error(key.line, key.col, "duplicate bracket line");
        expect_punct("=");
        b.rhs = parse_lincomb(d.dim);
        d.brackets.push_back(std::move(b));
        continue;
      }
      expect_punct("=");
      if (key.s == "dim") {
        if (seen_dim) syntax_error(key.line, key.col, "duplicate key 'dim'");
        seen_dim = true;
        d.dim = parse_small_int("dim");
      } else if (key.s == "field") {
        if (seen_field) syntax_error(key.line, key.col, "duplicate key 'field'");
        seen_field = true;
        d.field = parse_ring(true);
      } else if (key.s == "variety" && !lie_form) {
        if (seen_var) syntax_error(key.line, key.col, "duplicate key 'variety'");
        seen_var = true;
        Token v = expect_ident("a variety");
        if (!kVarieties.count(v.s)) syntax_error(v.line, v.col, "unknown variety '" + v.s + "'");
        d.variety = v.s;
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_dim) syntax_error(at.line, at.col, "sc section needs a dim");
    return d;
  }

  LierepDecl parse_lierep() {
    LierepDecl d;
    bool seen_alg = false, seen_dim = false;
    std::map<int, std::vector<std::vector<Rat>>> rho;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      if (key.s == "rho") {
        if (!seen_dim) syntax_error(key.line, key.col, "dim must be set before rho lines");
        const int k = parse_basis(1000000);  // bound checked against the algebra later
        expect_punct("=");
        auto m = parse_matrix(&Parser::parse_rat_list);
        if (static_cast<int>(m.size()) != d.dim ||
            (d.dim > 0 && static_cast<int>(m.front().size()) != d.dim))
          syntax_error(key.line, key.col, "rho matrices must be dim x dim");
        if (!rho.emplace(k, std::move(m)).second)
          syntax_error(key.line, key.col, "duplicate rho line");
        continue;
      }
      expect_punct("=");
      if (key.s == "algebra") {
        if (seen_alg) syntax_error(key.line, key.col, "duplicate key 'algebra'");
        seen_alg = true;
        d.algebra = expect_ident("an algebra name").s;
      } else if (key.s == "dim") {
        if (seen_dim) syntax_error(key.line, key.col, "duplicate key 'dim'");
        seen_dim = true;
        d.dim = parse_small_int("dim");
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_alg) syntax_error(at.line, at.col, "lierep section needs an algebra");
    if (!seen_dim) syntax_error(at.line, at.col, "lierep section needs a dim");
    for (const auto& [k, m] : rho) {
      if (k != static_cast<int>(d.rho.size()))
        syntax_error(at.line, at.col, "rho lines must cover e1..e<dim of the algebra> without gaps");
      d.rho.push_back(m);
    }
    return d;
  }

  XmodDecl parse_xmod() {
    XmodDecl d;
    bool seen_base = false, seen_top = false, seen_bd = false;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      expect_punct("=");
      if (key.s == "base") {
        if (seen_base) syntax_error(key.line, key.col, "duplicate key 'base'");
        seen_base = true;
        d.base = expect_ident("a group name").s;
      } else if (key.s == "top") {
        if (seen_top) syntax_error(key.line, key.col, "duplicate key 'top'");
        seen_top = true;
        d.top = expect_ident("a group name").s;
      } else if (key.s == "boundary") {
        if (seen_bd) syntax_error(key.line, key.col, "duplicate key 'boundary'");
        seen_bd = true;
        d.boundary = parse_matrix(&Parser::parse_int_list_row);
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_base || !seen_top) syntax_error(at.line, at.col, "xmod needs 'base' and 'top'");
    return d;
  }

  std::vector<Int> parse_int_list_row() { return parse_int_list(); }

  CentralDecl parse_central() {
    CentralDecl d;
    bool seen_of = false;
    Token at = lx_.peek();
    while (!at_section_or_end()) {
      Token key = expect_ident("a key");
      expect_punct("=");
      if (key.s == "of") {
        if (seen_of) syntax_error(key.line, key.col, "duplicate key 'of'");
        seen_of = true;
        d.of = expect_ident("an algebra name").s;
      } else if (key.s == "vector") {
        d.vectors.push_back(parse_rat_list());
      } else {
        syntax_error(key.line, key.col, "unknown key '" + key.s + "'");
      }
    }
    if (!seen_of) syntax_error(at.line, at.col, "central section needs 'of'");
    return d;
  }

  CmdDecl parse_cmd() {
    CmdDecl d;
    Token key = expect_ident("'do'");
    if (key.s != "do") syntax_error(key.line, key.col, "cmd sections have a single 'do' line");
    expect_punct("=");
    do_line_.back() = key.line;
    std::istringstream words(lx_.rest_of_line());
    for (std::string w; words >> w;) d.words.push_back(w);
    if (d.words.empty()) syntax_error(key.line, key.col, "empty command");
    if (!at_section_or_end()) {
      const Token& t = lx_.peek();
      syntax_error(t.line, t.col, "cmd sections have a single 'do' line");
    }
    return d;
  }

  // ------------------------------------------------------------------
  // Name resolution and command signature checks

  void check_duplicates(const Manifest& m) {
    std::map<std::string, size_t> seen;
    for (size_t i = 0; i < m.decls.size(); ++i) {
      const auto [it, fresh] = seen.emplace(m.decls[i].name, i);
      if (!fresh)
        fail("DuplicateName", "line " + std::to_string(header_line_[i]) + ": '" +
                                  m.decls[i].name + "' already declared at line " +
                                  std::to_string(header_line_[it->second]));
    }
  }

  const Declaration& resolve_name(const Manifest& m, const std::string& name, int line) const {
    for (const Declaration& d : m.decls)
      if (d.name == name) return d;
    fail("UnresolvedReference", "line " + std::to_string(line) + ": '" + name +
                                    "' is not declared");
  }

  // lie sections are sc algebras for signature purposes
  static std::string norm_kind(const std::string& k) { return k == "lie" ? "sc" : k; }

  void require_kind(const Declaration& d, const std::set<std::string>& kinds, int line,
                    const std::string& role) const {
    if (!kinds.count(norm_kind(d.kind)))
      fail("KindMismatch", "line " + std::to_string(line) + ": '" + d.name + "' is a " + d.kind +
                               ", but " + role);
  }

  static const ScDecl& as_sc(const Declaration& d) { return std::get<ScDecl>(d.payload); }

  void resolve(const Manifest& m) {
    for (size_t i = 0; i < m.decls.size(); ++i) {
      const Declaration& d = m.decls[i];
      const int line = header_line_[i];
      if (d.kind == "nil2alg") {
        const auto& p = std::get<Nil2AlgDecl>(d.payload);
        require_kind(resolve_name(m, p.operad, line), {"operad"}, line,
                     "nil2alg needs an operad");
      } else if (d.kind == "lierep") {
        const auto& p = std::get<LierepDecl>(d.payload);
        const Declaration& g = resolve_name(m, p.algebra, line);
        require_kind(g, {"sc"}, line, "lierep needs a lie algebra");
        if (as_sc(g).variety != "lie")
          fail("KindMismatch", "line " + std::to_string(line) + ": '" + g.name +
                                   "' is not lie-tagged");
        if (static_cast<int>(p.rho.size()) != as_sc(g).dim)
          fail("KindMismatch", "line " + std::to_string(line) + ": expected " +
                                   std::to_string(as_sc(g).dim) + " rho lines, got " +
                                   std::to_string(p.rho.size()));
      } else if (d.kind == "xmod") {
        const auto& p = std::get<XmodDecl>(d.payload);
        require_kind(resolve_name(m, p.base, line), {"fgab", "gp"}, line,
                     "xmod bases are fgab or gp");
        require_kind(resolve_name(m, p.top, line), {"fgab", "gp"}, line,
                     "xmod tops are fgab or gp");
      } else if (d.kind == "central") {
        const auto& p = std::get<CentralDecl>(d.payload);
        const Declaration& g = resolve_name(m, p.of, line);
        require_kind(g, {"sc"}, line, "central sections extend an algebra");
        for (const auto& v : p.vectors)
          if (static_cast<int>(v.size()) != as_sc(g).dim)
            fail("KindMismatch", "line " + std::to_string(line) +
                                     ": vector length does not match the algebra dimension");
      } else if (d.kind == "cmd") {
        check_command(m, std::get<CmdDecl>(d.payload).words, do_line_[i]);
      }
    }
  }

  void check_args(const std::vector<std::string>& words, size_t lo, size_t hi, int line) const {
    if (words.size() - 1 < lo || words.size() - 1 > hi)
      syntax_error(line, 1, "wrong number of arguments for '" + words[0] + "'");
  }

  void check_command(const Manifest& m, const std::vector<std::string>& words, int line) const {
    const std::string& verb = words[0];
    if (verb == "tensor" || verb == "cosmash") {
      size_t k = 1;
      std::string asserted;
      if (words.size() > 1 && kKinds.count(words[k]) && words[k] != "cmd") asserted = words[k++];
      if (words.size() != k + 2) syntax_error(line, 1, "'" + verb + "' takes two names");
      const Declaration& x = resolve_name(m, words[k], line);
      const Declaration& y = resolve_name(m, words[k + 1], line);
      const std::set<std::string> ok = verb == "tensor"
                                           ? std::set<std::string>{"fgab", "gp", "sc", "nil2alg",
                                                                   "xmod"}
                                           : std::set<std::string>{"fgab", "nil2alg"};
      require_kind(x, ok, line, "'" + verb + "' cannot take it");
      require_kind(y, {norm_kind(x.kind)}, line, "both operands must have the same kind");
      if (!asserted.empty() && norm_kind(asserted) != norm_kind(x.kind))
        fail("KindMismatch", "line " + std::to_string(line) + ": command asserts " + asserted +
                                 ", but '" + x.name + "' is a " + x.kind);
      if (norm_kind(x.kind) == "sc") {
        if (as_sc(x).variety == "none" || as_sc(x).variety != as_sc(y).variety)
          fail("KindMismatch", "line " + std::to_string(line) +
                                   ": tensor of sc algebras needs matching variety tags");
      }
      if (x.kind == "nil2alg") {
        const auto op_of = [&](const Declaration& d) {
          const Declaration& o = resolve_name(m, std::get<Nil2AlgDecl>(d.payload).operad, line);
          return std::get<OperadDecl>(o.payload);
        };
        if (!(op_of(x) == op_of(y)))
          fail("KindMismatch", "line " + std::to_string(line) +
                                   ": operands live over different operads");
      }
    } else if (verb == "invariants") {
      check_args(words, 1, 1, line);
      require_kind(resolve_name(m, words[1], line), {"fgab", "gp"}, line,
                   "'invariants' takes a group");
    } else if (verb == "ganea") {
      check_args(words, 2, 2, line);
      const Declaration& b = resolve_name(m, words[1], line);
      require_kind(b, {"sc"}, line, "'ganea' takes an algebra");
      const Declaration& k = resolve_name(m, words[2], line);
      require_kind(k, {"central"}, line, "'ganea' takes a central section");
      if (std::get<CentralDecl>(k.payload).of != b.name)
        fail("KindMismatch", "line " + std::to_string(line) + ": '" + k.name + "' extends '" +
                                 std::get<CentralDecl>(k.payload).of + "', not '" + b.name + "'");
    } else if (verb == "homology") {
      check_args(words, 2, 2, line);
      require_kind(resolve_name(m, words[1], line), {"sc"}, line, "'homology' takes an algebra");
      if (words[2] != "1" && words[2] != "2") syntax_error(line, 1, "degree must be 1 or 2");
    } else if (verb == "lcs") {
      check_args(words, 1, 1, line);
      require_kind(resolve_name(m, words[1], line), {"sc", "nil2alg"}, line,
                   "'lcs' takes an algebra");
    } else if (verb == "birkhoff") {
      check_args(words, 2, 2, line);
      const Declaration& x = resolve_name(m, words[1], line);
      require_kind(x, {"sc"}, line, "'birkhoff' takes an algebra");
      if (words[2] != "lie" && words[2] != "commassoc")
        syntax_error(line, 1, "reflection target must be lie or commassoc");
      const std::string& v = as_sc(x).variety;
      const bool fits = words[2] == "lie" ? (v == "leibniz" || v == "lie")
                                          : (v == "assoc" || v == "commassoc");
      if (!fits)
        fail("KindMismatch", "line " + std::to_string(line) + ": cannot reflect a '" + v +
                                 "' algebra to " + words[2]);
    } else if (verb == "kronecker") {
      check_args(words, 2, 2, line);
      const Declaration& r = resolve_name(m, words[1], line);
      const Declaration& s = resolve_name(m, words[2], line);
      require_kind(r, {"lierep"}, line, "'kronecker' takes representations");
      require_kind(s, {"lierep"}, line, "'kronecker' takes representations");
      if (std::get<LierepDecl>(r.payload).algebra != std::get<LierepDecl>(s.payload).algebra)
        fail("KindMismatch",
             "line " + std::to_string(line) + ": representations of different algebras");
    } else if (verb == "satisfies") {
      check_args(words, 2, 2, line);
      require_kind(resolve_name(m, words[1], line), {"sc"}, line, "'satisfies' takes an algebra");
      if (!kVarieties.count(words[2]) || words[2] == "none")
        syntax_error(line, 1, "unknown variety '" + words[2] + "'");
    } else if (verb == "nilpotent") {
      check_args(words, 1, 2, line);
      require_kind(resolve_name(m, words[1], line), {"sc"}, line, "'nilpotent' takes an algebra");
      if (words.size() == 3 && !is_number(words[2])) syntax_error(line, 1, "class bound must be a number");
    } else if (verb == "check") {
      check_args(words, 1, 2, line);
      if (std::find(kSuiteNames.begin(), kSuiteNames.end(), words[1]) == kSuiteNames.end())
        syntax_error(line, 1, "unknown suite '" + words[1] + "'");
      if (words.size() == 3 && !is_number(words[2])) syntax_error(line, 1, "cases must be a number");
    } else if (verb == "table1") {
      if (words.size() != 6 || words[1] != "--ring" || words[3] != "--dims" ||
          !is_number(words[4]) || !is_number(words[5]))
        syntax_error(line, 1, "usage: table1 --ring <Z|Q|F<p>> --dims <a> <b>");
      parse_ring_word(words[2], line);
    } else {
      syntax_error(line, 1, "unknown command '" + verb + "'");
    }
  }

  static bool is_number(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c));
    });
  }

  std::vector<int> header_line_;
  std::vector<int> do_line_;
  Lexer lx_;
};

std::string rat_word(const Rat& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

template <typename T>
std::string list_word(const std::vector<T>& v) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i];
  }
  os << "]";
  return os.str();
}

std::string lincomb_word(const std::vector<std::pair<int, Rat>>& rhs) {
  if (rhs.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : rhs) {
    const Rat a = c < 0 ? Rat(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (a != 1) os << rat_word(a) << " ";
    os << "e" << (k + 1);
    first = false;
  }
  return os.str();
}

}  // namespace

std::string ring_word(const RingSpec& r) {
  if (r.kind == 'Z') return "Z";
  if (r.kind == 'Q') return "Q";
  return "F" + std::to_string(r.p);
}

RingSpec parse_ring_word(const std::string& s, int line) {
  if (s == "Z") return {'Z', 0};
  if (s == "Q") return {'Q', 0};
  if (s.size() > 1 && s[0] == 'F' &&
      std::all_of(s.begin() + 1, s.end(),
                  [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    const long p = std::stol(s.substr(1));
    if (!exactlin::is_prime(p))
      syntax_error(line, 1, "'" + s + "' is not a prime field: " + s.substr(1) +
                                " is not prime");
    return {'F', p};
  }
  syntax_error(line, 1, "expected a ring (Z, Q or F<p>), got '" + s + "'");
}

Manifest parse_manifest(const std::string& text) { return Parser(text).parse(); }

std::string serialize_manifest(const Manifest& m) {
  std::ostringstream os;
  bool first = true;
  for (const Declaration& d : m.decls) {
    if (!first) os << "\n";
    first = false;
    os << "[" << d.kind << " " << d.name << "]\n";
    if (const auto* f = std::get_if<FgabDecl>(&d.payload)) {
      os << "factors = " << list_word(f->factors) << "\n";
    } else if (const auto* g = std::get_if<GpDecl>(&d.payload)) {
      os << "generators = " << list_word(g->generators) << "\n";
      for (const auto& rel : g->relators) {
        os << "relator =";
        for (const auto& [idx, e] : rel) {
          os << " " << g->generators[static_cast<size_t>(idx)];
          if (e != 1) os << "^" << e;
        }
        os << "\n";
      }
    } else if (const auto* o = std::get_if<OperadDecl>(&d.payload)) {
      os << "preset = " << o->preset << "\n";
      os << "ring = " << ring_word(o->ring) << "\n";
    } else if (const auto* n = std::get_if<Nil2AlgDecl>(&d.payload)) {
      os << "operad = " << n->operad << "\n";
      os << (n->free ? "free = " : "abelian = ") << list_word(n->module) << "\n";
    } else if (const auto* s = std::get_if<ScDecl>(&d.payload)) {
      os << "dim = " << s->dim << "\n";
      os << "field = " << ring_word(s->field) << "\n";
      if (!s->antisymmetrise && s->variety != "none") os << "variety = " << s->variety << "\n";
      for (const BracketLine& b : s->brackets)
        os << "bracket e" << (b.i + 1) << " e" << (b.j + 1) << " = " << lincomb_word(b.rhs)
           << "\n";
    } else if (const auto* r = std::get_if<LierepDecl>(&d.payload)) {
      os << "algebra = " << r->algebra << "\n";
      os << "dim = " << r->dim << "\n";
      for (size_t k = 0; k < r->rho.size(); ++k) {
        os << "rho e" << (k + 1) << " = [";
        for (size_t i = 0; i < r->rho[k].size(); ++i) {
          if (i) os << ", ";
          os << "[";
          for (size_t j = 0; j < r->rho[k][i].size(); ++j) {
            if (j) os << ", ";
            os << rat_word(r->rho[k][i][j]);
          }
          os << "]";
        }
        os << "]\n";
      }
    } else if (const auto* x = std::get_if<XmodDecl>(&d.payload)) {
      os << "base = " << x->base << "\n";
      os << "top = " << x->top << "\n";
      if (!x->boundary.empty()) {
        os << "boundary = [";
        for (size_t i = 0; i < x->boundary.size(); ++i) {
          if (i) os << ", ";
          os << list_word(x->boundary[i]);
        }
        os << "]\n";
      }
    } else if (const auto* c = std::get_if<CentralDecl>(&d.payload)) {
      os << "of = " << c->of << "\n";
      for (const auto& v : c->vectors) {
        os << "vector = [";
        for (size_t j = 0; j < v.size(); ++j) {
          if (j) os << ", ";
          os << rat_word(v[j]);
        }
        os << "]\n";
      }
    } else if (const auto* k = std::get_if<CmdDecl>(&d.payload)) {
      os << "do =";
      for (const std::string& w : k->words) os << " " << w;
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace nilprod::cli
