#include "rana/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "detail.hpp"
#include "rana/error.hpp"

namespace rana {

namespace {

enum class Tok : std::uint8_t { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
  std::string comment;  // a comment on the line just above, if any
};

// Punctuation recognised by both formats; two-character operators first.
std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  std::string comment;
  std::size_t comment_line = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t j = 0; j < n; ++j, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      const std::size_t from = i + 1;
      comment_line = line;
      while (i < src.size() && src[i] != '\n') advance(1);
      comment = std::string(src.substr(from, i - from));
      const auto first = comment.find_first_not_of(' ');
      comment.erase(0, first == std::string::npos ? comment.size() : first);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (comment_line + 1 == line) t.comment = std::move(comment);
    comment.clear();
    comment_line = 0;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      // Hyphens only matter for flavor names; validation rejects them elsewhere.
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '-'))
        ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Tok::Int;
      t.text = std::string(src.substr(i, j - i));
    } else if (src.substr(i, 2) == "\\/" || src.substr(i, 2) == "/\\") {
      t.kind = Tok::Punct;
      t.text = std::string(src.substr(i, 2));
    } else if (std::string_view("{}()[]<>,|~:*").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
    } else {
      throw ParseError(line, col, std::string("unexpected character '") + c + "'");
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : "'" + t.text + "'"; }

bool is_register(std::string_view s) {
  return s.size() >= 2 && s[0] == 'r' &&
         std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

const std::set<std::string, std::less<>> kKeywords{"true", "false", "eps", "orbit", "init", "formula",
                                                   "arity", "domain", "family", "rana", "afa"};

class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(std::string_view text) const { return peek().kind != Tok::End && peek().text == text; }
  bool at_end() const { return peek().kind == Tok::End; }
  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  bool accept(std::string_view text) {
    if (!at(text)) return false;
    next();
    return true;
  }
  Token expect(std::string_view text) {
    if (!at(text)) fail("expected '" + std::string(text) + "', got " + describe(peek()));
    return next();
  }
  Token expect_ident(std::string_view what) {
    if (peek().kind != Tok::Ident) fail("expected " + std::string(what) + ", got " + describe(peek()));
    return next();
  }
  std::uint32_t expect_int(std::string_view what) {
    if (peek().kind != Tok::Int) fail("expected " + std::string(what) + ", got " + describe(peek()));
    const Token t = next();
    try {
      return static_cast<std::uint32_t>(std::stoul(t.text));
    } catch (const std::exception&) {
      throw ParseError(t.line, t.column, "integer out of range");
    }
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().line, peek().column, what); }
  [[noreturn]] static void fail_at(const Token& t, const std::string& what) {
    throw ParseError(t.line, t.column, what);
  }

  std::size_t position() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

struct OrbitDecl {
  std::uint32_t arity = 0;
};

class RanaParser {
 public:
  explicit RanaParser(std::string_view text) : cur_(lex(text)) {}

  Rana parse() {
    cur_.expect("rana");
    const Token ft = cur_.expect_ident("flavor");
    auto flavor = parse_flavor(ft.text);
    if (!flavor) Cursor::fail_at(ft, "unknown flavor '" + ft.text + "'");
    flavor_ = *flavor;
    const Token tt = cur_.expect_ident("totality");
    auto tot = parse_totality(tt.text);
    if (!tot) Cursor::fail_at(tt, "unknown totality '" + tt.text + "'");

    prescan();
    std::optional<std::uint32_t> init;
    std::optional<std::size_t> init_formula_at;
    Token init_tok;
    while (!cur_.at_end()) {
      if (cur_.at("orbit")) {
        parse_orbit();
      } else if (cur_.at("init")) {
        init_tok = cur_.next();
        if (init || init_formula_at) Cursor::fail_at(init_tok, "duplicate init declaration");
        if (cur_.accept("formula")) {
          cur_.expect("{");
          init_formula_at = cur_.position();
          skip_block();
        } else {
          const Token n = cur_.expect_ident("orbit name");
          init = lookup(n);
        }
      } else {
        cur_.fail("expected 'orbit' or 'init', got " + describe(cur_.peek()));
      }
    }
    if (init_formula_at) {
      cur_.seek(*init_formula_at);
      in_init_ = true;
      Formula f = parse_formula();
      cur_.expect("}");
      Orbit o;
      std::set<std::string> taken;
      for (const auto& x : orbits_) taken.insert(x.name);
      o.name = "init";
      for (int i = 2; taken.count(o.name); ++i) o.name = "init_" + std::to_string(i);
      o.family = next_family();
      o.formula = std::move(f);
      init = static_cast<std::uint32_t>(orbits_.size());
      orbits_.push_back(std::move(o));
    }
    if (orbits_.empty()) throw ValidationError("no orbits declared, so there is no initial state");
    if (!init) throw ValidationError("missing init declaration");
    Rana a(std::move(orbits_), *init, flavor_, *tot);
    require_valid(a);
    return a;
  }

 private:
  std::uint32_t next_family() const {
    std::uint32_t f = 0;
    for (const auto& o : orbits_) f = std::max(f, o.family + 1);
    return std::max<std::uint32_t>(f, static_cast<std::uint32_t>(orbits_.size()));
  }

  void prescan() {
    const std::size_t start = cur_.position();
    while (!cur_.at_end()) {
      if (cur_.at("orbit") && cur_.peek(1).kind == Tok::Ident && cur_.peek(2).text == "arity" &&
          cur_.peek(3).kind == Tok::Int) {
        cur_.next();
        const Token n = cur_.next();
        if (index_.count(n.text)) Cursor::fail_at(n, "duplicate orbit '" + n.text + "'");
        if (kKeywords.count(n.text) || is_register(n.text) || n.text == "_")
          Cursor::fail_at(n, "reserved orbit name '" + n.text + "'");
        cur_.next();
        const Token k = cur_.next();
        index_.emplace(n.text, static_cast<std::uint32_t>(decls_.size()));
        decls_.push_back({static_cast<std::uint32_t>(std::stoul(k.text))});
      } else {
        cur_.next();
      }
    }
    cur_.seek(start);
  }

  std::uint32_t lookup(const Token& t) const {
    auto it = index_.find(t.text);
    if (it == index_.end()) Cursor::fail_at(t, "unknown orbit '" + t.text + "'");
    return it->second;
  }

  void skip_block() {
    int depth = 1;
    while (depth > 0) {
      if (cur_.at_end()) cur_.fail("unterminated '{'");
      const Token t = cur_.next();
      if (t.text == "{") ++depth;
      if (t.text == "}") --depth;
    }
  }

  void parse_orbit() {
    Orbit o;
    o.note = cur_.peek().comment;
    cur_.expect("orbit");
    const Token name = cur_.expect_ident("orbit name");
    cur_.expect("arity");
    o.name = name.text;
    o.arity = cur_.expect_int("arity");
    if (o.arity > 31) Cursor::fail_at(name, "arity above 31");
    o.domain = full_mask(o.arity);
    o.family = static_cast<std::uint32_t>(orbits_.size());
    if (cur_.accept("domain")) {
      cur_.expect("{");
      o.domain = 0;
      if (!cur_.at("}")) {
        do {
          const Token t = cur_.peek();
          const std::uint32_t i = cur_.expect_int("slot index");
          if (i >= o.arity) Cursor::fail_at(t, "slot index outside the arity");
          o.domain |= 1u << i;
        } while (cur_.accept(","));
      }
      cur_.expect("}");
    }
    if (cur_.accept("family")) o.family = cur_.expect_int("family number");
    cur_.expect("{");
    arity_ = o.arity;
    o.formula = parse_formula();
    cur_.expect("}");
    orbits_.push_back(std::move(o));
  }

  Formula parse_formula() {
    std::vector<Formula> kids{parse_conj()};
    while (cur_.accept("\\/")) kids.push_back(parse_conj());
    return kids.size() == 1 ? kids[0] : Formula::disj(std::move(kids));
  }

  Formula parse_conj() {
    std::vector<Formula> kids{parse_unary()};
    while (cur_.accept("/\\")) kids.push_back(parse_unary());
    return kids.size() == 1 ? kids[0] : Formula::conj(std::move(kids));
  }

  Formula parse_unary() {
    if (cur_.accept("~")) {
      if (cur_.at("eps") && flavor_ != Flavor::Ordinary) {
        cur_.next();
        return Formula::neg_eps();
      }
      return Formula::negate(parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    if (cur_.accept("true")) return Formula::top();
    if (cur_.accept("false")) return Formula::bottom();
    if (cur_.accept("eps")) return Formula::eps();
    if (cur_.accept("(")) {
      Formula f = parse_formula();
      cur_.expect(")");
      return f;
    }
    if (cur_.at("<") || cur_.at("[")) {
      const bool box = cur_.next().text == "[";
      const char* close = box ? "]" : ">";
      LetterRef letter;
      std::optional<std::string> binder;
      if (cur_.accept("|")) {
        const Token b = cur_.expect_ident("bound identifier");
        if (is_register(b.text) || b.text == "_" || kKeywords.count(b.text))
          Cursor::fail_at(b, "'" + b.text + "' cannot name a bound identifier");
        binder = b.text;
        letter = LetterRef::bound();
      } else {
        letter = LetterRef::reg(parse_register(arity_));
      }
      cur_.expect(close);
      Successor succ = parse_successor(binder);
      SymAtom at{letter, std::move(succ)};
      return box ? Formula::box(std::move(at)) : Formula::diamond(std::move(at));
    }
    if (in_init_ && cur_.peek().kind == Tok::Ident && index_.count(cur_.peek().text)) {
      const Token t = cur_.next();
      const std::uint32_t i = lookup(t);
      if (decls_[i].arity != 0) Cursor::fail_at(t, "only arity-0 orbits may appear bare in an init formula");
      return orbits_[i].formula;
    }
    cur_.fail("expected a formula, got " + describe(cur_.peek()));
  }

  std::uint32_t parse_register(std::uint32_t arity) {
    const Token t = cur_.expect_ident("register");
    if (!is_register(t.text)) Cursor::fail_at(t, "expected a register rK, got '" + t.text + "'");
    const auto j = static_cast<std::uint32_t>(std::stoul(t.text.substr(1)));
    if (j >= arity) Cursor::fail_at(t, "register " + t.text + " outside the arity");
    return j;
  }

  Successor parse_successor(const std::optional<std::string>& binder) {
    const Token name = cur_.expect_ident("successor orbit");
    Successor s;
    s.orbit = lookup(name);
    if (cur_.accept("(")) {
      do {
        const Token t = cur_.expect_ident("argument");
        if (t.text == "_")
          s.slots.push_back(SlotSource::undefined());
        else if (binder && t.text == *binder)
          s.slots.push_back(SlotSource::bound());
        else if (is_register(t.text))
          s.slots.push_back(SlotSource::reg(static_cast<std::uint32_t>(std::stoul(t.text.substr(1)))));
        else
          Cursor::fail_at(t, "unknown argument '" + t.text + "'");
      } while (cur_.accept(","));
      cur_.expect(")");
    }
    if (s.slots.size() != decls_[s.orbit].arity)
      Cursor::fail_at(name, "orbit '" + name.text + "' takes " + std::to_string(decls_[s.orbit].arity) +
                                " arguments, got " + std::to_string(s.slots.size()));
    return s;
  }

  Cursor cur_;
  Flavor flavor_ = Flavor::Ordinary;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<OrbitDecl> decls_;
  std::vector<Orbit> orbits_;
  std::uint32_t arity_ = 0;
  bool in_init_ = false;
};

// Printing. Precedence: Or < And < Not/atoms.
int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Or: return 0;
    case NodeKind::And: return 1;
    default: return 2;
  }
}

void print_successor(std::ostream& os, const Rana& a, const Successor& s, std::string_view binder) {
  os << a.orbit(s.orbit).name;
  if (s.slots.empty()) return;
  os << '(';
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    if (i) os << ',';
    switch (s.slots[i].kind) {
      case SlotSource::Kind::Undefined: os << '_'; break;
      case SlotSource::Kind::Reg: os << 'r' << s.slots[i].slot; break;
      case SlotSource::Kind::Bound: os << binder; break;
    }
  }
  os << ')';
}

void print_formula(std::ostream& os, const Rana& a, const Formula& f, int outer) {
  const bool paren = precedence(f.kind()) < outer;
  if (paren) os << '(';
  switch (f.kind()) {
    case NodeKind::True: os << "true"; break;
    case NodeKind::False: os << "false"; break;
    case NodeKind::Eps: os << "eps"; break;
    case NodeKind::NegEps: os << "~eps"; break;
    case NodeKind::Not: {
      const Formula& c = f.children()[0];
      os << '~';
      // ~eps would read back as the dual atom outside ordinary automata.
      if (c.is(NodeKind::Eps) && a.flavor() != Flavor::Ordinary)
        os << "(eps)";
      else
        print_formula(os, a, c, 2);
      break;
    }
    case NodeKind::And:
    case NodeKind::Or: {
      const char* op = f.is(NodeKind::And) ? " /\\ " : " \\/ ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) os << op;
        print_formula(os, a, f.children()[i], precedence(f.kind()) + 1);
      }
      break;
    }
    case NodeKind::Diamond:
    case NodeKind::Box: {
      const SymAtom& at = f.atom();
      const bool box = f.is(NodeKind::Box);
      os << (box ? '[' : '<');
      if (at.letter.is_bound())
        os << "|x";
      else
        os << 'r' << at.letter.slot;
      os << (box ? "] " : "> ");
      print_successor(os, a, at.succ, "x");
      break;
    }
  }
  if (paren) os << ')';
}

std::string afa_letter(const BarAfa& a, BarLetter l) {
  std::string name = a.star && l.name == *a.star ? "*" : "n" + std::to_string(l.name.id);
  return l.bar ? "|" + name : name;
}

void print_pos(std::ostream& os, const BarAfa& a, const PosFormula& f, int outer) {
  const bool paren = precedence(f.kind()) < outer;
  if (paren) os << '(';
  switch (f.kind()) {
    case NodeKind::True: os << "true"; break;
    case NodeKind::False: os << "false"; break;
    case NodeKind::Diamond: os << a.states[f.atom().state]; break;
    case NodeKind::And:
    case NodeKind::Or: {
      const char* op = f.is(NodeKind::And) ? " /\\ " : " \\/ ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) os << op;
        print_pos(os, a, f.children()[i], precedence(f.kind()) + 1);
      }
      break;
    }
    default: throw Error("print_afa: formula is not positive");
  }
  if (paren) os << ')';
}

class AfaParser {
 public:
  explicit AfaParser(std::string_view text) : cur_(lex(text)) {}

  BarAfa parse() {
    BarAfa a;
    cur_.expect("afa");
    cur_.expect("states");
    cur_.expect(":");
    while (cur_.peek().kind == Tok::Ident && cur_.peek(1).text != ":") {
      const Token t = cur_.next();
      if (kKeywords.count(t.text)) Cursor::fail_at(t, "reserved state name '" + t.text + "'");
      if (states_.count(t.text)) Cursor::fail_at(t, "duplicate state '" + t.text + "'");
      states_.emplace(t.text, static_cast<std::uint32_t>(a.states.size()));
      a.states.push_back(t.text);
    }
    if (a.states.empty()) cur_.fail("an AFA needs at least one state");
    cur_.expect("alphabet");
    cur_.expect(":");
    struct Raw {
      bool bar;
      std::string name;
    };
    std::vector<Raw> raw;
    while (!cur_.at("initial")) {
      const bool bar = cur_.accept("|");
      if (bar && cur_.accept("*")) {
        raw.push_back({true, "*"});
        continue;
      }
      const Token t = cur_.expect_ident("letter");
      raw.push_back({bar, t.text});
    }
    for (const auto& r : raw)
      if (r.name != "*") names_.intern(r.name);
    for (const auto& r : raw) {
      if (r.name == "*") {
        if (!a.star) a.star = Name{static_cast<std::uint32_t>(names_.size())};
        a.alphabet.push_back(BarLetter::bound(*a.star));
      } else {
        const Name n = names_.intern(r.name);
        a.alphabet.push_back(r.bar ? BarLetter::bound(n) : BarLetter::plain(n));
      }
    }
    star_ = a.star;
    cur_.expect("initial");
    cur_.expect(":");
    a.initial = state(cur_.expect_ident("state"));
    cur_.expect("finals");
    cur_.expect(":");
    a.finals.assign(a.states.size(), false);
    // Transition lines start with STATE LETTER ':', where LETTER may be |x.
    auto line_start = [&] {
      return (cur_.peek(1).kind == Tok::Ident && cur_.peek(2).text == ":") ||
             (cur_.peek(1).text == "|" && cur_.peek(3).text == ":");
    };
    while (cur_.peek().kind == Tok::Ident && !line_start()) a.finals[state(cur_.next())] = true;
    a.delta.assign(a.states.size(), std::vector<PosFormula>(a.alphabet.size(), PosFormula::bottom()));
    while (!cur_.at_end()) {
      const std::uint32_t q = state(cur_.expect_ident("state"));
      const Token lt = cur_.peek();
      BarLetter l = parse_letter();
      auto li = a.letter_index(l);
      if (!li) Cursor::fail_at(lt, "letter outside the alphabet");
      cur_.expect(":");
      a.delta[q][*li] = parse_or();
    }
    return a;
  }

 private:
  std::uint32_t state(const Token& t) const {
    auto it = states_.find(t.text);
    if (it == states_.end()) Cursor::fail_at(t, "unknown state '" + t.text + "'");
    return it->second;
  }

  BarLetter parse_letter() {
    const bool bar = cur_.accept("|");
    if (bar && cur_.at("*")) {
      const Token t = cur_.next();
      if (!star_) Cursor::fail_at(t, "|* is not in the alphabet");
      return BarLetter::bound(*star_);
    }
    const Token t = cur_.expect_ident("letter");
    if (!names_.contains(t.text)) Cursor::fail_at(t, "letter outside the alphabet");
    const Name n = names_.intern(t.text);
    return bar ? BarLetter::bound(n) : BarLetter::plain(n);
  }

  PosFormula parse_or() {
    std::vector<PosFormula> kids{parse_and()};
    while (cur_.accept("\\/")) kids.push_back(parse_and());
    return kids.size() == 1 ? kids[0] : PosFormula::disj(std::move(kids));
  }

  PosFormula parse_and() {
    std::vector<PosFormula> kids{parse_atom()};
    while (cur_.accept("/\\")) kids.push_back(parse_atom());
    return kids.size() == 1 ? kids[0] : PosFormula::conj(std::move(kids));
  }

  PosFormula parse_atom() {
    if (cur_.accept("true")) return PosFormula::top();
    if (cur_.accept("false")) return PosFormula::bottom();
    if (cur_.accept("(")) {
      PosFormula f = parse_or();
      cur_.expect(")");
      return f;
    }
    return afa_var(state(cur_.expect_ident("state")));
  }

  Cursor cur_;
  std::map<std::string, std::uint32_t, std::less<>> states_;
  NameTable names_;
  std::optional<Name> star_;
};

}  // namespace

Rana parse_rana(std::string_view text) { return RanaParser(text).parse(); }

Rana load_rana(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rana(ss.str());
}

std::string print_rana(const Rana& a) {
  std::ostringstream os;
  os << "rana " << to_string(a.flavor()) << ' ' << to_string(a.totality()) << '\n';
  for (std::uint32_t i = 0; i < a.orbit_count(); ++i) {
    const Orbit& o = a.orbit(i);
    if (!o.note.empty()) os << "# " << o.note << '\n';
    os << "orbit " << o.name << " arity " << o.arity;
    if (o.domain != full_mask(o.arity)) {
      os << " domain {";
      bool first = true;
      for (std::uint32_t t = 0; t < o.arity; ++t)
        if ((o.domain >> t) & 1u) {
          os << (first ? "" : ",") << t;
          first = false;
        }
      os << '}';
    }
    if (o.family != i) os << " family " << o.family;
    os << " { ";
    print_formula(os, a, o.formula, 0);
    os << " }\n";
  }
  os << "init " << a.orbit(a.initial_orbit()).name << '\n';
  return os.str();
}

std::string print_afa(const BarAfa& a) {
  std::ostringstream os;
  os << "afa\nstates:";
  for (const auto& s : a.states) os << ' ' << s;
  os << "\nalphabet:";
  for (auto l : a.alphabet) os << ' ' << afa_letter(a, l);
  os << "\ninitial: " << a.states[a.initial] << "\nfinals:";
  for (std::size_t q = 0; q < a.states.size(); ++q)
    if (a.finals[q]) os << ' ' << a.states[q];
  os << '\n';
  for (std::size_t q = 0; q < a.states.size(); ++q)
    for (std::size_t l = 0; l < a.alphabet.size(); ++l) {
      if (a.delta[q][l].is(NodeKind::False)) continue;
      os << a.states[q] << ' ' << afa_letter(a, a.alphabet[l]) << " : ";
      print_pos(os, a, a.delta[q][l], 0);
      os << '\n';
    }
  return os.str();
}

BarAfa parse_afa(std::string_view text) { return AfaParser(text).parse(); }

}  // namespace rana
