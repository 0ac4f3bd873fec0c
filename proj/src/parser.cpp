#include "expgame/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace expgame {

namespace {

enum class Tok : std::uint8_t {
  End, Ident, Zero, Constant, DistanceOpen, DeltaOpen, AtomOpen,
  LParen, RParen, Comma, RBracket,
  Implies, TruncDiv, Iff, MaxOr, MinAnd, StrongOr, Ominus, StrongAnd, Product, Neg,
};

struct Token {
  Tok kind = Tok::End;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string text;  // identifier name or constant body
};

struct ParseError {
  std::size_t begin;
  std::size_t end;
  std::string message;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, pos_, pos_, {}});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool starts(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }
  char peek_after_space(std::size_t from) const {
    while (from < text_.size() && std::isspace(static_cast<unsigned char>(text_[from]))) ++from;
    return from < text_.size() ? text_[from] : '\0';
  }
  std::size_t skip_to(std::size_t from, char c) const {
    while (from < text_.size() && text_[from] != c) ++from;
    return from + 1;
  }

  Token symbol(Tok kind, std::size_t len) {
    Token t{kind, pos_, pos_ + len, {}};
    pos_ += len;
    return t;
  }

  Token next() {
    const std::size_t start = pos_;
    // longest operators first
    if (starts("<->")) return symbol(Tok::Iff, 3);
    if (starts("->.")) return symbol(Tok::TruncDiv, 3);
    if (starts("->")) return symbol(Tok::Implies, 2);
    if (starts("(+)")) return symbol(Tok::StrongOr, 3);
    if (starts("(-)")) return symbol(Tok::Ominus, 3);
    if (starts("\\/")) return symbol(Tok::MaxOr, 2);
    if (starts("/\\")) return symbol(Tok::MinAnd, 2);
    switch (text_[pos_]) {
      case '&': return symbol(Tok::StrongAnd, 1);
      case '*': return symbol(Tok::Product, 1);
      case '~': return symbol(Tok::Neg, 1);
      case '(': return symbol(Tok::LParen, 1);
      case ')': return symbol(Tok::RParen, 1);
      case ',': return symbol(Tok::Comma, 1);
      case ']': return symbol(Tok::RBracket, 1);
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit_at = [&](std::size_t i) {
        return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
      };
      // Swallow "0.5" and "1/2" whole so the diagnostic covers the literal.
      while (digit_at(pos_) || (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == '/') && digit_at(pos_ + 1))) {
        ++pos_;
      }
      if (text_.substr(start, pos_ - start) == "0") return {Tok::Zero, start, pos_, {}};
      throw ParseError{start, pos_, "numeric literal; write constants as c{r}"};
    }
    if (ident_start(text_[pos_])) {
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string word(text_.substr(start, pos_ - start));
      const char follow = peek_after_space(pos_);
      if (word == "c" && follow == '{') {
        const std::size_t open = text_.find('{', pos_);
        const std::size_t close = text_.find('}', open);
        if (close == std::string_view::npos) throw ParseError{start, text_.size(), "unterminated constant"};
        std::string body(text_.substr(open + 1, close - open - 1));
        body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }),
                   body.end());
        pos_ = close + 1;
        return {Tok::Constant, start, pos_, body};
      }
      if (word == "d" && follow == '(') {
        pos_ = skip_to(pos_, '(');
        return {Tok::DistanceOpen, start, pos_, {}};
      }
      if (word == "D" && follow == '(') {
        pos_ = skip_to(pos_, '(');
        return {Tok::DeltaOpen, start, pos_, {}};
      }
      if (word == "E" && follow == '[') {
        pos_ = skip_to(pos_, '[');
        return {Tok::AtomOpen, start, pos_, {}};
      }
      return {Tok::Ident, start, pos_, std::move(word)};
    }
    throw ParseError{start, start + 1, std::string("unexpected character '") + text_[pos_] + "'"};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kMaxNesting = 1000;

template <Level L>
class Parser {
 public:
  using E = Expr<L>;

  Parser(std::vector<Token> tokens, const std::vector<std::string>* players)
      : toks_(std::move(tokens)), players_(players) {}

  E parse() {
    E e = binary(0);
    if (cur().kind != Tok::End) fail(cur(), "unexpected input after formula");
    return e;
  }

 private:
  struct OpInfo {
    int level;
    Connective op;
  };

  static std::optional<OpInfo> binary_op(Tok t) {
    switch (t) {
      case Tok::Implies: return OpInfo{0, Connective::Implies};
      case Tok::TruncDiv: return OpInfo{1, Connective::TruncDiv};
      case Tok::Iff: return OpInfo{2, Connective::Iff};
      case Tok::MaxOr: return OpInfo{3, Connective::MaxOr};
      case Tok::MinAnd: return OpInfo{4, Connective::MinAnd};
      case Tok::StrongOr: return OpInfo{5, Connective::StrongOr};
      case Tok::Ominus: return OpInfo{5, Connective::Ominus};
      case Tok::StrongAnd: return OpInfo{6, Connective::StrongAnd};
      case Tok::Product: return OpInfo{7, Connective::Product};
      default: return std::nullopt;
    }
  }
  static constexpr int kUnaryLevel = 8;

  const Token& cur() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  [[noreturn]] static void fail(const Token& t, std::string msg) {
    throw ParseError{t.begin, std::max(t.end, t.begin + 1), std::move(msg)};
  }
  void expect(Tok kind, const char* what) {
    if (cur().kind != kind) fail(cur(), std::string("expected ") + what);
    take();
  }

  void goal_only(const Token& t, const char* what) {
    if constexpr (L == Level::Payoff) fail(t, std::string(what) + " is only allowed in goal formulas");
  }

  E binary(int level) {
    if (level >= kUnaryLevel) return unary();
    struct Guard {
      std::size_t& d;
      explicit Guard(std::size_t& depth) : d(++depth) {}
      ~Guard() { --d; }
    } guard(depth_);
    if (depth_ > kMaxNesting * kUnaryLevel) fail(cur(), "formula nested too deeply");

    E lhs = binary(level + 1);
    const auto info = binary_op(cur().kind);
    if (!info || info->level != level) return lhs;
    const Token& op = take();
    if (is_product_connective(info->op)) goal_only(op, connective_name(info->op));
    E rhs = binary(level);  // right associative
    return E::node(info->op, {lhs, rhs});
  }

  E unary() {
    if (++nesting_ > kMaxNesting) fail(cur(), "formula nested too deeply");
    E e = unary_inner();
    --nesting_;
    return e;
  }

  E unary_inner() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Neg: return E::neg(unary());
      case Tok::Zero: return E::falsity();
      case Tok::Constant: {
        const auto r = Rational::parse(t.text);
        if (!r) fail(t, "malformed constant '" + t.text + "'");
        if (!in_unit_interval(*r)) fail(t, "constant " + r->str() + " outside [0,1]");
        return E::constant(*r);
      }
      case Tok::Ident:
        if constexpr (L == Level::Payoff) {
          return E::var(t.text);
        } else {
          fail(t, "propositional variable '" + t.text + "' in goal formula; use E[player]");
        }
      case Tok::LParen: {
        E e = binary(0);
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::DistanceOpen: {
        E a = binary(0);
        expect(Tok::Comma, "',' in d(a, b)");
        E b = binary(0);
        expect(Tok::RParen, "')'");
        return E::distance(a, b);
      }
      case Tok::DeltaOpen: {
        goal_only(t, "delta");
        E a = binary(0);
        expect(Tok::RParen, "')'");
        return E::node(Connective::Delta, {a});
      }
      case Tok::AtomOpen: {
        goal_only(t, "expectation atom");
        if (cur().kind == Tok::AtomOpen) fail(cur(), "nested modality");
        if (cur().kind != Tok::Ident) fail(cur(), "expected player name in E[...]");
        const Token& name = take();
        if (cur().kind != Tok::RBracket) {
          // A payoff formula inside E[..] must be named through its player.
          for (std::size_t i = pos_; toks_[i].kind != Tok::End; ++i) {
            if (toks_[i].kind == Tok::AtomOpen) fail(toks_[i], "nested modality");
          }
          fail(cur(), "expected ']' after player name");
        }
        take();
        if constexpr (L == Level::Goal) {
          const auto it = std::find(players_->begin(), players_->end(), name.text);
          if (it == players_->end()) fail(name, "unknown player " + name.text);
          return E::atom(static_cast<std::size_t>(it - players_->begin()));
        }
        fail(t, "unreachable");
      }
      case Tok::End: fail(t, "unexpected end of formula");
      default: fail(t, "expected a formula");
    }
  }

  std::vector<Token> toks_;
  const std::vector<std::string>* players_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
  std::size_t nesting_ = 0;
};

template <Level L>
ParseResult<Expr<L>> run_parser(std::string_view text, const std::vector<std::string>* players) {
  ParseResult<Expr<L>> result;
  try {
    Parser<L> p(Lexer(text).run(), players);
    result.value = p.parse();
  } catch (const ParseError& e) {
    const std::size_t end = std::min(std::max(e.end, e.begin), text.size());
    result.diagnostics.push_back({Diagnostic::Severity::Error, std::min(e.begin, end), end, e.message});
  }
  return result;
}

const char* binary_symbol(Connective c) {
  switch (c) {
    case Connective::Implies: return "->";
    case Connective::TruncDiv: return "->.";
    case Connective::Iff: return "<->";
    case Connective::MaxOr: return "\\/";
    case Connective::MinAnd: return "/\\";
    case Connective::StrongOr: return "(+)";
    case Connective::Ominus: return "(-)";
    case Connective::StrongAnd: return "&";
    case Connective::Product: return "*";
    default: return "?";
  }
}

template <Level L>
void print(std::ostringstream& os, const Expr<L>& f, const std::vector<std::string>* players) {
  switch (f.op()) {
    case Connective::Falsity: os << '0'; return;
    case Connective::Constant: os << "c{" << f.value().str() << '}'; return;
    case Connective::Half: os << "c{1/2}"; return;
    case Connective::Variable: os << f.name(); return;
    case Connective::Atom:
      os << "E[";
      if (players && f.player() < players->size()) os << (*players)[f.player()];
      else os << 'P' << f.player() + 1;
      os << ']';
      return;
    case Connective::Neg:
      os << '~';
      print(os, f.operand(0), players);
      return;
    case Connective::Delta:
      os << "D(";
      print(os, f.operand(0), players);
      os << ')';
      return;
    case Connective::Distance:
      os << "d(";
      print(os, f.operand(0), players);
      os << ", ";
      print(os, f.operand(1), players);
      os << ')';
      return;
    default:
      os << '(';
      print(os, f.operand(0), players);
      os << ' ' << binary_symbol(f.op()) << ' ';
      print(os, f.operand(1), players);
      os << ')';
  }
}

}  // namespace

ParseResult<Formula> parse_formula(std::string_view text) { return run_parser<Level::Payoff>(text, nullptr); }

ParseResult<ModalFormula> parse_modal_formula(std::string_view text, const std::vector<std::string>& players) {
  return run_parser<Level::Goal>(text, &players);
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print(os, f, nullptr);
  return os.str();
}

std::string print_modal_formula(const ModalFormula& f, const std::vector<std::string>& players) {
  std::ostringstream os;
  print(os, f, &players);
  return os.str();
}

std::string render_diagnostic(std::string_view source_name, std::string_view text, const Diagnostic& d) {
  const std::size_t begin = std::min(d.begin, text.size());
  std::size_t line_start = begin;
  while (line_start > 0 && text[line_start - 1] != '\n') --line_start;
  const std::size_t line_end = std::min(text.find('\n', line_start), text.size());
  const std::size_t line_no = static_cast<std::size_t>(std::count(text.begin(), text.begin() + begin, '\n')) + 1;
  const std::size_t col = begin - line_start + 1;

  std::ostringstream os;
  os << source_name << ':' << line_no << ':' << col << ": "
     << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": " << d.message << '\n';
  os << "  " << text.substr(line_start, line_end - line_start) << '\n';
  const std::size_t stop = std::min(d.end, line_end);
  const std::size_t width = stop > begin ? stop - begin : 1;
  os << "  " << std::string(col - 1, ' ') << std::string(width, '^') << '\n';
  return os.str();
}

}  // namespace expgame
