#include "comorita/cli.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <regex>
#include <sstream>

namespace comorita::cli {

using nlohmann::json;

// ---------------------------------------------------------------- lexer

namespace {

enum class Tok { Word, Special, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line, col;
};

bool is_special(char c) { return c == '{' || c == '}' || c == '[' || c == ']' || c == ';' || c == '='; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (is_special(c)) {
      out.push_back({Tok::Special, std::string(1, c), line, col});
      advance();
    } else {
      Token t{Tok::Word, "", line, col};
      while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && !is_special(s[i]) && s[i] != '#') {
        t.text += s[i];
        advance();
      }
      out.push_back(t);
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

std::string show(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::string where(const Token& t) { return std::to_string(t.line) + ":" + std::to_string(t.col) + ": "; }

// Rethrow library errors raised while building an entity, prefixed with
// its position and name.
template <class F>
auto build(const Token& at, const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const DimensionError& e) {
    throw DimensionError(where(at) + what + ": " + e.what());
  } catch (const RingMismatch& e) {
    throw RingMismatch(where(at) + what + ": " + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw DomainError(where(at) + what + ": " + e.what());
  }
}

const std::regex identifier_re("[A-Za-z_][A-Za-z0-9_'.-]*");
const std::regex count_re("[0-9]+");
const std::regex scalar_re("-?[0-9]+(/[0-9]+)?");
const std::regex shape_re("([0-9]+)x([0-9]+)");

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  DefinitionFile run() {
    while (peek().kind != Tok::End) statement();
    if (!f_.ring) fail(peek(), "missing ring declaration");
    return std::move(f_);
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  DefinitionFile f_;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::End) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.col); }
  bool at(const char* s) const { return peek().kind != Tok::End && peek().text == s; }

  void expect(const char* s) {
    const Token& t = next();
    if (t.kind == Tok::End || t.text != s) fail(t, std::string("expected '") + s + "', found " + show(t));
  }
  const Token& word(const char* what) {
    const Token& t = next();
    if (t.kind != Tok::Word) fail(t, std::string("expected ") + what + ", found " + show(t));
    return t;
  }
  std::size_t count(const char* what) {
    const Token& t = word(what);
    if (!std::regex_match(t.text, count_re) || t.text.size() > 9) fail(t, std::string("expected ") + what + ", found " + show(t));
    return std::stoul(t.text);
  }
  std::string fresh_name() {
    const Token& t = word("a name");
    if (!std::regex_match(t.text, identifier_re)) fail(t, "invalid name " + show(t));
    if (f_.defines(t.text)) fail(t, "redefinition of '" + t.text + "'");
    return t.text;
  }
  const Ring& ring(const Token& t) const {
    if (!f_.ring) fail(t, "the ring must be declared before any definition");
    return *f_.ring;
  }

  void statement() {
    const Token& t = word("a statement");
    if (t.text == "ring") {
      ring_statement(t);
    } else if (t.text == "coalgebra") {
      ring(t);
      std::string name = fresh_name();
      f_.coalgebras.push_back({name, coalgebra_body(t, name)});
    } else if (t.text == "module") {
      ring(t);
      std::string name = fresh_name();
      f_.modules.push_back({name, module_body(t, name)});
    } else if (t.text == "comodule") {
      ring(t);
      std::string name = fresh_name();
      f_.comodules.push_back(comodule_body(t, name));
    } else if (t.text == "bicomodule") {
      ring(t);
      std::string name = fresh_name();
      f_.bicomodules.push_back(bicomodule_body(t, name));
    } else if (t.text == "context") {
      ring(t);
      std::string name = fresh_name();
      f_.contexts.push_back(context_body(name));
    } else {
      fail(t, "unknown statement " + show(t));
    }
  }

  void ring_statement(const Token& kw) {
    if (f_.ring) fail(kw, "only one ring per file");
    const Token& t = word("a ring");
    static const std::regex gf("GF\\(([0-9]{1,9})\\)"), zn("Z/([0-9]{1,9})");
    std::smatch m;
    auto make = [&](auto f) { f_.ring = build(t, "ring", f); };
    if (t.text == "Q") {
      f_.ring = Ring::rationals();
    } else if (t.text == "Z") {
      f_.ring = Ring::integers();
    } else if (std::regex_match(t.text, m, gf)) {
      long p = std::stol(m[1]);
      make([p] { return Ring::prime_field(p); });
    } else if (std::regex_match(t.text, m, zn)) {
      long n = std::stol(m[1]);
      make([n] { return Ring::integers_mod(n); });
    } else {
      fail(t, "unknown ring " + show(t));
    }
  }

  Scalar scalar(const Token& t) {
    if (t.kind != Tok::Word || !std::regex_match(t.text, scalar_re)) fail(t, "expected a number, found " + show(t));
    Scalar v(t.text);
    if (v.get_den() == 0) fail(t, "zero denominator");
    v.canonicalize();
    return build(t, "entry " + t.text, [&] { return ring(t).normalize(v); });
  }

  Matrix matrix() {
    const Token& t = word("a matrix shape RxC");
    std::smatch m;
    if (!std::regex_match(t.text, m, shape_re) || m[1].length() > 6 || m[2].length() > 6)
      fail(t, "expected a matrix shape RxC, found " + show(t));
    std::size_t rows = std::stoul(m[1]), cols = std::stoul(m[2]);
    Matrix out(ring(t), rows, cols);
    expect("[");
    for (std::size_t i = 0; i < rows; ++i) {
      if (i) expect(";");
      for (std::size_t j = 0; j < cols; ++j) {
        if (at(";") || at("]"))
          fail(peek(), "row " + std::to_string(i) + " has " + std::to_string(j) + " entries, expected " + std::to_string(cols));
        out.set(i, j, scalar(next()));
      }
    }
    if (!at("]")) fail(peek(), "matrix has more entries than its shape " + t.text);
    next();
    return out;
  }

  const NamedCoalgebra& coalgebra_ref() {
    const Token& t = word("a coalgebra name");
    const NamedCoalgebra* c = f_.coalgebra(t.text);
    if (!c) fail(t, "'" + t.text + "' is not a coalgebra");
    return *c;
  }
  const NamedComodule& comodule_ref() {
    const Token& t = word("a comodule name");
    const NamedComodule* c = f_.comodule(t.text);
    if (!c) fail(t, "'" + t.text + "' is not a comodule");
    return *c;
  }
  const NamedModule& module_ref() {
    const Token& t = word("a module name");
    const NamedModule* c = f_.module(t.text);
    if (!c) fail(t, "'" + t.text + "' is not a module");
    return *c;
  }
  Side side() {
    const Token& t = word("right or left");
    if (t.text == "right") return Side::Right;
    if (t.text == "left") return Side::Left;
    fail(t, "expected right or left, found " + show(t));
  }

  Coalgebra coalgebra_block(const Token& at_tok, const std::string& name) {
    expect("{");
    expect("rank");
    std::size_t r = count("a rank");
    expect("delta");
    Matrix delta = matrix();
    expect("epsilon");
    Matrix eps = matrix();
    expect("}");
    return build(at_tok, "coalgebra " + name, [&] { return Coalgebra(ring(at_tok), r, delta, eps); });
  }

  Coalgebra coalgebra_body(const Token& kw, const std::string& name) {
    if (at("{")) return coalgebra_block(kw, name);
    expect("=");
    const Token& t = word("a coalgebra builder");
    const std::string what = "coalgebra " + name;
    const Ring& R = ring(t);
    if (t.text == "grouplike") {
      std::size_t d = count("a rank");
      return build(t, what, [&] { return grouplike(R, d); });
    }
    if (t.text == "matrix") {
      std::size_t n = count("a size");
      return build(t, what, [&] { return matrix_coalgebra(R, n); });
    }
    if (t.text == "divided-power") {
      Matrix delta(R, 4, 2);
      delta.set(0, 0, Scalar(1));
      delta.set(1, 1, Scalar(1));
      delta.set(2, 1, Scalar(1));
      return Coalgebra(R, 2, delta, Matrix::from_ints(R, 1, 2, {1, 0}));
    }
    if (t.text == "sum") {
      const Coalgebra& a = coalgebra_ref().value;
      const Coalgebra& b = coalgebra_ref().value;
      return build(t, what, [&] { return direct_sum(a, b); });
    }
    fail(t, "unknown coalgebra builder " + show(t));
  }

  PresentedModule module_block(const Token& at_tok, const std::string& what) {
    expect("{");
    expect("generators");
    std::size_t g = count("a generator count");
    expect("relations");
    Matrix rel = matrix();
    expect("}");
    return build(at_tok, what, [&] { return PresentedModule(ring(at_tok), g, rel); });
  }

  PresentedModule module_body(const Token& kw, const std::string& name) {
    if (at("{")) return module_block(kw, "module " + name);
    expect("=");
    const Token& t = word("a module builder");
    if (t.text == "free") return PresentedModule::free(ring(t), count("a rank"));
    if (t.text == "cyclic") {
      Scalar a = scalar(next());
      return build(t, "module " + name, [&] { return PresentedModule::cyclic(ring(t), a); });
    }
    fail(t, "unknown module builder " + show(t));
  }

  PresentedModule carrier(const std::string& what) {
    const Token& t = peek();
    if (at("{")) return module_block(t, what + " carrier");
    if (at("free")) {
      next();
      return PresentedModule::free(ring(t), count("a rank"));
    }
    return module_ref().value;
  }

  // name of a coalgebra reference, or an inline block (empty name)
  NamedCoalgebra coalgebra_operand(const std::string& what) {
    if (at("{")) {
      const Token& t = peek();
      return {"", coalgebra_block(t, what)};
    }
    return coalgebra_ref();
  }

  NamedComodule comodule_body(const Token& kw, const std::string& name) {
    const std::string what = "comodule " + name;
    if (at("{")) {
      next();
      expect("side");
      Side s = side();
      expect("coalgebra");
      NamedCoalgebra c = coalgebra_operand(what);
      expect("carrier");
      PresentedModule x = carrier(what);
      expect("coaction");
      Matrix rho = matrix();
      expect("}");
      return {name, c.name, build(kw, what, [&] { return Comodule(s, c.value, x, rho); })};
    }
    expect("=");
    const Token& t = word("a comodule builder");
    if (t.text == "regular" || t.text == "point") {
      Side s = side();
      const NamedCoalgebra& c = coalgebra_ref();
      if (t.text == "regular") return {name, c.name, regular_comodule(c.value, s)};
      std::size_t k = count("a basis index");
      return {name, c.name, build(t, what, [&] { return point_comodule(c.value, k, s); })};
    }
    if (t.text == "column" || t.text == "row") {
      const NamedCoalgebra& c = coalgebra_ref();
      std::size_t n = count("a size");
      if (c.value.rank() != n * n) fail(t, what + ": coalgebra " + c.name + " is not the matrix coalgebra of size " + std::to_string(n));
      return {name, c.name, build(t, what, [&] {
                return t.text == "column" ? column_comodule(c.value, n) : row_comodule(c.value, n);
              })};
    }
    if (t.text == "trivial") {
      const PresentedModule& w = module_ref().value;
      const NamedComodule& x = comodule_ref();
      return {name, x.coalgebra, build(t, what, [&] { return trivial_comodule(w, x.value); })};
    }
    if (t.text == "sum") {
      const NamedComodule& a = comodule_ref();
      const NamedComodule& b = comodule_ref();
      return {name, a.coalgebra, build(t, what, [&] { return direct_sum(a.value, b.value); })};
    }
    fail(t, "unknown comodule builder " + show(t));
  }

  NamedBicomodule bicomodule_body(const Token& kw, const std::string& name) {
    const std::string what = "bicomodule " + name;
    if (at("{")) {
      next();
      expect("left");
      NamedCoalgebra l = coalgebra_operand(what);
      expect("right");
      NamedCoalgebra r = coalgebra_operand(what);
      expect("carrier");
      PresentedModule x = carrier(what);
      expect("left-coaction");
      Matrix lam = matrix();
      expect("right-coaction");
      Matrix rho = matrix();
      expect("}");
      return {name, l.name, r.name, build(kw, what, [&] {
                return Bicomodule(Comodule(Side::Left, l.value, x, lam), Comodule(Side::Right, r.value, x, rho));
              })};
    }
    expect("=");
    const Token& t = word("a bicomodule builder");
    if (t.text == "regular") {
      const NamedCoalgebra& c = coalgebra_ref();
      return {name, c.name, c.name, regular_bicomodule(c.value)};
    }
    if (t.text == "trivial-left" || t.text == "trivial-right") {
      const NamedComodule& x = comodule_ref();
      bool left = t.text == "trivial-left";
      if (x.value.side() != (left ? Side::Right : Side::Left))
        fail(t, what + ": " + t.text + " needs a " + (left ? "right" : "left") + " comodule");
      Bicomodule b = left ? with_trivial_left(x.value) : with_trivial_right(x.value);
      return left ? NamedBicomodule{name, "", x.coalgebra, b} : NamedBicomodule{name, x.coalgebra, "", b};
    }
    if (t.text == "pair") {
      const NamedComodule& l = comodule_ref();
      const NamedComodule& r = comodule_ref();
      return {name, l.coalgebra, r.coalgebra, build(t, what, [&] { return Bicomodule(l.value, r.value); })};
    }
    fail(t, "unknown bicomodule builder " + show(t));
  }

  NamedContext context_body(const std::string& name) {
    const std::string what = "context " + name;
    expect("{");
    expect("d");
    const NamedCoalgebra& d = coalgebra_ref();
    expect("c");
    const NamedCoalgebra& c = coalgebra_ref();
    expect("m");
    const Token& mt = word("a bicomodule name");
    expect("n");
    const Token& nt = word("a bicomodule name");
    const NamedBicomodule* m = f_.bicomodule(mt.text);
    const NamedBicomodule* n = f_.bicomodule(nt.text);
    if (!m) fail(mt, "'" + mt.text + "' is not a bicomodule");
    if (!n) fail(nt, "'" + nt.text + "' is not a bicomodule");
    expect("f");
    const Token& ft = peek();
    Matrix fm = matrix();
    expect("g");
    const Token& gt = peek();
    Matrix gm = matrix();
    expect("}");
    const std::size_t gm_ = m->value.carrier().generators(), gn = n->value.carrier().generators();
    auto shape = [&](const Token& t, const char* which, const Matrix& a, std::size_t rows, std::size_t cols) {
      if (a.rows() != rows || a.cols() != cols)
        throw DimensionError(where(t) + what + ": " + which + " is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
    };
    shape(ft, "f", fm, gm_ * gn, d.value.rank());
    shape(gt, "g", gm, gn * gm_, c.value.rank());
    return {name, d.name, c.name, m->name, n->name, MoritaContext{d.value, c.value, m->value, n->value, fm, gm}};
  }
};

template <class V>
const V* find_named(const std::vector<V>& v, const std::string& name) {
  for (const auto& x : v)
    if (x.name == name) return &x;
  return nullptr;
}

} // namespace

const NamedCoalgebra* DefinitionFile::coalgebra(const std::string& name) const { return find_named(coalgebras, name); }
const NamedModule* DefinitionFile::module(const std::string& name) const { return find_named(modules, name); }
const NamedComodule* DefinitionFile::comodule(const std::string& name) const { return find_named(comodules, name); }
const NamedBicomodule* DefinitionFile::bicomodule(const std::string& name) const { return find_named(bicomodules, name); }
const NamedContext* DefinitionFile::context(const std::string& name) const { return find_named(contexts, name); }
bool DefinitionFile::defines(const std::string& name) const {
  return coalgebra(name) || module(name) || comodule(name) || bicomodule(name) || context(name);
}

DefinitionFile parse(const std::string& text) { return Parser(text).run(); }

// ---------------------------------------------------------------- render

namespace {

std::string render_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + " [";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += " ;";
    for (std::size_t j = 0; j < m.cols(); ++j) out += " " + m.ring().format(m(i, j));
  }
  return out + " ]";
}

std::string render_coalgebra_block(const Coalgebra& c) {
  return "{ rank " + std::to_string(c.rank()) + " delta " + render_matrix(c.delta()) + " epsilon " +
         render_matrix(c.epsilon()) + " }";
}

std::string render_module_block(const PresentedModule& m) {
  return "{ generators " + std::to_string(m.generators()) + " relations " + render_matrix(m.relations()) + " }";
}

std::string coalgebra_ref(const DefinitionFile& f, const std::string& name, const Coalgebra& c) {
  const NamedCoalgebra* n = name.empty() ? nullptr : f.coalgebra(name);
  if (n && n->value == c) return name;
  return render_coalgebra_block(c);
}

bool same_comodule(const Comodule& a, const Comodule& b) {
  return a.side() == b.side() && a.coalgebra() == b.coalgebra() && a.carrier().same_presentation(b.carrier()) &&
         a.coaction().matrix() == b.coaction().matrix();
}

bool same_bicomodule(const Bicomodule& a, const Bicomodule& b) {
  return same_comodule(a.as_left(), b.as_left()) && same_comodule(a.as_right(), b.as_right());
}

} // namespace

std::string render(const DefinitionFile& f) {
  std::ostringstream o;
  if (f.ring) o << "ring " << f.ring->name() << "\n";
  for (const auto& c : f.coalgebras) o << "coalgebra " << c.name << " " << render_coalgebra_block(c.value) << "\n";
  for (const auto& m : f.modules) o << "module " << m.name << " " << render_module_block(m.value) << "\n";
  for (const auto& x : f.comodules)
    o << "comodule " << x.name << " { side " << side_name(x.value.side()) << " coalgebra "
      << coalgebra_ref(f, x.coalgebra, x.value.coalgebra()) << " carrier " << render_module_block(x.value.carrier())
      << " coaction " << render_matrix(x.value.coaction().matrix()) << " }\n";
  for (const auto& b : f.bicomodules)
    o << "bicomodule " << b.name << " { left " << coalgebra_ref(f, b.left, b.value.left_coalgebra()) << " right "
      << coalgebra_ref(f, b.right, b.value.right_coalgebra()) << " carrier " << render_module_block(b.value.carrier())
      << " left-coaction " << render_matrix(b.value.left_coaction().matrix()) << " right-coaction "
      << render_matrix(b.value.right_coaction().matrix()) << " }\n";
  for (const auto& k : f.contexts)
    o << "context " << k.name << " { d " << k.d << " c " << k.c << " m " << k.m << " n " << k.n << " f "
      << render_matrix(k.value.f) << " g " << render_matrix(k.value.g) << " }\n";
  return o.str();
}

bool same_definitions(const DefinitionFile& a, const DefinitionFile& b) {
  if (a.ring != b.ring) return false;
  auto same = [](const auto& xs, const auto& ys, auto eq) {
    if (xs.size() != ys.size()) return false;
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (xs[i].name != ys[i].name || !eq(xs[i], ys[i])) return false;
    return true;
  };
  return same(a.coalgebras, b.coalgebras, [](const auto& x, const auto& y) { return x.value == y.value; }) &&
         same(a.modules, b.modules, [](const auto& x, const auto& y) { return x.value.same_presentation(y.value); }) &&
         same(a.comodules, b.comodules,
              [](const auto& x, const auto& y) { return x.coalgebra == y.coalgebra && same_comodule(x.value, y.value); }) &&
         same(a.bicomodules, b.bicomodules,
              [](const auto& x, const auto& y) {
                return x.left == y.left && x.right == y.right && same_bicomodule(x.value, y.value);
              }) &&
         same(a.contexts, b.contexts, [](const auto& x, const auto& y) {
           return x.d == y.d && x.c == y.c && x.m == y.m && x.n == y.n && x.value.f == y.value.f && x.value.g == y.value.g;
         });
}

std::string digest(const std::string& text) {
  unsigned long long h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", h);
  return buf;
}

// ---------------------------------------------------------------- commands

namespace {

json jmatrix(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring().format(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json jmodule(const PresentedModule& m) {
  json inv = json::array();
  for (const Scalar& s : m.invariants()) inv.push_back(m.ring().format(s));
  return {{"generators", m.generators()}, {"invariants", inv}, {"free", m.is_free()}, {"text", m.describe()}};
}

json jwitness(const std::optional<std::size_t>& w) { return w ? json(*w) : json(nullptr); }

enum class Verdict { Pass, Fail, NotCertified };

const char* verdict_name(Verdict v) {
  switch (v) {
  case Verdict::Pass:
    return "pass";
  case Verdict::Fail:
    return "fail";
  default:
    return "not-certified";
  }
}

class Session {
public:
  Session(const DefinitionFile& f, const Options& opt, json& report) : f_(f), opt_(opt), r_(report) {}

  void add(const std::string& name, Verdict v, const std::string& detail = "", json witness = nullptr) {
    r_["checks"].push_back({{"name", name}, {"verdict", verdict_name(v)}, {"detail", detail}, {"witness", witness}});
    if (v != Verdict::Pass) all_pass_ = false;
  }
  void add(const std::string& name, bool pass, const std::string& detail = "", json witness = nullptr) {
    add(name, pass ? Verdict::Pass : Verdict::Fail, detail, std::move(witness));
  }
  bool all_pass() const { return all_pass_; }
  json& results() { return r_["results"]; }

  void dispatch(const std::string& cmd, const std::vector<std::string>& a) {
    auto arity = [&](std::size_t n) {
      if (a.size() != n)
        throw UsageError(cmd + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                         std::to_string(a.size()));
    };
    if (cmd == "check-coalgebra") {
      arity(1);
      check_coalgebra_cmd(a[0]);
    } else if (cmd == "check-comodule") {
      arity(1);
      check_comodule_cmd(a[0]);
    } else if (cmd == "cotensor") {
      arity(2);
      cotensor_cmd(a[0], a[1]);
    } else if (cmd == "purity") {
      arity(2);
      purity_cmd(a[0], a[1]);
    } else if (cmd == "assoc") {
      arity(3);
      assoc_cmd(a[0], a[1], a[2]);
    } else if (cmd == "coflat-probe") {
      arity(1);
      coflat_cmd(a[0]);
    } else if (cmd == "cohom") {
      arity(2);
      cohom_cmd(a[0], a[1]);
    } else if (cmd == "coend") {
      arity(1);
      coend_cmd(a[0]);
    } else if (cmd == "anti-iso") {
      arity(1);
      anti_iso_cmd(a[0]);
    } else if (cmd == "context-verify") {
      arity(1);
      verify_cmd(a[0]);
    } else if (cmd == "context-strict") {
      arity(1);
      strict_cmd(a[0]);
    } else if (cmd == "equivalence") {
      arity(1);
      equivalence_cmd(a[0]);
    } else if (cmd == "context-from-comodule") {
      arity(1);
      from_comodule_cmd(a[0]);
    } else if (cmd == "invertible") {
      arity(1);
      invertible_cmd(a[0]);
    } else {
      throw UsageError("unknown command '" + cmd + "'");
    }
  }

private:
  const DefinitionFile& f_;
  const Options& opt_;
  json& r_;
  bool all_pass_ = true;

  void cap(std::size_t n, const std::string& what) const {
    if (n > opt_.max_rank)
      throw UsageError(what + " has size " + std::to_string(n) + ", above --max-rank " + std::to_string(opt_.max_rank));
  }
  void cap(const Coalgebra& c, const std::string& name) const { cap(c.rank(), name); }
  void cap(const Comodule& m, const std::string& name) const {
    cap(m.coalgebra(), name);
    cap(m.generators(), name);
  }
  void cap(const Bicomodule& b, const std::string& name) const {
    cap(b.as_left(), name);
    cap(b.as_right(), name);
  }

  const Coalgebra& coalgebra_arg(const std::string& name) const {
    const NamedCoalgebra* c = f_.coalgebra(name);
    if (!c) throw UsageError("no coalgebra named '" + name + "'");
    cap(c->value, name);
    return c->value;
  }
  const Bicomodule& bicomodule_arg(const std::string& name) const {
    const NamedBicomodule* b = f_.bicomodule(name);
    if (!b) throw UsageError("no bicomodule named '" + name + "'");
    cap(b->value, name);
    return b->value;
  }
  const NamedContext& context_arg(const std::string& name) const {
    const NamedContext* k = f_.context(name);
    if (!k) throw UsageError("no context named '" + name + "'");
    cap(k->value.m, name);
    cap(k->value.n, name);
    return *k;
  }
  // a comodule, or one side of a bicomodule
  Comodule sided_arg(const std::string& name, std::optional<Side> want) const {
    if (const NamedComodule* x = f_.comodule(name)) {
      if (want && x->value.side() != *want)
        throw UsageError("comodule '" + name + "' is a " + side_name(x->value.side()) + " comodule, expected " +
                         side_name(*want));
      cap(x->value, name);
      return x->value;
    }
    if (const NamedBicomodule* b = f_.bicomodule(name)) {
      cap(b->value, name);
      return want == Side::Left ? b->value.as_left() : b->value.as_right();
    }
    throw UsageError("no comodule or bicomodule named '" + name + "'");
  }

  ProbeFamily probes(const Coalgebra& c, Side side) const {
    static const std::regex spec("standard(:([0-9]{1,2}))?");
    std::smatch m;
    if (opt_.probes == "none") return {"none", {}, family_hash({})};
    if (!std::regex_match(opt_.probes, m, spec)) throw UsageError("unknown probe family '" + opt_.probes + "'");
    std::size_t copies = m[2].matched ? std::stoul(m[2]) : 2;
    if (copies == 0) throw UsageError("probe copies must be positive");
    return standard_probes(c, side, copies);
  }

  static std::string family(const ProbeReport& p) { return "probe family " + p.family + " (" + p.hash + ")"; }

  static Side opposite(Side s) { return s == Side::Right ? Side::Left : Side::Right; }

  void axioms(const AxiomReport& rep, const std::string& prefix = "") {
    for (const auto& it : rep.items)
      add(prefix + it.axiom, it.pass, it.pass ? "" : "sides differ", jwitness(it.witness));
  }

  void check_coalgebra_cmd(const std::string& name) {
    const Coalgebra& c = coalgebra_arg(name);
    axioms(check_coalgebra(c));
    results()["rank"] = c.rank();
  }

  void check_comodule_cmd(const std::string& name) {
    if (f_.bicomodule(name)) {
      const Bicomodule& b = bicomodule_arg(name);
      axioms(check_bicomodule(b));
      results()["carrier"] = jmodule(b.carrier());
      return;
    }
    Comodule m = sided_arg(name, std::nullopt);
    axioms(check_comodule(m));
    results()["side"] = side_name(m.side());
    results()["carrier"] = jmodule(m.carrier());
  }

  void cotensor_cmd(const std::string& a, const std::string& b) {
    Comodule m = sided_arg(a, Side::Right), n = sided_arg(b, Side::Left);
    CotensorResult cr = cotensor(m, n);
    add("kernel", true, cr.module.describe());
    add("inclusion injective", is_injective(cr.inclusion));
    results()["module"] = jmodule(cr.module);
    if (f_.bicomodule(a) && f_.bicomodule(b)) {
      try {
        Bicomodule mn = cotensor_bicomodule(f_.bicomodule(a)->value, f_.bicomodule(b)->value);
        AxiomReport ax = check_bicomodule(mn);
        add("induced bicomodule", ax.passed(), "", ax.passed() ? nullptr : jwitness(ax.first_failure()->witness));
      } catch (const PurityObstruction& e) {
        add("induced bicomodule", false, e.what());
      }
    }
  }

  void purity_cmd(const std::string& a, const std::string& b) {
    Comodule m = sided_arg(a, Side::Right), n = sided_arg(b, Side::Left);
    CotensorPurity p = purity_certificate(m, n);
    json tests = json::array(), witness = nullptr;
    for (const auto& t : p.tests) {
      tests.push_back({{"w", t.w.describe()}, {"pure", t.pure}, {"gamma_iso", t.gamma_iso}, {"mu_iso", t.mu_iso}});
      if (!t.pure && witness.is_null()) witness = t.w.describe();
    }
    add("pure", p.pure, "against family " + p.family, witness);
    add("three-way agreement", p.consistent, "tensor injectivity, gamma and mu verdicts");
    results()["family"] = p.family;
    results()["tests"] = tests;
  }

  void assoc_cmd(const std::string& a, const std::string& b, const std::string& c) {
    Comodule m = sided_arg(a, Side::Right), n = sided_arg(c, Side::Left);
    const Bicomodule& l = bicomodule_arg(b);
    AssocReport rep = associativity_check(m, l, n);
    add("left purity", rep.left_pure);
    add("right purity", rep.right_pure);
    if (!rep.preconditions())
      add("associativity", Verdict::NotCertified, "purity preconditions do not hold");
    else
      add("associativity", rep.psi1_iso, rep.psi1_defined ? "comparison map defined" : "comparison map undefined");
    results()["left"] = jmodule(rep.left_module);
    results()["right"] = jmodule(rep.right_module);
    results()["psi1_iso"] = rep.psi1_iso;
    results()["psi2_iso"] = rep.psi2_iso;
    results()["psi3_iso"] = rep.psi3_iso;
  }

  void coflat_cmd(const std::string& name) {
    Comodule m = sided_arg(name, std::nullopt);
    ProbeFamily pf = probes(m.coalgebra(), opposite(m.side()));
    ProbeReport pr = coflatness_probe(m, pf);
    json seqs = json::array();
    std::optional<std::string> bad;
    for (const auto& s : pr.results) {
      seqs.push_back({{"label", s.label}, {"pure", s.pure}, {"left_exact", s.left_exact}, {"exact", s.exact}});
      if (!s.exact && !bad) bad = s.label;
    }
    results()["probes"] = seqs;
    results()["family"] = pr.family;
    results()["hash"] = pr.hash;
    if (pf.sequences.empty()) {
      add("exact", Verdict::NotCertified, "empty probe family");
      add("faithful", Verdict::NotCertified, "empty probe family");
      return;
    }
    add("left exact", pr.left_exact, family(pr));
    add("exact", pr.exact, family(pr), bad ? json(*bad) : json(nullptr));
    add("faithful", pr.faithful, family(pr), pr.vanishing.empty() ? json(nullptr) : json(pr.vanishing.front()));
  }

  void cohom_cmd(const std::string& a, const std::string& b) {
    Comodule x = sided_arg(a, Side::Right), m = sided_arg(b, Side::Right);
    CohomResult h = cohom(x, m);
    const Ring& R = x.ring();
    json pairing = json::array();
    for (const Scalar& s : h.pairing) pairing.push_back(R.format(s));
    results()["module"] = jmodule(h.module);
    results()["pairing"] = pairing;
    add("unit colinear", is_colinear(h.unit, m, trivial_comodule(h.module, x)));
    std::vector<std::pair<std::string, PresentedModule>> ws = {{"R", PresentedModule::free(R, 1)},
                                                               {"R^2", PresentedModule::free(R, 2)}};
    std::vector<long> divs = R.modulus_divisors();
    if (!divs.empty() && divs.front() != R.modulus())
      ws.push_back({"Z/" + std::to_string(divs.front()), PresentedModule::cyclic(R, Scalar(divs.front()))});
    for (const auto& [label, w] : ws) add("adjunction W=" + label, adjunction_round_trip(h, w));
    ProbeFamily pf = probes(x.coalgebra(), Side::Left);
    if (pf.sequences.empty()) {
      add("delta iso", Verdict::NotCertified, "empty probe family");
      return;
    }
    try {
      add("delta iso", delta_check(x, m, pf), pf.name);
    } catch (const ExactnessNotCertified& e) {
      add("delta iso", Verdict::NotCertified, e.what());
    }
  }

  void coend_cmd(const std::string& name) {
    Comodule x = sided_arg(name, Side::Right);
    CoendCoalgebra e = coend(x);
    AxiomReport ax = check_coalgebra(e.coalgebra);
    add("coend coalgebra", ax.passed(), "", ax.passed() ? nullptr : jwitness(ax.first_failure()->witness));
    add("coaction on x", check_bicomodule(e.x).passed());
    if (const NamedBicomodule* b = f_.bicomodule(name)) {
      ModuleMap pi = coend_to_coalgebra(e, b->value.as_left());
      add("coalgebra map", check_coalgebra_morphism(pi, e.coalgebra, b->value.left_coalgebra()));
      results()["coalgebra_iso"] = is_isomorphism(pi).iso;
      results()["coalgebra_map"] = jmatrix(pi.matrix());
    }
    results()["rank"] = e.coalgebra.rank();
    results()["delta"] = jmatrix(e.coalgebra.delta());
    results()["epsilon"] = jmatrix(e.coalgebra.epsilon());
  }

  void anti_iso_cmd(const std::string& name) {
    Comodule x = sided_arg(name, Side::Right);
    AntiIsoReport a = dual_anti_iso_check(x);
    add("bijective", a.bijective);
    add("unit", a.unit);
    add("reverses order", a.reverses);
    results()["commutative"] = a.commutative;
    results()["witness"] = a.witness ? json::array({a.witness->first, a.witness->second}) : json(nullptr);
  }

  void context_items(const ContextReport& rep) {
    for (const auto& it : rep.items) add(it.name, it.pass, it.detail, jwitness(it.witness));
    results()["m_cotensor_n"] = jmodule(rep.mn.module);
    results()["n_cotensor_m"] = jmodule(rep.nm.module);
  }

  void verify_cmd(const std::string& name) {
    const NamedContext& k = context_arg(name);
    ContextReport rep = verify_context(k.value);
    context_items(rep);
    results()["triangle_m_defect"] = !rep.defect_m.is_zero();
    results()["triangle_n_defect"] = !rep.defect_n.is_zero();
  }

  void strict_cmd(const std::string& name) {
    const NamedContext& k = context_arg(name);
    ContextReport rep = verify_context(k.value);
    const ContextCheck* bad = rep.first_failure();
    add("verified", rep.passed(), bad ? "first failure: " + bad->name : "");
    if (rep.passed()) add("strict", is_strict(k.value, rep), "f and g induce isomorphisms onto the cotensors");
  }

  void equivalence_cmd(const std::string& name) {
    const NamedContext& k = context_arg(name);
    const MoritaContext& ctx = k.value;
    TestFamily tests = standard_tests(ctx);
    for (const auto& t : opt_.tests) {
      Comodule x = sided_arg(t, std::nullopt);
      bool right = x.side() == Side::Right, placed = false;
      if (x.coalgebra() == ctx.c) {
        (right ? tests.right_c : tests.left_c).push_back(x);
        placed = true;
      }
      if (x.coalgebra() == ctx.d) {
        (right ? tests.right_d : tests.left_d).push_back(x);
        placed = true;
      }
      if (!placed) throw UsageError("test comodule '" + t + "' is over neither coalgebra of context '" + name + "'");
    }
    EquivalenceWitness w = equivalence_from_context(ctx, tests);
    for (const auto& t : w.trips)
      add(t.functor + " " + t.label, t.ok(),
          std::string(t.iso ? "iso" : "not iso") + ", " + (t.colinear ? "colinear" : "not colinear"));
    results()["tests"] = tests.size();
    results()["scope"] = w.scope;
  }

  void hypotheses(const InjectorReport& h) {
    add("injector", h.injector, family(h.probe));
    add("cogenerator", h.cogenerator, family(h.probe),
        h.probe.vanishing.empty() ? json(nullptr) : json(h.probe.vanishing.front()));
    results()["chain"] = h.chain;
  }

  void from_comodule_cmd(const std::string& name) {
    Comodule x = sided_arg(name, Side::Right);
    ProbeFamily pf = probes(x.coalgebra(), Side::Left);
    if (x.ring().is_qf() && pf.sequences.empty()) {
      add("hypotheses", Verdict::NotCertified, "empty probe family");
      return;
    }
    try {
      SynthesizedContext s = context_from_comodule(x, pf);
      hypotheses(s.hypotheses);
      context_items(s.report);
      add("strict", s.strict);
      results()["d_rank"] = s.context.d.rank();
      results()["d_delta"] = jmatrix(s.context.d.delta());
      results()["d_epsilon"] = jmatrix(s.context.d.epsilon());
    } catch (const HypothesisNotCertified& e) {
      add("hypotheses", Verdict::NotCertified, e.what());
    }
  }

  void invertible_cmd(const std::string& name) {
    Bicomodule b = f_.bicomodule(name) ? bicomodule_arg(name) : with_trivial_left(sided_arg(name, Side::Right));
    ProbeFamily pf = probes(b.right_coalgebra(), Side::Left);
    if (b.ring().is_qf() && pf.sequences.empty()) {
      add("hypotheses", Verdict::NotCertified, "empty probe family");
      return;
    }
    InvertibilityReport ir = invertibility_check(b, pf);
    hypotheses(ir.hypotheses);
    if (ir.hypotheses.injector && ir.hypotheses.cogenerator) {
      add("coalgebra map", ir.coalgebra_map);
      add("coend iso", ir.coend_iso);
      if (ir.equivalence) add("round trips", ir.equivalence->passed(), ir.equivalence->scope);
    }
    add("invertible", ir.invertible, ir.reason);
    results()["coend_rank"] = ir.coend_rank;
  }
};

json error_json(const char* kind, const std::exception& e) { return {{"kind", kind}, {"message", e.what()}}; }

} // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> all = {
      "check-coalgebra", "check-comodule", "cotensor",       "purity",         "assoc",
      "coflat-probe",    "cohom",          "coend",          "anti-iso",       "context-verify",
      "context-strict",  "equivalence",    "context-from-comodule", "invertible"};
  return all;
}

Outcome run(const std::string& command, const std::string& text, const std::string& source,
            const std::vector<std::string>& args, const Options& options) {
  Outcome out;
  json& r = out.report;
  r["schema"] = "comorita-report/1";
  r["command"] = command;
  r["input"] = source;
  r["args"] = args;
  r["seed"] = options.seed ? json(*options.seed) : json(nullptr);
  r["probes"] = options.probes;
  r["digest"] = digest(text);
  r["ring"] = nullptr;
  r["checks"] = json::array();
  r["results"] = json::object();
  auto t0 = std::chrono::steady_clock::now();
  bool parsed = false;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw UsageError("unknown command '" + command + "'");
    DefinitionFile f = parse(text);
    parsed = true;
    r["digest"] = digest(render(f));
    r["ring"] = f.ring->name();
    Session s(f, options, r);
    s.dispatch(command, args);
    out.exit_code = s.all_pass() ? 0 : 1;
  } catch (const UsageError& e) {
    r["error"] = error_json("usage", e);
    out.exit_code = 2;
  } catch (const ParseError& e) {
    r["error"] = error_json("parse", e);
    out.exit_code = 2;
  } catch (const UnsupportedRing& e) {
    r["error"] = error_json("unsupported-ring", e);
    out.exit_code = 2;
  } catch (const Error& e) {
    // definition errors are reported like parse errors; failures while verifying are verdicts
    r["error"] = error_json(parsed ? "verification" : "definition", e);
    out.exit_code = parsed ? 1 : 2;
    if (parsed)
      r["checks"].push_back({{"name", command}, {"verdict", "fail"}, {"detail", e.what()}, {"witness", nullptr}});
  }
  if (options.timings)
    r["timings"] = {{"total_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
  r["exit_code"] = out.exit_code;

  std::ostringstream o;
  for (const auto& c : r["checks"]) {
    std::string v = c["verdict"];
    o << (v == "pass" ? "PASS " : v == "fail" ? "FAIL " : "NOT-CERTIFIED ") << c["name"].get<std::string>();
    std::string d = c["detail"];
    if (!d.empty()) o << ": " << d;
    if (!c["witness"].is_null()) o << " [witness " << c["witness"].dump() << "]";
    o << "\n";
  }
  if (r.contains("error")) o << "error: " << r["error"]["message"].get<std::string>() << "\n";
  o << command << ": " << (out.exit_code == 0 ? "ok" : out.exit_code == 1 ? "failed" : "rejected") << " (exit "
    << out.exit_code << ")\n";
  out.summary = o.str();
  return out;
}

} // namespace comorita::cli
