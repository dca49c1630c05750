#include "absprob/document.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "absprob/errors.hpp"
#include "absprob/rational.hpp"

namespace absprob {

std::string_view SExpr::head() const {
  if (!list || items.empty() || !items[0].is_symbol()) return {};
  return items[0].symbol;
}

namespace {

[[noreturn]] void fail_at(const SExpr& e, const std::string& message) { throw ParseError(message, e.line, e.column); }

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    while (skip_space(), pos_ < text_.size()) out.push_back(read());
    return out;
  }

 private:
  SExpr read() {
    skip_space();
    SExpr e;
    e.line = line_;
    e.column = column_;
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", line_, column_);
    char c = text_[pos_];
    if (c == ')') throw ParseError("unexpected ')'", line_, column_);
    if (c == '(') {
      advance();
      e.list = true;
      while (true) {
        skip_space();
        if (pos_ >= text_.size()) throw ParseError("unclosed '('", e.line, e.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    if (c == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        e.symbol += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
      advance();
      return e;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')' && text_[pos_] != ';') {
      e.symbol += text_[pos_];
      advance();
    }
    return e;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

const std::set<std::string, std::less<>> kReserved{"true", "false", "not",    "and",   "or",
                                                   "implies", "iff", "forall", "exists", "="};

const std::string& symbol_of(const SExpr& e, const char* what) {
  if (!e.is_symbol()) fail_at(e, std::string("expected ") + what);
  return e.symbol;
}

Term term_of(const SExpr& e, const std::vector<std::string>& bound) {
  const std::string& s = symbol_of(e, "a constant or variable");
  if (s.size() > 1 && s[0] == '?') return Term::var(s.substr(1));
  for (const auto& b : bound)
    if (b == s) return Term::var(s);
  return Term::constant(s);
}

Formula formula_rec(const SExpr& e, std::vector<std::string>& bound) {
  if (e.is_symbol()) {
    if (e.symbol == "true") return Formula::top();
    if (e.symbol == "false") return Formula::bottom();
    if (kReserved.count(e.symbol)) fail_at(e, "'" + e.symbol + "' is not a formula");
    return Formula::atom(GroundAtom{e.symbol, {}});
  }
  if (e.items.empty()) fail_at(e, "empty formula");
  const std::string& op = symbol_of(e.items[0], "an operator or predicate name");
  const std::size_t argc = e.items.size() - 1;
  auto sub = [&](std::size_t i) { return formula_rec(e.items[i], bound); };
  auto arity = [&](std::size_t n) {
    if (argc != n) fail_at(e, "'" + op + "' takes " + std::to_string(n) + " argument(s)");
  };

  if (op == "not") {
    arity(1);
    return Formula::negation(sub(1));
  }
  if (op == "and" || op == "or") {
    std::vector<Formula> parts;
    for (std::size_t i = 1; i < e.items.size(); ++i) parts.push_back(sub(i));
    return op == "and" ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
  }
  if (op == "implies" || op == "iff") {
    arity(2);
    return op == "implies" ? Formula::implies(sub(1), sub(2)) : Formula::iff(sub(1), sub(2));
  }
  if (op == "=") {
    arity(2);
    return Formula::eq(term_of(e.items[1], bound), term_of(e.items[2], bound));
  }
  if (op == "forall" || op == "exists") {
    arity(2);
    const SExpr& binders = e.items[1];
    if (!binders.list || binders.items.empty()) fail_at(binders, "expected a list of (variable sort) binders");
    std::vector<std::pair<std::string, std::string>> vars;
    for (const auto& b : binders.items) {
      if (!b.list || b.items.size() != 2) fail_at(b, "expected (variable sort)");
      vars.emplace_back(symbol_of(b.items[0], "a variable"), symbol_of(b.items[1], "a sort"));
    }
    for (const auto& v : vars) bound.push_back(v.first);
    Formula body = sub(2);
    bound.resize(bound.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      body = op == "forall" ? Formula::forall(it->first, it->second, body) : Formula::exists(it->first, it->second, body);
    return body;
  }
  if (op == "true" || op == "false") fail_at(e, "'" + op + "' takes no arguments");
  std::vector<Term> terms;
  for (std::size_t i = 1; i < e.items.size(); ++i) terms.push_back(term_of(e.items[i], bound));
  return Formula::atom(op, std::move(terms));
}

Rational number_of(const SExpr& e) {
  const std::string& s = symbol_of(e, "a number");
  try {
    return parse_rational(s);
  } catch (const std::invalid_argument& err) {
    fail_at(e, err.what());
  }
}

std::size_t count_of(const SExpr& e) {
  Rational r = number_of(e);
  if (r < 0 || r.get_den() != 1 || !r.get_num().fits_ulong_p()) fail_at(e, "expected a non-negative integer");
  return r.get_num().get_ui();
}

void read_sorts(const SExpr& section, Vocabulary& vocab) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& s = section.items[i];
    if (!s.list || s.items.empty()) fail_at(s, "expected (sort constant...)");
    std::vector<std::string> constants;
    for (std::size_t k = 1; k < s.items.size(); ++k) constants.push_back(symbol_of(s.items[k], "a constant"));
    try {
      vocab.add_sort(symbol_of(s.items[0], "a sort name"), std::move(constants));
    } catch (const Error& err) {
      fail_at(s, err.what());
    }
  }
}

void read_predicates(const SExpr& section, Vocabulary& vocab) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& p = section.items[i];
    std::string name;
    std::vector<std::string> sorts;
    if (p.is_symbol()) {
      name = p.symbol;
    } else {
      if (p.items.empty()) fail_at(p, "expected (predicate sort...)");
      name = symbol_of(p.items[0], "a predicate name");
      for (std::size_t k = 1; k < p.items.size(); ++k) sorts.push_back(symbol_of(p.items[k], "a sort"));
    }
    if (kReserved.count(name)) fail_at(p, "'" + name + "' is reserved");
    try {
      vocab.add_predicate(name, std::move(sorts));
    } catch (const Error& err) {
      fail_at(p, err.what());
    }
  }
}

// Ground instances of an atom pattern; variables take their sorts from the
// argument positions they occupy.
std::vector<std::pair<GroundAtom, std::map<std::string, std::string>>> instances(const SExpr& where, const Formula& pattern,
                                                                                  const Vocabulary& vocab) {
  if (pattern.kind() != FormulaKind::Atom) fail_at(where, "expected an atom");
  const PredicateDecl* decl = vocab.find_predicate(pattern.predicate());
  if (!decl) fail_at(where, "unknown predicate '" + pattern.predicate() + "'");
  if (decl->arity() != pattern.terms().size())
    fail_at(where, "'" + decl->name + "' takes " + std::to_string(decl->arity()) + " argument(s)");

  std::vector<std::pair<GroundAtom, std::map<std::string, std::string>>> out;
  std::map<std::string, std::string> env;
  std::function<void(std::size_t, GroundAtom&)> rec = [&](std::size_t k, GroundAtom& atom) {
    if (k == pattern.terms().size()) {
      out.emplace_back(atom, env);
      return;
    }
    const Term& t = pattern.terms()[k];
    const std::string& sort = decl->arg_sorts[k];
    if (!t.variable) {
      if (!vocab.sort_has(sort, t.name)) fail_at(where, "'" + t.name + "' is not a constant of sort " + sort);
      atom.args.push_back(t.name);
      rec(k + 1, atom);
      atom.args.pop_back();
      return;
    }
    if (auto it = env.find(t.name); it != env.end()) {
      if (!vocab.sort_has(sort, it->second)) return;
      atom.args.push_back(it->second);
      rec(k + 1, atom);
      atom.args.pop_back();
      return;
    }
    for (const auto& c : vocab.find_sort(sort)->constants) {
      env[t.name] = c;
      atom.args.push_back(c);
      rec(k + 1, atom);
      atom.args.pop_back();
    }
    env.erase(t.name);
  };
  GroundAtom atom{pattern.predicate(), {}};
  rec(0, atom);
  return out;
}

void read_weights(const SExpr& section, const Vocabulary& vocab, WeightFn& weights) {
  std::set<Literal> seen;
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const SExpr& w = section.items[i];
    if (!w.list || w.items.size() != 2) fail_at(w, "expected (weight literal)");
    Rational value = number_of(w.items[0]);
    std::vector<std::string> bound;
    Formula lit = formula_rec(w.items[1], bound);
    bool positive = true;
    if (lit.kind() == FormulaKind::Not) {
      positive = false;
      lit = lit.child(0);
    }
    for (const auto& [atom, env] : instances(w.items[1], lit, vocab)) {
      Literal l{atom, positive};
      if (!seen.insert(l).second) fail_at(w, "duplicate weight for " + to_string(l));
      try {
        weights.set(l, value);
      } catch (const Error& err) {
        fail_at(w, err.what());
      }
    }
  }
}

NegationDefault negation_default_of(const SExpr& e) {
  if (e.items.size() != 2) fail_at(e, "expected (negation-default one|complement)");
  const std::string& s = symbol_of(e.items[1], "one or complement");
  if (s == "one") return NegationDefault::One;
  if (s == "complement") return NegationDefault::Complement;
  fail_at(e.items[1], "expected one or complement");
}

const SExpr& single_document(const std::vector<SExpr>& top, std::string_view kind) {
  if (top.size() != 1) {
    if (top.empty()) throw ParseError("empty document", 1, 1);
    fail_at(top[1], "one document per file");
  }
  if (top[0].head() != kind) fail_at(top[0], "expected (" + std::string(kind) + " ...)");
  return top[0];
}

void read_vocabulary_section(const SExpr& s, Vocabulary& vocab) {
  if (s.head() == "sorts") read_sorts(s, vocab);
  else read_predicates(s, vocab);
}

std::vector<MappingEntry> read_map_entries(const SExpr& section, std::size_t first, const Vocabulary& high) {
  std::vector<MappingEntry> out;
  for (std::size_t i = first; i < section.items.size(); ++i) {
    const SExpr& e = section.items[i];
    if (e.head() == "identity") {
      for (std::size_t k = 1; k < e.items.size(); ++k) {
        const std::string& name = symbol_of(e.items[k], "a predicate name");
        const PredicateDecl* decl = high.find_predicate(name);
        if (!decl) fail_at(e.items[k], "unknown high-level predicate '" + name + "'");
        std::vector<Term> terms;
        for (std::size_t a = 0; a < decl->arity(); ++a) terms.push_back(Term::var("a" + std::to_string(a)));
        Formula atom = Formula::atom(name, terms);
        out.push_back({atom, atom});
      }
      continue;
    }
    if (e.head() != "map" || e.items.size() != 3) fail_at(e, "expected (map atom formula) or (identity predicate...)");
    std::vector<std::string> bound;
    Formula pattern = formula_rec(e.items[1], bound);
    Formula target = formula_rec(e.items[2], bound);
    instances(e.items[1], pattern, high);
    out.push_back({pattern, target});
  }
  return out;
}

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

Formula parse_formula(const SExpr& expr) {
  std::vector<std::string> bound;
  return formula_rec(expr, bound);
}

TheoryDocument parse_theory(std::string_view text) {
  auto top = read_sexprs(text);
  const SExpr& doc = single_document(top, "theory");
  TheoryDocument out;
  NegationDefault negation = NegationDefault::One;
  const SExpr* weights = nullptr;
  for (std::size_t i = 1; i < doc.items.size(); ++i) {
    const SExpr& s = doc.items[i];
    std::string_view h = s.head();
    if (h == "sorts" || h == "predicates") {
      read_vocabulary_section(s, out.spec.vocabulary);
    } else if (h == "sentences") {
      for (std::size_t k = 1; k < s.items.size(); ++k) {
        Formula f = parse_formula(s.items[k]);
        try {
          free_variables(f, out.spec.vocabulary);
          Formula closed = f;
          for (const auto& [var, sort] : free_variables(f, out.spec.vocabulary)) closed = Formula::forall(var, sort, closed);
          ground_formula(closed, out.spec.vocabulary);
        } catch (const Error& err) {
          fail_at(s.items[k], err.what());
        }
        out.spec.sentences.push_back(std::move(f));
      }
    } else if (h == "weights") {
      if (weights) fail_at(s, "duplicate weights section");
      weights = &s;
    } else if (h == "negation-default") {
      negation = negation_default_of(s);
    } else {
      fail_at(s, "unknown theory section");
    }
  }
  out.weights = WeightFn(negation);
  if (weights) read_weights(*weights, out.spec.vocabulary, out.weights);
  return out;
}

std::vector<MappingEntry> parse_mapping(std::string_view text, const Vocabulary& high) {
  auto top = read_sexprs(text);
  return read_map_entries(single_document(top, "mapping"), 1, high);
}

HypothesisSpace parse_space(std::string_view text) {
  auto top = read_sexprs(text);
  const SExpr& doc = single_document(top, "space");
  HypothesisSpace space;
  Vocabulary vocab;
  std::vector<const SExpr*> deferred;
  for (std::size_t i = 1; i < doc.items.size(); ++i) {
    const SExpr& s = doc.items[i];
    std::string_view h = s.head();
    if (h == "sorts" || h == "predicates") read_vocabulary_section(s, vocab);
    else deferred.push_back(&s);
  }
  auto high = std::make_shared<const Vocabulary>(std::move(vocab));
  space.high_vocabulary = high;

  for (const SExpr* sp : deferred) {
    const SExpr& s = *sp;
    std::string_view h = s.head();
    if (h == "target") {
      if (s.items.size() != 2) fail_at(s, "expected (target weak-exact|weighted-exact)");
      const std::string& t = symbol_of(s.items[1], "a target class");
      if (t == "weak-exact") space.target = TargetClass::WeakExact;
      else if (t == "weighted-exact") space.target = TargetClass::WeightedExact;
      else fail_at(s.items[1], "expected weak-exact or weighted-exact");
    } else if (h == "candidates") {
      if (s.items.size() < 2) fail_at(s, "expected (candidates atom formula...)");
      std::vector<std::string> bound;
      Formula pattern = formula_rec(s.items[1], bound);
      std::vector<Formula> forms;
      for (std::size_t k = 2; k < s.items.size(); ++k) forms.push_back(formula_rec(s.items[k], bound));
      for (const auto& [atom, env] : instances(s.items[1], pattern, *high)) {
        auto& list = space.mapping_candidates[atom];
        for (Formula f : forms) {
          for (const auto& [var, c] : env) f = substitute(f, var, c);
          list.push_back(f);
        }
      }
    } else if (h == "generate-clauses") {
      if (s.items.size() != 2) fail_at(s, "expected (generate-clauses length)");
      space.generated_clause_length = count_of(s.items[1]);
    } else if (h == "theory-candidates") {
      for (std::size_t k = 1; k < s.items.size(); ++k) space.theory_candidates.push_back(parse_formula(s.items[k]));
    } else if (h == "theory-bound") {
      for (std::size_t k = 1; k < s.items.size(); ++k) {
        const SExpr& b = s.items[k];
        if (!b.list || b.items.size() != 2) fail_at(b, "expected (max-clause-length n) or (max-sentences n)");
        if (b.head() == "max-clause-length") space.theory_bound.max_clause_length = count_of(b.items[1]);
        else if (b.head() == "max-sentences") space.theory_bound.max_sentences = count_of(b.items[1]);
        else fail_at(b, "expected max-clause-length or max-sentences");
      }
    } else if (h == "partial-mapping") {
      for (const auto& entry : read_map_entries(s, 1, *high)) {
        for (const auto& [atom, env] : instances(s, entry.pattern, *high)) {
          Formula f = entry.target;
          for (const auto& [var, c] : env) f = substitute(f, var, c);
          if (!space.partial_mapping.emplace(atom, f).second)
            fail_at(s, "partial mapping covers " + to_string(atom) + " twice");
        }
      }
    } else if (h == "partial-theory") {
      for (std::size_t k = 1; k < s.items.size(); ++k) space.partial_theory.push_back(parse_formula(s.items[k]));
    } else {
      fail_at(s, "unknown space section");
    }
  }
  return space;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

template <typename F>
auto with_path(const std::filesystem::path& path, F&& parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& err) {
    throw Error(path.string() + ":" + err.what());
  }
}

}  // namespace

TheoryDocument load_theory(const std::filesystem::path& path) {
  return with_path(path, [](const std::string& text) { return parse_theory(text); });
}

std::vector<MappingEntry> load_mapping(const std::filesystem::path& path, const Vocabulary& high) {
  return with_path(path, [&](const std::string& text) { return parse_mapping(text, high); });
}

HypothesisSpace load_space(const std::filesystem::path& path) {
  return with_path(path, [](const std::string& text) { return parse_space(text); });
}

// ---------------------------------------------------------------------------
// infix syntax

namespace {

class InfixParser {
 public:
  explicit InfixParser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = iff();
    skip();
    if (pos_ < text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula iff() {
    Formula lhs = implication();
    while (accept("<->")) lhs = Formula::iff(lhs, implication());
    return lhs;
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept("->")) return Formula::implies(lhs, implication());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept("|")) parts.push_back(conjunction());
    return parts.size() == 1 ? parts[0] : Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts[0] : Formula::conjunction(std::move(parts));
  }

  Formula unary() {
    if (accept("~") || accept("!")) return Formula::negation(unary());
    if (accept("(")) {
      Formula f = iff();
      expect(")");
      return f;
    }
    std::string name = identifier();
    if (name == "true") return Formula::top();
    if (name == "false") return Formula::bottom();
    if (name == "forall" || name == "exists") {
      std::string var = identifier();
      expect(":");
      std::string sort = identifier();
      expect(".");
      bound_.push_back(var);
      Formula body = iff();
      bound_.pop_back();
      return name == "forall" ? Formula::forall(var, sort, body) : Formula::exists(var, sort, body);
    }
    if (accept("(")) {
      std::vector<Term> terms{term(identifier())};
      while (accept(",")) terms.push_back(term(identifier()));
      expect(")");
      return Formula::atom(name, std::move(terms));
    }
    skip();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      return Formula::eq(term(name), term(identifier()));
    }
    return Formula::atom(GroundAtom{name, {}});
  }

  Term term(const std::string& name) {
    for (const auto& b : bound_)
      if (b == name) return Term::var(name);
    return Term::constant(name);
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) error(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end");
    return std::string(text_.substr(start, pos_ - start));
  }

  bool accept(std::string_view token) {
    skip();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  void expect(std::string_view token) {
    if (!accept(token)) error("expected '" + std::string(token) + "'");
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void error(const std::string& message) { throw ParseError(message, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

}  // namespace

Formula parse_infix(std::string_view text) { return InfixParser(text).parse(); }

}  // namespace absprob
