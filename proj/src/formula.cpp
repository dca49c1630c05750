#include "absprob/formula.hpp"

#include <unordered_set>

#include "absprob/errors.hpp"

namespace absprob {

struct Formula::Node {
  FormulaKind kind = FormulaKind::True;
  std::string name;  // predicate, or quantified variable
  std::string sort;  // quantifier sort
  std::vector<Term> terms;
  std::vector<Formula> children;
  bool ground = true;
  std::size_t size = 1;
};

Formula::Formula() : Formula(top()) {}

Formula Formula::top() {
  static const auto node = [] { auto n = std::make_shared<Node>(); n->kind = FormulaKind::True; return std::shared_ptr<const Node>(n); }();
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = [] { auto n = std::make_shared<Node>(); n->kind = FormulaKind::False; return std::shared_ptr<const Node>(n); }();
  return Formula(node);
}

Formula Formula::atom(GroundAtom a) {
  std::vector<Term> terms;
  terms.reserve(a.args.size());
  for (auto& c : a.args) terms.push_back(Term::constant(std::move(c)));
  return atom(std::move(a.predicate), std::move(terms));
}

Formula Formula::atom(std::string predicate, std::vector<Term> terms) {
  Node n;
  n.kind = FormulaKind::Atom;
  n.name = std::move(predicate);
  for (const auto& t : terms)
    if (t.variable) n.ground = false;
  n.terms = std::move(terms);
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::literal(const Literal& l) {
  Formula a = atom(l.atom);
  return l.positive ? a : negation(a);
}

Formula Formula::eq(Term lhs, Term rhs) {
  Node n;
  n.kind = FormulaKind::Eq;
  n.ground = !lhs.variable && !rhs.variable;
  n.terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::make_shared<const Node>(std::move(n)));
}

std::shared_ptr<const Formula::Node> Formula::compound(FormulaKind kind, std::vector<Formula> children) {
  Node n;
  n.kind = kind;
  for (const auto& c : children) {
    n.ground = n.ground && c.is_ground();
    n.size += c.size();
  }
  n.children = std::move(children);
  return std::make_shared<const Node>(std::move(n));
}

Formula Formula::negation(Formula f) { return Formula(compound(FormulaKind::Not, {std::move(f)})); }

Formula Formula::conjunction(std::vector<Formula> parts) {
  if (parts.empty()) return top();
  return Formula(compound(FormulaKind::And, std::move(parts)));
}

Formula Formula::disjunction(std::vector<Formula> parts) {
  if (parts.empty()) return bottom();
  return Formula(compound(FormulaKind::Or, std::move(parts)));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return Formula(compound(FormulaKind::Implies, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  return Formula(compound(FormulaKind::Iff, {std::move(lhs), std::move(rhs)}));
}

Formula Formula::forall(std::string var, std::string sort, Formula body) {
  auto base = compound(FormulaKind::Forall, {std::move(body)});
  Node n = *base;
  n.name = std::move(var);
  n.sort = std::move(sort);
  n.ground = false;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::exists(std::string var, std::string sort, Formula body) {
  auto base = compound(FormulaKind::Exists, {std::move(body)});
  Node n = *base;
  n.name = std::move(var);
  n.sort = std::move(sort);
  n.ground = false;
  return Formula(std::make_shared<const Node>(std::move(n)));
}

FormulaKind Formula::kind() const { return node_->kind; }
bool Formula::is_ground() const { return node_->ground; }
std::size_t Formula::size() const { return node_->size; }

const std::string& Formula::predicate() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }

GroundAtom Formula::ground_atom() const {
  if (node_->kind != FormulaKind::Atom) throw std::logic_error("ground_atom on non-atom");
  GroundAtom a{node_->name, {}};
  for (const auto& t : node_->terms) {
    if (t.variable) throw WellFormednessError("unbound variable '" + t.name + "' in " + node_->name);
    a.args.push_back(t.name);
  }
  return a;
}

const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::string& Formula::var() const { return node_->name; }
const std::string& Formula::sort() const { return node_->sort; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.name != y.name || x.sort != y.sort ||
      x.terms != y.terms || x.children.size() != y.children.size())
    return false;
  for (std::size_t i = 0; i < x.children.size(); ++i)
    if (!(x.children[i] == y.children[i])) return false;
  return true;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&&(const Formula& a, const Formula& b) { return Formula::conjunction({a, b}); }
Formula operator||(const Formula& a, const Formula& b) { return Formula::disjunction({a, b}); }

namespace {

int precedence(FormulaKind k) {
  switch (k) {
    case FormulaKind::Iff: return 1;
    case FormulaKind::Implies: return 2;
    case FormulaKind::Or: return 3;
    case FormulaKind::And: return 4;
    case FormulaKind::Not: return 5;
    case FormulaKind::Forall:
    case FormulaKind::Exists: return 0;
    default: return 6;
  }
}

void render(const Formula& f, std::string& out);

void render_child(const Formula& c, int parent, std::string& out, bool strict) {
  int p = precedence(c.kind());
  bool paren = strict ? p <= parent : p < parent;
  if (paren) out += '(';
  render(c, out);
  if (paren) out += ')';
}

void render(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::True: out += "true"; return;
    case FormulaKind::False: out += "false"; return;
    case FormulaKind::Atom: {
      out += f.predicate();
      if (f.terms().empty()) return;
      out += '(';
      for (std::size_t i = 0; i < f.terms().size(); ++i) {
        if (i) out += ',';
        out += f.terms()[i].name;
      }
      out += ')';
      return;
    }
    case FormulaKind::Eq:
      out += f.terms()[0].name + " = " + f.terms()[1].name;
      return;
    case FormulaKind::Not:
      out += '~';
      render_child(f.child(0), precedence(FormulaKind::Not), out, false);
      return;
    case FormulaKind::And:
    case FormulaKind::Or: {
      const char* sep = f.kind() == FormulaKind::And ? " & " : " | ";
      for (std::size_t i = 0; i < f.children().size(); ++i) {
        if (i) out += sep;
        render_child(f.child(i), precedence(f.kind()), out, true);
      }
      return;
    }
    case FormulaKind::Implies:
    case FormulaKind::Iff:
      render_child(f.child(0), precedence(f.kind()), out, true);
      out += f.kind() == FormulaKind::Implies ? " -> " : " <-> ";
      render_child(f.child(1), precedence(f.kind()), out, true);
      return;
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
      out += f.var() + ":" + f.sort() + ". ";
      render(f.body(), out);
      return;
  }
}

void collect_atoms(const Formula& f, std::vector<GroundAtom>& out,
                   std::unordered_set<GroundAtom, GroundAtomHash>& seen,
                   std::unordered_set<const void*>& visited) {
  if (f.kind() == FormulaKind::Atom) {
    GroundAtom a = f.ground_atom();
    if (seen.insert(a).second) out.push_back(std::move(a));
    return;
  }
  if (f.children().empty() || !visited.insert(f.id()).second) return;
  for (const auto& c : f.children()) collect_atoms(c, out, seen, visited);
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

std::vector<GroundAtom> atoms_of(const Formula& f) {
  std::vector<GroundAtom> out;
  std::unordered_set<GroundAtom, GroundAtomHash> seen;
  std::unordered_set<const void*> visited;
  collect_atoms(f, out, seen, visited);
  return out;
}

std::optional<Literal> as_literal(const Formula& f) {
  if (f.kind() == FormulaKind::Atom && f.is_ground()) return Literal{f.ground_atom(), true};
  if (f.kind() == FormulaKind::Not && f.child(0).kind() == FormulaKind::Atom && f.is_ground())
    return Literal{f.child(0).ground_atom(), false};
  return std::nullopt;
}

Formula substitute(const Formula& f, const std::string& var, const std::string& constant) {
  if (f.is_ground()) return f;
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False: return f;
    case FormulaKind::Atom:
    case FormulaKind::Eq: {
      std::vector<Term> terms = f.terms();
      for (auto& t : terms)
        if (t.variable && t.name == var) t = Term::constant(constant);
      return f.kind() == FormulaKind::Atom ? Formula::atom(f.predicate(), std::move(terms))
                                           : Formula::eq(terms[0], terms[1]);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      if (f.var() == var) return f;  // shadowed
      Formula body = substitute(f.body(), var, constant);
      return f.kind() == FormulaKind::Forall ? Formula::forall(f.var(), f.sort(), body)
                                             : Formula::exists(f.var(), f.sort(), body);
    }
    case FormulaKind::Not: return Formula::negation(substitute(f.child(0), var, constant));
    case FormulaKind::Implies:
      return Formula::implies(substitute(f.child(0), var, constant), substitute(f.child(1), var, constant));
    case FormulaKind::Iff:
      return Formula::iff(substitute(f.child(0), var, constant), substitute(f.child(1), var, constant));
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      parts.reserve(f.children().size());
      for (const auto& c : f.children()) parts.push_back(substitute(c, var, constant));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                          : Formula::disjunction(std::move(parts));
    }
  }
  return f;
}

Formula simplify(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom: return f;
    case FormulaKind::Eq: {
      const auto& t = f.terms();
      if (t[0].variable || t[1].variable) {
        if (t[0] == t[1]) return Formula::top();
        return f;
      }
      return t[0].name == t[1].name ? Formula::top() : Formula::bottom();
    }
    case FormulaKind::Not: {
      Formula c = simplify(f.child(0));
      if (c.kind() == FormulaKind::True) return Formula::bottom();
      if (c.kind() == FormulaKind::False) return Formula::top();
      return Formula::negation(c);
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      bool is_and = f.kind() == FormulaKind::And;
      FormulaKind unit = is_and ? FormulaKind::True : FormulaKind::False;
      FormulaKind absorbing = is_and ? FormulaKind::False : FormulaKind::True;
      std::vector<Formula> parts;
      for (const auto& c0 : f.children()) {
        Formula c = simplify(c0);
        if (c.kind() == absorbing) return c;
        if (c.kind() == unit) continue;
        if (c.kind() == f.kind()) {
          for (const auto& g : c.children()) parts.push_back(g);
        } else {
          parts.push_back(c);
        }
      }
      if (parts.size() == 1) return parts[0];
      return is_and ? Formula::conjunction(std::move(parts)) : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Implies: {
      Formula a = simplify(f.child(0));
      Formula b = simplify(f.child(1));
      if (a.kind() == FormulaKind::False || b.kind() == FormulaKind::True) return Formula::top();
      if (a.kind() == FormulaKind::True) return b;
      if (b.kind() == FormulaKind::False) return simplify(Formula::negation(a));
      return Formula::implies(a, b);
    }
    case FormulaKind::Iff: {
      Formula a = simplify(f.child(0));
      Formula b = simplify(f.child(1));
      if (a.kind() == FormulaKind::True) return b;
      if (b.kind() == FormulaKind::True) return a;
      if (a.kind() == FormulaKind::False) return simplify(Formula::negation(b));
      if (b.kind() == FormulaKind::False) return simplify(Formula::negation(a));
      return Formula::iff(a, b);
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      Formula body = simplify(f.body());
      if (body.kind() == FormulaKind::True || body.kind() == FormulaKind::False) return body;
      return f.kind() == FormulaKind::Forall ? Formula::forall(f.var(), f.sort(), body)
                                             : Formula::exists(f.var(), f.sort(), body);
    }
  }
  return f;
}

Formula expand_connectives(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True:
    case FormulaKind::False:
    case FormulaKind::Atom:
    case FormulaKind::Eq: return f;
    case FormulaKind::Not: return Formula::negation(expand_connectives(f.child(0)));
    case FormulaKind::Implies:
      return Formula::disjunction(
          {Formula::negation(expand_connectives(f.child(0))), expand_connectives(f.child(1))});
    case FormulaKind::Iff: {
      Formula a = expand_connectives(f.child(0));
      Formula b = expand_connectives(f.child(1));
      return Formula::conjunction({Formula::disjunction({Formula::negation(a), b}),
                                   Formula::disjunction({a, Formula::negation(b)})});
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Formula> parts;
      for (const auto& c : f.children()) parts.push_back(expand_connectives(c));
      return f.kind() == FormulaKind::And ? Formula::conjunction(std::move(parts))
                                          : Formula::disjunction(std::move(parts));
    }
    case FormulaKind::Forall:
      return Formula::forall(f.var(), f.sort(), expand_connectives(f.body()));
    case FormulaKind::Exists:
      return Formula::exists(f.var(), f.sort(), expand_connectives(f.body()));
  }
  return f;
}

}  // namespace absprob
