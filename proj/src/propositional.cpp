#include "absprob/detail/propositional.hpp"

#include <algorithm>

#include "absprob/errors.hpp"

namespace absprob::detail {

CnfEncoder::CnfEncoder(const Universe& universe) : universe_(universe) {
  cnf_.num_primary = static_cast<int>(universe.size());
  cnf_.num_vars = cnf_.num_primary;
}

int CnfEncoder::fresh() { return cnf_.num_vars++; }

Lit CnfEncoder::constant(bool value) {
  if (true_var_ < 0) {
    true_var_ = fresh();
    clause({make_lit(true_var_, true)});
  }
  return make_lit(true_var_, value);
}

void CnfEncoder::add(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return;
    case FormulaKind::False: clause({}); return;
    case FormulaKind::And:
      for (const auto& c : f.children()) add(c);
      return;
    case FormulaKind::Or: {
      std::vector<Lit> c;
      for (const auto& g : f.children()) c.push_back(encode(g));
      clause(std::move(c));
      return;
    }
    case FormulaKind::Implies:
      clause({negate(encode(f.child(0))), encode(f.child(1))});
      return;
    case FormulaKind::Not: {
      const Formula& g = f.child(0);
      if (g.kind() == FormulaKind::Not) {
        add(g.child(0));
        return;
      }
      if (g.kind() == FormulaKind::Or) {
        for (const auto& h : g.children()) add(Formula::negation(h));
        return;
      }
      if (g.kind() == FormulaKind::And) {
        std::vector<Lit> c;
        for (const auto& h : g.children()) c.push_back(negate(encode(h)));
        clause(std::move(c));
        return;
      }
      clause({negate(encode(g))});
      return;
    }
    default: clause({encode(f)}); return;
  }
}

Lit CnfEncoder::encode(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::True: return constant(true);
    case FormulaKind::False: return constant(false);
    case FormulaKind::Atom: return make_lit(static_cast<int>(universe_.index_of(f.ground_atom())), true);
    case FormulaKind::Eq: {
      const auto& t = f.terms();
      if (t[0].variable || t[1].variable) throw WellFormednessError("non-ground equality " + to_string(f));
      return constant(t[0].name == t[1].name);
    }
    case FormulaKind::Not: return negate(encode(f.child(0)));
    case FormulaKind::Forall:
    case FormulaKind::Exists: throw WellFormednessError("formula is not ground: " + to_string(f));
    default: break;
  }
  if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;

  Lit g;
  switch (f.kind()) {
    case FormulaKind::And:
    case FormulaKind::Or: {
      std::vector<Lit> in;
      for (const auto& c : f.children()) in.push_back(encode(c));
      g = make_lit(fresh(), true);
      // And: g -> x_i, (all x_i) -> g.  Or is the dual.
      bool conj = f.kind() == FormulaKind::And;
      std::vector<Lit> big{conj ? g : negate(g)};
      for (Lit x : in) {
        clause(conj ? std::vector<Lit>{negate(g), x} : std::vector<Lit>{g, negate(x)});
        big.push_back(conj ? negate(x) : x);
      }
      clause(std::move(big));
      break;
    }
    case FormulaKind::Implies: {
      Lit a = encode(f.child(0));
      Lit b = encode(f.child(1));
      g = make_lit(fresh(), true);
      clause({negate(g), negate(a), b});
      clause({g, a});
      clause({g, negate(b)});
      break;
    }
    case FormulaKind::Iff: {
      Lit a = encode(f.child(0));
      Lit b = encode(f.child(1));
      g = make_lit(fresh(), true);
      clause({negate(g), negate(a), b});
      clause({negate(g), a, negate(b)});
      clause({g, a, b});
      clause({g, negate(a), negate(b)});
      break;
    }
    default: throw std::logic_error("encode: unexpected formula kind");
  }
  memo_.emplace(f.id(), g);
  retained_.push_back(f);
  return g;
}

SatSolver::SatSolver(const Cnf& cnf)
    : num_primary_(cnf.num_primary),
      num_vars_(cnf.num_vars),
      occurrences_(2 * static_cast<std::size_t>(cnf.num_vars)),
      value_(static_cast<std::size_t>(cnf.num_vars), -1) {
  for (auto c : cnf.clauses) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    bool tautology = false;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] == negate(c[i - 1])) tautology = true;
    if (tautology) continue;
    int id = static_cast<int>(clauses_.size());
    for (Lit l : c) occurrences_[l].push_back(id);
    clauses_.push_back(std::move(c));
  }
  for (const auto& c : clauses_) {
    if (c.empty()) conflict_ = true;
    else if (c.size() == 1 && !assign(c[0])) conflict_ = true;
  }
  if (!conflict_ && !propagate()) conflict_ = true;
}

bool SatSolver::assign(Lit l) {
  auto& v = value_[lit_var(l)];
  std::int8_t want = lit_positive(l) ? 1 : 0;
  if (v >= 0) return v == want;
  v = want;
  trail_.push_back(l);
  return true;
}

bool SatSolver::propagate() {
  while (head_ < trail_.size()) {
    Lit l = trail_[head_++];
    for (int id : occurrences_[negate(l)]) {
      const auto& c = clauses_[id];
      int unassigned = 0;
      Lit last = 0;
      bool satisfied = false;
      for (Lit x : c) {
        std::int8_t v = value_[lit_var(x)];
        if (v < 0) {
          ++unassigned;
          last = x;
        } else if ((v == 1) == lit_positive(x)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) assign(last);
    }
  }
  return true;
}

void SatSolver::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    value_[lit_var(trail_.back())] = -1;
    trail_.pop_back();
  }
  head_ = std::min(head_, mark);
}

bool SatSolver::complete(int from) {
  int v = from;
  while (v < num_vars_ && value_[v] >= 0) ++v;
  if (v == num_vars_) return true;
  for (bool phase : {true, false}) {
    std::size_t mark = trail_.size();
    if (assign(make_lit(v, phase)) && propagate() && complete(v + 1)) return true;
    undo(mark);
  }
  return false;
}

bool SatSolver::search(int from, const std::function<bool(const std::vector<bool>&)>& visit) {
  int v = from;
  while (v < num_primary_ && value_[v] >= 0) ++v;
  if (v == num_primary_) {
    std::size_t mark = trail_.size();
    bool stop = false;
    if (complete(num_primary_)) {
      std::vector<bool> model(static_cast<std::size_t>(num_primary_));
      for (int i = 0; i < num_primary_; ++i) model[i] = value_[i] == 1;
      stop = !visit(model);
    }
    undo(mark);
    return stop;
  }
  for (bool phase : {true, false}) {
    std::size_t mark = trail_.size();
    if (assign(make_lit(v, phase)) && propagate()) {
      if (search(v + 1, visit)) {
        undo(mark);
        return true;
      }
    }
    undo(mark);
  }
  return false;
}

void SatSolver::enumerate(const std::function<bool(const std::vector<bool>&)>& visit) {
  if (conflict_) return;
  std::size_t mark = trail_.size();
  search(0, visit);
  undo(mark);
}

std::optional<std::vector<bool>> SatSolver::first() {
  std::optional<std::vector<bool>> out;
  enumerate([&](const std::vector<bool>& m) {
    out = m;
    return false;
  });
  return out;
}

}  // namespace absprob::detail
