#include "absprob/wmc.hpp"

#include <algorithm>
#include <cstdint>
#include <type_traits>

#include "absprob/detail/counter.hpp"
#include "absprob/detail/propositional.hpp"
#include "absprob/errors.hpp"

namespace absprob {

void WeightFn::set(const Literal& literal, Rational weight) {
  weight.canonicalize();
  if (weight < 0)
    throw WellFormednessError("negative weight " + to_string(weight) + " for " + to_string(literal));
  if (default_ == NegationDefault::Complement && literal.positive && weight > 1)
    throw WellFormednessError("weight " + to_string(weight) + " for " + to_string(literal) +
                              " lies outside [0,1] under the complement default");
  entries_[literal] = std::move(weight);
}

void WeightFn::set(const GroundAtom& atom, Rational positive, Rational negative) {
  set(Literal{atom, true}, std::move(positive));
  set(Literal{atom, false}, std::move(negative));
}

std::optional<Rational> WeightFn::explicit_weight(const Literal& literal) const {
  auto it = entries_.find(literal);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Rational WeightFn::weight(const Literal& literal) const {
  if (auto w = explicit_weight(literal)) return *w;
  if (!literal.positive && default_ == NegationDefault::Complement)
    if (auto p = explicit_weight(literal.complement())) return Rational(1 - *p);
  return Rational(1);
}

std::vector<std::pair<Rational, Rational>> WeightFn::resolve(const Universe& universe) const {
  for (const auto& [lit, w] : entries_)
    if (!universe.contains(lit.atom))
      throw WellFormednessError("weight given for " + to_string(lit) + ", which is outside the universe");
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(universe.size());
  for (const auto& a : universe.atoms()) out.emplace_back(weight(Literal{a, true}), weight(Literal{a, false}));
  return out;
}

Rational model_weight(const Model& model, const WeightFn& weights) {
  Rational w(1);
  for (const auto& l : model.literals()) {
    w *= weights.weight(l);
    if (w == 0) break;
  }
  return w;
}

namespace {

detail::Cnf encode(const Theory& theory, const Formula& extra) {
  check_formula(extra, theory.universe());
  detail::CnfEncoder enc(theory.universe());
  for (const auto& s : theory.sentences()) enc.add(s);
  enc.add(extra);
  return enc.cnf();
}

template <class Number>
Number count(const Theory& theory, const WeightFn& weights, const Formula& extra) {
  detail::Cnf cnf = encode(theory, extra);
  auto resolved = weights.resolve(theory.universe());
  std::vector<std::pair<Number, Number>> w;
  w.reserve(static_cast<std::size_t>(cnf.num_vars));
  for (const auto& [p, n] : resolved) {
    if constexpr (std::is_same_v<Number, double>) w.emplace_back(to_double(p), to_double(n));
    else w.emplace_back(p, n);
  }
  while (static_cast<int>(w.size()) < cnf.num_vars) w.emplace_back(Number(1), Number(1));
  return detail::Counter<Number>(cnf, std::move(w)).count();
}

// Formula tree flattened over atom indices, evaluated in Kleene logic.
struct Compiled {
  enum Op : std::uint8_t { True, False, Atom, Not, And, Or, Implies, Iff };
  struct Node {
    Op op = True;
    int atom = -1;
    std::vector<int> kids;
  };
  std::vector<Node> nodes;
  int root = -1;

  int add(const Formula& f, const Universe& u) {
    Node n;
    n.op = True;
    switch (f.kind()) {
      case FormulaKind::True: n.op = True; break;
      case FormulaKind::False: n.op = False; break;
      case FormulaKind::Atom:
        n.op = Atom;
        n.atom = static_cast<int>(u.index_of(f.ground_atom()));
        break;
      case FormulaKind::Eq:
        if (f.terms()[0].variable || f.terms()[1].variable)
          throw WellFormednessError("non-ground equality " + to_string(f));
        n.op = f.terms()[0].name == f.terms()[1].name ? True : False;
        break;
      case FormulaKind::Not: n.op = Not; break;
      case FormulaKind::And: n.op = And; break;
      case FormulaKind::Or: n.op = Or; break;
      case FormulaKind::Implies: n.op = Implies; break;
      case FormulaKind::Iff: n.op = Iff; break;
      default: throw WellFormednessError("formula is not ground: " + to_string(f));
    }
    if (n.op >= Not)
      for (const auto& c : f.children()) n.kids.push_back(add(c, u));
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }

  // 1 true, 0 false, -1 unknown
  int eval(int i, const std::vector<std::int8_t>& value) const {
    const Node& n = nodes[i];
    switch (n.op) {
      case True: return 1;
      case False: return 0;
      case Atom: return value[n.atom];
      case Not: {
        int v = eval(n.kids[0], value);
        return v < 0 ? -1 : 1 - v;
      }
      case And: {
        int r = 1;
        for (int k : n.kids) {
          int v = eval(k, value);
          if (v == 0) return 0;
          if (v < 0) r = -1;
        }
        return r;
      }
      case Or: {
        int r = 0;
        for (int k : n.kids) {
          int v = eval(k, value);
          if (v == 1) return 1;
          if (v < 0) r = -1;
        }
        return r;
      }
      case Implies: {
        int a = eval(n.kids[0], value);
        int b = eval(n.kids[1], value);
        if (a == 0 || b == 1) return 1;
        if (a == 1 && b == 0) return 0;
        return -1;
      }
      case Iff: {
        int a = eval(n.kids[0], value);
        int b = eval(n.kids[1], value);
        if (a < 0 || b < 0) return -1;
        return a == b ? 1 : 0;
      }
    }
    return -1;
  }
};

class Enumerator {
 public:
  Enumerator(const Theory& theory, const WeightFn& weights, const Formula& extra)
      : n_(theory.universe().size()), weights_(weights.resolve(theory.universe())), value_(n_, -1),
        watching_(n_) {
    std::vector<Formula> all = theory.sentences();
    all.push_back(extra);
    for (const auto& f : all) {
      Compiled c;
      c.root = c.add(f, theory.universe());
      std::size_t id = formulas_.size();
      formulas_.push_back(std::move(c));
      auto atoms = atoms_of(f);
      if (atoms.empty()) constant_.push_back(id);
      for (const auto& a : atoms) watching_[theory.universe().index_of(a)].push_back(id);
    }
  }

  Rational run() {
    for (auto id : constant_)
      if (formulas_[id].eval(formulas_[id].root, value_) == 0) return Rational(0);
    return dfs(0);
  }

 private:
  Rational dfs(std::size_t i) {
    if (i == n_) return Rational(1);
    Rational total(0);
    for (int phase : {1, 0}) {
      const Rational& w = phase ? weights_[i].first : weights_[i].second;
      if (w == 0) continue;
      value_[i] = static_cast<std::int8_t>(phase);
      bool ok = true;
      for (auto id : watching_[i])
        if (formulas_[id].eval(formulas_[id].root, value_) == 0) {
          ok = false;
          break;
        }
      if (ok) total += w * dfs(i + 1);
      value_[i] = -1;
    }
    return total;
  }

  std::size_t n_;
  std::vector<std::pair<Rational, Rational>> weights_;
  std::vector<std::int8_t> value_;
  std::vector<Compiled> formulas_;
  std::vector<std::vector<std::size_t>> watching_;
  std::vector<std::size_t> constant_;
};

}  // namespace

Rational wmc(const Theory& theory, const WeightFn& weights, const Formula& extra) {
  return count<Rational>(theory, weights, extra);
}

double wmc_float(const Theory& theory, const WeightFn& weights, const Formula& extra) {
  return count<double>(theory, weights, extra);
}

Rational wmc_enumerate(const Theory& theory, const WeightFn& weights, const Formula& extra) {
  check_formula(extra, theory.universe());
  return Enumerator(theory, weights, extra).run();
}

Rational probability(const Formula& phi, const Theory& theory, const WeightFn& weights) {
  return ProbabilitySpace(theory, weights).probability(phi);
}

Rational conditional(const Formula& phi, const Formula& evidence, const Theory& theory,
                     const WeightFn& weights) {
  Rational denom = wmc(theory, weights, evidence);
  if (denom == 0) throw ZeroEvidence("evidence " + to_string(evidence) + " has zero weighted count");
  return wmc(theory, weights, Formula::conjunction({phi, evidence})) / denom;
}

double probability_float(const Formula& phi, const Theory& theory, const WeightFn& weights) {
  double z = wmc_float(theory, weights);
  if (z == 0) throw ZeroPartition("theory has zero partition function");
  return wmc_float(theory, weights, phi) / z;
}

double conditional_float(const Formula& phi, const Formula& evidence, const Theory& theory,
                         const WeightFn& weights) {
  double denom = wmc_float(theory, weights, evidence);
  if (denom == 0) throw ZeroEvidence("evidence " + to_string(evidence) + " has zero weighted count");
  return wmc_float(theory, weights, Formula::conjunction({phi, evidence})) / denom;
}

ProbabilitySpace::ProbabilitySpace(Theory theory, WeightFn weights)
    : theory_(std::move(theory)), weights_(std::move(weights)), partition_(wmc(theory_, weights_)) {
  if (partition_ == 0) throw ZeroPartition("theory has zero partition function");
}

Rational ProbabilitySpace::mass(const Formula& phi) const { return wmc(theory_, weights_, phi); }

Rational ProbabilitySpace::probability(const Formula& phi) const { return mass(phi) / partition_; }

Rational ProbabilitySpace::conditional(const Formula& phi, const Formula& evidence) const {
  Rational denom = mass(evidence);
  if (denom == 0) throw ZeroEvidence("evidence " + to_string(evidence) + " has zero weighted count");
  return mass(Formula::conjunction({phi, evidence})) / denom;
}

}  // namespace absprob
