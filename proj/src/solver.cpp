#include "absprob/solver.hpp"

#include <cstdlib>
#include <string>

#include "absprob/detail/propositional.hpp"
#include "absprob/errors.hpp"

namespace absprob {

std::size_t default_enumeration_cap() {
  if (const char* env = std::getenv("ABSPROB_ENUM_CAP")) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(env, &used);
      if (used == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return kDefaultEnumerationCap;
}

namespace {

detail::Cnf encode(const Universe& universe, const std::vector<Formula>& sentences, const Formula& extra) {
  detail::CnfEncoder enc(universe);
  for (const auto& s : sentences) enc.add(s);
  enc.add(extra);
  return enc.cnf();
}

Universe mentioned_universe(const Formula& f) {
  if (!f.is_ground()) throw WellFormednessError("formula is not ground: " + to_string(f));
  return Universe(atoms_of(f));
}

}  // namespace

bool is_satisfiable(const Formula& f) {
  Universe u = mentioned_universe(f);
  detail::SatSolver solver(encode(u, {}, f));
  return solver.satisfiable();
}

bool is_satisfiable(const Formula& f, const Theory& within) {
  check_formula(f, within.universe());
  detail::SatSolver solver(encode(within.universe(), within.sentences(), f));
  return solver.satisfiable();
}

bool entails(const Theory& theory, const Formula& f) { return !is_satisfiable(Formula::negation(f), theory); }

bool is_valid(const Formula& f) { return !is_satisfiable(Formula::negation(f)); }

bool equivalent(const Formula& a, const Formula& b) { return is_valid(Formula::iff(a, b)); }

std::optional<Model> find_model(const Theory& theory, const Formula& extra) {
  check_formula(extra, theory.universe());
  detail::SatSolver solver(encode(theory.universe(), theory.sentences(), extra));
  auto values = solver.first();
  if (!values) return std::nullopt;
  return Model(theory.universe_ptr(), std::move(*values));
}

void for_each_model(const Theory& theory, const Formula& extra,
                    const std::function<bool(const Model&)>& visit, std::size_t cap) {
  if (theory.universe().size() > cap) throw CapExceeded(theory.universe().size(), cap);
  check_formula(extra, theory.universe());
  detail::SatSolver solver(encode(theory.universe(), theory.sentences(), extra));
  solver.enumerate([&](const std::vector<bool>& values) { return visit(Model(theory.universe_ptr(), values)); });
}

std::vector<Model> all_models(const Theory& theory, std::size_t cap) {
  std::vector<Model> out;
  for_each_model(theory, Formula::top(), [&](const Model& m) {
    out.push_back(m);
    return true;
  }, cap);
  return out;
}

}  // namespace absprob
