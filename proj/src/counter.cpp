#include "absprob/detail/counter.hpp"

#include <algorithm>
#include <deque>

#include "absprob/rational.hpp"

namespace absprob::detail {

std::size_t KeyHash::operator()(const std::vector<int>& key) const noexcept {
  std::size_t h = key.size();
  for (int x : key) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

template <class Number>
Counter<Number>::Counter(const Cnf& cnf, std::vector<std::pair<Number, Number>> weights)
    : num_vars_(cnf.num_vars),
      occurrences_(2 * static_cast<std::size_t>(cnf.num_vars)),
      var_clauses_(static_cast<std::size_t>(cnf.num_vars)),
      weights_(std::move(weights)),
      value_(static_cast<std::size_t>(cnf.num_vars), -1),
      mark_(static_cast<std::size_t>(cnf.num_vars), 0) {
  for (auto c : cnf.clauses) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    bool tautology = false;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] == negate(c[i - 1])) tautology = true;
    if (tautology) continue;
    if (c.empty()) unsat_ = true;
    int id = static_cast<int>(clauses_.size());
    for (Lit l : c) {
      occurrences_[l].push_back(id);
      var_clauses_[lit_var(l)].push_back(id);
    }
    clauses_.push_back(std::move(c));
  }
  clause_mark_.assign(clauses_.size(), 0);
  for (const auto& c : clauses_)
    if (c.size() == 1 && !assign(c[0])) unsat_ = true;
  if (!unsat_ && !propagate()) unsat_ = true;
}

template <class Number>
bool Counter<Number>::assign(Lit l) {
  auto& v = value_[lit_var(l)];
  std::int8_t want = lit_positive(l) ? 1 : 0;
  if (v >= 0) return v == want;
  v = want;
  trail_.push_back(l);
  return true;
}

template <class Number>
bool Counter<Number>::propagate() {
  while (head_ < trail_.size()) {
    Lit l = trail_[head_++];
    for (int id : occurrences_[negate(l)]) {
      int unassigned = 0;
      Lit last = 0;
      bool sat = false;
      for (Lit x : clauses_[id]) {
        std::int8_t v = value_[lit_var(x)];
        if (v < 0) {
          ++unassigned;
          last = x;
        } else if ((v == 1) == lit_positive(x)) {
          sat = true;
          break;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) assign(last);
    }
  }
  return true;
}

template <class Number>
void Counter<Number>::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    value_[lit_var(trail_.back())] = -1;
    trail_.pop_back();
  }
  head_ = std::min(head_, mark);
}

template <class Number>
bool Counter<Number>::satisfied(int clause) const {
  for (Lit x : clauses_[clause]) {
    std::int8_t v = value_[lit_var(x)];
    if (v >= 0 && (v == 1) == lit_positive(x)) return true;
  }
  return false;
}

template <class Number>
Number Counter<Number>::weight_of(Lit l) const {
  const auto& w = weights_[lit_var(l)];
  return lit_positive(l) ? w.first : w.second;
}

template <class Number>
std::vector<std::pair<std::vector<int>, std::vector<int>>> Counter<Number>::components(
    const std::vector<int>& vars, const std::vector<int>& clauses, Number& factor) {
  stamp_ += 2;
  const int residual = stamp_;
  const int visited = stamp_ + 1;
  for (int c : clauses)
    if (!satisfied(c)) clause_mark_[c] = residual;

  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  std::deque<int> queue;
  for (int v : vars) {
    if (value_[v] >= 0 || mark_[v] == visited) continue;
    mark_[v] = visited;
    std::vector<int> comp_vars{v};
    std::vector<int> comp_clauses;
    queue.push_back(v);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int c : var_clauses_[u]) {
        if (clause_mark_[c] != residual) continue;
        clause_mark_[c] = visited;
        comp_clauses.push_back(c);
        for (Lit x : clauses_[c]) {
          int y = lit_var(x);
          if (value_[y] < 0 && mark_[y] != visited) {
            mark_[y] = visited;
            comp_vars.push_back(y);
            queue.push_back(y);
          }
        }
      }
    }
    if (comp_clauses.empty()) {
      factor *= weights_[v].first + weights_[v].second;
      continue;
    }
    std::sort(comp_vars.begin(), comp_vars.end());
    std::sort(comp_clauses.begin(), comp_clauses.end());
    out.emplace_back(std::move(comp_vars), std::move(comp_clauses));
  }
  return out;
}

template <class Number>
Number Counter<Number>::count_component(std::vector<int> vars, std::vector<int> clauses) {
  std::vector<int> key = clauses;
  key.push_back(-1);
  key.insert(key.end(), vars.begin(), vars.end());
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  // branch on the variable occurring in the most open clauses
  int branch = vars.front();
  std::size_t best = 0;
  for (int v : vars) {
    std::size_t n = 0;
    for (int c : var_clauses_[v])
      if (std::binary_search(clauses.begin(), clauses.end(), c)) ++n;
    if (n > best) {
      best = n;
      branch = v;
    }
  }

  Number total(0);
  for (bool phase : {true, false}) {
    std::size_t mark = trail_.size();
    if (assign(make_lit(branch, phase)) && propagate()) {
      Number w(1);
      for (std::size_t i = mark; i < trail_.size(); ++i) w *= weight_of(trail_[i]);
      if (w != 0) {
        auto parts = components(vars, clauses, w);
        for (auto& [pv, pc] : parts) {
          if (w == 0) break;
          w *= count_component(std::move(pv), std::move(pc));
        }
        total += w;
      }
    }
    undo(mark);
  }
  cache_.emplace(std::move(key), total);
  return total;
}

template <class Number>
Number Counter<Number>::count() {
  if (unsat_) return Number(0);
  Number w(1);
  for (Lit l : trail_) w *= weight_of(l);
  if (w == 0) return w;
  std::vector<int> vars(static_cast<std::size_t>(num_vars_));
  for (int v = 0; v < num_vars_; ++v) vars[v] = v;
  std::vector<int> clauses(clauses_.size());
  for (std::size_t c = 0; c < clauses_.size(); ++c) clauses[c] = static_cast<int>(c);
  auto parts = components(vars, clauses, w);
  for (auto& [pv, pc] : parts) {
    if (w == 0) break;
    w *= count_component(std::move(pv), std::move(pc));
  }
  return w;
}

template class Counter<Rational>;
template class Counter<double>;

}  // namespace absprob::detail
