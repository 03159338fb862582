#include "satdiv/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace satdiv {

FixSet bitflip_fixset(const Assignment& x, Rng& rng) {
  const std::size_t n = x.size();
  FixSet y;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.index(n) == 0)
      y.entries.push_back({static_cast<int>(i) + 1, !x[i]});
  return y;
}

namespace {

// Uniformly random variable in 1..n not fixed by y. Rejection sampling;
// callers guarantee at least one unfixed variable exists.
int random_unfixed(const FixSet& y, int n, Rng& rng) {
  for (;;) {
    int var = rng.below_int(n) + 1;
    if (!y.contains_var(var))
      return var;
  }
}

} // namespace

FixSet fixset_mutation(const FixSet& y, int n, Rng& rng) {
  if (n < 1)
    throw std::invalid_argument("fixset_mutation requires n >= 1");
  const std::size_t l = y.size();

  enum Action { add = 0, remove = 1, swap_var = 2 };
  // Infeasible actions are excluded and the choice redrawn uniformly among
  // the rest, so the mutation always changes y.
  std::vector<Action> feasible;
  if (l < static_cast<std::size_t>(n))
    feasible.push_back(add);
  if (l > 0)
    feasible.push_back(remove);
  if (l > 0 && l < static_cast<std::size_t>(n))
    feasible.push_back(swap_var);

  FixSet out = y;
  switch (feasible[rng.index(feasible.size())]) {
  case add:
    out.entries.push_back({random_unfixed(y, n, rng), rng.coin()});
    break;
  case remove:
    out.entries.erase(out.entries.begin() +
                      static_cast<std::ptrdiff_t>(rng.index(l)));
    break;
  case swap_var: {
    // Replace the index, keep the value.
    std::size_t pos = rng.index(l);
    out.entries[pos].var = random_unfixed(y, n, rng);
    break;
  }
  }
  return out;
}

FixSet fixset_crossover(const FixSet& a, const FixSet& b, Rng& rng) {
  const std::size_t len = std::max(a.size(), b.size());
  FixSet out;
  for (std::size_t pos = 0; pos < len; ++pos) {
    const FixSet& parent = rng.coin() ? a : b;
    if (pos >= parent.size())
      continue;  // padded empty cell chosen
    const FixSet::Entry& cell = parent.entries[pos];
    if (!out.contains_var(cell.var))  // index collision: keep the earlier cell
      out.entries.push_back(cell);
  }
  return out;
}

FixSet random_fixset(int size, int n, Rng& rng) {
  if (size < 0 || size > n)
    throw std::invalid_argument("fix-set size must be in 0..n");
  // Partial Fisher-Yates over 1..n picks distinct indices uniformly.
  std::vector<int> vars(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    vars[static_cast<std::size_t>(i)] = i + 1;
  FixSet y;
  for (int i = 0; i < size; ++i) {
    std::size_t j = static_cast<std::size_t>(i) +
                    rng.index(static_cast<std::size_t>(n - i));
    std::swap(vars[static_cast<std::size_t>(i)], vars[j]);
    y.entries.push_back({vars[static_cast<std::size_t>(i)], rng.coin()});
  }
  return y;
}

} // namespace satdiv
