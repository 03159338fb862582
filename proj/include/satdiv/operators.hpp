#pragma once

#include "satdiv/cnf.hpp"
#include "satdiv/rng.hpp"

namespace satdiv {

// Standard bit-flip selection: each variable enters the fix-set
// independently with probability 1/n, carrying the flipped value.
FixSet bitflip_fixset(const Assignment& x, Rng& rng);

// One of {add, remove, switch} uniformly at random; infeasible actions on
// degenerate inputs (empty or full fix-set) are excluded and the choice is
// redrawn among the feasible ones, so mutation always changes y.
// Switch replaces the index of a random entry with a random unfixed
// variable and keeps the entry's value.
FixSet fixset_mutation(const FixSet& y, int n, Rng& rng);

// Pads the shorter parent with empty cells, takes each position from either
// parent with probability 1/2, drops empty cells, and on an index collision
// keeps the earlier position's cell.
FixSet fixset_crossover(const FixSet& a, const FixSet& b, Rng& rng);

// Uniformly random fix-set of the given size: distinct indices sampled
// without replacement, independent fair-coin values (EDO initialization).
FixSet random_fixset(int size, int n, Rng& rng);

} // namespace satdiv
