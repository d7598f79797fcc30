#pragma once

#include <cstdint>
#include <vector>

namespace naifs {

// Exact optimum of the covering LP
//     min sum_i cost[i] * x_i   s.t.  sum_{i : member(i,j)} x_i >= 1,  x >= 0
// solved through its packing dual (slack basis is immediately feasible).
// `cover[i]` lists the constraint indices satisfied by column i; n_rows is
// the number of constraints. Throws NoCoverError when some constraint is
// uncoverable and ValidationError when the tableau would be too large.
double covering_lp_optimum(const std::vector<std::vector<std::uint32_t>>& cover,
                           const std::vector<double>& cost, std::size_t n_rows);

} // namespace naifs
