#include "bundled.hpp"

#include "errors.hpp"

namespace naifs {

namespace {

const char* kTwoShiftZero = R"cfg(# Full 2-shift, zero potential: entropy and pressure both equal log 2.
seed = 0

[system]
space = symbolic
alphabet = 2
string_length = 300
fill = 0
period = F0
family.F0 = shift
map.shift.kind = shift

[potential]
kind = zero

[target]
kind = whole-space

[grids]
n_range = 4..9
eps_grid = 0.5 0.25 0.125 0.0625 0.03125
delta_grid = 0.5 0.25 0.125 0.0625 0.03125
N_grid = 3..6
N_window = 2
r_grid = 0.25 0.125
n_window = 128 256

[task]
kind = pp-pressure
with_prime = true

[measures]
kind = bernoulli-grid
p_from = 0.05
p_to = 0.95
p_count = 19
mc_count = 200
mc_seed = 1
combined_tol = 0.1

[output]
dir = out/twoshift-zero
)cfg";

const char* kTwoShiftFirstSymbol = R"cfg(# Full 2-shift with the first-symbol potential (0, 1): pressure log(1 + e).
seed = 0

[system]
space = symbolic
alphabet = 2
string_length = 300
fill = 0
period = F0
family.F0 = shift
map.shift.kind = shift

[potential]
kind = first-symbol
table = 0 1

[target]
kind = whole-space

[grids]
n_range = 4..9
eps_grid = 0.5 0.25 0.125 0.0625 0.03125
delta_grid = 0.5 0.25 0.125 0.0625 0.03125
N_grid = 3..6
N_window = 2
r_grid = 0.25 0.125
n_window = 128 256

[task]
kind = pp-pressure
with_prime = true

[measures]
kind = bernoulli-grid
p_from = 0.05
p_to = 0.95
p_count = 19
mc_count = 200
mc_seed = 1
combined_tol = 0.1

[output]
dir = out/twoshift-first-symbol
)cfg";

const char* kCirclePair = R"cfg(# Constant schedule {x -> 2x, x -> 3x} on the circle: sup-entropy log 3.
seed = 0

[system]
space = circle
period = F0
family.F0 = E2 E3
map.E2.kind = affine-mod-1
map.E2.a = 2
map.E3.kind = affine-mod-1
map.E3.a = 3

[potential]
kind = zero

[target]
kind = whole-space
pool_count = 10000

[grids]
n_range = 2..6
eps_grid = 0.25 0.125
delta_grid = 0.5 0.25
N_grid = 2 3 4
N_window = 2

[task]
kind = sup-entropy
metric = dn-star

[output]
dir = out/circle-pair
)cfg";

const char* kAlternating = R"cfg(# Alternating singleton families ({x->2x}, {x->3x}): sup-entropy (log 6)/2.
seed = 0

[system]
space = circle
period = F2 F3
family.F2 = E2
family.F3 = E3
map.E2.kind = affine-mod-1
map.E2.a = 2
map.E3.kind = affine-mod-1
map.E3.a = 3

[potential]
kind = zero

[target]
kind = whole-space
pool_count = 10000

[grids]
n_range = 0..8
eps_grid = 0.5 0.25
delta_grid = 0.5 0.25
N_grid = 2 3 4
N_window = 2

[task]
kind = sup-entropy
metric = dn-star

[output]
dir = out/alternating
)cfg";

const char* kCheckTwoShift = R"cfg(# Property-check suite on a small 2-shift instance.
seed = 0

[system]
space = symbolic
alphabet = 2
string_length = 160
fill = 0
period = F0
family.F0 = shift
map.shift.kind = shift

[potential]
kind = first-symbol
table = 0 1

[target]
kind = whole-space
depth = 10

[grids]
n_range = 2..6
eps_grid = 0.5 0.25
delta_grid = 0.5 0.25
N_grid = 3 4 5
N_window = 2
r_grid = 0.25 0.125
n_window = 32 64

[task]
kind = check-suite

[output]
dir = out/check-twoshift
)cfg";

} // namespace

const std::vector<BundledConfig>& bundled_configs() {
    static const std::vector<BundledConfig> configs = {
        {"twoshift-zero", kTwoShiftZero},
        {"twoshift-first-symbol", kTwoShiftFirstSymbol},
        {"circle-pair", kCirclePair},
        {"alternating", kAlternating},
        {"check-twoshift", kCheckTwoShift},
    };
    return configs;
}

const std::string& bundled_config(const std::string& name) {
    for (const BundledConfig& c : bundled_configs())
        if (c.name == name) return c.text;
    throw ValidationError("unknown bundled config '" + name + "'");
}

} // namespace naifs
