#include "measures.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace naifs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// exact power-of-1/2 test and exponent
bool dyadic_exponent(double r, int* m_out) {
    if (r <= 0 || r > 1) return false;
    const double m = -std::log2(r);
    const double mr = std::round(m);
    if (std::fabs(m - mr) > 1e-9) return false;
    *m_out = static_cast<int>(mr);
    return true;
}

} // namespace

void BorelMeasure::validate(const NaifsSystem& sys, std::vector<std::string>& errors) const {
    switch (kind) {
        case MeasureKind::Atomic: {
            if (atoms.empty()) errors.push_back("measure: atomic needs at least one atom");
            if (atoms.size() != weights.size())
                errors.push_back("measure: atom/weight counts differ");
            double total = 0.0;
            for (double w : weights) {
                if (w <= 0) errors.push_back("measure: atomic weights must be positive");
                total += w;
            }
            if (std::fabs(total - 1.0) > 1e-9)
                errors.push_back("measure: atomic weights must sum to 1 (got " +
                                 std::to_string(total) + ")");
            for (const Point& a : atoms)
                if (!sys.space().contains(a)) errors.push_back("measure: atom outside the space");
            break;
        }
        case MeasureKind::Bernoulli: {
            if (sys.space().kind != SpaceKind::Symbolic) {
                errors.push_back("measure: bernoulli needs a symbolic space");
                break;
            }
            if (probs.size() != static_cast<std::size_t>(sys.space().alphabet))
                errors.push_back("measure: bernoulli needs one probability per symbol");
            double total = 0.0;
            for (double p : probs) {
                if (p < 0) errors.push_back("measure: bernoulli probabilities must be >= 0");
                total += p;
            }
            if (std::fabs(total - 1.0) > 1e-9)
                errors.push_back("measure: bernoulli probabilities must sum to 1");
            break;
        }
        case MeasureKind::Sampled: {
            if (generator != "uniform")
                errors.push_back("measure: unknown generator '" + generator + "'");
            if (sample_count < 1) errors.push_back("measure: sampled needs sample_count >= 1");
            break;
        }
    }
}

Point BorelMeasure::draw(const NaifsSystem& sys, std::uint64_t index) const {
    switch (kind) {
        case MeasureKind::Atomic: {
            // inverse-CDF over the atom weights
            const double u = uniform01(seed, 404, index);
            double acc = 0.0;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                acc += weights[i];
                if (u < acc) return atoms[i];
            }
            return atoms.back();
        }
        case MeasureKind::Bernoulli: {
            const StateSpace& space = sys.space();
            Point p;
            p.sym.resize(static_cast<std::size_t>(space.string_length));
            for (int j = 0; j < space.string_length; ++j) {
                const double u = uniform01(seed, 405, index * 1024 + static_cast<std::uint64_t>(j));
                double acc = 0.0;
                int sym = space.alphabet - 1;
                for (int s = 0; s < space.alphabet; ++s) {
                    acc += probs[static_cast<std::size_t>(s)];
                    if (u < acc) {
                        sym = s;
                        break;
                    }
                }
                p.sym[static_cast<std::size_t>(j)] = symbol_char(sym);
            }
            return p;
        }
        case MeasureKind::Sampled:
            return sys.random_point(seed, 406, index);
    }
    return Point{};
}

BallMass ball_measure(const DynMetrics& dm, const BorelMeasure& mu, const Point& x, int n,
                      double r) {
    if (r <= 0) throw RuntimeModuleError("ball_measure: r must be positive");
    const NaifsSystem& sys = dm.system();
    BallMass out;
    switch (mu.kind) {
        case MeasureKind::Atomic: {
            for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
                auto c = dm.bowen_ball_contains(x, mu.atoms[i], n, r);
                if (c.inside) {
                    out.value += mu.weights[i];
                    if (!c.certain) out.exact = false;
                }
            }
            return out;
        }
        case MeasureKind::Bernoulli: {
            int m = 0;
            if (!dyadic_exponent(r, &m))
                throw RuntimeModuleError(
                    "ball_measure: bernoulli masses are exact only for r = 2^-m (got r = " +
                    std::to_string(r) + ")");
            // open ball = cylinder over symbols 0..n+m
            const int last = n + m;
            if (last >= sys.space().string_length)
                throw RuntimeModuleError("ball_measure: string_length too small for (n, r)");
            double mass = 1.0;
            for (int j = 0; j <= last; ++j)
                mass *= mu.probs[static_cast<std::size_t>(
                    symbol_value(x.sym[static_cast<std::size_t>(j)]))];
            out.value = mass;
            return out;
        }
        case MeasureKind::Sampled: {
            std::size_t hits = 0;
            for (std::size_t i = 0; i < mu.sample_count; ++i) {
                auto c = dm.bowen_ball_contains(x, mu.draw(sys, i), n, r);
                if (c.inside) ++hits;
            }
            const double kN = static_cast<double>(mu.sample_count);
            const double p = static_cast<double>(hits) / kN;
            const double z = 1.959964;
            const double denom = 1.0 + z * z / kN;
            const double half = (z / denom) * std::sqrt(p * (1 - p) / kN + z * z / (4 * kN * kN));
            out.value = p;
            out.half_width = half;
            out.exact = false;
            return out;
        }
    }
    return out;
}

LocalPressureValue local_lower_pressure(const DynMetrics& dm, const BorelMeasure& mu,
                                        const Potential& phi, const Point& x,
                                        const std::vector<double>& r_grid, int n_lo, int n_hi) {
    if (r_grid.empty()) throw RuntimeModuleError("local_lower_pressure: empty r_grid");
    for (std::size_t i = 1; i < r_grid.size(); ++i)
        if (r_grid[i] >= r_grid[i - 1])
            throw RuntimeModuleError("local_lower_pressure: r_grid must be strictly decreasing");
    if (n_hi - n_lo < 4)
        throw RuntimeModuleError("local_lower_pressure: n window needs n_hi - n_lo >= 4");

    LocalPressureValue out;
    out.r_grid = r_grid;
    for (int n = n_lo; n <= n_hi; ++n) out.n_values.push_back(n);

    ProfileValue sums = dm.birkhoff_profile(phi, x, n_hi);
    out.mode = sums.mode;

    out.quantities.assign(r_grid.size(), std::vector<double>(out.n_values.size(), 0.0));
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
        for (std::size_t ni = 0; ni < out.n_values.size(); ++ni) {
            const int n = out.n_values[ni];
            BallMass m = ball_measure(dm, mu, x, n, r_grid[ri]);
            double q;
            if (m.value <= 0.0) {
                out.undersampled = true;
                q = kInf; // genuinely infinity-prone under empirical measures
            } else {
                q = (-std::log(m.value) + sums.values[static_cast<std::size_t>(n)]) / n;
            }
            out.quantities[ri][ni] = q;
        }
    }

    // liminf proxy: min over the tail half of the n window
    const std::size_t count = out.n_values.size();
    const std::size_t tail_start = count - std::min(count, fit_window(count));
    for (std::size_t ri = 0; ri < r_grid.size(); ++ri) {
        double mn = kInf;
        for (std::size_t ni = tail_start; ni < count; ++ni)
            mn = std::min(mn, out.quantities[ri][ni]);
        out.liminf_per_r.push_back(mn);
    }
    out.value = out.liminf_per_r.back();
    if (out.liminf_per_r.size() >= 2) {
        const double a = out.liminf_per_r[out.liminf_per_r.size() - 2];
        const double b = out.liminf_per_r.back();
        out.stabilized = std::isfinite(a) && std::isfinite(b) && std::fabs(a - b) < 0.02;
    }
    return out;
}

MeasurePressureResult measure_pressure(const DynMetrics& dm, const BorelMeasure& mu,
                                       const Potential& phi, const std::vector<double>& r_grid,
                                       int n_lo, int n_hi, IntegrationKind integration,
                                       std::size_t mc_count, std::uint64_t mc_seed) {
    MeasurePressureResult out;
    if (integration == IntegrationKind::ExactAtomic) {
        if (mu.kind != MeasureKind::Atomic)
            throw RuntimeModuleError("measure_pressure: exact integration needs an atomic measure");
        out.points = mu.atoms.size();
        std::vector<LocalPressureValue> locals(mu.atoms.size());
        parallel_for(mu.atoms.size(), [&](std::size_t i) {
            locals[i] = local_lower_pressure(dm, mu, phi, mu.atoms[i], r_grid, n_lo, n_hi);
        });
        for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
            out.value += mu.weights[i] * locals[i].value;
            out.undersampled |= locals[i].undersampled;
            out.mode = worst_mode(out.mode, locals[i].mode);
        }
        return out;
    }

    if (mc_count < 1) throw RuntimeModuleError("measure_pressure: monte-carlo needs a count");
    out.points = mc_count;
    std::vector<double> vals(mc_count, 0.0);
    std::vector<char> under(mc_count, 0);
    std::vector<EvalMode> modes(mc_count, EvalMode::Exact);
    BorelMeasure keyed = mu;
    keyed.seed = mu.seed ^ splitmix64(mc_seed);
    parallel_for(mc_count, [&](std::size_t k) {
        const Point x = keyed.draw(dm.system(), k);
        LocalPressureValue v = local_lower_pressure(dm, mu, phi, x, r_grid, n_lo, n_hi);
        vals[k] = v.value;
        under[k] = v.undersampled ? 1 : 0;
        modes[k] = v.mode;
    });
    double mean = 0.0;
    for (std::size_t k = 0; k < mc_count; ++k) {
        mean += vals[k];
        out.undersampled |= under[k] != 0;
        out.mode = worst_mode(out.mode, modes[k]);
    }
    mean /= static_cast<double>(mc_count);
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    var /= static_cast<double>(std::max<std::size_t>(1, mc_count - 1));
    out.value = mean;
    out.std_error = std::sqrt(var / static_cast<double>(mc_count));
    return out;
}

FrostmanReport frostman_inequality_check(const DynMetrics& dm, const BorelMeasure& mu,
                                         const SampleSet& test_grid, const Potential& phi,
                                         double alpha, double eps, int N, int n_max, double c) {
    if (c <= 0) throw RuntimeModuleError("frostman check: c must be positive");
    FrostmanReport rep;
    const double log_c = std::log(c);
    for (std::size_t i = 0; i < test_grid.points.size(); ++i) {
        const Point& x = test_grid.points[i];
        ProfileValue sums = dm.birkhoff_profile(phi, x, n_max);
        rep.mode = worst_mode(rep.mode, sums.mode);
        for (int n = N; n <= n_max; ++n) {
            BallMass m = ball_measure(dm, mu, x, n, eps);
            rep.checked++;
            if (m.value <= 0.0) continue; // zero mass satisfies any bound
            const double lhs = std::log(m.value);
            const double rhs = -alpha * n + sums.values[static_cast<std::size_t>(n)] - log_c;
            const double slack = lhs - rhs;
            if (slack > rep.worst_slack) {
                rep.worst_slack = slack;
                rep.worst_n = n;
                rep.worst_index = i;
            }
            if (slack > 1e-9) rep.violations++;
        }
    }
    return rep;
}

void require_full_mass(const NaifsSystem& sys, const BorelMeasure& mu, const SampleSet& pool,
                       const std::vector<std::size_t>& target) {
    const StateSpace& space = sys.space();
    switch (mu.kind) {
        case MeasureKind::Atomic: {
            double mass_in = 0.0;
            for (std::size_t i = 0; i < mu.atoms.size(); ++i) {
                bool inside = false;
                for (std::size_t t : target)
                    if (space.same_point(mu.atoms[i], pool.points[t])) {
                        inside = true;
                        break;
                    }
                if (inside) mass_in += mu.weights[i];
            }
            if (mass_in < 1.0 - 1e-9)
                throw ValidationError("measure gives the target set mass " +
                                      std::to_string(mass_in) + " < 1");
            return;
        }
        case MeasureKind::Bernoulli:
        case MeasureKind::Sampled: {
            if (target.size() != pool.points.size())
                throw ValidationError(
                    "bernoulli/sampled measures require the whole-space target (mu(Z) = 1)");
            return;
        }
    }
}

VariationalReport variational_gap(const DynMetrics& dm, const std::vector<BorelMeasure>& family,
                                  const Potential& phi, const SampleSet& pool,
                                  const std::vector<std::size_t>& target,
                                  const PressureGrids& pressure_grids, const MeasureGrids& mg,
                                  double combined_tol) {
    if (family.empty()) throw RuntimeModuleError("variational_gap: empty measure family");
    VariationalReport rep;
    for (const BorelMeasure& mu : family) require_full_mass(dm.system(), mu, pool, target);

    rep.member_values.resize(family.size());
    rep.member_errors.resize(family.size());
    std::vector<EvalMode> modes(family.size(), EvalMode::Exact);
    parallel_for(family.size(), [&](std::size_t i) {
        const BorelMeasure& mu = family[i];
        MeasurePressureResult r =
            mu.kind == MeasureKind::Atomic
                ? measure_pressure(dm, mu, phi, mg.r_grid, mg.n_lo, mg.n_hi,
                                   IntegrationKind::ExactAtomic)
                : measure_pressure(dm, mu, phi, mg.r_grid, mg.n_lo, mg.n_hi,
                                   IntegrationKind::MonteCarlo, mg.mc_count, mg.mc_seed + i);
        rep.member_values[i] = r.value;
        rep.member_errors[i] = r.std_error;
        modes[i] = r.mode;
    });
    for (EvalMode m : modes) rep.mode = worst_mode(rep.mode, m);

    rep.argmax = 0;
    for (std::size_t i = 1; i < family.size(); ++i)
        if (rep.member_values[i] > rep.member_values[rep.argmax]) rep.argmax = i;
    rep.sup_measure_pressure = rep.member_values[rep.argmax];

    PressureEstimate pe = pp_pressure(dm, phi, pool, target, pressure_grids);
    rep.mode = worst_mode(rep.mode, pe.mode);
    rep.pressure = pe.value;
    rep.gap = rep.pressure - rep.sup_measure_pressure;
    rep.contract_ok = rep.sup_measure_pressure <= rep.pressure + combined_tol;
    return rep;
}

Theorem1Report theorem1_bounds_check(const DynMetrics& dm, const BorelMeasure& mu,
                                     const Potential& phi, const MeasureGrids& mg,
                                     const std::vector<double>& probes, double tol,
                                     double pressure_value) {
    Theorem1Report rep;
    rep.pressure = pressure_value;

    // sampled local pressures: atoms for atomic measures, seeded draws otherwise
    std::vector<Point> xs;
    if (mu.kind == MeasureKind::Atomic) {
        xs = mu.atoms;
    } else {
        xs.reserve(mg.mc_count);
        BorelMeasure keyed = mu;
        keyed.seed = mu.seed ^ splitmix64(mg.mc_seed);
        for (std::size_t k = 0; k < mg.mc_count; ++k) xs.push_back(keyed.draw(dm.system(), k));
    }
    std::vector<double> locals(xs.size(), 0.0);
    std::vector<EvalMode> modes(xs.size(), EvalMode::Exact);
    parallel_for(xs.size(), [&](std::size_t i) {
        LocalPressureValue v =
            local_lower_pressure(dm, mu, phi, xs[i], mg.r_grid, mg.n_lo, mg.n_hi);
        locals[i] = v.value;
        modes[i] = v.mode;
    });
    for (EvalMode m : modes) rep.mode = worst_mode(rep.mode, m);

    rep.local_min = kInf;
    rep.local_max = -kInf;
    for (double v : locals) {
        rep.local_min = std::min(rep.local_min, v);
        rep.local_max = std::max(rep.local_max, v);
    }

    for (double s : probes) {
        Theorem1Row row;
        row.probe = s;
        row.premise_le = rep.local_max <= s;
        row.premise_ge = rep.local_min >= s;
        if (row.premise_le) row.implication_le_ok = pressure_value <= s + tol;
        if (row.premise_ge) row.implication_ge_ok = pressure_value >= s - tol;
        if (!row.implication_le_ok || !row.implication_ge_ok) rep.violations++;
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace naifs
