#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "errors.hpp"

namespace naifs {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// One parsed `key = value` line.
struct Entry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
    bool used = false;
};

struct RawConfig {
    std::vector<Entry> entries;
    std::vector<std::string> sections_seen;
};

RawConfig tokenize(const std::string& text, std::vector<std::string>& errors) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section; // "" = top level
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back("line " + std::to_string(lineno) + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            raw.sections_seen.push_back(section);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        Entry e;
        e.section = section;
        e.key = trim(line.substr(0, eq));
        e.value = trim(line.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        raw.entries.push_back(std::move(e));
    }
    return raw;
}

// Typed readers over the entry list.
class Reader {
public:
    Reader(RawConfig& raw, std::vector<std::string>& errors) : raw_(raw), errors_(errors) {}

    Entry* find(const std::string& section, const std::string& key) {
        Entry* hit = nullptr;
        for (Entry& e : raw_.entries)
            if (e.section == section && e.key == key) hit = &e; // last wins
        if (hit) hit->used = true;
        return hit;
    }

    std::vector<Entry*> find_prefixed(const std::string& section, const std::string& prefix) {
        std::vector<Entry*> out;
        for (Entry& e : raw_.entries)
            if (e.section == section && e.key.rfind(prefix, 0) == 0) {
                e.used = true;
                out.push_back(&e);
            }
        return out;
    }

    void error_at(const Entry& e, const std::string& msg) {
        errors_.push_back("line " + std::to_string(e.line) + " [" +
                          (e.section.empty() ? "top" : e.section) + "] " + e.key + ": " + msg);
    }

    bool to_double(const Entry& e, double* out) {
        try {
            std::size_t used = 0;
            *out = std::stod(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing");
            return true;
        } catch (...) {
            error_at(e, "expected a number, got '" + e.value + "'");
            return false;
        }
    }

    bool to_u64(const Entry& e, std::uint64_t* out) {
        try {
            std::size_t used = 0;
            *out = std::stoull(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing");
            return true;
        } catch (...) {
            error_at(e, "expected a nonnegative integer, got '" + e.value + "'");
            return false;
        }
    }

    bool to_int(const Entry& e, int* out) {
        try {
            std::size_t used = 0;
            *out = std::stoi(e.value, &used);
            if (used != e.value.size()) throw std::invalid_argument("trailing");
            return true;
        } catch (...) {
            error_at(e, "expected an integer, got '" + e.value + "'");
            return false;
        }
    }

    bool to_bool(const Entry& e, bool* out) {
        if (e.value == "true") {
            *out = true;
            return true;
        }
        if (e.value == "false") {
            *out = false;
            return true;
        }
        error_at(e, "expected true or false");
        return false;
    }

    bool to_double_list(const Entry& e, std::vector<double>* out) {
        out->clear();
        for (const std::string& tok : split_ws(e.value)) {
            try {
                std::size_t used = 0;
                out->push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument("trailing");
            } catch (...) {
                error_at(e, "expected a list of numbers, got '" + tok + "'");
                return false;
            }
        }
        return true;
    }

    // integer list, with "a..b" range sugar
    bool to_int_list(const Entry& e, std::vector<int>* out) {
        out->clear();
        for (const std::string& tok : split_ws(e.value)) {
            const std::size_t dots = tok.find("..");
            try {
                if (dots != std::string::npos) {
                    const int a = std::stoi(tok.substr(0, dots));
                    const int b = std::stoi(tok.substr(dots + 2));
                    if (b < a) throw std::invalid_argument("range");
                    for (int v = a; v <= b; ++v) out->push_back(v);
                } else {
                    std::size_t used = 0;
                    out->push_back(std::stoi(tok, &used));
                    if (used != tok.size()) throw std::invalid_argument("trailing");
                }
            } catch (...) {
                error_at(e, "expected integers or a..b ranges, got '" + tok + "'");
                return false;
            }
        }
        return true;
    }

private:
    RawConfig& raw_;
    std::vector<std::string>& errors_;
};

const std::vector<std::string>& known_keys(const std::string& section) {
    static const std::map<std::string, std::vector<std::string>> table = {
        {"", {"seed"}},
        {"system",
         {"space", "dim", "alphabet", "string_length", "fill", "preamble", "period",
          "family.<name>", "map.<name>.kind", "map.<name>.a", "map.<name>.b",
          "map.<name>.breakpoints", "map.<name>.slopes", "map.<name>.offsets",
          "map.<name>.matrix", "map.<name>.offset", "map.<name>.lipschitz"}},
        {"potential", {"kind", "value", "weights", "offset", "table", "grid_shape", "grid_values"}},
        {"target",
         {"kind", "cylinders", "points", "grid_count", "lo", "hi", "depth", "pool_count"}},
        {"grids",
         {"n_range", "eps_grid", "delta_grid", "N_grid", "N_window", "node_budget", "beam_width",
          "bisect_tol", "bracket", "r_grid", "n_window"}},
        {"task", {"kind", "with_prime", "alpha", "sandwich_eps", "metric"}},
        {"measures",
         {"kind", "p_from", "p_to", "p_count", "probs", "points", "weights", "sampled_count",
          "mc_count", "mc_seed", "combined_tol"}},
        {"output", {"dir", "formats"}},
        {"sweep", {}},
    };
    static const std::vector<std::string> empty;
    auto it = table.find(section);
    return it == table.end() ? empty : it->second;
}

bool key_matches(const std::string& pattern, const std::string& key) {
    // patterns contain a single <name> wildcard segment
    const std::size_t lt = pattern.find('<');
    if (lt == std::string::npos) return pattern == key;
    const std::size_t gt = pattern.find('>');
    const std::string head = pattern.substr(0, lt);
    const std::string tail = pattern.substr(gt + 1);
    if (key.size() < head.size() + tail.size()) return false;
    if (key.rfind(head, 0) != 0) return false;
    if (key.compare(key.size() - tail.size(), tail.size(), tail) != 0) return false;
    const std::string middle = key.substr(head.size(), key.size() - head.size() - tail.size());
    return !middle.empty() && middle.find('.') == std::string::npos;
}

void check_unknown_keys(const RawConfig& raw, std::vector<std::string>& errors) {
    static const std::vector<std::string> sections = {"",      "system",   "potential",
                                                      "target", "grids",    "task",
                                                      "measures", "output", "sweep"};
    for (const std::string& s : raw.sections_seen) {
        if (std::find(sections.begin(), sections.end(), s) == sections.end())
            errors.push_back("unknown section [" + s + "]");
    }
    for (const Entry& e : raw.entries) {
        if (e.used) continue;
        if (e.section == "sweep") continue; // sweep keys are dotted config keys
        const auto& known = known_keys(e.section);
        bool matches = false;
        for (const std::string& pat : known)
            if (key_matches(pat, e.key)) {
                matches = true;
                break;
            }
        if (matches) continue; // known pattern the extractor did not consume
        std::string best;
        std::size_t best_d = 1000;
        for (const std::string& pat : known) {
            const std::size_t d = edit_distance(e.key, pat);
            if (d < best_d) {
                best_d = d;
                best = pat;
            }
        }
        std::string msg = "line " + std::to_string(e.line) + " [" +
                          (e.section.empty() ? "top" : e.section) + "]: unknown key '" + e.key +
                          "'";
        if (!best.empty() && best_d <= std::max<std::size_t>(5, (3 * e.key.size()) / 4))
            msg += "; did you mean '" + best + "'?";
        errors.push_back(msg);
    }
}

MapSpec parse_map(Reader& rd, const std::string& name, const StateSpace& space,
                  std::vector<std::string>& errors) {
    MapSpec m;
    m.name = name;
    const std::string base = "map." + name + ".";
    Entry* kind = rd.find("system", base + "kind");
    if (!kind) {
        errors.push_back("map '" + name + "': missing " + base + "kind");
        return m;
    }
    if (kind->value == "affine-mod-1") {
        m.kind = MapKind::AffineMod1;
        if (Entry* e = rd.find("system", base + "a")) {
            int a = 0;
            if (rd.to_int(*e, &a)) m.a = a;
        } else {
            errors.push_back("map '" + name + "': affine-mod-1 needs a");
        }
        if (Entry* e = rd.find("system", base + "b")) rd.to_double(*e, &m.b);
    } else if (kind->value == "piecewise-linear") {
        m.kind = MapKind::PiecewiseLinear;
        if (Entry* e = rd.find("system", base + "breakpoints"))
            rd.to_double_list(*e, &m.breakpoints);
        if (Entry* e = rd.find("system", base + "slopes")) rd.to_double_list(*e, &m.slopes);
        if (Entry* e = rd.find("system", base + "offsets")) rd.to_double_list(*e, &m.offsets);
        if (m.breakpoints.empty() || m.slopes.empty() || m.offsets.empty())
            errors.push_back("map '" + name +
                             "': piecewise-linear needs breakpoints, slopes, offsets");
    } else if (kind->value == "affine-contraction") {
        m.kind = MapKind::AffineContraction;
        std::vector<double> flat;
        if (Entry* e = rd.find("system", base + "matrix")) rd.to_double_list(*e, &flat);
        if (Entry* e = rd.find("system", base + "offset")) rd.to_double_list(*e, &m.offset);
        const std::size_t d = static_cast<std::size_t>(space.dim);
        if (flat.size() != d * d) {
            errors.push_back("map '" + name + "': matrix needs dim*dim entries");
        } else {
            m.matrix.assign(d, std::vector<double>(d, 0.0));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) m.matrix[i][j] = flat[i * d + j];
        }
    } else if (kind->value == "shift") {
        m.kind = MapKind::Shift;
    } else {
        errors.push_back("map '" + name + "': unknown kind '" + kind->value + "'");
    }
    if (Entry* e = rd.find("system", base + "lipschitz")) rd.to_double(*e, &m.lipschitz);
    return m;
}

} // namespace

std::string task_name(TaskKind k) {
    switch (k) {
        case TaskKind::SupEntropy: return "sup-entropy";
        case TaskKind::PpPressure: return "pp-pressure";
        case TaskKind::Capacity: return "capacity";
        case TaskKind::Weighted: return "weighted";
        case TaskKind::MeasurePressure: return "measure-pressure";
        case TaskKind::Variational: return "variational";
        case TaskKind::CheckSuite: return "check-suite";
    }
    return "?";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& name) {
    std::vector<std::string> errors;
    RawConfig raw = tokenize(text, errors);
    Reader rd(raw, errors);
    ExperimentConfig cfg;
    cfg.name = name;

    if (Entry* e = rd.find("", "seed")) rd.to_u64(*e, &cfg.seed);

    // ---- [system]
    const bool has_system =
        std::find(raw.sections_seen.begin(), raw.sections_seen.end(), "system") !=
        raw.sections_seen.end();
    if (!has_system) errors.push_back("missing [system] section");

    if (Entry* e = rd.find("system", "space")) {
        if (e->value == "circle") cfg.space.kind = SpaceKind::Circle;
        else if (e->value == "interval") cfg.space.kind = SpaceKind::Interval;
        else if (e->value == "torus") cfg.space.kind = SpaceKind::Torus;
        else if (e->value == "symbolic") cfg.space.kind = SpaceKind::Symbolic;
        else rd.error_at(*e, "unknown space '" + e->value + "'");
    } else if (has_system) {
        errors.push_back("[system] needs a space");
    }
    if (Entry* e = rd.find("system", "dim")) rd.to_int(*e, &cfg.space.dim);
    if (Entry* e = rd.find("system", "alphabet")) rd.to_int(*e, &cfg.space.alphabet);
    if (Entry* e = rd.find("system", "string_length")) rd.to_int(*e, &cfg.space.string_length);
    if (Entry* e = rd.find("system", "fill")) {
        if (e->value.size() != 1 || !cfg.space.symbol_valid(e->value[0]))
            rd.error_at(*e, "fill must be a single valid symbol");
        else
            cfg.space.fill = e->value[0];
    }
    if (cfg.space.kind == SpaceKind::Symbolic && cfg.space.string_length == 0)
        cfg.space.string_length = 24;
    if (cfg.space.kind == SpaceKind::Symbolic && cfg.space.alphabet < 2)
        errors.push_back("[system] symbolic alphabet must be >= 2");
    if (cfg.space.kind == SpaceKind::Torus && cfg.space.dim < 1)
        errors.push_back("[system] torus dim must be >= 1");

    // families and maps
    std::map<std::string, MapSpec> maps;
    auto family_from = [&](Entry* e) -> GeneratorFamily {
        GeneratorFamily fam;
        for (const std::string& mname : split_ws(e->value)) {
            auto it = maps.find(mname);
            if (it == maps.end())
                it = maps.emplace(mname, parse_map(rd, mname, cfg.space, errors)).first;
            fam.push_back(it->second);
        }
        if (fam.empty()) rd.error_at(*e, "family must list at least one map");
        return fam;
    };
    std::map<std::string, GeneratorFamily> families;
    for (Entry* e : rd.find_prefixed("system", "family.")) {
        families[e->key.substr(7)] = family_from(e);
    }
    auto schedule_from = [&](Entry* e, std::vector<GeneratorFamily>* out) {
        for (const std::string& fname : split_ws(e->value)) {
            auto it = families.find(fname);
            if (it == families.end())
                rd.error_at(*e, "unknown family '" + fname + "'");
            else
                out->push_back(it->second);
        }
    };
    if (Entry* e = rd.find("system", "preamble")) schedule_from(e, &cfg.preamble);
    if (Entry* e = rd.find("system", "period")) schedule_from(e, &cfg.period);
    else if (has_system) errors.push_back("[system] needs a nonempty period");

    // ---- [potential]
    if (Entry* e = rd.find("potential", "kind")) {
        if (e->value == "zero") {
            cfg.potential = Potential::constant(0.0);
        } else if (e->value == "constant") {
            cfg.potential.kind = PotentialKind::Constant;
            if (Entry* v = rd.find("potential", "value")) rd.to_double(*v, &cfg.potential.value);
        } else if (e->value == "affine") {
            cfg.potential.kind = PotentialKind::Affine;
            if (Entry* v = rd.find("potential", "weights"))
                rd.to_double_list(*v, &cfg.potential.weights);
            if (Entry* v = rd.find("potential", "offset")) rd.to_double(*v, &cfg.potential.offset);
        } else if (e->value == "first-symbol") {
            cfg.potential.kind = PotentialKind::FirstSymbol;
            if (Entry* v = rd.find("potential", "table"))
                rd.to_double_list(*v, &cfg.potential.table);
        } else if (e->value == "grid") {
            cfg.potential.kind = PotentialKind::Grid;
            if (Entry* v = rd.find("potential", "grid_shape"))
                rd.to_int_list(*v, &cfg.potential.grid_shape);
            if (Entry* v = rd.find("potential", "grid_values"))
                rd.to_double_list(*v, &cfg.potential.grid_values);
        } else {
            rd.error_at(*e, "unknown potential kind '" + e->value + "'");
        }
    }

    // ---- [target]
    if (Entry* e = rd.find("target", "kind")) {
        if (e->value == "whole-space") cfg.target_kind = ExperimentConfig::TargetKind::WholeSpace;
        else if (e->value == "cylinders") cfg.target_kind = ExperimentConfig::TargetKind::Cylinders;
        else if (e->value == "points") cfg.target_kind = ExperimentConfig::TargetKind::Points;
        else if (e->value == "grid") cfg.target_kind = ExperimentConfig::TargetKind::Grid;
        else rd.error_at(*e, "unknown target kind '" + e->value + "'");
    }
    if (Entry* e = rd.find("target", "cylinders")) cfg.target_cylinders = split_ws(e->value);
    if (Entry* e = rd.find("target", "points")) cfg.target_points = split_ws(e->value);
    if (Entry* e = rd.find("target", "grid_count")) {
        std::uint64_t v = 0;
        if (rd.to_u64(*e, &v)) cfg.target_grid_count = static_cast<std::size_t>(v);
    }
    if (Entry* e = rd.find("target", "lo")) rd.to_double(*e, &cfg.target_lo);
    if (Entry* e = rd.find("target", "hi")) rd.to_double(*e, &cfg.target_hi);
    if (Entry* e = rd.find("target", "depth")) rd.to_int(*e, &cfg.sample_depth);
    if (Entry* e = rd.find("target", "pool_count")) {
        std::uint64_t v = 0;
        if (rd.to_u64(*e, &v)) cfg.pool_count = static_cast<std::size_t>(v);
    }

    // ---- [grids]
    if (Entry* e = rd.find("grids", "n_range")) rd.to_int_list(*e, &cfg.n_range);
    else cfg.n_range = {2, 3, 4, 5, 6, 7};
    if (Entry* e = rd.find("grids", "eps_grid")) {
        rd.to_double_list(*e, &cfg.eps_grid);
        for (std::size_t i = 1; i < cfg.eps_grid.size(); ++i)
            if (cfg.eps_grid[i] >= cfg.eps_grid[i - 1]) {
                rd.error_at(*e, "eps_grid must be strictly decreasing");
                break;
            }
        if (cfg.eps_grid.empty()) rd.error_at(*e, "eps_grid must not be empty");
    } else {
        cfg.eps_grid = {0.5, 0.25, 0.125};
    }
    if (Entry* e = rd.find("grids", "delta_grid")) {
        rd.to_double_list(*e, &cfg.delta_grid);
        for (std::size_t i = 1; i < cfg.delta_grid.size(); ++i)
            if (cfg.delta_grid[i] >= cfg.delta_grid[i - 1]) {
                rd.error_at(*e, "delta_grid must be strictly decreasing");
                break;
            }
        if (cfg.delta_grid.empty()) rd.error_at(*e, "delta_grid must not be empty");
    } else {
        cfg.delta_grid = {0.5, 0.25};
    }
    if (Entry* e = rd.find("grids", "N_grid")) {
        rd.to_int_list(*e, &cfg.N_grid);
        for (std::size_t i = 1; i < cfg.N_grid.size(); ++i)
            if (cfg.N_grid[i] <= cfg.N_grid[i - 1]) {
                rd.error_at(*e, "N_grid must be strictly increasing");
                break;
            }
        if (cfg.N_grid.empty()) rd.error_at(*e, "N_grid must not be empty");
    } else {
        cfg.N_grid = {3, 4, 5, 6};
    }
    if (Entry* e = rd.find("grids", "N_window")) rd.to_int(*e, &cfg.N_window);
    if (Entry* e = rd.find("grids", "node_budget")) rd.to_u64(*e, &cfg.node_budget);
    if (Entry* e = rd.find("grids", "beam_width")) {
        std::uint64_t v = 0;
        if (rd.to_u64(*e, &v)) cfg.beam_width = static_cast<std::size_t>(v);
    }
    if (Entry* e = rd.find("grids", "bisect_tol")) rd.to_double(*e, &cfg.bisect_tol);
    if (Entry* e = rd.find("grids", "bracket")) {
        std::vector<double> v;
        if (rd.to_double_list(*e, &v)) {
            if (v.size() != 2 || v[0] >= v[1])
                rd.error_at(*e, "bracket needs 'lo hi' with lo < hi");
            else {
                cfg.bracket_lo = v[0];
                cfg.bracket_hi = v[1];
            }
        }
    }
    if (Entry* e = rd.find("grids", "r_grid")) {
        rd.to_double_list(*e, &cfg.r_grid);
        for (std::size_t i = 1; i < cfg.r_grid.size(); ++i)
            if (cfg.r_grid[i] >= cfg.r_grid[i - 1]) {
                rd.error_at(*e, "r_grid must be strictly decreasing");
                break;
            }
        if (cfg.r_grid.empty()) rd.error_at(*e, "r_grid must not be empty");
    } else {
        cfg.r_grid = {0.25, 0.125};
    }
    if (Entry* e = rd.find("grids", "n_window")) {
        std::vector<int> v;
        if (rd.to_int_list(*e, &v)) {
            if (v.size() != 2 || v[1] - v[0] < 4)
                rd.error_at(*e, "n_window needs 'lo hi' with hi - lo >= 4");
            else {
                cfg.n_window_lo = v[0];
                cfg.n_window_hi = v[1];
            }
        }
    }
    for (int n : cfg.n_range)
        if (n < 0) {
            errors.push_back("[grids] n_range entries must be >= 0");
            break;
        }
    if (cfg.n_range.size() < 4) errors.push_back("[grids] n_range needs at least 4 entries");

    // ---- [task]
    const bool has_task = std::find(raw.sections_seen.begin(), raw.sections_seen.end(), "task") !=
                          raw.sections_seen.end();
    if (!has_task) errors.push_back("missing [task] section");
    if (Entry* e = rd.find("task", "kind")) {
        const std::map<std::string, TaskKind> kinds = {
            {"sup-entropy", TaskKind::SupEntropy},
            {"pp-pressure", TaskKind::PpPressure},
            {"capacity", TaskKind::Capacity},
            {"weighted", TaskKind::Weighted},
            {"measure-pressure", TaskKind::MeasurePressure},
            {"variational", TaskKind::Variational},
            {"check-suite", TaskKind::CheckSuite}};
        auto it = kinds.find(e->value);
        if (it == kinds.end())
            rd.error_at(*e, "unknown task kind '" + e->value + "'");
        else
            cfg.task = it->second;
    } else if (has_task) {
        errors.push_back("[task] needs a kind");
    }
    if (Entry* e = rd.find("task", "with_prime")) rd.to_bool(*e, &cfg.with_prime);
    if (Entry* e = rd.find("task", "alpha")) rd.to_double(*e, &cfg.alpha);
    if (Entry* e = rd.find("task", "sandwich_eps")) rd.to_double(*e, &cfg.sandwich_eps);
    if (Entry* e = rd.find("task", "metric")) {
        if (e->value == "dn") cfg.entropy_metric = MetricFlavor::Dn;
        else if (e->value == "dn-star") cfg.entropy_metric = MetricFlavor::DnStar;
        else rd.error_at(*e, "metric must be dn or dn-star");
    }

    // ---- [measures]
    if (Entry* e = rd.find("measures", "kind")) {
        if (e->value == "bernoulli-grid")
            cfg.measures_kind = ExperimentConfig::MeasuresKind::BernoulliGrid;
        else if (e->value == "bernoulli")
            cfg.measures_kind = ExperimentConfig::MeasuresKind::Bernoulli;
        else if (e->value == "atomic")
            cfg.measures_kind = ExperimentConfig::MeasuresKind::Atomic;
        else if (e->value == "sampled")
            cfg.measures_kind = ExperimentConfig::MeasuresKind::Sampled;
        else
            rd.error_at(*e, "unknown measures kind '" + e->value + "'");
    }
    if (Entry* e = rd.find("measures", "p_from")) rd.to_double(*e, &cfg.p_from);
    if (Entry* e = rd.find("measures", "p_to")) rd.to_double(*e, &cfg.p_to);
    if (Entry* e = rd.find("measures", "p_count")) rd.to_int(*e, &cfg.p_count);
    if (Entry* e = rd.find("measures", "probs")) rd.to_double_list(*e, &cfg.measure_probs);
    if (Entry* e = rd.find("measures", "points")) cfg.measure_points = split_ws(e->value);
    if (Entry* e = rd.find("measures", "weights")) rd.to_double_list(*e, &cfg.measure_weights);
    if (Entry* e = rd.find("measures", "sampled_count")) {
        std::uint64_t v = 0;
        if (rd.to_u64(*e, &v)) cfg.sampled_count = static_cast<std::size_t>(v);
    }
    if (Entry* e = rd.find("measures", "mc_count")) {
        std::uint64_t v = 0;
        if (rd.to_u64(*e, &v)) cfg.mc_count = static_cast<std::size_t>(v);
    }
    if (Entry* e = rd.find("measures", "mc_seed")) rd.to_u64(*e, &cfg.mc_seed);
    if (Entry* e = rd.find("measures", "combined_tol")) rd.to_double(*e, &cfg.combined_tol);

    const bool needs_measures =
        cfg.task == TaskKind::MeasurePressure || cfg.task == TaskKind::Variational;
    if (needs_measures && cfg.measures_kind == ExperimentConfig::MeasuresKind::None)
        errors.push_back("task '" + task_name(cfg.task) + "' needs a [measures] section");

    // ---- [output]
    if (Entry* e = rd.find("output", "dir")) cfg.output_dir = e->value;
    if (Entry* e = rd.find("output", "formats")) cfg.formats = split_ws(e->value);
    for (const std::string& f : cfg.formats)
        if (f != "json" && f != "csv" && f != "txt")
            errors.push_back("[output] unknown format '" + f + "'");

    // ---- [sweep]
    for (Entry* e : rd.find_prefixed("sweep", "")) {
        cfg.sweep.emplace_back(e->key, split_ws(e->value));
        if (cfg.sweep.back().second.empty()) rd.error_at(*e, "sweep list must not be empty");
    }

    check_unknown_keys(raw, errors);

    // ---- semantic validation via a trial build
    if (errors.empty()) {
        try {
            (void)build_experiment(cfg);
        } catch (const ValidationError& ve) {
            for (const std::string& m : ve.messages) errors.push_back(m);
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string name = path;
    const std::size_t slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    return parse_config_text(ss.str(), name);
}

std::string apply_override(const std::string& text, const std::string& dotted_key,
                           const std::string& value) {
    const std::size_t dot = dotted_key.find('.');
    const std::string section = dot == std::string::npos ? "" : dotted_key.substr(0, dot);
    const std::string key = dot == std::string::npos ? dotted_key : dotted_key.substr(dot + 1);

    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);

    std::string cur;
    bool replaced = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string t = trim(lines[i]);
        const std::size_t hash = t.find('#');
        if (hash != std::string::npos) t = trim(t.substr(0, hash));
        if (!t.empty() && t.front() == '[' && t.back() == ']') {
            cur = trim(t.substr(1, t.size() - 2));
            continue;
        }
        if (cur != section) continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) continue;
        if (trim(t.substr(0, eq)) == key) {
            lines[i] = key + " = " + value;
            replaced = true;
        }
    }
    if (!replaced) {
        if (section.empty()) {
            lines.insert(lines.begin(), key + " = " + value);
        } else {
            bool have_section = false;
            for (std::size_t i = 0; i < lines.size(); ++i) {
                if (trim(lines[i]) == "[" + section + "]") {
                    lines.insert(lines.begin() + static_cast<long>(i) + 1, key + " = " + value);
                    have_section = true;
                    break;
                }
            }
            if (!have_section) {
                lines.push_back("[" + section + "]");
                lines.push_back(key + " = " + value);
            }
        }
    }
    std::string out;
    for (const std::string& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream os;
    os << "seed=" << seed << '\n';
    os << "space=" << space.describe() << " fill=" << space.fill << '\n';
    auto emit_map = [&](const MapSpec& m) {
        os << "map{kind=" << static_cast<int>(m.kind) << ",a=" << m.a << ",b=" << fmt_double(m.b);
        auto emit_list = [&](const char* tag, const std::vector<double>& v) {
            os << "," << tag << "=[";
            for (double x : v) os << fmt_double(x) << ";";
            os << "]";
        };
        emit_list("bp", m.breakpoints);
        emit_list("sl", m.slopes);
        emit_list("of", m.offsets);
        os << ",mat=[";
        for (const auto& row : m.matrix)
            for (double x : row) os << fmt_double(x) << ";";
        os << "],off=[";
        for (double x : m.offset) os << fmt_double(x) << ";";
        os << "],lip=" << fmt_double(m.lipschitz) << "}";
    };
    auto emit_schedule = [&](const char* tag, const std::vector<GeneratorFamily>& fams) {
        os << tag << "=[";
        for (const GeneratorFamily& fam : fams) {
            os << "(";
            for (const MapSpec& m : fam) emit_map(m);
            os << ")";
        }
        os << "]\n";
    };
    emit_schedule("preamble", preamble);
    emit_schedule("period", period);

    os << "potential{kind=" << static_cast<int>(potential.kind)
       << ",value=" << fmt_double(potential.value) << ",offset=" << fmt_double(potential.offset)
       << ",weights=[";
    for (double w : potential.weights) os << fmt_double(w) << ";";
    os << "],table=[";
    for (double t : potential.table) os << fmt_double(t) << ";";
    os << "],grid=[";
    for (double g : potential.grid_values) os << fmt_double(g) << ";";
    os << "],shape=[";
    for (int s : potential.grid_shape) os << s << ";";
    os << "]}\n";

    os << "target{kind=" << static_cast<int>(target_kind) << ",cyl=[";
    for (const std::string& c : target_cylinders) os << c << ";";
    os << "],pts=[";
    for (const std::string& p : target_points) os << p << ";";
    os << "],grid=" << target_grid_count << ",lo=" << fmt_double(target_lo)
       << ",hi=" << fmt_double(target_hi) << ",depth=" << sample_depth << ",pool=" << pool_count
       << "}\n";

    auto emit_ints = [&](const char* tag, const std::vector<int>& v) {
        os << tag << "=[";
        for (int x : v) os << x << ";";
        os << "]";
    };
    auto emit_doubles = [&](const char* tag, const std::vector<double>& v) {
        os << tag << "=[";
        for (double x : v) os << fmt_double(x) << ";";
        os << "]";
    };
    os << "grids{";
    emit_ints("n_range", n_range);
    emit_doubles(",eps", eps_grid);
    emit_doubles(",delta", delta_grid);
    emit_ints(",N", N_grid);
    os << ",window=" << N_window << ",budget=" << node_budget << ",beam=" << beam_width
       << ",tol=" << fmt_double(bisect_tol) << ",bracket=" << fmt_double(bracket_lo) << ":"
       << fmt_double(bracket_hi);
    emit_doubles(",r", r_grid);
    os << ",nw=" << n_window_lo << ":" << n_window_hi << "}\n";

    os << "task{kind=" << task_name(task) << ",prime=" << with_prime
       << ",alpha=" << fmt_double(alpha) << ",seps=" << fmt_double(sandwich_eps)
       << ",metric=" << (entropy_metric == MetricFlavor::Dn ? "dn" : "dn*") << "}\n";

    os << "measures{kind=" << static_cast<int>(measures_kind) << ",pf=" << fmt_double(p_from)
       << ",pt=" << fmt_double(p_to) << ",pc=" << p_count;
    emit_doubles(",probs", measure_probs);
    os << ",pts=[";
    for (const std::string& p : measure_points) os << p << ";";
    os << "]";
    emit_doubles(",w", measure_weights);
    os << ",sc=" << sampled_count << ",mc=" << mc_count << ",seed=" << mc_seed
       << ",ctol=" << fmt_double(combined_tol) << "}\n";
    return os.str();
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical())); }

namespace {

// smallest f >= 1 with 2^-f <= eps (separated-count resolution)
int sep_gap(double eps) {
    int f = static_cast<int>(std::ceil(-std::log2(eps) - 1e-9));
    if (f < 1) f = 1;
    while (std::ldexp(1.0, -f) > eps) ++f;
    return f;
}

// smallest q >= 1 with 2^-q < delta (open-ball cylinder resolution)
int ball_gap(double delta) {
    int q = static_cast<int>(std::floor(-std::log2(delta) + 1e-12)) + 1;
    if (q < 1) q = 1;
    while (std::ldexp(1.0, -q) >= delta) ++q;
    while (q >= 2 && std::ldexp(1.0, -(q - 1)) < delta) --q;
    return q;
}

} // namespace

BuiltExperiment build_experiment(const ExperimentConfig& cfg) {
    std::vector<std::string> errors;

    std::unique_ptr<NaifsSystem> sys;
    try {
        sys = std::make_unique<NaifsSystem>(cfg.space, cfg.preamble, cfg.period);
        sys->validate(cfg.seed);
    } catch (const ValidationError& ve) {
        for (const std::string& m : ve.messages) errors.push_back(m);
        throw ValidationError(std::move(errors));
    }

    validate_potential(*sys, cfg.potential, errors, cfg.seed);
    if (!errors.empty()) throw ValidationError(std::move(errors));

    BuiltExperiment built;
    built.config = cfg;
    built.system = std::move(sys);
    built.metrics = std::make_unique<DynMetrics>(*built.system,
                                                 TreeBudget{cfg.node_budget, cfg.beam_width});
    built.potential = cfg.potential;
    const StateSpace& space = built.system->space();

    const bool pressure_task = cfg.task == TaskKind::PpPressure ||
                               cfg.task == TaskKind::Capacity || cfg.task == TaskKind::Weighted ||
                               cfg.task == TaskKind::Variational ||
                               cfg.task == TaskKind::CheckSuite;
    const bool entropy_task = cfg.task == TaskKind::SupEntropy || cfg.task == TaskKind::CheckSuite;

    if (space.kind == SpaceKind::Symbolic) {
        int depth = cfg.sample_depth;
        if (depth == 0) {
            depth = 4;
            if (entropy_task && !cfg.n_range.empty())
                depth = std::max(depth, *std::max_element(cfg.n_range.begin(), cfg.n_range.end()) +
                                            sep_gap(cfg.eps_grid.back()));
            if (pressure_task && !cfg.N_grid.empty())
                depth = std::max(depth, cfg.N_grid.back() + cfg.N_window +
                                            ball_gap(cfg.delta_grid.back()));
        }
        if (depth > space.string_length)
            throw ValidationError("[system] string_length " + std::to_string(space.string_length) +
                                  " too small: the grids need sample depth " +
                                  std::to_string(depth));
        built.pool = symbolic_cylinder_sample(*built.system, depth);
    } else if (space.kind == SpaceKind::Torus) {
        const std::size_t per_dim = cfg.pool_count ? cfg.pool_count : 16;
        built.pool = grid_sample_torus(*built.system, per_dim);
    } else {
        std::size_t count = cfg.pool_count;
        if (count == 0) {
            const double eps_min = std::min(cfg.eps_grid.back(), cfg.delta_grid.back());
            const double gamma =
                eps_min / (4.0 * std::max(1.0, built.system->max_lipschitz()));
            count = static_cast<std::size_t>(std::ceil(1.0 / gamma));
            count = std::min<std::size_t>(std::max<std::size_t>(count, 64), 20000);
        }
        built.pool = grid_sample_1d(*built.system, count);
    }

    auto find_or_append = [&](const Point& p) -> std::size_t {
        for (std::size_t i = 0; i < built.pool.points.size(); ++i)
            if (space.same_point(built.pool.points[i], p)) return i;
        built.pool.points.push_back(p);
        return built.pool.points.size() - 1;
    };

    switch (cfg.target_kind) {
        case ExperimentConfig::TargetKind::WholeSpace:
            built.target = whole_target(built.pool);
            break;
        case ExperimentConfig::TargetKind::Cylinders: {
            if (space.kind != SpaceKind::Symbolic)
                throw ValidationError("[target] cylinders need a symbolic space");
            std::vector<char> in(built.pool.points.size(), 0);
            for (const std::string& c : cfg.target_cylinders) {
                for (char ch : c)
                    if (!space.symbol_valid(ch))
                        throw ValidationError("[target] invalid cylinder '" + c + "'");
                for (std::size_t idx : cylinder_target(built.pool, c)) in[idx] = 1;
            }
            for (std::size_t i = 0; i < in.size(); ++i)
                if (in[i]) built.target.push_back(i);
            if (built.target.empty() && !cfg.target_cylinders.empty())
                throw ValidationError("[target] cylinders select no sample points");
            break;
        }
        case ExperimentConfig::TargetKind::Points: {
            for (const std::string& lit : cfg.target_points) {
                Point p;
                try {
                    if (space.kind == SpaceKind::Symbolic) {
                        p = space.point_from_symbols(lit);
                    } else if (space.kind == SpaceKind::Torus) {
                        std::vector<double> coords;
                        std::string tmp = lit;
                        for (char& ch : tmp)
                            if (ch == ',') ch = ' ';
                        for (const std::string& tok : split_ws(tmp))
                            coords.push_back(std::stod(tok));
                        p = space.point_from_coords(coords);
                    } else {
                        p = space.point_from_scalar(std::stod(lit));
                    }
                } catch (const std::exception& ex) {
                    throw ValidationError("[target] bad point literal '" + lit + "': " + ex.what());
                }
                built.target.push_back(find_or_append(p));
            }
            if (built.target.empty()) throw ValidationError("[target] points list is empty");
            break;
        }
        case ExperimentConfig::TargetKind::Grid: {
            if (space.kind == SpaceKind::Symbolic)
                throw ValidationError("[target] grid targets need a numeric space");
            const std::size_t count = cfg.target_grid_count ? cfg.target_grid_count : 64;
            for (std::size_t k = 0; k < count; ++k) {
                const double v =
                    cfg.target_lo + (cfg.target_hi - cfg.target_lo) *
                                        (static_cast<double>(k) / static_cast<double>(count));
                built.target.push_back(find_or_append(space.point_from_scalar(v)));
            }
            break;
        }
    }

    switch (cfg.measures_kind) {
        case ExperimentConfig::MeasuresKind::None:
            break;
        case ExperimentConfig::MeasuresKind::BernoulliGrid: {
            if (space.kind != SpaceKind::Symbolic || space.alphabet != 2)
                throw ValidationError("[measures] bernoulli-grid needs a 2-symbol space");
            if (cfg.p_count < 1 || cfg.p_from <= 0 || cfg.p_to >= 1 || cfg.p_from > cfg.p_to)
                throw ValidationError("[measures] bernoulli-grid needs 0 < p_from <= p_to < 1");
            for (int i = 0; i < cfg.p_count; ++i) {
                const double p = cfg.p_count == 1
                                     ? cfg.p_from
                                     : cfg.p_from + (cfg.p_to - cfg.p_from) * i / (cfg.p_count - 1);
                BorelMeasure m = BorelMeasure::bernoulli({1.0 - p, p});
                char buf[32];
                std::snprintf(buf, sizeof(buf), "bernoulli(p=%.4f)", p);
                m.label = buf;
                m.seed = cfg.mc_seed;
                built.measures.push_back(std::move(m));
            }
            break;
        }
        case ExperimentConfig::MeasuresKind::Bernoulli: {
            BorelMeasure m = BorelMeasure::bernoulli(cfg.measure_probs);
            m.label = "bernoulli";
            m.seed = cfg.mc_seed;
            built.measures.push_back(std::move(m));
            break;
        }
        case ExperimentConfig::MeasuresKind::Atomic: {
            BorelMeasure m;
            m.kind = MeasureKind::Atomic;
            m.label = "atomic";
            m.seed = cfg.mc_seed;
            for (const std::string& lit : cfg.measure_points) {
                try {
                    if (space.kind == SpaceKind::Symbolic)
                        m.atoms.push_back(space.point_from_symbols(lit));
                    else
                        m.atoms.push_back(space.point_from_scalar(std::stod(lit)));
                } catch (const std::exception& ex) {
                    throw ValidationError("[measures] bad point literal '" + lit + "': " +
                                          ex.what());
                }
            }
            m.weights = cfg.measure_weights;
            if (m.weights.empty() && !m.atoms.empty())
                m.weights.assign(m.atoms.size(), 1.0 / static_cast<double>(m.atoms.size()));
            built.measures.push_back(std::move(m));
            break;
        }
        case ExperimentConfig::MeasuresKind::Sampled: {
            BorelMeasure m;
            m.kind = MeasureKind::Sampled;
            m.label = "sampled-uniform";
            m.sample_count = cfg.sampled_count ? cfg.sampled_count : 512;
            m.seed = cfg.mc_seed;
            built.measures.push_back(std::move(m));
            break;
        }
    }
    for (const BorelMeasure& m : built.measures) {
        std::vector<std::string> merr;
        m.validate(*built.system, merr);
        if (!merr.empty()) throw ValidationError(std::move(merr));
    }

    return built;
}

} // namespace naifs
