#include "transwave/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "transwave/errors.hpp"

namespace tw {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Line number of every "section.key" (the property tree does not keep them).
std::map<std::string, int> key_lines(const std::string& text) {
    std::map<std::string, int> out;
    std::istringstream is(text);
    std::string line, section;
    int no = 0;
    while (std::getline(is, line)) {
        ++no;
        line = trim(line);
        if (line.empty() || line[0] == ';' || line[0] == '#') continue;
        if (line.front() == '[') {
            section = trim(line.substr(1, line.find(']') - 1));
            out.emplace(section, no);
            continue;
        }
        const auto eq = line.find('=');
        if (eq != std::string::npos) out.emplace(section + "." + trim(line.substr(0, eq)), no);
    }
    return out;
}

class Reader {
public:
    Reader(const pt::ptree& tree, std::map<std::string, int> lines, std::string source)
        : tree_(tree), lines_(std::move(lines)), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const auto it = lines_.find(key);
        if (it != lines_.end()) throw ConfigError(fmt::format("{}:{}: {}: {}", source_, it->second, key, msg));
        throw ConfigError(fmt::format("{}: {}: {}", source_, key, msg));
    }

    bool has(const std::string& key) const { return static_cast<bool>(tree_.get_optional<std::string>(key)); }

    std::string str(const std::string& key, const std::string& def) const {
        used_.insert(key);
        return has(key) ? trim(tree_.get<std::string>(key)) : def;
    }

    double num(const std::string& key, double def) const {
        if (!has(key)) return def;
        return parse_double(key, str(key, ""));
    }

    int integer(const std::string& key, int def) const {
        const double v = num(key, def);
        if (v != static_cast<int>(v)) fail(key, "expected an integer");
        return static_cast<int>(v);
    }

    std::vector<double> list(const std::string& key, const std::vector<double>& def) const {
        if (!has(key)) return def;
        std::vector<double> out;
        std::stringstream ss(str(key, ""));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
        return out;
    }

    double parse_double(const std::string& key, const std::string& s) const {
        double v = 0.0;
        const auto* end = s.data() + s.size();
        const auto [ptr, ec] = std::from_chars(s.data(), end, v);
        if (s.empty() || ec != std::errc() || ptr != end) fail(key, fmt::format("'{}' is not a number", s));
        return v;
    }

    // Every key present in the file must have been read.
    void reject_unknown() const {
        for (const auto& [section, sub] : tree_) {
            if (section == "params") continue;
            if (sub.empty() && !sub.data().empty()) fail(section, "key outside any section");
            for (const auto& [key, value] : sub) {
                (void)value;
                const std::string full = section + "." + key;
                if (!used_.count(full)) fail(full, "unknown key");
            }
        }
    }

private:
    const pt::ptree& tree_;
    std::map<std::string, int> lines_;
    std::string source_;
    mutable std::set<std::string> used_;
};

}  // namespace

std::vector<std::string> known_suites() {
    return {"norms", "smoothing", "elliptic", "born", "timejets", "waves", "quasilinear", "acceptance"};
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& source) {
    pt::ptree tree;
    try {
        std::istringstream is(text);
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("{}:{}: {}", source.string(), e.line(), e.message()));
    }
    const Reader r(tree, key_lines(text), source.string());
    RunConfig c;
    c.source = source;

    {
        std::stringstream ss(r.str("run.suites", ""));
        std::string item;
        const auto known = known_suites();
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            if (std::find(known.begin(), known.end(), item) == known.end())
                r.fail("run.suites", fmt::format("unknown suite '{}'", item));
            c.suites.push_back(item);
        }
        if (c.suites.empty()) r.fail("run.suites", "at least one suite is required");
    }
    {
        const double seed = r.num("run.seed", 1.0);
        if (seed < 0 || seed != static_cast<double>(static_cast<std::uint64_t>(seed)))
            r.fail("run.seed", "expected a non-negative integer");
        c.seed = static_cast<std::uint64_t>(seed);
    }

    c.n = r.integer("grid.n", 1);
    if (c.n < 1 || c.n > 3) r.fail("grid.n", "dimension must be 1, 2 or 3");
    c.N = r.integer("grid.N", 64);
    if (c.N < 8 || c.N % 2 != 0) r.fail("grid.N", "resolution must be even and at least 8");

    c.model = r.str("model.id", "flat");
    if (auto p = tree.get_child_optional("params")) {
        for (const auto& [key, value] : *p) c.params[key] = r.parse_double("params." + key, trim(value.data()));
    }
    try {
        make_model(c.model, c.params);
    } catch (const Error& e) {
        r.fail(c.params.empty() ? "model.id" : "params", e.what());
    }

    auto& w = c.waves;
    w.T = r.num("waves.T", w.T);
    if (!(w.T > 0)) r.fail("waves.T", "horizon must be positive");
    w.dt = r.num("waves.dt", w.dt);
    if (w.dt < 0) r.fail("waves.dt", "time step must be non-negative (0 selects the stable step)");
    w.s = r.integer("waves.s", w.s);
    if (w.s < 1 || w.s > 8) r.fail("waves.s", "jet order must lie in [1, 8]");
    w.data = r.str("waves.data", w.data);
    if (w.data != "standing" && w.data != "bump" && w.data != "manufactured")
        r.fail("waves.data", "expected standing, bump or manufactured");
    if (w.data == "manufactured" && !make_model(c.model, c.params)->has_exact())
        r.fail("waves.data", fmt::format("model '{}' has no closed-form solution", c.model));
    w.amplitude = r.num("waves.amplitude", w.amplitude);
    w.startup = r.str("waves.startup", w.startup);
    if (w.startup != "jet" && w.startup != "naive") r.fail("waves.startup", "expected jet or naive");
    w.snapshot_stride = r.integer("waves.snapshot_stride", w.snapshot_stride);
    if (w.snapshot_stride < 0) r.fail("waves.snapshot_stride", "must be non-negative");
    w.jet_stride = r.integer("waves.jet_stride", w.jet_stride);
    if (w.jet_stride < 0) r.fail("waves.jet_stride", "must be non-negative");

    auto& b = c.born;
    b.s = r.integer("born.s", b.s);
    if (b.s < 1 || b.s > 6) r.fail("born.s", "block count must lie in [1, 6]");
    b.eps = r.list("born.eps", b.eps);
    if (b.eps.empty()) r.fail("born.eps", "at least one value is required");
    for (double e : b.eps)
        if (!(e >= 0)) r.fail("born.eps", "values must be non-negative");
    b.max_terms = r.integer("born.max_terms", b.max_terms);
    if (b.max_terms < 4) r.fail("born.max_terms", "must be at least 4");
    b.tol = r.num("born.tol", b.tol);
    if (!(b.tol > 0)) r.fail("born.tol", "must be positive");

    auto& q = c.quasilinear;
    q.s = r.integer("quasilinear.s", q.s);
    if (q.s < 1 || q.s > 6) r.fail("quasilinear.s", "jet order must lie in [1, 6]");
    q.T = r.num("quasilinear.T", q.T);
    if (!(q.T > 0)) r.fail("quasilinear.T", "horizon must be positive");
    q.tol = r.num("quasilinear.tol", q.tol);
    if (!(q.tol > 0)) r.fail("quasilinear.tol", "must be positive");
    q.max_iter = r.integer("quasilinear.max_iter", q.max_iter);
    if (q.max_iter < 1) r.fail("quasilinear.max_iter", "must be at least 1");
    q.R_factor = r.num("quasilinear.R_factor", q.R_factor);
    if (!(q.R_factor > 1)) r.fail("quasilinear.R_factor", "must exceed 1");
    q.amplitude = r.num("quasilinear.amplitude", q.amplitude);
    q.continuation_T = r.num("quasilinear.continuation_T", q.continuation_T);
    if (!(q.continuation_T > 0)) r.fail("quasilinear.continuation_T", "must be positive");
    q.w1inf_cap = r.num("quasilinear.w1inf_cap", q.w1inf_cap);
    if (!(q.w1inf_cap > 0)) r.fail("quasilinear.w1inf_cap", "must be positive");
    q.delta = r.num("quasilinear.delta", q.delta);
    if (!(q.delta >= 0 && q.delta <= 1)) r.fail("quasilinear.delta", "must lie in [0, 1]");

    c.smoothing.lambdas = r.list("smoothing.lambdas", c.smoothing.lambdas);
    for (double l : c.smoothing.lambdas)
        if (!(l > 0 && l <= 1)) r.fail("smoothing.lambdas", "values must lie in (0, 1]");

    c.out = r.str("output.dir", c.out.string());
    if (c.out.empty()) r.fail("output.dir", "must not be empty");

    r.reject_unknown();
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError(fmt::format("{}: cannot read config", path.string()));
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace tw
