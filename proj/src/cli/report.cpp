#include "transwave/runner.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "transwave/csv.hpp"

namespace tw {

namespace fs = std::filesystem;

namespace {

struct Row {
    std::string run, item, value, status;
};

}  // namespace

int report_command(const std::vector<fs::path>& dirs, std::ostream& out, std::ostream& err) {
    if (dirs.empty()) {
        fmt::print(err, "report: no run directories given\n");
        return exit_config_error;
    }
    std::map<std::string, std::vector<Row>> by_suite;
    std::vector<std::string> order;
    int code = exit_ok;
    for (const auto& dir : dirs) {
        const fs::path manifest = dir / "manifest.csv";
        if (!fs::is_regular_file(manifest)) {
            fmt::print(err, "report: {}: missing manifest.csv (expected the output directory of `run`)\n",
                       dir.string());
            code = exit_config_error;
            continue;
        }
        const CsvData d = read_csv(manifest);
        const int cs = d.column("suite"), ci = d.column("item"), cv = d.column("value"), ct = d.column("status");
        for (const auto& r : d.rows) {
            if (static_cast<int>(r.size()) <= std::max({cs, ci, cv, ct})) {
                fmt::print(err, "report: {}: malformed row\n", manifest.string());
                code = exit_config_error;
                continue;
            }
            if (r[ci] == "artifact" && !fs::is_regular_file(dir / r[cv])) {
                fmt::print(err, "report: {}: listed artifact {} is missing\n", dir.string(), r[cv]);
                code = exit_config_error;
            }
            if (!by_suite.count(r[cs])) order.push_back(r[cs]);
            by_suite[r[cs]].push_back({dir.filename().string(), r[ci], r[cv], r[ct]});
        }
    }
    std::stable_sort(order.begin(), order.end());
    for (const auto& suite : order) {
        const auto& rows = by_suite[suite];
        std::size_t wr = 3, wi = 4, wv = 5;
        for (const auto& r : rows) {
            wr = std::max(wr, r.run.size());
            wi = std::max(wi, r.item.size());
            wv = std::max(wv, std::min<std::size_t>(r.value.size(), 60));
        }
        fmt::print(out, "== {} ==\n", suite);
        fmt::print(out, "{:<{}}  {:<{}}  {:<{}}  {}\n", "run", wr, "item", wi, "value", wv, "status");
        for (const auto& r : rows) {
            const std::string v = r.value.size() > 60 ? r.value.substr(0, 57) + "..." : r.value;
            const bool bad = r.status == "fail" || r.status == "DivergentBornSeries" || r.status == "NoConvergence";
            fmt::print(out, "{:<{}}  {:<{}}  {:<{}}  {}{}\n", r.run, wr, r.item, wi, v, wv, r.status, bad ? "  <<" : "");
        }
        fmt::print(out, "\n");
    }
    return code;
}

}  // namespace tw
