#include "posr/table.hpp"

#include <chrono>
#include <cstdio>

#include "posr/errors.hpp"

namespace posr {

namespace {

std::string cup(int r) { return "cup:" + std::to_string(r); }
std::string cap(int s) { return "cap:" + std::to_string(s); }
std::string chain(int r) { return "chain:" + std::to_string(r); }
std::string matching(int s) { return "matching:" + std::to_string(s); }

std::vector<TableCell> build_cells() {
    std::vector<TableCell> cells;
    auto add = [&](char panel, std::string h1, std::string h2, int value) {
        TableCell c;
        c.panel = panel;
        c.id = std::string(1, panel) + ":" + h1 + "/" + h2;
        c.targets = {std::move(h1), std::move(h2)};
        c.expected = value;
        cells.push_back(std::move(c));
    };
    // Zero marks a blank entry.
    const int a[4][4] = {{3, 3, 4, 4}, {3, 4, 5, 5}, {4, 5, 5, 0}, {4, 5, 0, 0}};
    for (int r = 2; r <= 5; ++r)
        for (int s = 2; s <= 5; ++s)
            if (a[r - 2][s - 2]) add('a', cup(r), cap(s), a[r - 2][s - 2]);

    add('b', "diamond:2", "diamond:2", 5);
    add('b', "diamond:2", "boolean:2", 6);
    add('b', "boolean:2", "boolean:2", 6);

    const int c[3][3] = {{2, 2, 3}, {3, 3, 4}, {4, 4, 5}};
    for (int r = 2; r <= 4; ++r)
        for (int s = 2; s <= 4; ++s) add('c', chain(r), cap(s), c[r - 2][s - 2]);

    const int d[3][3] = {{3, 3, 4}, {0, 3, 4}, {0, 0, 4}};
    for (int r = 2; r <= 4; ++r)
        for (int s = 2; s <= 4; ++s)
            if (d[r - 2][s - 2]) add('d', matching(r), matching(s), d[r - 2][s - 2]);

    const int e[4][3] = {{2, 3, 3}, {3, 4, 4}, {4, 5, 0}, {5, 0, 0}};
    for (int r = 2; r <= 5; ++r)
        for (int s = 2; s <= 4; ++s)
            if (e[r - 2][s - 2]) add('e', chain(r), matching(s), e[r - 2][s - 2]);

    const int f[5][3] = {{3, 3, 4}, {3, 4, 4}, {4, 4, 4}, {4, 4, 4}, {4, 4, 4}};
    for (int r = 2; r <= 6; ++r)
        for (int s = 2; s <= 4; ++s) add('f', cup(r), matching(s), f[r - 2][s - 2]);

    const char* butterflies[4] = {"butterfly:2x2", "butterfly:2x3", "butterfly:3x2", "butterfly:3x3"};
    const int g[3][4] = {{4, 4, 4, 5}, {4, 4, 5, 5}, {4, 5, 0, 0}};
    for (int r = 2; r <= 4; ++r)
        for (int j = 0; j < 4; ++j)
            if (g[r - 2][j]) add('g', cup(r), butterflies[j], g[r - 2][j]);

    const int h[3][4] = {{4, 4, 4, 4}, {4, 4, 4, 4}, {4, 5, 0, 0}};
    for (int r = 2; r <= 4; ++r)
        for (int s = 2; s <= 5; ++s)
            if (h[r - 2][s - 2]) add('h', cup(r), "crown:" + std::to_string(s), h[r - 2][s - 2]);

    const char* rows[3] = {"diamond:2", "boolean:2", "diamond:3"};
    const int i[3][3] = {{4, 4, 5}, {4, 4, 5}, {4, 5, 5}};
    for (int row = 0; row < 3; ++row)
        for (int s = 2; s <= 4; ++s) add('i', rows[row], cap(s), i[row][s - 2]);
    return cells;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string fixed3(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

} // namespace

const std::vector<TableCell>& table_cells() {
    static const std::vector<TableCell> cells = build_cells();
    return cells;
}

std::vector<TableCell> select_cells(const std::string& panels) {
    for (char p : panels)
        if (p < 'a' || p > 'i') throw ParseError(std::string("unknown table panel '") + p + "' (expected a..i)");
    std::vector<TableCell> out;
    for (const auto& c : table_cells())
        if (panels.empty() || panels.find(c.panel) != std::string::npos) out.push_back(c);
    return out;
}

std::string CellResult::value_text() const {
    if (value) return std::to_string(*value);
    const bool all_avoidable = !outcome.steps.empty() && avoidable_up_to == outcome.steps.back().n;
    if (all_avoidable) return ">" + std::to_string(avoidable_up_to);
    return "?";
}

CellResult run_cell(const TableCell& cell, int max_host, const RamseyOptions& options,
                    const std::function<void(const RamseyStep&)>& on_step) {
    if (max_host < 1) throw DomainError("max_host must be at least 1");
    CellResult r;
    r.cell = cell;
    std::vector<Pograph> targets;
    for (const auto& name : cell.targets) targets.push_back(make_pograph(name, 2));
    const auto start = std::chrono::steady_clock::now();
    r.outcome = compute_ramsey(HostFamily::boolean(), 2, targets, max_host, options, 1, on_step);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.value = r.outcome.value;
    r.method = "unresolved";
    for (const auto& s : r.outcome.steps) {
        if (s.result.verdict == Verdict::avoidable) r.avoidable_up_to = s.n;
        if (r.value && s.n == *r.value) r.method = s.result.method;
    }
    return r;
}

void write_csv(std::ostream& out, const std::vector<CellResult>& results) {
    out << "cell,value,method,seconds\n";
    for (const auto& r : results) {
        out << csv_field(r.cell.id) << ',' << r.value_text() << ',' << r.method << ',' << fixed3(r.seconds) << '\n';
    }
}

nlohmann::ordered_json to_json(const CellResult& r) {
    nlohmann::ordered_json j;
    j["cell"] = r.cell.id;
    j["targets"] = r.cell.targets;
    j["expected"] = r.cell.expected;
    j["value"] = r.value_text();
    j["method"] = r.method;
    j["seconds"] = r.seconds;
    j["scan"] = to_json(r.outcome, false);
    return j;
}

} // namespace posr
