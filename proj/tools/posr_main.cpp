// posr: command-line front end for the poset Ramsey library.
//
// Exit codes: 0 success, 1 violation or forced/infeasible answer, 2 usage
// error, 3 resource limit or unknown verdict.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "posr/bounds.hpp"
#include "posr/chain_index.hpp"
#include "posr/cnf.hpp"
#include "posr/config.hpp"
#include "posr/constructions.hpp"
#include "posr/embedding.hpp"
#include "posr/errors.hpp"
#include "posr/lubell.hpp"
#include "posr/ramsey.hpp"
#include "posr/solver.hpp"
#include "posr/table.hpp"

using namespace posr;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kViolation = 1, kUsage = 2, kResource = 3 };

struct Globals {
    std::optional<std::string> config_path;
    std::optional<std::string> solver;
    std::optional<double> timeout;
    std::optional<std::size_t> brute_cap;
    std::optional<std::size_t> copy_cap;
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string format = "json";
    bool quiet = false;
};

Config resolve(const Globals& g) {
    auto c = load_config(g.config_path ? std::optional<std::filesystem::path>(*g.config_path) : std::nullopt);
    if (g.solver) c.solver = *g.solver;
    if (g.timeout) apply_setting(c, "timeout_secs", std::to_string(*g.timeout));
    if (g.brute_cap) apply_setting(c, "brute_cap", std::to_string(*g.brute_cap));
    if (g.copy_cap) apply_setting(c, "copy_cap", std::to_string(*g.copy_cap));
    if (g.output_dir) c.output_dir = *g.output_dir;
    if (g.seed) c.seed = *g.seed;
    if (g.workers) apply_setting(c, "workers", std::to_string(*g.workers));
    return c;
}

RamseyOptions ramsey_options(const Config& c, const std::string& method) {
    RamseyOptions o;
    o.method = parse_method(method);
    o.brute_cap = c.brute_cap;
    o.solver_command = c.solver;
    o.timeout_seconds = c.timeout_secs;
    o.copy_cap = c.copy_cap;
    o.workers = c.workers;
    o.work_dir = c.output_dir;
    o.keep_cnf = !c.output_dir.empty();
    return o;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<Pograph> parse_targets(const std::vector<std::string>& names, int k) {
    std::vector<Pograph> out;
    for (const auto& n : names) out.push_back(make_pograph(n, k));
    return out;
}

void heartbeat(const Globals& g, const std::string& what) {
    if (!g.quiet) std::cerr << "[posr] " << what << std::endl;
}

std::function<void(const RamseyStep&)> step_logger(const Globals& g, const std::string& label) {
    return [&g, label](const RamseyStep& s) {
        std::ostringstream msg;
        msg << label << " n=" << s.n << " " << to_string(s.result.verdict) << " (" << s.result.method;
        if (!s.inferred) msg << ", " << s.result.chains << " chains, " << s.result.seconds << "s";
        msg << ")";
        heartbeat(g, msg.str());
    };
}

int verdict_exit(Verdict v) {
    switch (v) {
    case Verdict::avoidable: return kOk;
    case Verdict::forced: return kViolation;
    case Verdict::unknown: return kResource;
    }
    return kResource;
}

std::string rational_text(const Rational& r) { return r.str(); }

// Subcommand handlers -------------------------------------------------------

struct HostArgs {
    std::string host;
    std::optional<int> chains_k;
};

int cmd_host(const HostArgs& a) {
    const auto host = HostPoset::build(HostDescriptor::parse(a.host));
    auto j = to_json(host);
    if (a.chains_k) {
        const ChainIndex chains(host, *a.chains_k);
        j["k"] = *a.chains_k;
        j["chain_count"] = chains.size();
    }
    emit(j);
    return kOk;
}

struct PographArgs {
    std::string name;
    std::string file;
    int k = 2;
};

int cmd_pograph(const PographArgs& a) {
    const auto g = a.file.empty() ? make_pograph(a.name, a.k) : pograph_from_json(read_json_file(a.file));
    emit(to_json(g));
    return kOk;
}

struct CopiesArgs {
    std::string host;
    std::string pograph;
    int k = 2;
    bool count = false;
    bool embeddings = false;
};

int cmd_copies(const CopiesArgs& a, const Config& c) {
    const auto host = HostPoset::build(HostDescriptor::parse(a.host));
    const auto pattern = make_pograph(a.pograph, a.k);
    const ChainIndex chains(host, a.k);
    const SearchOptions so{c.copy_cap, c.workers};
    if (a.embeddings) {
        std::cout << count_embeddings(pattern, host, chains, so) << '\n';
        return kOk;
    }
    const auto sets = copy_edge_sets(pattern, host, chains, so);
    if (a.count) std::cout << sets.size() << '\n';
    else emit(copies_to_json(host, pattern, sets));
    return kOk;
}

struct LubellArgs {
    std::string op = "value";
    std::string family_file;
    std::string pograph;
    int n = 0;
    int m = 1;
    std::uint64_t trials = 10000;
};

int cmd_lubell(const LubellArgs& a, const Config& c) {
    ordered_json j;
    j["op"] = a.op;
    auto family = [&] {
        if (a.family_file.empty()) throw ParseError("--family is required for this operation");
        return family_from_json(read_json_file(a.family_file));
    };
    auto pattern = [&] {
        if (a.pograph.empty()) throw ParseError("--pograph is required for this operation");
        return make_pograph(a.pograph, 1);
    };
    if (a.op == "value") {
        j["value"] = rational_text(lubell(family()));
    } else if (a.op == "via-chains") {
        j["value"] = rational_text(lubell_via_chains(family()));
    } else if (a.op == "interval") {
        j["m"] = a.m;
        j["value"] = rational_text(interval_lubell(family(), a.m));
    } else if (a.op == "sampled") {
        const auto s = interval_lubell_sampled(family(), a.m, c.seed, a.trials);
        j["m"] = a.m;
        j["seed"] = c.seed;
        j["trials"] = s.trials;
        j["mean"] = s.mean;
    } else if (a.op == "interval-size") {
        j["n"] = a.n;
        j["m"] = a.m;
        j["value"] = interval_chain_size(a.n, a.m);
    } else if (a.op == "middle") {
        j = to_json(middle_levels(a.n, a.m));
    } else if (a.op == "exact-L") {
        j["n"] = a.n;
        j["value"] = rational_text(exact_L(pattern(), a.n, c.workers));
    } else if (a.op == "exact-Lprime") {
        j["n"] = a.n;
        j["value"] = rational_text(exact_Lprime(pattern(), a.n, c.workers));
    } else if (a.op == "e-estimate") {
        j["n_max"] = a.n;
        j["value"] = e_estimate(pattern(), a.n);
    } else {
        throw ParseError("unknown lubell operation '" + a.op + "'");
    }
    emit(j);
    return kOk;
}

struct BoundArgs {
    std::string formula;
    int r = 0, s = 0, t = 0, d = 0, k = 0, n = 0, n1 = 0, M = 0;
    std::int64_t cr = 0;
    std::vector<int> sizes, heights, e, chains, leaves, middles, cups, caps;
    std::vector<std::string> shapes, L;
    std::string family;
    std::string shape = "cupcap";
};

std::vector<std::pair<int, int>> parse_shapes(const std::vector<std::string>& items) {
    std::vector<std::pair<int, int>> out;
    for (const auto& s : items) {
        const auto x = s.find('x');
        if (x == std::string::npos) throw ParseError("shape '" + s + "' should look like 2x3");
        try {
            out.emplace_back(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
        } catch (const std::exception&) {
            throw ParseError("shape '" + s + "' should look like 2x3");
        }
    }
    return out;
}

int cmd_bound(const BoundArgs& a) {
    const auto& f = a.formula;
    BoundResult b;
    if (f == "br1-general") b = br1_general(a.sizes, a.e, a.M);
    else if (f == "br1-boolchain") b = br1_boolchain(a.n1, a.chains);
    else if (f == "br1-ulbounded") b = br1_ulbounded(a.e);
    else if (f == "br1-butterfly") b = br1_butterfly(a.t);
    else if (f == "br1-diamond") b = br1_diamond(a.t, a.r);
    else if (f == "br1-mlubell") b = br1_mlubell(a.sizes, a.heights);
    else if (f == "br1-mlubell-boolean") b = br1_mlubell_boolean(a.d, a.t);
    else if (f == "br1-boolean-quadratic") b = br1_boolean_quadratic(a.d, a.t);
    else if (f == "br1-mlubell-butterflies") b = br1_mlubell_butterflies(parse_shapes(a.shapes));
    else if (f == "br1-mlubell-cupcaps") b = br1_mlubell_cupcaps(a.leaves);
    else if (f == "br1-mlubell-diamonds") b = br1_mlubell_diamonds(a.middles);
    else if (f == "br1-boolean-pair") b = br1_axenovich_walzer(a.r, a.s);
    else if (f == "cr2-cupcap") b = cr2_cupcap(a.r, a.s);
    else if (f == "br2-cupcap") b = br2_cupcap(a.r, a.s);
    else if (f == "br2-samecup") b = br2_samecup(a.leaves);
    else if (f == "br2-matching") b = br2_matching(a.k, a.sizes);
    else if (f == "br2-diamondcup") b = br2_diamondcup(a.s, a.r);
    else if (f == "br2-diamonds") b = br2_diamonds(a.s, a.r);
    else if (f == "cr2-diamonds") b = cr2_diamonds(a.s, a.r);
    else if (f == "br2-multicupcap") {
        const auto [R, S] = multicupcap_reduce(a.cups, a.caps);
        b = br2_cupcap(R, S);
    } else if (f == "chain-vs-boolean") b = chain_vs_boolean(a.cr);
    else if (f == "totally-ordered") b = totally_ordered_equalities(a.cr);
    else if (f == "rooted-bipartite") b = rooted_bipartite_cupcap(a.s, a.r);
    else if (f == "generic-family") b = generic_family_bounds(HostFamily::parse(a.family), a.cr);
    else if (f == "grid") {
        GridShape shape;
        if (a.shape == "cupcap") shape = GridShape::cupcap;
        else if (a.shape == "diamondcup") shape = GridShape::diamondcup;
        else if (a.shape == "diamonddiamond") shape = GridShape::diamonddiamond;
        else throw ParseError("unknown grid shape '" + a.shape + "'");
        b = grid_bounds(HostFamily::parse(a.family), shape, a.r, a.s);
    } else if (f == "lubell-condition") {
        std::vector<Rational> values;
        for (const auto& text : a.L) {
            try {
                values.emplace_back(text);
            } catch (const std::exception&) {
                throw ParseError("bad rational '" + text + "'");
            }
        }
        ordered_json j;
        j["source"] = "lubell-sum";
        j["holds"] = br1_lubell_condition(values, a.n);
        emit(j);
        return kOk;
    } else {
        throw ParseError("unknown formula '" + f + "'");
    }
    emit(to_json(b));
    return kOk;
}

struct ConstructArgs {
    std::string name;
    std::vector<int> e;
    int t = 2;
    int s = 2;
    std::string rd_file;
};

int cmd_construct(const ConstructArgs& a) {
    Coloring c;
    if (a.name == "layered") c = layered_coloring(a.e);
    else if (a.name == "butterfly") c = butterfly_coloring(a.t);
    else if (a.name == "chain-split") c = chain_split_coloring(a.s);
    else if (a.name == "rd") c = rd_coloring(a.rd_file.empty() ? builtin_R3() : rd_family_from_json(read_json_file(a.rd_file)));
    else throw ParseError("unknown construction '" + a.name + "' (layered, butterfly, rd, chain-split)");
    emit(to_json(c));
    return kOk;
}

struct SearchRdArgs {
    int d = 3;
    std::uint64_t iters = 1'000'000;
    std::string verify_file;
};

int cmd_search_rd(const SearchRdArgs& a, const Config& c, const Globals& g) {
    if (!a.verify_file.empty()) {
        const auto fam = rd_family_from_json(read_json_file(a.verify_file));
        const auto check = verify_rd_properties(fam, fam.d);
        ordered_json j;
        j["ok"] = check.ok;
        j["failed_property"] = check.failed_property;
        j["certificate"] = check.certificate ? ordered_json(*check.certificate) : ordered_json();
        emit(j);
        return check.ok ? kOk : kViolation;
    }
    heartbeat(g, "searching R_" + std::to_string(a.d) + " with seed " + std::to_string(c.seed));
    const auto found = search_rd(a.d, c.seed, a.iters, c.workers);
    if (!found) {
        ordered_json j;
        j["d"] = a.d;
        j["found"] = false;
        emit(j);
        return kResource;
    }
    emit(to_json(*found));
    return kOk;
}

struct EncodeArgs {
    std::string host;
    int k = 2;
    std::vector<std::string> targets;
    std::string out;
    std::string map;
};

int cmd_encode(const EncodeArgs& a, const Config& c) {
    const auto host = HostPoset::build(HostDescriptor::parse(a.host));
    const auto inst = encode(host, a.k, parse_targets(a.targets, a.k), {c.copy_cap, c.workers});
    if (!a.map.empty()) write_text_file(a.map, var_map_json(inst).dump(2) + "\n");
    if (a.out.empty()) {
        write_dimacs(inst, std::cout);
        return kOk;
    }
    write_text_file(a.out, to_dimacs(inst));
    ordered_json j;
    j["host"] = inst.host.to_string();
    j["k"] = inst.k;
    j["targets"] = inst.targets;
    j["chains"] = inst.chain_count;
    j["copies"] = inst.copies_per_target;
    j["variables"] = inst.variable_count;
    j["clauses"] = inst.clauses.size();
    emit(j);
    return kOk;
}

struct CheckArgs {
    std::string map;
    std::string result;
    std::optional<int> exit_code;
};

int cmd_check_sat_result(const CheckArgs& a, const Config& c) {
    const auto inst = instance_from_var_map(read_json_file(a.map));
    const auto verdict = read_solver_output(read_text_file(a.result), inst.variable_count, a.exit_code);
    ordered_json j;
    j["status"] = to_string(verdict.status);
    if (!verdict.diagnostics.empty()) j["diagnostics"] = verdict.diagnostics;
    if (verdict.status == SolverStatus::unsat) {
        j["verdict"] = "forced";
        emit(j);
        return kViolation;
    }
    if (verdict.status == SolverStatus::unknown) {
        j["verdict"] = "unknown";
        emit(j);
        return kResource;
    }
    const auto coloring = decode(inst, *verdict.model);
    std::vector<Pograph> targets = parse_targets(inst.targets, inst.k);
    const auto check = verify_coloring(coloring, targets, {c.copy_cap, c.workers});
    j["verified"] = check.ok;
    if (!check.ok) {
        j["verdict"] = "unknown";
        j["violation_color"] = check.color;
        j["violation_edges"] = check.copy->edges;
        emit(j);
        return kViolation;
    }
    j["verdict"] = "avoidable";
    j["coloring"] = to_json(coloring);
    emit(j);
    return kOk;
}

struct FeasibleArgs {
    std::string family = "boolean";
    int n = 1;
    int k = 2;
    std::vector<std::string> targets;
    std::string method = "auto";
};

int cmd_feasible(const FeasibleArgs& a, const Config& c, const Globals& g) {
    const auto opts = ramsey_options(c, a.method);
    heartbeat(g, "feasible " + a.family + ":" + std::to_string(a.n));
    const auto f = feasible(HostFamily::parse(a.family), a.n, a.k, parse_targets(a.targets, a.k), opts);
    auto j = to_json(f);
    j["n"] = a.n;
    emit(j);
    return verdict_exit(f.verdict);
}

struct RamseyArgs {
    std::string family = "boolean";
    int k = 2;
    std::vector<std::string> targets;
    int n_min = 1;
    int n_max = 6;
    std::string method = "auto";
    bool witnesses = false;
};

int cmd_ramsey(const RamseyArgs& a, const Config& c, const Globals& g) {
    const auto opts = ramsey_options(c, a.method);
    const auto out = compute_ramsey(HostFamily::parse(a.family), a.k, parse_targets(a.targets, a.k), a.n_max, opts,
                                    a.n_min, step_logger(g, "ramsey"));
    emit(to_json(out, a.witnesses));
    return out.value ? kOk : kResource;
}

struct VerifyArgs {
    std::string coloring;
    std::vector<std::string> targets;
};

int cmd_verify(const VerifyArgs& a, const Config& c) {
    const auto col = coloring_from_json(read_json_file(a.coloring));
    const auto res = verify_coloring(col, parse_targets(a.targets, col.k), {c.copy_cap, c.workers});
    ordered_json j;
    j["ok"] = res.ok;
    if (!res.ok) {
        j["color"] = res.color;
        j["edges"] = res.copy->edges;
        j["witness"] = res.copy->witness;
    }
    emit(j);
    return res.ok ? kOk : kViolation;
}

struct TableArgs {
    std::string cells;
    int max_host = 4;
    std::string method = "auto";
};

int cmd_table(const TableArgs& a, const Config& c, const Globals& g) {
    const auto opts = ramsey_options(c, a.method);
    std::vector<CellResult> results;
    for (const auto& cell : select_cells(a.cells)) {
        results.push_back(run_cell(cell, a.max_host, opts, step_logger(g, cell.id)));
    }
    if (g.format == "csv") {
        write_csv(std::cout, results);
    } else {
        auto j = ordered_json::array();
        for (const auto& r : results) j.push_back(to_json(r));
        emit(j);
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Partially ordered Ramsey numbers: hosts, pographs, bounds, constructions and exact search"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--config", g.config_path, "key=value config file (default $POSR_CONFIG or ~/.config/posr/config)");
    app.add_option("--solver-cmd", g.solver, "DIMACS solver command; {} is replaced by the CNF path");
    app.add_option("--timeout-secs", g.timeout, "solver timeout in seconds (0 = none)");
    app.add_option("--brute-cap", g.brute_cap, "largest chain count for backtracking search");
    app.add_option("--copy-cap", g.copy_cap, "largest number of copies per target");
    app.add_option("--output-dir", g.output_dir, "directory for CNF instance files (kept when set)");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--workers", g.workers, "parallel workers (default 1)");
    app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--quiet", g.quiet, "no progress messages on stderr");

    HostArgs host_a;
    auto* host = app.add_subcommand("host", "print a host poset as JSON");
    host->add_option("--host", host_a.host, "descriptor, e.g. boolean:3")->required();
    host->add_option("--chains", host_a.chains_k, "also report the number of k-chains");

    PographArgs pg_a;
    auto* pg = app.add_subcommand("pograph", "print a catalog pograph as JSON");
    auto* pg_name = pg->add_option("--name", pg_a.name, "catalog name, e.g. diamond:2");
    pg->add_option("--file", pg_a.file, "pograph JSON to normalize and echo")->excludes(pg_name);
    pg->add_option("--k", pg_a.k, "uniformity");

    CopiesArgs cp_a;
    auto* cp = app.add_subcommand("copies", "enumerate or count copies of a pograph in a host");
    cp->add_option("--host", cp_a.host)->required();
    cp->add_option("--pograph", cp_a.pograph)->required();
    cp->add_option("--k", cp_a.k);
    cp->add_flag("--count", cp_a.count, "print the number of distinct copies");
    cp->add_flag("--embeddings", cp_a.embeddings, "print the number of weak embeddings");

    LubellArgs lu_a;
    auto* lu = app.add_subcommand("lubell", "Lubell function tools");
    lu->add_option("--op", lu_a.op, "value, via-chains, interval, sampled, interval-size, middle, exact-L, exact-Lprime, e-estimate");
    lu->add_option("--family", lu_a.family_file, "family JSON {\"n\", \"members\"}");
    lu->add_option("--pograph", lu_a.pograph, "forbidden poset (catalog name)");
    lu->add_option("--n", lu_a.n);
    lu->add_option("--m", lu_a.m);
    lu->add_option("--trials", lu_a.trials);

    BoundArgs bd_a;
    auto* bd = app.add_subcommand("bound", "evaluate a closed-form bound");
    bd->add_option("--formula", bd_a.formula)->required();
    for (auto [flag, ptr] : {std::pair{"--r", &bd_a.r}, {"--s", &bd_a.s}, {"--t", &bd_a.t}, {"--d", &bd_a.d},
                             {"--k", &bd_a.k}, {"--n", &bd_a.n}, {"--n1", &bd_a.n1}, {"--M", &bd_a.M}}) {
        bd->add_option(flag, *ptr);
    }
    bd->add_option("--cr", bd_a.cr, "a chain Ramsey value");
    for (auto [flag, ptr] : {std::pair{"--sizes", &bd_a.sizes}, {"--heights", &bd_a.heights}, {"--e", &bd_a.e},
                             {"--chains", &bd_a.chains}, {"--leaves", &bd_a.leaves}, {"--middles", &bd_a.middles},
                             {"--cups", &bd_a.cups}, {"--caps", &bd_a.caps}}) {
        bd->add_option(flag, *ptr)->delimiter(',');
    }
    bd->add_option("--shapes", bd_a.shapes, "butterfly shapes, e.g. 2x2,2x3")->delimiter(',');
    bd->add_option("--L", bd_a.L, "Lubell values, e.g. 3,5/2")->delimiter(',');
    bd->add_option("--family", bd_a.family, "host family, e.g. grid-length:3");
    bd->add_option("--shape", bd_a.shape, "grid shape: cupcap, diamondcup, diamonddiamond");

    ConstructArgs co_a;
    auto* co = app.add_subcommand("construct", "emit a coloring construction as JSON");
    co->add_option("--name", co_a.name, "layered, butterfly, rd, chain-split")->required();
    co->add_option("--e", co_a.e, "layer counts for layered")->delimiter(',');
    co->add_option("--t", co_a.t, "colors for butterfly");
    co->add_option("--s", co_a.s, "parameter for chain-split");
    co->add_option("--rd", co_a.rd_file, "R_d family JSON (default: the built-in d = 3 family)");

    SearchRdArgs rd_a;
    auto* rd = app.add_subcommand("search-rd", "search for an R_d family, or verify one");
    rd->add_option("--d", rd_a.d);
    rd->add_option("--iters", rd_a.iters, "total local search flips");
    rd->add_option("--verify", rd_a.verify_file, "check the two properties of a family JSON instead");

    EncodeArgs en_a;
    auto* en = app.add_subcommand("encode", "write the DIMACS CNF for an avoidance instance");
    en->add_option("--host", en_a.host)->required();
    en->add_option("--k", en_a.k);
    en->add_option("--targets", en_a.targets)->required()->delimiter(',');
    en->add_option("--out", en_a.out, "CNF path (stdout when absent)");
    en->add_option("--map", en_a.map, "sidecar variable map path");

    CheckArgs ck_a;
    auto* ck = app.add_subcommand("check-sat-result", "decode and verify a solver result");
    ck->add_option("--map", ck_a.map)->required();
    ck->add_option("--result", ck_a.result, "captured solver output")->required();
    ck->add_option("--exit-code", ck_a.exit_code, "solver exit code, if known");

    FeasibleArgs fe_a;
    auto* fe = app.add_subcommand("feasible", "decide avoidability on one host");
    fe->add_option("--family", fe_a.family);
    fe->add_option("--n", fe_a.n)->required();
    fe->add_option("--k", fe_a.k);
    fe->add_option("--targets", fe_a.targets)->required()->delimiter(',');
    fe->add_option("--method", fe_a.method)->check(CLI::IsMember({"brute", "sat", "auto"}));

    RamseyArgs ra_a;
    auto* ra = app.add_subcommand("ramsey", "scan host sizes for the exact Ramsey number");
    ra->add_option("--family", ra_a.family);
    ra->add_option("--k", ra_a.k);
    ra->add_option("--targets", ra_a.targets)->required()->delimiter(',');
    ra->add_option("--n-min", ra_a.n_min);
    ra->add_option("--n-max", ra_a.n_max);
    ra->add_option("--method", ra_a.method)->check(CLI::IsMember({"brute", "sat", "auto"}));
    ra->add_flag("--witnesses", ra_a.witnesses, "include avoiding colorings in the output");

    VerifyArgs ve_a;
    auto* ve = app.add_subcommand("verify-coloring", "check a coloring against target pographs");
    ve->add_option("--coloring", ve_a.coloring)->required();
    ve->add_option("--targets", ve_a.targets)->required()->delimiter(',');

    TableArgs tb_a;
    auto* tb = app.add_subcommand("reproduce-table", "recompute the small 2-uniform Boolean table");
    tb->add_option("--cells", tb_a.cells, "panel letters, e.g. a or acd (default all)");
    tb->add_option("--max-host", tb_a.max_host, "largest Boolean host B_n to try");
    tb->add_option("--method", tb_a.method)->check(CLI::IsMember({"brute", "sat", "auto"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const Config config = resolve(g);
        if (*host) return cmd_host(host_a);
        if (*pg) {
            if (pg_a.name.empty() && pg_a.file.empty()) throw ParseError("pograph needs --name or --file");
            return cmd_pograph(pg_a);
        }
        if (*cp) return cmd_copies(cp_a, config);
        if (*lu) return cmd_lubell(lu_a, config);
        if (*bd) return cmd_bound(bd_a);
        if (*co) return cmd_construct(co_a);
        if (*rd) return cmd_search_rd(rd_a, config, g);
        if (*en) return cmd_encode(en_a, config);
        if (*ck) return cmd_check_sat_result(ck_a, config);
        if (*fe) return cmd_feasible(fe_a, config, g);
        if (*ra) return cmd_ramsey(ra_a, config, g);
        if (*ve) return cmd_verify(ve_a, config);
        if (*tb) return cmd_table(tb_a, config, g);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SizeLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const CopyCapExceeded& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return kResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    }
    return kUsage;
}
