#include "posr/cnf.hpp"

#include <charconv>
#include <ostream>
#include <sstream>

#include "posr/errors.hpp"

namespace posr {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::optional<long long> to_int(std::string_view s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        fn(line);
        pos = end + 1;
    }
}

} // namespace

int CnfInstance::var(std::size_t chain, int color) const {
    if (t <= 2) return static_cast<int>(chain) + 1;
    return static_cast<int>(chain) * t + color;
}

CnfInstance encode_copies(const HostDescriptor& host, int k, std::size_t chain_count,
                          const std::vector<std::string>& target_names,
                          const std::vector<std::vector<std::vector<std::uint32_t>>>& copies) {
    if (copies.empty() || copies.size() != target_names.size()) throw DomainError("need one copy list per target");
    CnfInstance inst;
    inst.host = host;
    inst.k = k;
    inst.t = static_cast<int>(copies.size());
    inst.chain_count = chain_count;
    inst.targets = target_names;
    const auto per_chain = inst.t <= 2 ? 1 : inst.t;
    const auto vars = chain_count * static_cast<std::size_t>(per_chain);
    if (vars > static_cast<std::size_t>(INT32_MAX)) throw SizeLimitError("too many variables");
    inst.variable_count = static_cast<int>(vars);

    for (std::size_t i = 0; i < copies.size(); ++i) {
        const int color = static_cast<int>(i) + 1;
        inst.copies_per_target.push_back(copies[i].size());
        for (const auto& edges : copies[i]) {
            Clause clause;
            clause.reserve(edges.size());
            for (auto e : edges) {
                if (e >= chain_count) throw IntegrityError("copy edge outside the host's chains");
                const int v = inst.var(e, color);
                // Two colors: a color-2 copy needs one of its chains true.
                clause.push_back(inst.t == 2 && color == 2 ? v : -v);
            }
            inst.clauses.push_back(std::move(clause));
        }
    }
    if (inst.t == 1) {
        for (std::size_t c = 0; c < chain_count; ++c) inst.clauses.push_back({inst.var(c, 1)});
    } else if (inst.t >= 3) {
        for (std::size_t c = 0; c < chain_count; ++c) {
            Clause some;
            for (int a = 1; a <= inst.t; ++a) some.push_back(inst.var(c, a));
            inst.clauses.push_back(std::move(some));
            for (int a = 1; a <= inst.t; ++a)
                for (int b = a + 1; b <= inst.t; ++b) inst.clauses.push_back({-inst.var(c, a), -inst.var(c, b)});
        }
    }
    return inst;
}

CnfInstance encode(const HostPoset& host, int k, const std::vector<Pograph>& targets, const SearchOptions& options) {
    if (targets.empty()) throw DomainError("need at least one target");
    for (const auto& g : targets)
        if (g.k != k) throw DomainError("every target must be " + std::to_string(k) + "-uniform");
    const ChainIndex chains(host, k);
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<std::uint32_t>>> copies;
    for (const auto& g : targets) {
        names.push_back(g.name);
        copies.push_back(copy_edge_sets(g, host, chains, options));
    }
    return encode_copies(host.descriptor(), k, chains.size(), names, copies);
}

void write_dimacs(const CnfInstance& instance, std::ostream& out) {
    out << "p cnf " << instance.variable_count << ' ' << instance.clauses.size() << '\n';
    for (const auto& clause : instance.clauses) {
        for (auto lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

std::string to_dimacs(const CnfInstance& instance) {
    std::ostringstream out;
    write_dimacs(instance, out);
    return out.str();
}

CnfInstance read_dimacs(std::string_view text) {
    CnfInstance inst;
    bool header = false;
    long long declared = 0;
    Clause current;
    for_each_line(text, [&](std::string_view line) {
        const auto words = split_ws(line);
        if (words.empty() || words[0] == "c" || words[0][0] == 'c') return;
        if (words[0] == "p") {
            if (words.size() != 4 || words[1] != "cnf") throw ParseError("bad DIMACS header");
            const auto v = to_int(words[2]);
            const auto c = to_int(words[3]);
            if (!v || !c || *v < 0 || *c < 0) throw ParseError("bad DIMACS header");
            inst.variable_count = static_cast<int>(*v);
            declared = *c;
            header = true;
            return;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        for (auto w : words) {
            const auto lit = to_int(w);
            if (!lit) throw ParseError("bad literal in DIMACS clause");
            if (*lit == 0) {
                inst.clauses.push_back(std::move(current));
                current.clear();
                continue;
            }
            if (std::llabs(*lit) > inst.variable_count) throw ParseError("literal exceeds declared variable count");
            current.push_back(static_cast<int>(*lit));
        }
    });
    if (!header) throw ParseError("missing DIMACS header");
    if (!current.empty()) throw ParseError("unterminated clause");
    if (static_cast<long long>(inst.clauses.size()) != declared) throw ParseError("clause count differs from header");
    return inst;
}

nlohmann::ordered_json var_map_json(const CnfInstance& instance) {
    nlohmann::ordered_json j;
    j["host"] = instance.host.to_string();
    j["k"] = instance.k;
    j["targets"] = instance.targets;
    auto& vars = j["vars"] = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < instance.chain_count; ++c) {
        if (instance.t <= 2) {
            vars.push_back({c, 1, instance.var(c, 1)});
        } else {
            for (int a = 1; a <= instance.t; ++a) vars.push_back({c, a, instance.var(c, a)});
        }
    }
    return j;
}

CnfInstance instance_from_var_map(const nlohmann::json& j) {
    CnfInstance inst;
    try {
        inst.host = HostDescriptor::parse(j.at("host").get<std::string>());
        inst.k = j.at("k").get<int>();
        inst.targets = j.at("targets").get<std::vector<std::string>>();
        inst.t = static_cast<int>(inst.targets.size());
        if (inst.t < 1) throw ParseError("variable map lists no targets");
        std::size_t max_chain = 0;
        bool any = false;
        for (const auto& entry : j.at("vars")) {
            const auto chain = entry.at(0).get<std::size_t>();
            const auto color = entry.at(1).get<int>();
            const auto v = entry.at(2).get<int>();
            max_chain = std::max(max_chain, chain);
            any = true;
            inst.chain_count = max_chain + 1;
            if (inst.var(chain, color) != v) throw ParseError("variable map does not follow the numbering scheme");
        }
        inst.chain_count = any ? max_chain + 1 : 0;
        inst.variable_count = static_cast<int>(inst.chain_count * static_cast<std::size_t>(inst.t <= 2 ? 1 : inst.t));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad variable map: ") + e.what());
    }
    return inst;
}

std::string to_string(SolverStatus s) {
    switch (s) {
    case SolverStatus::sat: return "SAT";
    case SolverStatus::unsat: return "UNSAT";
    case SolverStatus::unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

SolverVerdict read_solver_output(std::string_view text, int variable_count, std::optional<int> exit_code) {
    SolverVerdict verdict;
    std::optional<SolverStatus> stated;
    std::vector<bool> model(static_cast<std::size_t>(variable_count) + 1, false);
    std::vector<bool> seen(static_cast<std::size_t>(variable_count) + 1, false);
    bool any_literal = false;
    bool bare_style = false;
    std::string problem;

    auto take_literals = [&](const std::vector<std::string_view>& words, std::size_t from) {
        for (auto i = from; i < words.size(); ++i) {
            const auto lit = to_int(words[i]);
            if (!lit) {
                problem = "unparseable literal '" + std::string(words[i]) + "'";
                return;
            }
            if (*lit == 0) continue;
            const auto v = static_cast<std::size_t>(std::llabs(*lit));
            if (v > static_cast<std::size_t>(variable_count)) {
                problem = "literal exceeds variable count";
                return;
            }
            model[v] = *lit > 0;
            seen[v] = true;
            any_literal = true;
        }
    };

    bool first = true;
    for_each_line(text, [&](std::string_view line) {
        const auto words = split_ws(line);
        if (words.empty()) return;
        const bool was_first = first;
        first = false;
        if (words[0] == "c") return;
        if (words[0] == "s" && words.size() >= 2) {
            SolverStatus s = SolverStatus::unknown;
            if (words[1] == "SATISFIABLE") s = SolverStatus::sat;
            else if (words[1] == "UNSATISFIABLE") s = SolverStatus::unsat;
            if (stated && *stated != s) problem = "conflicting status lines";
            stated = s;
            return;
        }
        if (words[0] == "v") {
            take_literals(words, 1);
            return;
        }
        if (was_first && (words[0] == "SAT" || words[0] == "UNSAT" || words[0] == "sat" || words[0] == "unsat")) {
            stated = (words[0] == "SAT" || words[0] == "sat") ? SolverStatus::sat : SolverStatus::unsat;
            bare_style = true;
            return;
        }
        if (bare_style) {
            take_literals(words, 0);
            return;
        }
        if (problem.empty()) problem = "unrecognized output line '" + std::string(line.substr(0, 60)) + "'";
    });

    if (exit_code) {
        std::optional<SolverStatus> by_code;
        if (*exit_code == 10) by_code = SolverStatus::sat;
        if (*exit_code == 20) by_code = SolverStatus::unsat;
        if (by_code && stated && *by_code != *stated) problem = "exit code contradicts the status line";
        if (by_code && !stated) stated = by_code;
    }

    if (!problem.empty()) {
        verdict.diagnostics = problem;
        return verdict;
    }
    if (!stated) {
        verdict.diagnostics = "no status in solver output";
        return verdict;
    }
    if (*stated == SolverStatus::sat) {
        if (!any_literal && variable_count > 0) {
            verdict.diagnostics = "solver reported SAT without a model";
            return verdict;
        }
        // Unlisted variables are free; false is as good as any value.
        verdict.status = SolverStatus::sat;
        verdict.model = std::move(model);
        return verdict;
    }
    verdict.status = *stated;
    if (*stated == SolverStatus::unknown) verdict.diagnostics = "solver reported UNKNOWN";
    return verdict;
}

Coloring decode(const CnfInstance& instance, const std::vector<bool>& model) {
    if (model.size() < static_cast<std::size_t>(instance.variable_count) + 1) {
        throw IntegrityError("model does not assign every variable");
    }
    Coloring c{instance.host, instance.k, instance.t, {}};
    c.colors.reserve(instance.chain_count);
    for (std::size_t chain = 0; chain < instance.chain_count; ++chain) {
        if (instance.t <= 2) {
            const bool one = model[static_cast<std::size_t>(instance.var(chain, 1))];
            if (!one && instance.t == 1) throw IntegrityError("single-color model leaves a chain uncolored");
            c.colors.push_back(one ? 1 : 2);
            continue;
        }
        int color = 0;
        for (int a = 1; a <= instance.t; ++a) {
            if (!model[static_cast<std::size_t>(instance.var(chain, a))]) continue;
            if (color != 0) throw IntegrityError("model sets two colors on one chain");
            color = a;
        }
        if (color == 0) throw IntegrityError("model leaves a chain uncolored");
        c.colors.push_back(static_cast<std::uint8_t>(color));
    }
    return c;
}

bool satisfies(const CnfInstance& instance, const std::vector<bool>& model) {
    for (const auto& clause : instance.clauses) {
        bool ok = false;
        for (auto lit : clause) {
            const auto v = static_cast<std::size_t>(std::abs(lit));
            if (v >= model.size()) return false;
            if (model[v] == (lit > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

std::vector<bool> encode_coloring(const CnfInstance& instance, const Coloring& coloring) {
    if (coloring.colors.size() != instance.chain_count) throw ArityError("coloring length does not match the instance");
    if (coloring.t != instance.t) throw ArityError("coloring and instance disagree on the number of colors");
    std::vector<bool> model(static_cast<std::size_t>(instance.variable_count) + 1, false);
    for (std::size_t chain = 0; chain < instance.chain_count; ++chain) {
        const int color = coloring.colors[chain];
        if (instance.t <= 2) {
            model[static_cast<std::size_t>(instance.var(chain, 1))] = color == 1;
        } else {
            model[static_cast<std::size_t>(instance.var(chain, color))] = true;
        }
    }
    return model;
}

} // namespace posr
