#include "posr/ramsey.hpp"

#include <atomic>
#include <chrono>
#include <limits>

#include "posr/chain_index.hpp"
#include "posr/cnf.hpp"
#include "posr/errors.hpp"
#include "posr/solver.hpp"

namespace posr {

namespace {

using CopyLists = std::vector<std::vector<std::vector<std::uint32_t>>>;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

/// Backtracking over chain colorings. A copy of H_c is "live" while none of
/// its edges has a color other than c; once all but one of its edges carry
/// color c, the last edge may not take c.
class ColoringSearch {
public:
    ColoringSearch(std::size_t chain_count, const CopyLists& copies)
        : m_(chain_count), t_(static_cast<int>(copies.size())), occ_(chain_count), color_(chain_count, 0),
          forb_(chain_count * static_cast<std::size_t>(t_), 0) {
        for (std::size_t c = 0; c < copies.size(); ++c) {
            for (const auto& edges : copies[c]) {
                if (edges.empty()) empty_copy_ = true;
                const auto id = static_cast<std::uint32_t>(state_.size());
                state_.push_back({static_cast<std::uint32_t>(edges.size()), 0, 0, static_cast<std::uint8_t>(c + 1)});
                edges_.push_back(edges);
                for (auto e : edges) occ_[e].push_back(id);
            }
        }
        // A single-edge copy forbids its color outright.
        for (std::size_t id = 0; id < state_.size(); ++id) {
            if (state_[id].size == 1) ++forb_[slot(edges_[id][0], state_[id].color)];
        }
    }

    /// Applies a fixed prefix, then searches; fills colors() on success.
    bool solve(std::span<const std::uint8_t> prefix, const std::function<bool()>& cancelled) {
        if (empty_copy_) return false;
        for (std::size_t j = 0; j < prefix.size(); ++j) {
            if (color_[j] != 0) {
                if (color_[j] != prefix[j]) return false;
                continue;
            }
            if (!assign(static_cast<std::uint32_t>(j), prefix[j])) return false;
        }
        return dfs(prefix.size(), cancelled);
    }

    const std::vector<std::uint8_t>& colors() const { return color_; }

private:
    struct CopyState {
        std::uint32_t size;
        std::uint32_t same;     // edges already colored with the copy's color
        std::uint32_t blocked;  // edges colored otherwise
        std::uint8_t color;
    };

    std::size_t slot(std::uint32_t chain, int color) const {
        return chain * static_cast<std::size_t>(t_) + static_cast<std::size_t>(color - 1);
    }

    bool allowed(std::uint32_t chain, int color) const { return forb_[slot(chain, color)] == 0; }

    bool assign(std::uint32_t chain, std::uint8_t color) {
        queue_.clear();
        queue_.emplace_back(chain, color);
        bool ok = true;
        for (std::size_t q = 0; q < queue_.size() && ok; ++q) {
            const auto [j, a] = queue_[q];
            if (color_[j] != 0) {
                if (color_[j] != a) ok = false;
                continue;
            }
            if (!allowed(j, a)) {
                ok = false;
                continue;
            }
            color_[j] = a;
            trail_.push_back(j);
            for (auto id : occ_[j]) {
                auto& cs = state_[id];
                if (cs.color != a) {
                    ++cs.blocked;
                    continue;
                }
                ++cs.same;
                if (cs.blocked != 0) continue;
                if (cs.same == cs.size) {
                    ok = false;
                } else if (cs.same + 1 == cs.size) {
                    std::uint32_t last = 0;
                    for (auto e : edges_[id])
                        if (color_[e] == 0) last = e;
                    ++forb_[slot(last, a)];
                    forb_trail_.push_back(slot(last, a));
                    int options = 0, only = 0;
                    for (int b = 1; b <= t_; ++b) {
                        if (allowed(last, b)) {
                            ++options;
                            only = b;
                        }
                    }
                    if (options == 0) ok = false;
                    else if (options == 1) queue_.emplace_back(last, static_cast<std::uint8_t>(only));
                }
            }
        }
        return ok;
    }

    void undo(std::size_t trail_mark, std::size_t forb_mark) {
        while (trail_.size() > trail_mark) {
            const auto j = trail_.back();
            trail_.pop_back();
            const auto a = color_[j];
            for (auto id : occ_[j]) {
                auto& cs = state_[id];
                if (cs.color == a) --cs.same;
                else --cs.blocked;
            }
            color_[j] = 0;
        }
        while (forb_trail_.size() > forb_mark) {
            --forb_[forb_trail_.back()];
            forb_trail_.pop_back();
        }
    }

    bool dfs(std::size_t next, const std::function<bool()>& cancelled) {
        while (next < m_ && color_[next] != 0) ++next;
        if (next == m_) return true;
        if (cancelled && cancelled()) return false;
        const auto chain = static_cast<std::uint32_t>(next);
        for (int a = 1; a <= t_; ++a) {
            if (!allowed(chain, a)) continue;
            const auto tm = trail_.size();
            const auto fm = forb_trail_.size();
            if (assign(chain, static_cast<std::uint8_t>(a)) && dfs(next + 1, cancelled)) return true;
            undo(tm, fm);
        }
        return false;
    }

    std::size_t m_;
    int t_;
    bool empty_copy_ = false;
    std::vector<CopyState> state_;
    std::vector<std::vector<std::uint32_t>> edges_;
    std::vector<std::vector<std::uint32_t>> occ_;
    std::vector<std::uint8_t> color_;
    std::vector<std::uint16_t> forb_;
    std::vector<std::uint32_t> trail_;
    std::vector<std::size_t> forb_trail_;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> queue_;
};

CopyLists enumerate_all(const HostPoset& host, const ChainIndex& chains, const std::vector<Pograph>& targets,
                        const RamseyOptions& options) {
    CopyLists copies;
    SearchOptions so{options.copy_cap, options.workers};
    for (const auto& g : targets) copies.push_back(copy_edge_sets(g, host, chains, so));
    return copies;
}

void check_targets(int k, const std::vector<Pograph>& targets) {
    if (targets.empty()) throw DomainError("need at least one target");
    if (targets.size() > 255) throw DomainError("too many colors");
    for (const auto& g : targets)
        if (g.k != k) throw DomainError("every target must be " + std::to_string(k) + "-uniform");
}

std::string solver_for(const RamseyOptions& options) {
    return options.solver_command.empty() ? default_solver_command() : options.solver_command;
}

Feasibility run_brute(const HostPoset& host, const ChainIndex& chains, int k, const CopyLists& copies,
                      const std::vector<Pograph>& targets, const RamseyOptions& options) {
    Feasibility f;
    f.method = "brute";
    f.chains = chains.size();
    for (const auto& c : copies) f.copies.push_back(c.size());
    if (chains.size() > options.brute_cap) {
        throw SizeLimitError("backtracking search is capped at " + std::to_string(options.brute_cap) + " chains");
    }
    const auto found = find_avoiding_coloring(chains.size(), copies, options.workers);
    if (!found) {
        f.verdict = Verdict::forced;
        f.evidence = "exhaustive backtracking found no avoiding coloring";
        return f;
    }
    Coloring c{host.descriptor(), k, static_cast<int>(targets.size()), *found};
    const auto check = verify_coloring(host, chains, c, targets, {options.copy_cap, 1});
    if (!check.ok) throw IntegrityError("backtracking produced a coloring that fails verification");
    f.verdict = Verdict::avoidable;
    f.witness = std::move(c);
    f.evidence = "avoiding coloring found and verified";
    return f;
}

Feasibility run_sat(const HostPoset& host, const ChainIndex& chains, int k, const CopyLists& copies,
                    const std::vector<Pograph>& targets, const RamseyOptions& options) {
    Feasibility f;
    f.method = "sat";
    f.chains = chains.size();
    for (const auto& c : copies) f.copies.push_back(c.size());
    std::vector<std::string> names;
    for (const auto& g : targets) names.push_back(g.name);
    const auto inst = encode_copies(host.descriptor(), k, chains.size(), names, copies);
    RunOptions ro{solver_for(options), options.timeout_seconds, options.work_dir, options.keep_cnf};
    const auto run = run_external(inst, ro);
    switch (run.verdict.status) {
    case SolverStatus::unsat:
        f.verdict = Verdict::forced;
        f.evidence = "solver reported UNSAT (" + std::to_string(inst.variable_count) + " vars, " +
                     std::to_string(inst.clauses.size()) + " clauses)";
        return f;
    case SolverStatus::sat: {
        auto c = decode(inst, *run.verdict.model);
        const auto check = verify_coloring(host, chains, c, targets, {options.copy_cap, 1});
        if (!check.ok) throw IntegrityError("decoded solver model fails verification");
        f.verdict = Verdict::avoidable;
        f.witness = std::move(c);
        f.evidence = "solver model decoded and verified";
        return f;
    }
    case SolverStatus::unknown:
        break;
    }
    f.verdict = Verdict::unknown;
    f.evidence = to_string(run.failure) + ": " + run.verdict.diagnostics;
    return f;
}

} // namespace

VerifyResult verify_coloring(const HostPoset& host, const ChainIndex& chains, const Coloring& c,
                             const std::vector<Pograph>& targets, const SearchOptions& options) {
    if (static_cast<std::size_t>(c.t) != targets.size()) {
        throw ArityError("coloring has " + std::to_string(c.t) + " colors but " + std::to_string(targets.size()) +
                         " targets were given");
    }
    if (c.colors.size() != chains.size()) throw ArityError("coloring length does not match the host's chain count");
    if (chains.k() != c.k) throw ArityError("chain index uniformity differs from the coloring");
    c.check();
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].k != c.k) throw ArityError("target uniformity differs from the coloring");
        const ColorClass cls{c.colors, static_cast<int>(i) + 1};
        if (auto copy = find_monochromatic_copy(targets[i], host, chains, cls, options)) {
            return {false, static_cast<int>(i) + 1, std::move(copy)};
        }
    }
    return {};
}

VerifyResult verify_coloring(const Coloring& c, const std::vector<Pograph>& targets, const SearchOptions& options) {
    const auto host = HostPoset::build(c.host);
    const ChainIndex chains(host, c.k);
    return verify_coloring(host, chains, c, targets, options);
}

std::string to_string(Method m) {
    switch (m) {
    case Method::brute: return "brute";
    case Method::sat: return "sat";
    case Method::automatic: return "auto";
    }
    return "auto";
}

Method parse_method(const std::string& text) {
    if (text == "brute") return Method::brute;
    if (text == "sat") return Method::sat;
    if (text == "auto") return Method::automatic;
    throw ParseError("unknown method '" + text + "' (expected brute, sat or auto)");
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::avoidable: return "avoidable";
    case Verdict::forced: return "forced";
    case Verdict::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<std::vector<std::uint8_t>> find_avoiding_coloring(std::size_t chain_count, const CopyLists& copies,
                                                                int workers) {
    const auto t = copies.size();
    if (t == 0) throw DomainError("need at least one color");
    if (workers <= 1 || chain_count < 2) {
        ColoringSearch search(chain_count, copies);
        if (!search.solve({}, {})) return std::nullopt;
        return search.colors();
    }
    // Fan out over colorings of the first chains; the lowest successful
    // prefix in lexicographic order wins, which is the serial answer.
    std::size_t depth = 0;
    std::size_t tasks = 1;
    while (depth < chain_count && tasks < static_cast<std::size_t>(8 * workers)) {
        ++depth;
        tasks *= t;
    }
    std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
    std::optional<std::vector<std::uint8_t>> result;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t task = 0; task < static_cast<std::int64_t>(tasks); ++task) {
        if (task > best.load()) continue;
        std::vector<std::uint8_t> prefix(depth);
        auto rest = static_cast<std::size_t>(task);
        for (std::size_t j = depth; j-- > 0;) {
            prefix[j] = static_cast<std::uint8_t>(rest % t + 1);
            rest /= t;
        }
        ColoringSearch search(chain_count, copies);
        const bool found = search.solve(prefix, [&] { return best.load(std::memory_order_relaxed) < task; });
        if (found) {
#pragma omp critical(posr_brute_merge)
            {
                if (task < best.load()) {
                    best = task;
                    result = search.colors();
                }
            }
        }
    }
    return result;
}

Feasibility brute_force_search(const HostPoset& host, int k, const std::vector<Pograph>& targets,
                               const RamseyOptions& options) {
    check_targets(k, targets);
    const auto start = std::chrono::steady_clock::now();
    const ChainIndex chains(host, k);
    if (chains.size() > options.brute_cap) {
        throw SizeLimitError("backtracking search is capped at " + std::to_string(options.brute_cap) + " chains");
    }
    auto f = run_brute(host, chains, k, enumerate_all(host, chains, targets, options), targets, options);
    f.seconds = seconds_since(start);
    return f;
}

Feasibility feasible(HostFamily family, int n, int k, const std::vector<Pograph>& targets,
                     const RamseyOptions& options) {
    check_targets(k, targets);
    const auto start = std::chrono::steady_clock::now();
    const auto host = HostPoset::build(family, n);
    const ChainIndex chains(host, k);
    const auto copies = enumerate_all(host, chains, targets, options);

    for (std::size_t i = 0; i < copies.size(); ++i) {
        if (!copies[i].empty()) continue;
        Feasibility f;
        f.verdict = Verdict::avoidable;
        f.method = "trivial";
        f.chains = chains.size();
        for (const auto& c : copies) f.copies.push_back(c.size());
        f.witness = Coloring::constant(host.descriptor(), k, static_cast<int>(targets.size()), chains.size(),
                                       static_cast<int>(i) + 1);
        f.evidence = "no copy of target " + std::to_string(i + 1) + " fits; constant coloring " + std::to_string(i + 1);
        f.seconds = seconds_since(start);
        return f;
    }

    const bool have_solver = !solver_for(options).empty();
    Method method = options.method;
    if (method == Method::automatic) {
        if (chains.size() <= options.auto_brute_limit) method = Method::brute;
        else if (have_solver) method = Method::sat;
        else method = Method::brute;
    }
    Feasibility f;
    if (method == Method::brute) {
        if (chains.size() > options.brute_cap) {
            f.method = "brute";
            f.chains = chains.size();
            for (const auto& c : copies) f.copies.push_back(c.size());
            f.evidence = "chain count " + std::to_string(chains.size()) + " exceeds the backtracking cap " +
                         std::to_string(options.brute_cap) + (have_solver ? "" : " and no SAT solver is configured");
        } else {
            f = run_brute(host, chains, k, copies, targets, options);
        }
    } else {
        f = run_sat(host, chains, k, copies, targets, options);
    }
    f.seconds = seconds_since(start);
    return f;
}

RamseyOutcome compute_ramsey(HostFamily family, int k, const std::vector<Pograph>& targets, int n_max,
                             const RamseyOptions& options, int n_min,
                             const std::function<void(const RamseyStep&)>& on_step) {
    check_targets(k, targets);
    if (n_min < 1 || n_max < n_min) throw DomainError("need 1 <= n_min <= n_max");
    RamseyOutcome out;
    std::optional<int> forced_at;
    for (int n = n_min; n <= n_max; ++n) {
        RamseyStep step{n, {}, false};
        if (forced_at) {
            step.inferred = true;
            step.result.verdict = Verdict::forced;
            step.result.method = "inferred";
            step.result.evidence = "forced at n = " + std::to_string(*forced_at) + " and P_n contains P_" +
                                   std::to_string(*forced_at);
        } else {
            step.result = feasible(family, n, k, targets, options);
            if (step.result.verdict == Verdict::forced) {
                forced_at = n;
                const bool previous_avoidable =
                    n == 1 || (!out.steps.empty() && out.steps.back().result.verdict == Verdict::avoidable);
                if (previous_avoidable) out.value = n;
            }
        }
        if (on_step) on_step(step);
        out.steps.push_back(std::move(step));
    }
    return out;
}

nlohmann::ordered_json to_json(const Feasibility& f, bool include_witness) {
    nlohmann::ordered_json j;
    j["verdict"] = to_string(f.verdict);
    j["method"] = f.method;
    j["evidence"] = f.evidence;
    j["chains"] = f.chains;
    j["copies"] = f.copies;
    if (include_witness && f.witness) j["witness"] = to_json(*f.witness);
    return j;
}

nlohmann::ordered_json to_json(const RamseyOutcome& outcome, bool include_witnesses) {
    nlohmann::ordered_json j;
    j["value"] = outcome.value ? nlohmann::ordered_json(*outcome.value) : nlohmann::ordered_json();
    auto& steps = j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : outcome.steps) {
        auto e = to_json(s.result, include_witnesses);
        e["n"] = s.n;
        e["inferred"] = s.inferred;
        steps.push_back(std::move(e));
    }
    return j;
}

} // namespace posr
