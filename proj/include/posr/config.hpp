#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace posr {

/// Run settings shared by the CLI subcommands. Precedence: flags, then
/// environment, then the config file, then these defaults.
struct Config {
    std::string solver;  // empty: the solver found at build time
    double timeout_secs = 0;
    std::size_t brute_cap = 40;
    std::size_t copy_cap = 50'000'000;
    std::filesystem::path output_dir;
    std::uint64_t seed = 1;
    int workers = 1;
};

/// $POSR_CONFIG, else $XDG_CONFIG_HOME/posr/config, else ~/.config/posr/config.
std::filesystem::path default_config_path();

/// key = value lines; '#' starts a comment. Throws ParseError on unknown keys
/// or bad values.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Applies one setting by key (solver, timeout_secs, brute_cap, copy_cap,
/// output_dir, seed, workers). Throws ParseError.
void apply_setting(Config& config, const std::string& key, const std::string& value);

/// Defaults, overlaid with the file (when it exists) and then POSR_SOLVER,
/// POSR_TIMEOUT, POSR_BRUTE_CAP, POSR_COPY_CAP, POSR_OUTPUT_DIR, POSR_SEED,
/// POSR_WORKERS. A missing file is not an error unless `path` was given.
Config load_config(const std::optional<std::filesystem::path>& path = std::nullopt);

} // namespace posr
