#include "posr/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/lexical_cast.hpp>

#include "posr/errors.hpp"

namespace posr {

namespace {

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    try {
        if constexpr (std::is_unsigned_v<T>) {
            if (!value.empty() && value.front() == '-') throw boost::bad_lexical_cast();
        }
        return boost::lexical_cast<T>(value);
    } catch (const boost::bad_lexical_cast&) {
        throw ParseError("bad value for " + key + ": '" + value + "'");
    }
}

const std::pair<const char*, const char*> kEnv[] = {
    {"POSR_SOLVER", "solver"},     {"POSR_TIMEOUT", "timeout_secs"}, {"POSR_BRUTE_CAP", "brute_cap"},
    {"POSR_COPY_CAP", "copy_cap"}, {"POSR_OUTPUT_DIR", "output_dir"}, {"POSR_SEED", "seed"},
    {"POSR_WORKERS", "workers"},
};

} // namespace

std::filesystem::path default_config_path() {
    if (const char* p = std::getenv("POSR_CONFIG"); p && *p) return p;
    if (const char* x = std::getenv("XDG_CONFIG_HOME"); x && *x) return std::filesystem::path(x) / "posr" / "config";
    if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".config" / "posr" / "config";
    return {};
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        boost::algorithm::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config line " + std::to_string(number) + ": expected key = value");
        auto key = boost::algorithm::trim_copy(line.substr(0, eq));
        auto value = boost::algorithm::trim_copy(line.substr(eq + 1));
        Config probe;
        apply_setting(probe, key, value);
        out[key] = value;
    }
    return out;
}

void apply_setting(Config& config, const std::string& key, const std::string& value) {
    if (key == "solver") {
        config.solver = value;
    } else if (key == "timeout_secs") {
        const auto t = parse_number<double>(key, value);
        if (!(t >= 0)) throw ParseError("timeout_secs must be non-negative");
        config.timeout_secs = t;
    } else if (key == "brute_cap") {
        config.brute_cap = parse_number<std::size_t>(key, value);
        if (config.brute_cap == 0) throw ParseError("brute_cap must be positive");
    } else if (key == "copy_cap") {
        config.copy_cap = parse_number<std::size_t>(key, value);
        if (config.copy_cap == 0) throw ParseError("copy_cap must be positive");
    } else if (key == "output_dir") {
        config.output_dir = value;
    } else if (key == "seed") {
        config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "workers") {
        config.workers = parse_number<int>(key, value);
        if (config.workers < 1) throw ParseError("workers must be positive");
    } else {
        throw ParseError("unknown config key '" + key + "'");
    }
}

Config load_config(const std::optional<std::filesystem::path>& path) {
    Config config;
    const auto file = path ? *path : default_config_path();
    if (!file.empty()) {
        std::ifstream in(file);
        if (in) {
            std::stringstream buf;
            buf << in.rdbuf();
            for (const auto& [k, v] : parse_config_text(buf.str())) apply_setting(config, k, v);
        } else if (path) {
            throw ParseError("cannot read config file " + file.string());
        }
    }
    for (const auto& [env, key] : kEnv) {
        if (const char* v = std::getenv(env); v && *v) apply_setting(config, key, v);
    }
    return config;
}

} // namespace posr
