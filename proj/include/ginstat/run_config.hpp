#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace ginstat {

/// Fatal configuration problem; carries the 1-based line number.
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_no, const std::string& msg)
        : std::runtime_error("config line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

/// Resolved run options. Fully serializable; echoed verbatim into reports.
struct RunConfig {
    std::string subcommand;
    std::string atom;  // empty = subcommand-specific default
    std::string atom_b = "matched-discrete-complex";
    int dim = 64;
    uint64_t seed = 1;
    uint64_t count = 1000;
    int threads = 0;  // 0 = library default
    std::string out_path;
    std::string clt_case = "bulk";  // bulk | line | ginue
    std::string f_family;           // empty = case default
    double f_cx = 0.0, f_cy = 0.5, f_radius = 0.2, f_amp = 1.0;
    int f_degree = 1;
    double var_tol = 0.15;
    double ks_threshold = 0.035;
    std::string regime = "complex";  // complex | real
    int grid = 17;
    double grid_min = -0.6, grid_max = 0.6, grid_height = 0.5;
    double z_re = 0.3, z_im = 0.0;
    std::string suite = "all";
    bool timing = false;

    /// Applies one `key = value` assignment; throws ConfigError on unknown
    /// keys or unparsable values.
    void apply(const std::string& key, const std::string& value, int line_no);
};

/// Line-based `key = value` file. Blank lines and '#' comments are skipped;
/// malformed lines and unknown keys are fatal, naming the line.
RunConfig parse_config(const std::string& path);

}  // namespace ginstat
