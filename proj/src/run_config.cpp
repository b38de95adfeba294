#include "ginstat/run_config.hpp"

#include <fstream>

namespace ginstat {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

template <typename T>
T parse_num(const std::string& v, int line_no, const std::string& key) {
    try {
        std::size_t pos = 0;
        T out;
        if constexpr (std::is_same_v<T, double>)
            out = std::stod(v, &pos);
        else if constexpr (std::is_same_v<T, int>)
            out = std::stoi(v, &pos);
        else
            out = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return out;
    } catch (const std::exception&) {
        throw ConfigError(line_no, "value '" + v + "' for key '" + key + "' is not a number");
    }
}

}  // namespace

void RunConfig::apply(const std::string& key, const std::string& value, int line_no) {
    if (key == "atom") atom = value;
    else if (key == "atom-b") atom_b = value;
    else if (key == "dim") dim = parse_num<int>(value, line_no, key);
    else if (key == "seed") seed = parse_num<uint64_t>(value, line_no, key);
    else if (key == "count") count = parse_num<uint64_t>(value, line_no, key);
    else if (key == "threads") threads = parse_num<int>(value, line_no, key);
    else if (key == "out") out_path = value;
    else if (key == "case") clt_case = value;
    else if (key == "family") f_family = value;
    else if (key == "center-x") f_cx = parse_num<double>(value, line_no, key);
    else if (key == "center-y") f_cy = parse_num<double>(value, line_no, key);
    else if (key == "radius") f_radius = parse_num<double>(value, line_no, key);
    else if (key == "amplitude") f_amp = parse_num<double>(value, line_no, key);
    else if (key == "degree") f_degree = parse_num<int>(value, line_no, key);
    else if (key == "var-tol") var_tol = parse_num<double>(value, line_no, key);
    else if (key == "ks-threshold") ks_threshold = parse_num<double>(value, line_no, key);
    else if (key == "regime") regime = value;
    else if (key == "grid") grid = parse_num<int>(value, line_no, key);
    else if (key == "grid-min") grid_min = parse_num<double>(value, line_no, key);
    else if (key == "grid-max") grid_max = parse_num<double>(value, line_no, key);
    else if (key == "grid-height") grid_height = parse_num<double>(value, line_no, key);
    else if (key == "z-re") z_re = parse_num<double>(value, line_no, key);
    else if (key == "z-im") z_im = parse_num<double>(value, line_no, key);
    else if (key == "suite") suite = value;
    else throw ConfigError(line_no, "unknown key '" + key + "'");
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected 'key = value', got '" + t + "'");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError(line_no, "empty key");
        cfg.apply(key, value, line_no);
    }
    return cfg;
}

}  // namespace ginstat
