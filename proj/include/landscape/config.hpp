#pragma once

#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "landscape/complex_poly.hpp"
#include "landscape/errors.hpp"

namespace landscape {

enum class JobKind { Rl, Rhie, Quadrature, Oval, Pde, Neck, Dumbbell };

inline const char* to_string(JobKind k) {
    switch (k) {
        case JobKind::Rl: return "rl";
        case JobKind::Rhie: return "rhie";
        case JobKind::Quadrature: return "quadrature";
        case JobKind::Oval: return "oval";
        case JobKind::Pde: return "pde";
        case JobKind::Neck: return "neck";
        default: return "dumbbell";
    }
}

/// One experiment description, deserialized from a flat TOML-style file.
struct JobConfig {
    int schema = 1;
    JobKind kind = JobKind::Rl;
    int grid_n = 0; // 0: per-kind default
    double tol = 1e-9;
    unsigned seed = 0x5eedu;
    bool svg = false;
    bool csv = false;
    std::string out_prefix;

    // rl
    std::vector<cplx> nodes;
    std::vector<double> weights;
    double level_t = 0.0;
    std::vector<cplx> fprime_poly;
    // rhie
    int n = 0;
    std::optional<double> rhie_a, rhie_eps, rhie_t;
    // quadrature
    std::vector<cplx> phi;
    // oval
    std::optional<double> oval_r, oval_a;
    // pde
    std::string mask_path;
    double mask_h = 0.0;
    // neck
    double eps = 0.0;
    double m_value = 0.0;
    // dumbbell
    double delta = 0.05;
    int disks = 2;

    friend bool operator==(const JobConfig& x, const JobConfig& y) {
        return x.schema == y.schema && x.kind == y.kind && x.grid_n == y.grid_n &&
               x.tol == y.tol && x.seed == y.seed && x.svg == y.svg && x.csv == y.csv &&
               x.out_prefix == y.out_prefix && x.nodes == y.nodes && x.weights == y.weights &&
               x.level_t == y.level_t && x.fprime_poly == y.fprime_poly && x.n == y.n &&
               x.rhie_a == y.rhie_a && x.rhie_eps == y.rhie_eps && x.rhie_t == y.rhie_t &&
               x.phi == y.phi && x.oval_r == y.oval_r && x.oval_a == y.oval_a &&
               x.mask_path == y.mask_path && x.mask_h == y.mask_h && x.eps == y.eps &&
               x.m_value == y.m_value && x.delta == y.delta && x.disks == y.disks;
    }
};

namespace detail {

struct TomlValue {
    enum class Type { Number, String, Bool, Array } type = Type::Number;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<TomlValue> arr;
};

class TomlScanner {
public:
    TomlScanner(std::string text, int line) : s_(std::move(text)), line_(line) {}

    TomlValue parse_value() {
        TomlValue v = value();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] != '#')
            throw ParseError("trailing characters after value", line_, col());
        return v;
    }

private:
    int col() const { return int(pos_) + 1; }
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }
    TomlValue value() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("missing value", line_, col());
        char c = s_[pos_];
        if (c == '[') return array();
        if (c == '"') return string();
        if (std::isalpha(static_cast<unsigned char>(c))) return boolean();
        return number();
    }
    TomlValue array() {
        TomlValue v;
        v.type = TomlValue::Type::Array;
        ++pos_; // '['
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == ']') {
            ++pos_;
            return v;
        }
        for (;;) {
            v.arr.push_back(value());
            skip_ws();
            if (pos_ >= s_.size()) throw ParseError("unterminated array", line_, col());
            if (s_[pos_] == ',') {
                ++pos_;
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == ']') { ++pos_; return v; }
                continue;
            }
            if (s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            throw ParseError("expected ',' or ']' in array", line_, col());
        }
    }
    TomlValue string() {
        TomlValue v;
        v.type = TomlValue::Type::String;
        ++pos_;
        while (pos_ < s_.size() && s_[pos_] != '"') v.str += s_[pos_++];
        if (pos_ >= s_.size()) throw ParseError("unterminated string", line_, col());
        ++pos_;
        return v;
    }
    TomlValue boolean() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        std::string word = s_.substr(start, pos_ - start);
        TomlValue v;
        v.type = TomlValue::Type::Bool;
        if (word == "true") v.flag = true;
        else if (word == "false") v.flag = false;
        else throw ParseError("unrecognized literal '" + word + "'", line_, int(start) + 1);
        return v;
    }
    TomlValue number() {
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) ||
                                    std::strchr("+-.eE_x", s_[pos_])))
            ++pos_;
        std::string word = s_.substr(start, pos_ - start);
        try {
            size_t used = 0;
            TomlValue v;
            v.num = std::stod(word, &used);
            if (used != word.size()) throw std::invalid_argument(word);
            return v;
        } catch (const std::exception&) {
            throw ParseError("bad number '" + word + "'", line_, int(start) + 1);
        }
    }
    std::string s_;
    size_t pos_ = 0;
    int line_;
};

inline double as_number(const TomlValue& v, const std::string& key) {
    if (v.type != TomlValue::Type::Number)
        throw ValidationError(key, "expected a number");
    return v.num;
}

inline std::vector<double> as_real_list(const TomlValue& v, const std::string& key) {
    if (v.type != TomlValue::Type::Array) throw ValidationError(key, "expected an array");
    std::vector<double> out;
    for (const auto& e : v.arr) out.push_back(as_number(e, key));
    return out;
}

inline std::vector<cplx> as_complex_list(const TomlValue& v, const std::string& key) {
    if (v.type != TomlValue::Type::Array) throw ValidationError(key, "expected an array");
    std::vector<cplx> out;
    for (const auto& e : v.arr) {
        if (e.type != TomlValue::Type::Array || e.arr.size() != 2)
            throw ValidationError(key, "expected [re, im] pairs");
        out.emplace_back(as_number(e.arr[0], key), as_number(e.arr[1], key));
    }
    return out;
}

} // namespace detail

/// Parses and validates a job file. Unknown keys are hard errors so typos
/// cannot silently change an experiment.
inline JobConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    std::vector<std::pair<std::string, detail::TomlValue>> kv;
    std::vector<int> kv_lines;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments outside strings
        bool in_str = false;
        for (size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_str = !in_str;
            else if (line[i] == '#' && !in_str) {
                line = line.substr(0, i);
                break;
            }
        }
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", lineno, int(first) + 1);
        std::string key = line.substr(0, eq);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        if (key.empty() || key.find_first_not_of(
                               "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") !=
                               std::string::npos)
            throw ParseError("bad key name", lineno, 1);
        detail::TomlScanner sc(line.substr(eq + 1), lineno);
        kv.emplace_back(key, sc.parse_value());
        kv_lines.push_back(lineno);
    }
    if (kv.empty()) throw ParseError("empty config", std::max(1, lineno), 1);

    JobConfig job;
    bool saw_schema = false, saw_kind = false;
    using T = detail::TomlValue::Type;
    for (auto& [key, val] : kv) {
        if (key == "schema") {
            job.schema = int(detail::as_number(val, key));
            if (job.schema != 1) throw ValidationError(key, "only schema = 1 is supported");
            saw_schema = true;
        } else if (key == "kind") {
            if (val.type != T::String) throw ValidationError(key, "expected a string");
            saw_kind = true;
            if (val.str == "rl") job.kind = JobKind::Rl;
            else if (val.str == "rhie") job.kind = JobKind::Rhie;
            else if (val.str == "quadrature") job.kind = JobKind::Quadrature;
            else if (val.str == "oval") job.kind = JobKind::Oval;
            else if (val.str == "pde") job.kind = JobKind::Pde;
            else if (val.str == "neck") job.kind = JobKind::Neck;
            else if (val.str == "dumbbell") job.kind = JobKind::Dumbbell;
            else throw ValidationError(key, "unknown kind '" + val.str + "'");
        } else if (key == "grid_n") {
            job.grid_n = int(detail::as_number(val, key));
        } else if (key == "tol") {
            job.tol = detail::as_number(val, key);
            if (!(job.tol > 0)) throw ValidationError(key, "tolerance must be positive");
        } else if (key == "seed") {
            job.seed = unsigned(detail::as_number(val, key));
        } else if (key == "svg") {
            if (val.type != T::Bool) throw ValidationError(key, "expected true/false");
            job.svg = val.flag;
        } else if (key == "csv") {
            if (val.type != T::Bool) throw ValidationError(key, "expected true/false");
            job.csv = val.flag;
        } else if (key == "out_prefix") {
            if (val.type != T::String) throw ValidationError(key, "expected a string");
            job.out_prefix = val.str;
        } else if (key == "nodes") {
            job.nodes = detail::as_complex_list(val, key);
        } else if (key == "weights") {
            job.weights = detail::as_real_list(val, key);
        } else if (key == "level_t") {
            job.level_t = detail::as_number(val, key);
        } else if (key == "fprime_poly") {
            job.fprime_poly = detail::as_complex_list(val, key);
        } else if (key == "n") {
            job.n = int(detail::as_number(val, key));
        } else if (key == "a") {
            // oval parameter or rhie circle radius depending on kind; resolved below
            job.rhie_a = detail::as_number(val, key);
        } else if (key == "eps") {
            job.eps = detail::as_number(val, key);
            job.rhie_eps = job.eps;
        } else if (key == "t") {
            job.rhie_t = detail::as_number(val, key);
        } else if (key == "phi") {
            job.phi = detail::as_complex_list(val, key);
        } else if (key == "r") {
            job.oval_r = detail::as_number(val, key);
        } else if (key == "mask") {
            if (val.type != T::String) throw ValidationError(key, "expected a string path");
            job.mask_path = val.str;
        } else if (key == "h") {
            job.mask_h = detail::as_number(val, key);
        } else if (key == "m") {
            job.m_value = detail::as_number(val, key);
        } else if (key == "delta") {
            job.delta = detail::as_number(val, key);
        } else if (key == "disks") {
            job.disks = int(detail::as_number(val, key));
        } else {
            throw ValidationError(key, "unknown key");
        }
    }
    if (!saw_schema) throw ValidationError("schema", "missing (expected schema = 1)");
    if (!saw_kind) throw ValidationError("kind", "missing");

    // per-kind validation
    switch (job.kind) {
        case JobKind::Rl: {
            if (job.nodes.empty() && job.fprime_poly.empty())
                throw ValidationError("nodes", "rl job needs nodes (or fprime_poly)");
            if (job.nodes.size() != job.weights.size())
                throw ValidationError("weights", "one weight per node required");
            break;
        }
        case JobKind::Rhie: {
            if (job.n < 4) throw ValidationError("n", "rhie job needs n >= 4");
            int given = int(bool(job.rhie_a)) + int(bool(job.rhie_eps) && job.eps > 0) +
                        int(bool(job.rhie_t));
            if (given != 0 && given != 3)
                throw ValidationError("a", "give all of a/eps/t or none (search)");
            break;
        }
        case JobKind::Quadrature: {
            if (job.phi.empty()) throw ValidationError("phi", "quadrature job needs phi");
            break;
        }
        case JobKind::Oval: {
            if (job.rhie_a) {
                job.oval_a = job.rhie_a;
                job.rhie_a.reset();
            }
            if (!job.oval_r && !job.oval_a)
                throw ValidationError("r", "oval job needs r or a");
            if (job.oval_r && job.oval_a)
                throw ValidationError("r", "give only one of r and a");
            break;
        }
        case JobKind::Pde: {
            if (job.mask_path.empty()) throw ValidationError("mask", "pde job needs a mask path");
            break;
        }
        case JobKind::Neck: {
            if (!(job.eps > 0)) throw ValidationError("eps", "neck job needs eps > 0");
            if (!(job.m_value >= 1)) throw ValidationError("m", "neck job needs m >= 1");
            break;
        }
        case JobKind::Dumbbell: {
            if (!(job.eps > 0)) throw ValidationError("eps", "dumbbell job needs eps > 0");
            if (job.disks < 1) throw ValidationError("disks", "disks >= 1 required");
            break;
        }
    }
    return job;
}

inline JobConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace detail {

inline std::string fmt_num(double x) {
    char buf[40];
    if (x == std::floor(x) && std::abs(x) < 1e15)
        std::snprintf(buf, sizeof buf, "%.1f", x);
    else
        std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string fmt_complex_list(const std::vector<cplx>& zs) {
    std::string s = "[";
    for (size_t i = 0; i < zs.size(); ++i) {
        if (i) s += ", ";
        s += "[" + fmt_num(zs[i].real()) + ", " + fmt_num(zs[i].imag()) + "]";
    }
    return s + "]";
}

} // namespace detail

/// Canonical serialization; parse_config_text(write_config(job)) == job.
inline std::string write_config(const JobConfig& job) {
    std::ostringstream out;
    out << "schema = " << job.schema << "\n";
    out << "kind = \"" << to_string(job.kind) << "\"\n";
    if (job.grid_n) out << "grid_n = " << job.grid_n << "\n";
    out << "tol = " << detail::fmt_num(job.tol) << "\n";
    out << "seed = " << job.seed << "\n";
    if (job.svg) out << "svg = true\n";
    if (job.csv) out << "csv = true\n";
    if (!job.out_prefix.empty()) out << "out_prefix = \"" << job.out_prefix << "\"\n";
    switch (job.kind) {
        case JobKind::Rl: {
            out << "nodes = " << detail::fmt_complex_list(job.nodes) << "\n";
            out << "weights = [";
            for (size_t i = 0; i < job.weights.size(); ++i)
                out << (i ? ", " : "") << detail::fmt_num(job.weights[i]);
            out << "]\n";
            out << "level_t = " << detail::fmt_num(job.level_t) << "\n";
            if (!job.fprime_poly.empty())
                out << "fprime_poly = " << detail::fmt_complex_list(job.fprime_poly) << "\n";
            break;
        }
        case JobKind::Rhie: {
            out << "n = " << job.n << "\n";
            if (job.rhie_a) out << "a = " << detail::fmt_num(*job.rhie_a) << "\n";
            if (job.rhie_eps && job.eps > 0) out << "eps = " << detail::fmt_num(job.eps) << "\n";
            if (job.rhie_t) out << "t = " << detail::fmt_num(*job.rhie_t) << "\n";
            break;
        }
        case JobKind::Quadrature:
            out << "phi = " << detail::fmt_complex_list(job.phi) << "\n";
            break;
        case JobKind::Oval:
            if (job.oval_r) out << "r = " << detail::fmt_num(*job.oval_r) << "\n";
            if (job.oval_a) out << "a = " << detail::fmt_num(*job.oval_a) << "\n";
            break;
        case JobKind::Pde:
            out << "mask = \"" << job.mask_path << "\"\n";
            if (job.mask_h > 0) out << "h = " << detail::fmt_num(job.mask_h) << "\n";
            break;
        case JobKind::Neck:
            out << "eps = " << detail::fmt_num(job.eps) << "\n";
            out << "m = " << detail::fmt_num(job.m_value) << "\n";
            break;
        case JobKind::Dumbbell:
            out << "eps = " << detail::fmt_num(job.eps) << "\n";
            out << "delta = " << detail::fmt_num(job.delta) << "\n";
            out << "disks = " << job.disks << "\n";
            break;
    }
    return out.str();
}

} // namespace landscape
