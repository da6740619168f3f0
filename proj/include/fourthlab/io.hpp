#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fourthlab/grid.hpp"

#ifndef FOURTHLAB_VERSION
#define FOURTHLAB_VERSION "0.1.0"
#endif

namespace fourthlab::io {

/// Shortest text that reads back to the same double.
inline std::string num(double v) {
    char buf[32];
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Provenance line written at the top of every output file.
struct Provenance {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;

    std::string line() const {
        return "# fourthlab version=" FOURTHLAB_VERSION " command=" + command + " config_hash=" + config_hash +
               " seed=" + std::to_string(seed);
    }
};

/// Field dump: provenance line, "# center=..,dx=..,n=.." line, then x,re,im rows.
inline void write_field(std::ostream& os, const Field& f, const Provenance* prov = nullptr) {
    if (prov) os << prov->line() << '\n';
    const auto& g = f.grid();
    os << "# center=" << num(g.center()) << ",dx=" << num(g.spacing()) << ",n=" << g.size() << '\n';
    os << "x,re,im\n";
    for (std::size_t m = 0; m < f.size(); ++m)
        os << num(g.x(m)) << ',' << num(f[m].real()) << ',' << num(f[m].imag()) << '\n';
}

inline void write_field(const std::string& path, const Field& f, const Provenance* prov = nullptr) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidArgument("output", "cannot open " + path + " for writing");
    write_field(os, f, prov);
}

inline Field read_field(std::istream& is) {
    std::string line;
    double center = 0.0, dx = 0.0;
    std::size_t n = 0;
    bool have_grid = false;
    std::vector<cplx> values;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            double c, d;
            unsigned long long k;
            if (std::sscanf(line.c_str(), "# center=%lf,dx=%lf,n=%llu", &c, &d, &k) == 3) {
                center = c;
                dx = d;
                n = static_cast<std::size_t>(k);
                have_grid = true;
            }
            continue;
        }
        if (line.rfind("x,", 0) == 0) continue;
        double x, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            throw InvalidData("field", "malformed row: " + line);
        values.emplace_back(re, im);
    }
    if (!have_grid) throw InvalidData("field", "missing '# center=..,dx=..,n=..' header");
    return Field(SpatialGrid(center, dx, n), std::move(values));
}

inline Field read_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InvalidArgument("file", "cannot open " + path);
    return read_field(is);
}

}  // namespace fourthlab::io
