#pragma once

#include "engine.hpp"

#include <fstream>
#include <sstream>

namespace qh22 {

inline constexpr int cache_format_version = 1;

struct CacheError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// inverse of UniPoly<Rational>::str for rational coefficients
inline QPoly parse_qpoly(const std::string& s, const std::string& var = "x")
{
    if (s == "0") return {};
    if (s.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<std::string> terms;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= s.size(); ++i)
        if (i == s.size() || s[i] == '+' || s[i] == '-') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    std::vector<Rational> c;
    for (std::string t : terms) {
        Rational sign = 1;
        if (t[0] == '+' || t[0] == '-') {
            if (t[0] == '-') sign = -1;
            t = t.substr(1);
        }
        if (t.empty()) throw std::invalid_argument("bad polynomial: " + s);
        std::size_t deg = 0;
        Rational coef = 1;
        auto pos = t.find(var);
        if (pos == std::string::npos) coef = parse_rational(t);
        else {
            std::string head = t.substr(0, pos), tail = t.substr(pos + var.size());
            if (!head.empty()) {
                if (head.back() != '*') throw std::invalid_argument("bad polynomial: " + s);
                coef = parse_rational(head.substr(0, head.size() - 1));
            }
            if (tail.empty()) deg = 1;
            else if (tail[0] == '^') deg = std::stoul(tail.substr(1));
            else throw std::invalid_argument("bad polynomial: " + s);
        }
        if (c.size() <= deg) c.resize(deg + 1, Rational(0));
        c[deg] += sign * coef;
    }
    return QPoly(std::move(c));
}

inline std::string cache_header(int n)
{
    return "# qh22-cache " + std::to_string(cache_format_version) + " n=" + std::to_string(n);
}

// n|ambient|sorted primitive|value
inline std::string cache_line(int n, const Index& I, const QPoly& v)
{
    ModelParams m(n);
    std::string a, p;
    for (int k = 0; k < m.size(); ++k) {
        std::string& dst = k <= n ? a : p;
        if (!dst.empty()) dst += ",";
        dst += std::to_string(I[k]);
    }
    return std::to_string(n) + "|" + a + "|" + p + "|" + v.str();
}

inline void write_cache(std::ostream& os, const Engine& E)
{
    os << cache_header(E.n()) << "\n";
    for (const auto& [I, v] : E.cache_entries()) os << cache_line(E.n(), I, v) << "\n";
}

inline std::vector<int> parse_ints(const std::string& s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        int v = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad integer " + tok);
        out.push_back(v);
    }
    return out;
}

// returns the number of records read; an empty stream is an empty store
inline std::size_t read_cache(std::istream& is, Engine& E)
{
    const int n = E.n();
    std::string line;
    std::size_t lineno = 0, records = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!header) {
            std::istringstream hs(line);
            std::string hash, tag, nfield;
            int version = -1;
            hs >> hash >> tag >> version >> nfield;
            if (hash != "#" || tag != "qh22-cache") throw CacheError("line 1: missing cache header");
            if (version != cache_format_version)
                throw CacheError("line 1: cache format version " + std::to_string(version) + ", expected " +
                                 std::to_string(cache_format_version));
            if (nfield != "n=" + std::to_string(n)) throw CacheError("line 1: cache is for " + nfield + ", expected n=" + std::to_string(n));
            header = true;
            continue;
        }
        try {
            std::vector<std::string> f;
            std::stringstream ss(line);
            std::string tok;
            while (std::getline(ss, tok, '|')) f.push_back(tok);
            if (f.size() != 4) throw std::invalid_argument("expected 4 fields");
            if (std::stoi(f[0]) != n) throw std::invalid_argument("record for n=" + f[0]);
            auto a = parse_ints(f[1]), p = parse_ints(f[2]);
            const ModelParams& m = E.params();
            if (int(a.size()) != n + 1 || int(p.size()) != m.prim_count()) throw std::invalid_argument("index length");
            Index I = a;
            I.insert(I.end(), p.begin(), p.end());
            if (E.canonical(I) != I) throw std::invalid_argument("primitive exponents not sorted");
            if (!E.cache_insert(I, parse_qpoly(f[3]))) throw std::invalid_argument("conflicts with a stored value");
            ++records;
        } catch (const std::exception& e) {
            throw CacheError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return records;
}

inline std::size_t load_cache_file(const std::string& path, Engine& E)
{
    std::ifstream in(path);
    if (!in) return 0;  // a missing file is an empty store
    return read_cache(in, E);
}

inline void save_cache_file(const std::string& path, const Engine& E)
{
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw CacheError("cannot write " + path);
    write_cache(out, E);
}

} // namespace qh22
