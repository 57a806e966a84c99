#include "qh22/cache.hpp"
#include "qh22/geometry.hpp"
#include "qh22/semisimple.hpp"
#include "qh22/special.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>

using namespace qh22;
using nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json poly_json(const CorrelatorPoly& p)
{
    ordered_json a = ordered_json::array();
    for (const auto& c : p.coeffs()) a.push_back({to_string(c.re), to_string(c.im)});
    return {{"poly", a}, {"text", p.str()}};
}

std::vector<Rational> parse_rationals(const std::string& s)
{
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_rational(tok));
    return out;
}

struct Options {
    int n = 4;
    std::string format = "text";
    std::string cache;
    std::string tau_index, t_index;
    std::string target = "f";
    bool raw = false;
    int samples = 20;
    std::uint64_t seed = 1;
    std::string lambda = "1,2,3,4,5,6,7";
    std::string I, J;
};

bool json_out(const Options& o) { return o.format == "json"; }

Engine& engine_with_cache(const Options& o)
{
    Engine& E = shared_engine(o.n);
    if (!o.cache.empty()) load_cache_file(o.cache, E);
    return E;
}

void save_if_cached(const Options& o, const Engine& E)
{
    if (!o.cache.empty()) save_cache_file(o.cache, E);
}

int cmd_correlator(const Options& o)
{
    if (o.tau_index.empty() == o.t_index.empty()) throw UsageError("give exactly one of --tau-index, --t-index");
    const Basis b = o.t_index.empty() ? Basis::TAU : Basis::T;
    Index I;
    try {
        I = parse_ints(b == Basis::TAU ? o.tau_index : o.t_index);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad index: ") + e.what());
    }
    Engine& E = engine_with_cache(o);
    if (int(I.size()) != E.params().size())
        throw UsageError("index needs " + std::to_string(E.params().size()) + " entries for n=" + std::to_string(o.n));
    const CorrelatorPoly v = lift(E.correlator_q(I, b));
    save_if_cached(o, E);
    if (json_out(o)) {
        ordered_json j{{"n", o.n}, {"basis", basis_name(b)}, {"index", I}, {"value", poly_json(v)}};
        if (auto d = E.degree(I)) j["beta"] = *d;
        else j["beta"] = nullptr;
        std::cout << j.dump() << "\n";
    } else
        std::cout << v.str() << "\n";
    return 0;
}

int cmd_special(const Options& o)
{
    Engine& E = engine_with_cache(o);
    CorrelatorPoly v;
    ordered_json j{{"n", o.n}, {"target", o.target}};
    if (o.target == "f") {
        CorrelatorPoly raw = f_value(E);
        v = o.raw ? raw : in_epsilon_special(o.n, raw);
        j["variable"] = o.raw ? "orthonormal" : "unnormalized";
    } else if (o.target == "quadratic") {
        QPoly lhs = E.tau_q(quadratic_lhs_index(o.n));
        v = lift(lhs - quadratic_rhs(o.n));
        j["lhs"] = poly_json(lift(lhs));
        j["rhs"] = poly_json(lift(quadratic_rhs(o.n)));
    } else
        throw UsageError("--target must be f or quadratic");
    save_if_cached(o, E);
    j["value"] = poly_json(v);
    if (json_out(o)) std::cout << j.dump() << "\n";
    else if (o.target == "quadratic") std::cout << "lhs " << j["lhs"]["text"].get<std::string>() << "\nresidual " << v.str() << "\n";
    else std::cout << v.str() << "\n";
    return 0;
}

int cmd_conjecture(const Options& o)
{
    Engine& E = engine_with_cache(o);
    QPoly r = conjecture_quadratic(E);
    save_if_cached(o, E);
    const bool ok = r.is_zero();
    if (json_out(o)) std::cout << ordered_json{{"n", o.n}, {"residual", r.str()}, {"holds", ok}}.dump() << "\n";
    else std::cout << "residual " << r.str() << (ok ? " (holds)" : " (fails)") << "\n";
    return ok ? 0 : 1;
}

int cmd_semisimple(const Options& o)
{
    if (o.samples < 0) throw UsageError("--samples must be non-negative");
    auto rows = semisimple_scan(o.n, o.samples, o.seed);
    bool all_agree = true;
    int sf = 0, acc = 0;
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
        std::vector<std::string> pt;
        for (const auto& t : r.point) pt.push_back(to_string(t));
        ordered_json row{{"point", pt}, {"rejected", r.rejected}};
        if (!r.rejected) {
            row["squarefree"] = r.squarefree;
            row["degree"] = r.degree;
            row["distinct_roots"] = r.distinct_roots;
            row["agree"] = r.agree;
            all_agree = all_agree && r.agree;
            sf += r.squarefree;
            ++acc;
        }
        arr.push_back(row);
    }
    if (json_out(o)) std::cout << ordered_json{{"n", o.n}, {"seed", o.seed}, {"rows", arr}}.dump() << "\n";
    else {
        for (const auto& row : arr) std::cout << row.dump() << "\n";
        std::cout << "agree " << (all_agree ? "all" : "NOT all") << ", squarefree " << sf << "/" << acc << "\n";
    }
    return all_agree ? 0 : 1;
}

int cmd_conics(const Options& o)
{
    std::vector<Rational> l;
    try {
        l = parse_rationals(o.lambda);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (l.size() != 7) throw UsageError("--lambda needs 7 values");
    const Lambdas lam(l);
    auto rep = conic_pipeline(lam);
    const bool standard = lam.v == Lambdas::standard().v;
    std::optional<DualReport> dual;
    std::optional<bool> conj;
    if (standard) {
        dual = dual_uniqueness(lam);
        conj = conjecture_quadric_check(lam);
    }
    bool ok = rep.pass() && (!dual || dual->unit_multiples_only && dual->ideal_matches);
    if (json_out(o)) {
        ordered_json st = ordered_json::array();
        for (const auto& s : rep.stages) st.push_back({{"stage", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        ordered_json j{{"lambda", o.lambda}, {"stages", st}, {"notes", rep.notes}};
        if (dual)
            j["dual"] = {{"kernel_rank", dual->kernel_rank}, {"unit_multiples_only", dual->unit_multiples_only},
                         {"ideal_matches", dual->ideal_matches}};
        if (conj) j["conjectural_quadric_contains_plane"] = *conj;
        j["pass"] = ok;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& s : rep.stages)
            std::cout << (s.pass ? "ok   " : "FAIL ") << s.name << (s.detail.empty() ? "" : "  " + s.detail) << "\n";
        for (const auto& s : rep.notes) std::cout << "note " << s << "\n";
        if (dual)
            std::cout << (dual->unit_multiples_only && dual->ideal_matches ? "ok   " : "FAIL ") << "dual_uniqueness  kernel rank "
                      << dual->kernel_rank << "\n";
        if (conj) std::cout << "info conjectural quadric contains the plane: " << (*conj ? "yes" : "no") << "\n";
    }
    return ok ? 0 : 1;
}

FlipSet parse_set(const std::string& s)
{
    if (s.empty() || s == "-") return 0;
    return flip_set(parse_ints(s));
}

int cmd_lattice(const Options& o)
{
    ModelParams mp(o.n);
    if (!o.I.empty() || !o.J.empty()) {
        FlipSet I = parse_set(o.I), J = parse_set(o.J);
        if ((I | J) & ~full_set(o.n)) throw UsageError("subset entries must lie in [0, n+2]");
        int d = intersection_dim(I, J, o.n), num = intersection_number(I, J, o.n);
        if (json_out(o)) std::cout << ordered_json{{"n", o.n}, {"dim", d}, {"number", num}}.dump() << "\n";
        else std::cout << "dim " << d << "\nnumber " << num << "\n";
        return 0;
    }
    const Rational sign = (o.n / 2) % 2 == 0 ? 1 : -1;
    const bool gram = epsilon_gram(o.n) == sign * QMatrix::identity(o.n + 3);
    bool uniq = false;
    std::size_t surv = 0;
    if (o.n <= 10) {
        auto u = unique_plane_check(o.n);
        uniq = u.unique;
        surv = u.survivors.size();
    }
    if (json_out(o))
        std::cout << ordered_json{{"n", o.n}, {"epsilon_gram_ok", gram}, {"unique_plane", uniq}, {"survivors", surv}}.dump()
                  << "\n";
    else std::cout << "epsilon_gram " << (gram ? "ok" : "FAIL") << "\nunique_plane " << (uniq ? "ok" : "FAIL") << "\n";
    return gram && uniq ? 0 : 1;
}

int cmd_cache_info(const Options& o)
{
    if (o.cache.empty()) throw UsageError("cache-info needs --cache or QH22_CACHE");
    Engine E(o.n);
    std::size_t k = load_cache_file(o.cache, E);
    std::map<int, std::size_t> by_len;
    for (const auto& [I, v] : E.cache_entries()) ++by_len[index_length(I)];
    if (json_out(o)) {
        ordered_json bl = ordered_json::object();
        for (auto [l, c] : by_len) bl[std::to_string(l)] = c;
        std::cout << ordered_json{{"path", o.cache}, {"n", o.n}, {"version", cache_format_version}, {"records", k}, {"by_length", bl}}
                         .dump()
                  << "\n";
    } else {
        std::cout << o.cache << ": " << k << " records (format " << cache_format_version << ", n=" << o.n << ")\n";
        for (auto [l, c] : by_len) std::cout << "  length " << l << ": " << c << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact genus-0 correlators of even-dimensional (2,2) complete intersections"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("QH22_CACHE")) o.cache = env;
    app.add_option("--cache", o.cache, "memo cache file (default $QH22_CACHE)");
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));

    auto with_n = [&](CLI::App* s) { s->add_option("--n", o.n, "dimension (even, >= 4)"); };

    auto* corr = app.add_subcommand("correlator", "one correlator, tau-basis by default");
    with_n(corr);
    corr->add_option("--tau-index", o.tau_index, "comma-separated exponents over 1, h~_1..h~_n, eps_1..eps_{n+3}");
    corr->add_option("--t-index", o.t_index, "comma-separated exponents over 1, h_1..h_n, eps_1..eps_{n+3}");

    auto* special = app.add_subcommand("special-expr", "f(n) or the quadratic conjecture residual");
    with_n(special);
    special->add_option("--target", o.target)->check(CLI::IsMember({"f", "quadratic"}));
    special->add_flag("--raw", o.raw, "report f(n) in the orthonormal variable");

    auto* conj = app.add_subcommand("conjecture", "check the quadratic identity for the special correlator");
    with_n(conj);

    auto* semi = app.add_subcommand("semisimple", "characteristic polynomial scan of the cutoff Euler matrix");
    with_n(semi);
    semi->add_option("--samples", o.samples);
    semi->add_option("--seed", o.seed);

    auto* con = app.add_subcommand("conics", "dimension-4 conic verification");
    con->add_option("--lambda", o.lambda, "seven distinct rationals");

    auto* lat = app.add_subcommand("lattice", "plane intersection lattice");
    with_n(lat);
    lat->add_option("--I", o.I, "flip set, comma-separated (empty: S)");
    lat->add_option("--J", o.J, "flip set, comma-separated (empty: S)");

    auto* ci = app.add_subcommand("cache-info", "summarize a cache file");
    with_n(ci);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (!con->parsed()) ModelParams check(o.n);
        if (*corr) return cmd_correlator(o);
        if (*special) return cmd_special(o);
        if (*conj) return cmd_conjecture(o);
        if (*semi) return cmd_semisimple(o);
        if (*con) return cmd_conics(o);
        if (*lat) return cmd_lattice(o);
        if (*ci) return cmd_cache_info(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
