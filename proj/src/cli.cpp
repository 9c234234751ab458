#include "qwp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwp/coaction.hpp"
#include "qwp/coord.hpp"
#include "qwp/dirac.hpp"
#include "qwp/teardrop.hpp"

namespace qwp {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<HalfInt> half_steps_to(HalfInt max, bool integers_only) {
    std::vector<HalfInt> out;
    for (std::int64_t t = 0; t <= max.twice(); t += integers_only ? 2 : 1) out.push_back(HalfInt::from_twice(t));
    return out;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Collects named residuals; a check passes when residual <= threshold.
class Report {
public:
    explicit Report(std::string suite, const RunConfig& cfg) {
        json_["suite"] = std::move(suite);
        json_["q"] = cfg.q;
        json_["tol"] = cfg.tol;
        json_["k"] = cfg.k;
        json_["l"] = cfg.l;
        json_["checks"] = Json::array();
    }

    void check(const std::string& name, double residual, double threshold) {
        const bool ok = residual <= threshold;
        passed_ = passed_ && ok;
        json_["checks"].push_back({{"name", name}, {"residual", residual}, {"threshold", threshold}, {"passed", ok}});
    }

    bool passed() const { return passed_; }

    std::string dump() {
        json_["passed"] = passed_;
        return json_.dump(2) + "\n";
    }

private:
    Json json_;
    bool passed_ = true;
};

// ---- verification suites ----

void suite_su2q(Report& r, const QContext& ctx) {
    const auto [a, b, as, bs] = gens(ctx);
    const double q = ctx.q();
    const AlgebraElement one = AlgebraElement::unit();
    auto mul = [&](const AlgebraElement& x, const AlgebraElement& y) { return multiply(x, y, ctx); };
    r.check("beta alpha - q alpha beta", distance(mul(b, a), Complex(q) * mul(a, b)), ctx.tol());
    r.check("beta* alpha - q alpha beta*", distance(mul(bs, a), Complex(q) * mul(a, bs)), ctx.tol());
    r.check("beta beta* - beta* beta", distance(mul(b, bs), mul(bs, b)), ctx.tol());
    r.check("alpha alpha* + beta beta* - 1", distance(mul(a, as) + mul(b, bs), one), ctx.tol());
    r.check("alpha* alpha + q^2 beta* beta - 1", distance(mul(as, a) + Complex(q * q) * mul(bs, b), one), ctx.tol());
}

void suite_wp(Report& r, const WeightPair& wp, const QContext& ctx) {
    const auto w = verify_wp_relations(wp, ctx);
    const double threshold = 10 * ctx.tol();
    r.check("a b* - q^{-2l} b* a", w.a_bstar_commutation, threshold);
    r.check("b* b", w.bstar_b, threshold);
    r.check("b b*", w.b_bstar, threshold);
}

void suite_haar(Report& r, HalfInt lambda_max, const QContext& ctx) {
    std::vector<BasisIndex> idx;
    for (HalfInt lambda : half_steps_to(lambda_max, false))
        for (std::int64_t m = -lambda.twice(); m <= lambda.twice(); m += 2)
            for (std::int64_t n = -lambda.twice(); n <= lambda.twice(); n += 2)
                idx.push_back({lambda, HalfInt::from_twice(m), HalfInt::from_twice(n)});
    double worst = 0.0;
    for (const auto& i : idx)
        for (const auto& j : idx) {
            const Complex got = inner(AlgebraElement::basis(i), AlgebraElement::basis(j), ctx);
            const double want = i == j ? ctx.qpow(-2.0 * i.m.value()) / q_int(i.lambda.twice() + 1, ctx) : 0.0;
            worst = std::max(worst, std::abs(got - want));
        }
    r.check("h(1) - 1", std::abs(haar(AlgebraElement::unit()) - 1.0), 0.0);
    r.check("orthogonality", worst, ctx.tol());
}

void suite_equivariance(Report& r, const QContext& ctx) {
    const auto g = gens(ctx);
    const AlgebraElement gs[] = {g.alpha, g.beta, g.alpha_star, g.beta_star};
    const double q = ctx.q(), sq = std::sqrt(q);
    // (left?, letter, source, coefficient, target); target -1 is zero
    struct Entry {
        bool left;
        Letter x;
        int src;
        double c;
        int dst;
    };
    using L = Letter;
    const Entry table[] = {
        {false, L::e, 0, 0, -1},        {false, L::f, 0, 1, 1},          {false, L::k, 0, sq, 0},
        {false, L::kinv, 0, 1 / sq, 0}, {false, L::e, 1, 1, 0},          {false, L::f, 1, 0, -1},
        {false, L::k, 1, 1 / sq, 1},    {false, L::kinv, 1, sq, 1},      {false, L::e, 2, -q, 3},
        {false, L::f, 2, 0, -1},        {false, L::k, 2, 1 / sq, 2},     {false, L::kinv, 2, sq, 2},
        {false, L::e, 3, 0, -1},        {false, L::f, 3, -1 / q, 2},     {false, L::k, 3, sq, 3},
        {false, L::kinv, 3, 1 / sq, 3}, {true, L::e, 0, 0, -1},          {true, L::f, 0, -q * q, 3},
        {true, L::k, 0, sq, 0},         {true, L::kinv, 0, 1 / sq, 0},   {true, L::e, 1, 0, -1},
        {true, L::f, 1, q, 2},          {true, L::k, 1, sq, 1},          {true, L::kinv, 1, 1 / sq, 1},
        {true, L::e, 2, 1 / q, 1},      {true, L::f, 2, 0, -1},          {true, L::k, 2, 1 / sq, 2},
        {true, L::kinv, 2, sq, 2},      {true, L::e, 3, -1 / (q * q), 0}, {true, L::f, 3, 0, -1},
        {true, L::k, 3, 1 / sq, 3},     {true, L::kinv, 3, sq, 3},
    };
    double right_table = 0.0, left_table = 0.0;
    for (const auto& e : table) {
        const AlgebraElement got = e.left ? left_act({e.x}, gs[e.src], ctx) : right_act({e.x}, gs[e.src], ctx);
        const AlgebraElement want = e.dst < 0 ? AlgebraElement() : Complex(e.c) * gs[e.dst];
        (e.left ? left_table : right_table) = std::max(e.left ? left_table : right_table, distance(got, want));
    }
    r.check("right action table", right_table, 1e-12);
    r.check("left action table", left_table, 1e-12);

    using Act = std::function<AlgebraElement(const GeneratorWord&, const AlgebraElement&)>;
    const Act right = [&](const GeneratorWord& w, const AlgebraElement& y) { return right_act(w, y, ctx); };
    const Act left = [&](const GeneratorWord& w, const AlgebraElement& y) { return left_act(w, y, ctx); };
    // x(ab) = sum x'(a) x''(b) over Delta(x) = x (x) k + k^{-1} (x) x, or k (x) k
    auto leibniz = [&](Letter x, const AlgebraElement& a, const AlgebraElement& b, const Act& act) {
        if (x == Letter::k || x == Letter::kinv) return multiply(act({x}, a), act({x}, b), ctx);
        return multiply(act({x}, a), act({Letter::k}, b), ctx) + multiply(act({Letter::kinv}, a), act({x}, b), ctx);
    };
    double right_res = 0.0, left_res = 0.0;
    for (Letter x : {Letter::e, Letter::f, Letter::k, Letter::kinv})
        for (const auto& a : gs)
            for (const auto& b : gs) {
                const AlgebraElement ab = multiply(a, b, ctx);
                right_res = std::max(right_res, distance(right({x}, ab), leibniz(x, a, b, right)));
                left_res = std::max(left_res, distance(left({x}, ab), leibniz(x, a, b, left)));
            }
    r.check("right action is a module-algebra action", right_res, ctx.tol());
    r.check("left action is a module-algebra action", left_res, ctx.tol());
}

void suite_qdirac(Report& r, const WeightPair& wp, HalfInt j_max, const QContext& ctx) {
    r.check("q^{-eth} eigenvector residual", q_dirac_check(j_max, ctx).max_residual, 100 * ctx.tol());
    const auto c = coinvariant_dirac_check(wp, j_max, ctx);
    r.check("coinvariant spinor degrees", c.coinvariant ? 0.0 : 1.0, 0.0);
    r.check("coinvariant eigenvector residual", c.max_residual, 100 * ctx.tol());
    r.check("shifted Dirac eigenvalue error", c.max_eigenvalue_error, 100 * ctx.tol());
}

void suite_chirality(Report& r, const WeightPair& wp, HalfInt lambda_max, const QContext& ctx) {
    const auto c = chirality_checks(wp, lambda_max, ctx);
    r.check("omega^2 - 1", c.omega_squared, 1e-12);
    r.check("omega - omega*", c.omega_selfadjoint, 1e-12);
    r.check("omega D' + D' omega", c.anticommutator, 1e-12);
    r.check("[pi(a), omega]", c.commutator_a, 1e-12);
    r.check("[pi(b), omega]", c.commutator_b, 1e-12);
}

void suite_fredholm(Report& r, const WeightPair& wp, HalfInt lambda_max, const QContext& ctx) {
    const auto f = fredholm_degeneracy(wp, lambda_max, ctx);
    r.check("F'^2 - 1", f.f_squared, 1e-12);
    r.check("F' - F'*", f.f_selfadjoint, 1e-12);
    r.check("[F', pi(a)]", f.commutator_a, 1e-12);
    r.check("[F', pi(b)]", f.commutator_b, 1e-12);
    r.check("[F', pi(b*)]", f.commutator_bstar, 1e-12);
}

void suite_teardrop(Report& r, const RunConfig& cfg, std::int64_t N, const QContext& ctx) {
    if (cfg.k != 1) throw UsageError("the teardrop suite needs k = 1");
    const int l = cfg.l;
    r.check("teardrop relations (interior)", teardrop_relations(l, N, ctx).max(), ctx.tol());
    double m_dependence = 0.0;
    for (int s = 1; s <= l; ++s)
        for (WPGen g : {WPGen::a, WPGen::b, WPGen::bstar}) {
            const RMatrix ref = wp_rep(l, 0, s, g, N, ctx).entries;
            for (std::int64_t m : {-2, 5})
                m_dependence = std::max(m_dependence, (wp_rep(l, m, s, g, N, ctx).entries - ref).cwiseAbs().maxCoeff());
        }
    r.check("independence of m", m_dependence, 0.0);
    r.check("lens commutation (interior)", lens_commutation_residual(l, 4, std::min<std::int64_t>(N, 32), ctx), ctx.tol());
    for (int j = 1; j < l; ++j) {
        const auto b = block_structure_evidence(l, cfg.n, j, N, ctx);
        const std::string tag = " (j=" + std::to_string(j) + ", n=" + std::to_string(cfg.n) + ")";
        r.check("off-pattern blocks" + tag, b.off_pattern, b.off_pattern_threshold);
        r.check("shift tail" + tag, b.max_tail_defect, b.tail_threshold);
    }
}

// ---- table commands ----

std::string cmd_spectrum(const RunConfig& cfg, const WeightPair& wp, const std::string& triple) {
    const SpectrumTable t =
        triple == "odd" ? odd_triple_spectrum(wp, cfg.j_max) : even_triple_spectrum(wp, cfg.lambda_max, cfg.n);
    if (cfg.format == OutputFormat::json) return t.to_json() + "\n";
    std::ostringstream os;
    t.write_csv(os);
    return os.str();
}

std::string cmd_dims(const RunConfig& cfg, const WeightPair& wp, const std::string& kind, bool& all_match) {
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "j,closed_form,oracle,match\n";
    all_match = true;
    // nothing lives at half-integers when k + l is even
    for (HalfInt j : half_steps_to(cfg.j_max, wp.sum() % 2 == 0)) {
        std::int64_t closed = 0, oracle = 0;
        if (kind == "down") {
            closed = dim_V_down(wp, j);
            oracle = dim_V_down_oracle(wp, j);
        } else if (kind == "up") {
            closed = dim_V_up(wp, j);
            oracle = dim_V_up_oracle(wp, j);
        } else {
            closed = dim_V(wp, j);
            oracle = dim_V_oracle(wp, j);
        }
        const bool match = closed == oracle;
        all_match = all_match && match;
        csv << fmt(j.value()) << ',' << closed << ',' << oracle << ',' << (match ? "true" : "false") << '\n';
        rows.push_back({{"j", j.value()}, {"closed_form", closed}, {"oracle", oracle}, {"match", match}});
    }
    if (cfg.format == OutputFormat::csv) return csv.str();
    Json doc{{"kind", kind}, {"k", wp.k()}, {"l", wp.l()}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string cmd_summability(const RunConfig& cfg, const WeightPair& wp, const std::string& triple,
                            std::vector<std::int64_t> Ns, bool& monotone) {
    std::sort(Ns.begin(), Ns.end());
    Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());
    const Triple t = triple == "odd" ? Triple::odd : Triple::even;
    std::ostringstream csv;
    csv << "N,sigma,sigma_over_log_N,increment_ratio,sigma_exponent_3\n";
    Json rows = Json::array();
    monotone = true;
    double prev = 0.0;
    for (std::int64_t N : Ns) {
        if (N < 1) throw UsageError("summability: every N must be positive");
        const double sigma = summability_partial_sum(wp, N, t);
        const double ratio = (summability_partial_sum(wp, 2 * N, t) - sigma) / std::log(2.0);
        const double per_log = sigma / std::log(static_cast<double>(N));
        const double cubic = summability_partial_sum(wp, N, t, 3.0);
        monotone = monotone && sigma >= prev;
        prev = sigma;
        csv << N << ',' << fmt(sigma) << ',' << fmt(per_log) << ',' << fmt(ratio) << ',' << fmt(cubic) << '\n';
        Json row{{"N", N}, {"sigma", sigma}, {"sigma_over_log_N", nullptr}, {"increment_ratio", ratio},
                 {"sigma_exponent_3", cubic}};
        if (N > 1) row["sigma_over_log_N"] = per_log;
        rows.push_back(row);
    }
    if (cfg.format == OutputFormat::csv) return csv.str();
    Json doc{{"triple", triple}, {"k", wp.k()}, {"l", wp.l()}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string cmd_ktheory(const RunConfig& cfg, int j_only) {
    if (cfg.k != 1) throw UsageError("ktheory covers the teardrops, k = 1");
    std::ostringstream csv;
    csv << "l,n,j,class,k0\n";
    Json rows = Json::array();
    for (int j = 0; j < cfg.l; ++j) {
        if (j_only >= 0 && j != j_only) continue;
        const ProjectionClass c = ktheory_class(cfg.l, cfg.n, j);
        std::string k0;
        for (std::int64_t x : c.k0()) k0 += (k0.empty() ? "" : " ") + std::to_string(x);
        csv << cfg.l << ',' << cfg.n << ',' << j << ',' << c.str() << ',' << k0 << '\n';
        rows.push_back({{"l", cfg.l}, {"n", cfg.n}, {"j", j}, {"class", c.str()}, {"k0", c.k0()}});
    }
    if (j_only >= cfg.l) throw UsageError("ktheory: need 0 <= j <= l - 1");
    if (cfg.format == OutputFormat::csv) return csv.str();
    return Json{{"rows", rows}}.dump(2) + "\n";
}

}  // namespace

std::optional<HalfInt> parse_half_int(const std::string& text) {
    try {
        std::size_t used = 0;
        if (auto slash = text.find('/'); slash != std::string::npos) {
            if (text.substr(slash + 1) != "2") return std::nullopt;
            const long long twice = std::stoll(text.substr(0, slash), &used);
            if (used != slash) return std::nullopt;
            return HalfInt::from_twice(twice);
        }
        const double v = std::stod(text, &used);
        if (used != text.size() || std::floor(2 * v) != 2 * v) return std::nullopt;
        return HalfInt::from_twice(static_cast<std::int64_t>(2 * v));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectra, dimension tables and verification reports for quantum weighted projective lines", "qwp"};
    app.set_config("--config", "", "key=value file of option defaults");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    std::string j_max = "2", lambda_max = "5", format = "csv";
    app.add_option("--q", cfg.q, "deformation parameter in (0, 1)");
    app.add_option("--tol", cfg.tol, "numerical tolerance");
    app.add_option("--k", cfg.k, "first weight");
    app.add_option("--l", cfg.l, "second weight, coprime to k");
    app.add_option("--jmax", j_max, "spinor cap (half-integer)");
    app.add_option("--lmax", lambda_max, "highest-weight cap (half-integer)");
    app.add_option("--n", cfg.n, "degree of the homogeneous component");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", cfg.out, "output file (default: standard output)");

    std::string triple = "even", kind = "down", suite;
    std::int64_t N = 64;
    std::vector<std::int64_t> Ns{512, 1024, 2048};
    int j_only = -1;

    auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and multiplicities of a spectral triple");
    spectrum->add_option("--triple", triple, "odd or even")->check(CLI::IsMember({"odd", "even"}));
    auto* dims = app.add_subcommand("dims", "closed-form dimensions against enumeration");
    dims->add_option("--kind", kind, "down, up or coord")->check(CLI::IsMember({"down", "up", "coord"}));
    auto* verify = app.add_subcommand("verify", "JSON report of residuals for one suite");
    verify->add_option("--suite", suite, "suite name")
        ->required()
        ->check(CLI::IsMember({"su2q-relations", "wp-relations", "haar", "equivariance", "qdirac", "chirality",
                               "fredholm", "teardrop"}));
    verify->add_option("--N", N, "teardrop truncation per copy");
    auto* summability = app.add_subcommand("summability", "partial traces of |D|^-2");
    summability->add_option("--triple", triple, "odd or even")->check(CLI::IsMember({"odd", "even"}));
    summability->add_option("--N", Ns, "comma-separated caps")->delimiter(',');
    auto* ktheory = app.add_subcommand("ktheory", "projection classes of the teardrop components");
    ktheory->add_option("--j", j_only, "single j in 0..l-1 (default: all)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        const auto jm = parse_half_int(j_max), lm = parse_half_int(lambda_max);
        if (!jm || jm->twice() < 0) throw UsageError("--jmax must be a nonnegative half-integer");
        if (!lm || lm->twice() < 0) throw UsageError("--lmax must be a nonnegative half-integer");
        cfg.j_max = *jm;
        cfg.lambda_max = *lm;
        cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
        if (!(cfg.q > 0.0 && cfg.q < 1.0)) throw UsageError("--q must lie in (0, 1)");
        if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
        const WeightPair wp(cfg.k, cfg.l);
        const QContext ctx(cfg.q, cfg.tol);

        std::string body;
        int code = kExitOk;
        if (spectrum->parsed()) {
            body = cmd_spectrum(cfg, wp, triple);
        } else if (dims->parsed()) {
            bool ok = true;
            body = cmd_dims(cfg, wp, kind, ok);
            if (!ok) code = kExitVerificationFailed;
        } else if (verify->parsed()) {
            Report r(suite, cfg);
            if (suite == "su2q-relations") suite_su2q(r, ctx);
            else if (suite == "wp-relations") {
                if (wp.sum() > kWPRelationGuard) throw UsageError("wp-relations: k + l above the guard");
                suite_wp(r, wp, ctx);
            } else if (suite == "haar") suite_haar(r, cfg.lambda_max, ctx);
            else if (suite == "equivariance") suite_equivariance(r, ctx);
            else if (suite == "qdirac") suite_qdirac(r, wp, cfg.j_max, ctx);
            else if (suite == "chirality") suite_chirality(r, wp, cfg.lambda_max, ctx);
            else if (suite == "fredholm") suite_fredholm(r, wp, cfg.lambda_max, ctx);
            else suite_teardrop(r, cfg, N, ctx);
            body = r.dump();
            if (!r.passed()) code = kExitVerificationFailed;
        } else if (summability->parsed()) {
            bool monotone = true;
            body = cmd_summability(cfg, wp, triple, Ns, monotone);
            if (!monotone) code = kExitVerificationFailed;
        } else {
            body = cmd_ktheory(cfg, j_only);
        }

        if (cfg.out.empty()) {
            out << body;
        } else {
            std::ofstream file(cfg.out, std::ios::binary);
            if (!(file << body)) throw UsageError("cannot write " + cfg.out);
        }
        return code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerificationFailed;
    }
}

}  // namespace qwp
