#include "qwp/coaction.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qwp {

WeightPair::WeightPair(int k, int l) : k_(k), l_(l) {
    if (k < 1 || l < 1) throw std::invalid_argument("weight pair entries must be positive");
    if (std::gcd(k, l) != 1)
        throw std::invalid_argument("weight pair (" + std::to_string(k) + "," + std::to_string(l) + ") is not coprime");
}

std::int64_t degree(const WeightPair& wp, const BasisIndex& idx) {
    const std::int64_t two_sum = idx.m.twice() + idx.n.twice();
    const std::int64_t two_diff = idx.m.twice() - idx.n.twice();
    return (-two_sum * wp.k() + two_diff * wp.l()) / 2;
}

std::set<std::int64_t> degrees_present(const WeightPair& wp, const AlgebraElement& a) {
    std::set<std::int64_t> out;
    for (const auto& [idx, c] : a.terms()) out.insert(degree(wp, idx));
    return out;
}

std::optional<std::int64_t> homogeneous_degree(const WeightPair& wp, const AlgebraElement& a) {
    const auto degs = degrees_present(wp, a);
    if (degs.size() != 1) return std::nullopt;
    return *degs.begin();
}

AlgebraElement project_degree(const AlgebraElement& a, const WeightPair& wp, std::int64_t i) {
    AlgebraElement::Terms out;
    for (const auto& [idx, c] : a.terms())
        if (degree(wp, idx) == i) out.emplace(idx, c);
    return AlgebraElement(std::move(out));
}

WPGenerators wp_gens(const WeightPair& wp, const QContext& ctx) {
    const auto g = gens(ctx);
    return {multiply(g.beta, g.beta_star, ctx),
            multiply(power(g.beta, wp.k(), ctx), power(g.alpha, wp.l(), ctx), ctx)};
}

double WPRelationReport::max() const { return std::max({a_bstar_commutation, bstar_b, b_bstar}); }

WPRelationReport verify_wp_relations(const WeightPair& wp, const QContext& ctx) {
    if (wp.sum() > kWPRelationGuard)
        throw std::invalid_argument("verify_wp_relations: k + l exceeds " + std::to_string(kWPRelationGuard));
    const auto [a, b] = wp_gens(wp, ctx);
    const AlgebraElement bs = star(b, ctx);
    const AlgebraElement one = AlgebraElement::unit();
    const int k = wp.k(), l = wp.l();

    WPRelationReport r;
    r.a_bstar_commutation =
        distance(multiply(a, bs, ctx), Complex(ctx.qpow(-2.0 * l)) * multiply(bs, a, ctx));

    AlgebraElement rhs2 = Complex(ctx.qpow(2.0 * k * l)) * power(a, k, ctx);
    for (int m = 0; m < l; ++m) rhs2 = multiply(rhs2, one - Complex(ctx.qpow(2.0 * (m + 1))) * a, ctx);
    r.bstar_b = distance(multiply(bs, b, ctx), rhs2);

    AlgebraElement rhs3 = power(a, k, ctx);
    for (int m = 1; m <= l; ++m) rhs3 = multiply(rhs3, one - Complex(ctx.qpow(-2.0 * (m - 1))) * a, ctx);
    r.b_bstar = distance(multiply(b, bs, ctx), rhs3);
    return r;
}

std::int64_t uq_degree(const WeightPair& wp, Letter g) {
    switch (g) {
        case Letter::e: return -wp.sum();
        case Letter::f: return wp.sum();
        case Letter::k:
        case Letter::kinv: return 0;
    }
    throw std::logic_error("uq_degree: bad letter");
}

std::int64_t uq_degree(const WeightPair& wp, const GeneratorWord& w) {
    std::int64_t d = 0;
    for (const auto& f : w.factors()) d += f.exponent * uq_degree(wp, f.letter);
    return d;
}

std::int64_t spinor_degree(const WeightPair& wp, std::int64_t i, SpinorLeg leg) {
    return leg == SpinorLeg::plus ? i : i + wp.sum();
}

namespace {

// Doubled values 2P with P = p(l+k) in [lo, hi], P congruent to `parity` mod 1, and p in (1/2)Z.
std::vector<std::int64_t> admissible_twice_P(const WeightPair& wp, HalfInt lo, HalfInt hi, HalfInt parity) {
    std::vector<std::int64_t> out;
    for (HalfInt P = lo; P <= hi; P += HalfInt::from_int(1)) {
        if (!P.same_parity(parity)) continue;
        if (P.twice() % wp.sum() != 0) continue;
        out.push_back(P.twice());
    }
    return out;
}

}  // namespace

std::vector<BasisIndex> coinvariant_coord_basis(const WeightPair& wp, HalfInt lambda_max) {
    if (lambda_max.twice() < 0) throw std::invalid_argument("coinvariant_coord_basis: negative lambda_max");
    std::vector<BasisIndex> out;
    for (HalfInt lambda; lambda <= lambda_max; lambda += HalfInt::half()) {
        for (std::int64_t twice_P : admissible_twice_P(wp, -lambda, lambda, lambda)) {
            const std::int64_t twice_p = twice_P / wp.sum();
            out.push_back({lambda, HalfInt::from_twice(twice_P), HalfInt::from_twice(twice_p * (wp.l() - wp.k()))});
        }
    }
    return out;
}

std::vector<BasisIndex> homogeneous_coord_basis(const WeightPair& wp, HalfInt lambda_max, std::int64_t deg) {
    std::vector<BasisIndex> out;
    for (HalfInt lambda; lambda <= lambda_max; lambda += HalfInt::half())
        for (HalfInt m = -lambda; m <= lambda; m += HalfInt::from_int(1))
            for (HalfInt n = -lambda; n <= lambda; n += HalfInt::from_int(1)) {
                const BasisIndex idx{lambda, m, n};
                if (degree(wp, idx) == deg) out.push_back(idx);
            }
    return out;
}

HalfInt CoinvariantSpinorIndex::m(const WeightPair& wp) const { return wp.sum() * p - HalfInt::half(); }

HalfInt CoinvariantSpinorIndex::mu(const WeightPair& wp) const { return (wp.l() - wp.k()) * p; }

bool CoinvariantSpinorIndex::legal(const WeightPair& wp) const {
    if (j.twice() < 0) return false;
    const HalfInt P = wp.sum() * p;
    if (!P.same_parity(j)) return false;
    if (arrow == Arrow::up) return -j <= P && P <= j + HalfInt::from_int(1);
    return j.twice() >= 1 && -j + HalfInt::from_int(1) <= P && P <= j;
}

std::vector<CoinvariantSpinorIndex> coinvariant_spinor_basis(const WeightPair& wp, HalfInt j_max) {
    if (j_max.twice() < 0) throw std::invalid_argument("coinvariant_spinor_basis: negative j_max");
    std::vector<CoinvariantSpinorIndex> out;
    const HalfInt one = HalfInt::from_int(1);
    for (HalfInt j; j <= j_max; j += HalfInt::half()) {
        for (std::int64_t twice_P : admissible_twice_P(wp, -j, j + one, j))
            out.push_back({j, HalfInt::from_twice(twice_P / wp.sum()), Arrow::up});
        if (j.twice() >= 1)
            for (std::int64_t twice_P : admissible_twice_P(wp, -j + one, j, j))
                out.push_back({j, HalfInt::from_twice(twice_P / wp.sum()), Arrow::down});
    }
    return out;
}

std::int64_t dim_V_down(const WeightPair& wp, HalfInt j) {
    if (j.twice() < 0) throw std::invalid_argument("dim_V_down: negative j");
    if (j.twice() == 0) return 0;
    const std::int64_t s = wp.sum();
    const std::int64_t tj = j.twice();
    if (s % 2 == 0) {
        if (!j.is_integer()) return 0;
        // floor(j / (s/2)) = floor(2j / s)
        return floor_div(tj, s) + floor_div(tj - 2, s) + 1;
    }
    if (j.is_integer()) return floor_div(tj / 2, s) + floor_div(tj / 2 - 1, s) + 1;
    // floor(j/s + 1/2) = floor((2j + s) / 2s)
    return floor_div(tj + s, 2 * s) + floor_div(tj - 2 + s, 2 * s);
}

std::int64_t dim_V_down_oracle(const WeightPair& wp, HalfInt j) {
    if (j.twice() < 1) return 0;
    return static_cast<std::int64_t>(admissible_twice_P(wp, -j + HalfInt::from_int(1), j, j).size());
}

std::int64_t dim_V_up(const WeightPair& wp, HalfInt j) { return dim_V_down(wp, j + HalfInt::from_int(1)); }

std::int64_t dim_V_up_oracle(const WeightPair& wp, HalfInt j) {
    if (j.twice() < 0) return 0;
    return static_cast<std::int64_t>(admissible_twice_P(wp, -j, j + HalfInt::from_int(1), j).size());
}

std::int64_t dim_V(const WeightPair& wp, HalfInt lambda) {
    if (lambda.twice() < 0) throw std::invalid_argument("dim_V: negative lambda");
    const std::int64_t s = wp.sum();
    const std::int64_t tl = lambda.twice();
    if (s % 2 == 0) return lambda.is_integer() ? 2 * floor_div(tl, s) + 1 : 0;
    if (lambda.is_integer()) return 2 * floor_div(tl / 2, s) + 1;
    return 2 * floor_div(tl + s, 2 * s);
}

std::int64_t dim_V_oracle(const WeightPair& wp, HalfInt lambda) {
    if (lambda.twice() < 0) return 0;
    return static_cast<std::int64_t>(admissible_twice_P(wp, -lambda, lambda, lambda).size());
}

}  // namespace qwp
