#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "qwp/teardrop.hpp"
#include "support/generators.hpp"

using namespace qwp;

namespace {

// Closed forms of the teardrop representation on copy s.
double a_entry(int l, int s, std::int64_t p, double q) { return std::pow(q, 2.0 * (l * p + s - 1)); }

double bstar_entry(int l, int s, std::int64_t p, double q) {
    double c = std::pow(q, static_cast<double>(l * p + s - 1));
    for (int r = 1; r <= l; ++r) c *= std::sqrt(1.0 - std::pow(q, 2.0 * (l * p + s - r)));
    return c;
}

double alpha_l_entry(int l, int s, std::int64_t p, double q) {
    double c = 1.0;
    for (int r = 0; r < l; ++r) c *= std::sqrt(1.0 - std::pow(q, 2.0 * (p * l + s + r)));
    return c;
}

}  // namespace

TEST_CASE("ket words") {
    const QContext ctx(0.5);
    const KetVector e0{{{0, 0}, 1.0}};
    CHECK(apply_word({SUGen::alpha_star}, e0, ctx).empty());
    const auto a = apply_word({SUGen::alpha}, e0, ctx);
    CHECK(a.at({0, 1}) == doctest::Approx(std::sqrt(1 - 0.25)));
    const auto b = apply_word({SUGen::beta}, {{{3, 2}, 1.0}}, ctx);
    CHECK(b.at({4, 2}) == doctest::Approx(0.25));
    // rightmost acts first: alpha* alpha e_0 = (1 - q^2) e_0
    CHECK(apply_word({SUGen::alpha_star, SUGen::alpha}, e0, ctx).at({0, 0}) == doctest::Approx(0.75));
    CHECK(repeat(SUGen::beta, 3).size() == 3);
    CHECK_THROWS_AS(repeat(SUGen::beta, -1), std::invalid_argument);
}

TEST_CASE("ket representation satisfies the SU_q(2) relations") {
    for (double q : qwp::testing::kQs) {
        const QContext ctx(q);
        using G = SUGen;
        for (std::int64_t n = 0; n < 12; ++n) {
            const KetVector v{{{0, n}, 1.0}};
            auto coef = [&](const SUWord& w, Ket k) {
                const auto r = apply_word(w, v, ctx);
                auto it = r.find(k);
                return it == r.end() ? 0.0 : it->second;
            };
            // alpha alpha* + beta* beta = 1 and alpha* alpha + q^2 beta* beta = 1
            CHECK(coef({G::alpha, G::alpha_star}, {0, n}) + coef({G::beta_star, G::beta}, {0, n}) == doctest::Approx(1.0));
            CHECK(coef({G::alpha_star, G::alpha}, {0, n}) + q * q * coef({G::beta_star, G::beta}, {0, n}) ==
                  doctest::Approx(1.0));
            // beta alpha = q alpha beta; beta beta* = beta* beta
            CHECK(coef({G::beta, G::alpha}, {1, n + 1}) == doctest::Approx(q * coef({G::alpha, G::beta}, {1, n + 1})));
            CHECK(coef({G::beta, G::beta_star}, {0, n}) == doctest::Approx(coef({G::beta_star, G::beta}, {0, n})));
        }
    }
}

TEST_CASE("teardrop representation matches its closed form") {
    const QContext ctx(0.5);
    const double q = ctx.q();
    const auto a = wp_rep(2, 0, 1, WPGen::a, 8, ctx);
    for (std::int64_t p = 0; p < 4; ++p) CHECK(a.entries(p, p) == doctest::Approx(std::pow(q, 4.0 * p)));
    for (int l = 1; l <= 4; ++l)
        for (int s = 1; s <= l; ++s) {
            const std::int64_t N = 12;
            const RMatrix A = wp_rep(l, 0, s, WPGen::a, N, ctx).entries;
            const RMatrix Bs = wp_rep(l, 0, s, WPGen::bstar, N, ctx).entries;
            const RMatrix B = wp_rep(l, 0, s, WPGen::b, N, ctx).entries;
            RMatrix expectA = RMatrix::Zero(N, N), expectBs = RMatrix::Zero(N, N);
            for (std::int64_t p = 0; p < N; ++p) {
                expectA(p, p) = a_entry(l, s, p, q);
                if (p > 0) expectBs(p - 1, p) = bstar_entry(l, s, p, q);
            }
            CHECK((A - expectA).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((Bs - expectBs).cwiseAbs().maxCoeff() < 1e-14);
            CHECK((B - expectBs.transpose()).cwiseAbs().maxCoeff() < 1e-14);
            CHECK(Bs.col(0).cwiseAbs().maxCoeff() == 0.0);
        }
    CHECK_THROWS_AS(wp_rep(2, 0, 3, WPGen::a, 8, ctx), std::invalid_argument);
    CHECK_THROWS_AS(wp_rep(2, 0, 0, WPGen::a, 8, ctx), std::invalid_argument);
    CHECK_THROWS_AS(wp_rep(2, 0, 1, WPGen::a, 1, ctx), std::invalid_argument);
}

TEST_CASE("teardrop representation does not depend on m") {
    const QContext ctx(0.7);
    for (int l = 1; l <= 4; ++l)
        for (int s = 1; s <= l; ++s)
            for (WPGen g : {WPGen::a, WPGen::b, WPGen::bstar}) {
                const RMatrix ref = wp_rep(l, 0, s, g, 20, ctx).entries;
                for (std::int64_t m : {-2, 5}) {
                    const auto op = wp_rep(l, m, s, g, 20, ctx);
                    CHECK(op.entries == ref);
                    CHECK(op.basis.front().z == m);
                }
            }
}

TEST_CASE("teardrop relations on the interior") {
    for (double q : qwp::testing::kQs) {
        const QContext ctx(q);
        for (int l = 1; l <= 4; ++l) {
            const auto r = teardrop_relations(l, 64, ctx);
            CAPTURE(q);
            CAPTURE(l);
            CHECK(r.max() < ctx.tol());
        }
    }
}

TEST_CASE("lens space representation") {
    const QContext ctx(0.5);
    const double q = ctx.q();
    const auto beta = lens_rep(1, 1, LensGen::beta, 3, 6, ctx);
    for (std::size_t c = 0; c < beta.basis.size(); ++c) {
        const auto& src = beta.basis[c];
        for (std::size_t r = 0; r < beta.basis.size(); ++r) {
            const auto& dst = beta.basis[r];
            const double x = beta.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (dst.z == src.z + 1 && dst.p == src.p)
                CHECK(x == doctest::Approx(std::pow(q, static_cast<double>(src.p))));
            else
                CHECK(x == 0.0);
        }
    }
    for (int l = 1; l <= 3; ++l)
        for (int s = 1; s <= l; ++s) {
            const auto al = lens_rep(l, s, LensGen::alpha_l, 3, 8, ctx);
            for (std::size_t c = 0; c < al.basis.size(); ++c)
                for (std::size_t r = 0; r < al.basis.size(); ++r) {
                    const auto& src = al.basis[c];
                    const auto& dst = al.basis[r];
                    const double x = al.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                    if (dst.z == src.z && dst.p == src.p + 1)
                        CHECK(x == doctest::Approx(alpha_l_entry(l, s, src.p, q)));
                    else
                        CHECK(x == 0.0);
                }
        }
    CHECK_THROWS_AS(lens_rep(2, 1, LensGen::beta, 2, 8, ctx), std::invalid_argument);
}

TEST_CASE("lens generators move between the X_m blocks") {
    const QContext ctx(0.5);
    const int l = 3;
    for (int s = 1; s <= l; ++s)
        for (auto [gen, shift] : std::vector<std::pair<LensGen, int>>{{LensGen::beta, 1}, {LensGen::alpha_l, -1}}) {
            const auto op = lens_rep(l, s, gen, 4, 6, ctx);
            for (std::size_t c = 0; c < op.basis.size(); ++c)
                for (std::size_t r = 0; r < op.basis.size(); ++r) {
                    if (op.entries(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) == 0.0) continue;
                    // X_m is spanned by e_{p+m} (x) e^s_p
                    CHECK(op.basis[r].z - op.basis[r].p == op.basis[c].z - op.basis[c].p + shift);
                }
        }
}

TEST_CASE("lens commutation on the interior") {
    for (double q : qwp::testing::kQs) {
        const QContext ctx(q);
        for (int l = 1; l <= 4; ++l) CHECK(lens_commutation_residual(l, 4, 16, ctx) < ctx.tol());
    }
}

TEST_CASE("block structure of the mixed-degree components") {
    const QContext ctx(0.5);
    for (auto [l, j, n] : std::vector<std::tuple<int, int, int>>{{2, 1, 0}, {2, 1, 1}, {3, 1, -1}, {3, 2, 0}, {4, 3, 2}, {3, 1, -2}}) {
        const auto r = block_structure_evidence(l, n, j, 64, ctx);
        CAPTURE(l);
        CAPTURE(j);
        CAPTURE(n);
        CHECK(r.passed());
        CHECK(r.off_pattern == 0.0);
        for (const auto& b : r.blocks) {
            CHECK(b.target == (b.source <= j ? b.source + l - j : b.source - j));
            CHECK(b.shift == (b.source <= j ? n + 1 : n));
        }
    }
    // l = 2, j = 1, n = 0: copy 1 -> 2 as S + compact, copy 2 -> 1 as 1 + compact
    const auto r = block_structure_evidence(2, 0, 1, 64, ctx);
    for (const auto& b : r.blocks)
        if (b.sample == "1") {
            CHECK(b.coefficient == doctest::Approx(1.0));
            CHECK(b.shift == (b.source == 1 ? 1 : 0));
        }
    // j = l collapses to the pure backward shift S^{n+1} on every copy
    const auto full = block_structure_evidence(3, 0, 3, 64, ctx);
    CHECK(full.passed());
    for (const auto& b : full.blocks) {
        CHECK(b.target == b.source);
        CHECK(b.shift == 1);
    }
    CHECK_THROWS_AS(block_structure_evidence(2, 0, 0, 64, ctx), std::invalid_argument);
    CHECK_THROWS_AS(block_structure_evidence(2, 0, 3, 64, ctx), std::invalid_argument);
}

TEST_CASE("pure shift samples carry a unit coefficient and compact ones vanish") {
    const QContext ctx(0.5);
    const auto r = block_structure_evidence(2, 1, 1, 64, ctx);
    for (const auto& b : r.blocks) {
        if (b.sample == "(alpha*)^2") CHECK(b.coefficient == doctest::Approx(1.0));
        if (b.sample == "beta^1") CHECK(std::abs(b.coefficient) < r.tail_threshold);
    }
}

TEST_CASE("projection classes") {
    CHECK(ktheory_class(1, 0, 0).str() == "I_1 ⊕ P_0");
    CHECK(ktheory_class(2, 0, 0).k0() == std::vector<std::int64_t>{1, 0, 0});
    CHECK(ktheory_class(2, 1, 1).str() == "I_1 ⊕ P_1 ⊕ P_2");
    CHECK(ktheory_class(3, -1, 2).str() == "1 - (P_{-1} ⊕ P_0 ⊕ P_0)");
    CHECK(ktheory_class(3, -2, 0).str() == "1 - (P_{-2} ⊕ P_{-2} ⊕ P_{-2})");
    CHECK(ktheory_class(2, 12, 1).str() == "I_1 ⊕ P_{12} ⊕ P_{13}");
    CHECK_THROWS_AS(ktheory_class(2, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(ktheory_class(0, 0, 0), std::invalid_argument);

    // raising j by one moves one copy from n to n + 1; j = l - 1 then n + 1 continues the chain
    for (int l = 1; l <= 4; ++l)
        for (std::int64_t n = -3; n <= 3; ++n)
            for (int j = 0; j < l; ++j) {
                const auto c = ktheory_class(l, n, j);
                const auto next = j + 1 < l ? ktheory_class(l, n, j + 1) : ktheory_class(l, n + 1, 0);
                const auto a = c.k0(), b = next.k0();
                std::int64_t diff = 0;
                for (std::size_t i = 0; i < a.size(); ++i) diff += b[i] - a[i];
                CHECK(diff == 1);
                CHECK(a[0] == 1);
            }
}

TEST_CASE("projection matrices are orthogonal projections") {
    for (int l = 1; l <= 3; ++l)
        for (std::int64_t n = -2; n <= 2; ++n)
            for (int j = 0; j < l; ++j) {
                const RMatrix p = ktheory_class(l, n, j).matrix(6);
                CHECK(p * p == p);
                CHECK(p.transpose() == p);
            }
    const RMatrix p = ktheory_class(2, 1, 1).matrix(4);
    CHECK(p.rows() == 16);
    CHECK(p.trace() == doctest::Approx(8 + 1 + 2));
    CHECK(ktheory_class(2, -1, 0).matrix(4).trace() == doctest::Approx(8 - 2));
}
