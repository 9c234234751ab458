#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qwp/cg.hpp"
#include "qwp/dirac.hpp"
#include "support/generators.hpp"

using namespace qwp;
using qwp::testing::half_steps;
using qwp::testing::kQs;
using qwp::testing::max_abs;

namespace {

const HalfInt kHalf = HalfInt::half();
const HalfInt kOne = HalfInt::from_int(1);

const std::vector<WeightPair> kPairs{{1, 1}, {1, 2}, {2, 1}, {2, 3}, {1, 4}, {3, 4}};

// A basis spinor is coinvariant when e+ carries degree k and e- carries degree -l.
bool coinvariant_by_degree(const WeightPair& wp, const Spinor& v) {
    for (const auto& [t, c] : v.plus.terms())
        if (degree(wp, t) != wp.k()) return false;
    for (const auto& [t, c] : v.minus.terms())
        if (degree(wp, t) != -wp.l()) return false;
    return true;
}

double increment(const WeightPair& wp, std::int64_t N, Triple t, double exponent) {
    return summability_partial_sum(wp, 2 * N, t, exponent) - summability_partial_sum(wp, N, t, exponent);
}

}  // namespace

TEST_CASE("spinor basis labels") {
    CHECK(SpinorBasisIndex{HalfInt{}, kHalf, HalfInt{}, Arrow::up}.valid());
    CHECK_FALSE(SpinorBasisIndex{HalfInt{}, HalfInt{}, HalfInt{}, Arrow::down}.valid());
    CHECK_FALSE(SpinorBasisIndex{kHalf, kHalf, kHalf, Arrow::down}.valid());
    CHECK(SpinorBasisIndex{kHalf, HalfInt{}, kHalf, Arrow::down}.valid());
    CHECK_THROWS_AS(spinor_vector({kHalf, kOne, kHalf, Arrow::down}, QContext()), std::invalid_argument);
    // (2j+1)(2j+2) up labels and 2j(2j+1) down labels per j
    for (HalfInt jmax : half_steps(HalfInt{}, HalfInt::from_int(3))) {
        std::int64_t expect = 0;
        for (HalfInt j : half_steps(HalfInt{}, jmax)) expect += (j.twice() + 1) * (j.twice() + 2) + j.twice() * (j.twice() + 1);
        CHECK(static_cast<std::int64_t>(spinor_basis(jmax).size()) == expect);
        CHECK(ambient_dirac_spectrum(jmax).total() == expect);
    }
}

TEST_CASE("spinor vectors are orthonormal") {
    for (double q : {0.5, 0.8}) {
        const QContext ctx(q);
        const auto basis = spinor_basis(HalfInt::from_twice(3));
        std::vector<Spinor> vs;
        for (const auto& idx : basis) vs.push_back(spinor_vector(idx, ctx));
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = 0; b < vs.size(); ++b) {
                const Complex ip = spinor_inner(vs[a], vs[b], ctx);
                CHECK(std::abs(ip - Complex(a == b ? 1.0 : 0.0)) < ctx.tol());
            }
    }
    const QContext ctx(0.5);
    for (const auto& idx : spinor_basis(HalfInt::from_int(2)))
        CHECK(std::abs(spinor_inner(spinor_vector(idx, ctx), spinor_vector(idx, ctx), ctx) - 1.0) < ctx.tol());
}

TEST_CASE("boundary coefficient empties a leg") {
    const QContext ctx(0.5);
    const Spinor v = spinor_vector({kHalf, HalfInt{}, kHalf, Arrow::down}, ctx);
    CHECK(v.minus.empty());
    CHECK(v.plus.size() == 1);
    CHECK(std::abs(v.plus.coeff({HalfInt{}, HalfInt{}, HalfInt{}}) - 1.0) < 1e-15);
}

TEST_CASE("ambient Dirac spectrum") {
    const auto s0 = ambient_dirac_spectrum(HalfInt{});
    REQUIRE(s0.rows().size() == 1);
    CHECK(s0.multiplicity(1.5) == 2);
    CHECK(s0.multiplicity(-0.5) == 0);
    const auto s1 = ambient_dirac_spectrum(kHalf);
    CHECK(s1.multiplicity(2.5) == 6);
    CHECK(s1.multiplicity(-1.5) == 2);
    for (std::size_t i = 1; i < s1.rows().size(); ++i) CHECK(s1.rows()[i - 1].eigenvalue < s1.rows()[i].eigenvalue);
}

TEST_CASE("q^{-eth} acts diagonally on the spinor basis") {
    for (double q : kQs) {
        const QContext ctx(q);
        const auto r = q_dirac_check(HalfInt::from_int(2), ctx);
        CAPTURE(q);
        CHECK(r.vectors == spinor_basis(HalfInt::from_int(2)).size());
        CHECK(r.max_residual < 100 * ctx.tol());
    }
    const QContext ctx(0.5);
    // j = 0 up: eigenvalue q^{-3/2}
    const Spinor v = spinor_vector({HalfInt{}, kHalf, HalfInt{}, Arrow::up}, ctx);
    const Spinor w = q_dirac_apply(v, ctx);
    const double ev = std::pow(0.5, -1.5);
    CHECK(spinor_distance(w, {Complex(ev) * v.plus, Complex(ev) * v.minus}) < ctx.tol());
    // j = 1/2 down: eigenvalue q^{3/2}
    const Spinor d = spinor_vector({kHalf, HalfInt{}, -kHalf, Arrow::down}, ctx);
    const Spinor dw = q_dirac_apply(d, ctx);
    CHECK(spinor_distance(dw, {Complex(std::pow(0.5, 1.5)) * d.plus, Complex(std::pow(0.5, 1.5)) * d.minus}) < ctx.tol());
}

TEST_CASE("the opposite sign on the fe term breaks the identity") {
    const QContext ctx(0.5);
    CHECK(q_dirac_check(kOne, ctx, -1.0).max_residual > 1e-3);
    CHECK_THROWS_AS(q_dirac_check(HalfInt::from_int(kQDiracMaxJ) + kHalf, ctx), std::invalid_argument);
}

TEST_CASE("coinvariant spinors are exactly the degree-filtered basis vectors") {
    const QContext ctx(0.5);
    const HalfInt jmax = HalfInt::from_twice(5);
    for (const auto& wp : kPairs) {
        std::set<SpinorBasisIndex> brute;
        for (const auto& idx : spinor_basis(jmax))
            if (coinvariant_by_degree(wp, spinor_vector(idx, ctx))) brute.insert(idx);
        std::set<SpinorBasisIndex> from_basis;
        for (const auto& c : coinvariant_spinor_basis(wp, jmax)) from_basis.insert(spinor_index(wp, c));
        CAPTURE(wp.k());
        CAPTURE(wp.l());
        CHECK(brute == from_basis);
    }
}

TEST_CASE("coinvariant spinors are Dirac eigenvectors") {
    const QContext ctx(0.5);
    for (const auto& wp : std::vector<WeightPair>{{1, 1}, {1, 2}, {2, 3}}) {
        const auto r = coinvariant_dirac_check(wp, HalfInt::from_int(3), ctx);
        CAPTURE(wp.k());
        CAPTURE(wp.l());
        CHECK(r.coinvariant);
        CHECK(r.vectors == coinvariant_spinor_basis(wp, HalfInt::from_int(3)).size());
        CHECK(r.max_residual < 100 * ctx.tol());
        CHECK(r.max_eigenvalue_error < 1e-8);
    }
}

TEST_CASE("odd triple spectrum pairs signs") {
    for (const auto& wp : kPairs) {
        const auto s = odd_triple_spectrum(wp, HalfInt::from_int(20));
        for (const auto& r : s.rows()) CHECK(s.multiplicity(-r.eigenvalue) == r.multiplicity);
    }
    // (1,1): +-2(j+1) with multiplicity 2j+2, matching the basis count
    const WeightPair w11(1, 1);
    const auto s = odd_triple_spectrum(w11, HalfInt::from_int(6));
    const auto basis = coinvariant_spinor_basis(w11, HalfInt::from_int(7));
    for (int j = 0; j <= 6; ++j) {
        const double ev = 2.0 * (j + 1);
        std::int64_t up = 0, down = 0;
        for (const auto& c : basis) {
            if (c.arrow == Arrow::up && c.j == HalfInt::from_int(j)) ++up;
            if (c.arrow == Arrow::down && c.j == HalfInt::from_int(j + 1)) ++down;
        }
        CHECK(s.multiplicity(ev) == 2 * j + 2);
        CHECK(s.multiplicity(ev) == up);
        CHECK(s.multiplicity(-ev) == down);
    }
    CHECK(s.multiplicity(3.0) == 0);  // no half-integer j for even k + l
    // (1,2): rows are omitted where nothing is admissible
    const auto s12 = odd_triple_spectrum(WeightPair(1, 2), HalfInt::from_int(3));
    for (const auto& r : s12.rows()) CHECK(r.multiplicity > 0);
    CHECK(s12.multiplicity(2.0) == dim_V_up(WeightPair(1, 2), HalfInt{}));
}

TEST_CASE("even triple spectrum") {
    const auto s = even_triple_spectrum(WeightPair(1, 1), HalfInt::from_int(20));
    for (int lambda = 0; lambda <= 20; ++lambda) {
        CHECK(s.multiplicity(lambda + 1.0) == 2 * lambda + 1);
        CHECK(s.multiplicity(-(lambda + 1.0)) == 2 * lambda + 1);
    }
    for (const auto& wp : kPairs) {
        const auto t = even_triple_spectrum(wp, HalfInt{});
        CHECK(t.multiplicity(1.0) == 1);
        CHECK(t.multiplicity(-1.0) == 1);
    }
    const WeightPair w23(2, 3);
    const auto t = even_triple_spectrum(w23, HalfInt::from_int(12));
    for (HalfInt lambda : half_steps(HalfInt{}, HalfInt::from_int(12)))
        CHECK(t.multiplicity(lambda.value() + 1) == dim_V_oracle(w23, lambda));
    // nonzero degree: counted from the homogeneous basis
    const auto d1 = even_triple_spectrum(w23, HalfInt::from_int(4), 1);
    CHECK(d1.total() == 2 * static_cast<std::int64_t>(homogeneous_coord_basis(w23, HalfInt::from_int(4), 1).size()));
}

TEST_CASE("spectrum totals match basis enumeration") {
    for (int k = 1; k < 7; ++k)
        for (int l = 1; k + l <= 7; ++l) {
            if (std::gcd(k, l) != 1) continue;
            const WeightPair wp(k, l);
            const HalfInt cap = HalfInt::from_int(20);
            CHECK(even_triple_spectrum(wp, cap).total() == 2 * static_cast<std::int64_t>(coinvariant_coord_basis(wp, cap).size()));
            std::int64_t up = 0;
            for (const auto& c : coinvariant_spinor_basis(wp, cap))
                if (c.arrow == Arrow::up) ++up;
            CHECK(odd_triple_spectrum(wp, cap).total() == 2 * up);
        }
}

TEST_CASE("summability is exactly two") {
    for (const auto& wp : std::vector<WeightPair>{{1, 1}, {1, 2}, {2, 3}})
        for (Triple t : {Triple::odd, Triple::even}) {
            CHECK(summability_partial_sum(wp, 1, t) > 0.0);
            double prev = 0.0;
            for (std::int64_t N : {1, 2, 8, 64, 512}) {
                const double s = summability_partial_sum(wp, N, t);
                CHECK(s >= prev);
                prev = s;
            }
            const double i1 = increment(wp, 512, t, 2.0), i2 = increment(wp, 1024, t, 2.0),
                         i3 = increment(wp, 2048, t, 2.0);
            const double lo = std::min({i1, i2, i3}), hi = std::max({i1, i2, i3});
            CHECK(hi / lo - 1.0 < 0.05);
            // exponent 3: increments halve, so the series converges
            CHECK(increment(wp, 1024, t, 3.0) / increment(wp, 512, t, 3.0) <= 0.6);
            CHECK(increment(wp, 2048, t, 3.0) / increment(wp, 1024, t, 3.0) <= 0.6);
        }
    CHECK_THROWS_AS(summability_partial_sum(WeightPair(1, 1), 0, Triple::odd), std::invalid_argument);
}

TEST_CASE("sector and dense commutator norms agree") {
    const QContext ctx(0.5);
    const auto g = gens(ctx);
    for (const auto* t : {&g.alpha, &g.beta, &g.alpha_star, &g.beta_star})
        for (HalfInt Lambda : {kOne, HalfInt::from_twice(3), HalfInt::from_int(3)})
            CHECK(std::abs(commutator_norm(*t, Lambda, ctx) - commutator_norm_dense(*t, Lambda, ctx)) < 1e-10);
    // an inhomogeneous element takes the dense route
    const auto mix = g.alpha + g.beta;
    CHECK(std::abs(commutator_norm(mix, HalfInt::from_int(2), ctx) - commutator_norm_dense(mix, HalfInt::from_int(2), ctx)) < 1e-12);
    CHECK(commutator_norm(AlgebraElement::unit(), HalfInt::from_int(4), ctx) == 0.0);
}

TEST_CASE("commutator norms plateau") {
    const QContext ctx(0.5);
    const auto g = gens(ctx);
    double prev = 0.0;
    for (int L : {1, 2, 5, 10, 20}) {
        const double n = commutator_norm(g.alpha, HalfInt::from_int(L), ctx);
        CHECK(n >= prev - 1e-12);
        prev = n;
    }
    CHECK(prev < 1.0);
}

TEST_CASE("commutator entries are plus or minus one half of the multiplication entries") {
    const QContext ctx(0.5);
    const auto g = gens(ctx);
    const HalfInt Lambda = HalfInt::from_int(2);
    const auto rows = qwp::testing::all_indices(Lambda);
    const auto cols = qwp::testing::all_indices(Lambda - kHalf);
    for (const auto* t : {&g.alpha, &g.beta}) {
        const CMatrix pi = gns_matrix(*t, rows, cols, ctx);
        const BasisIndex ti = t->terms().begin()->first;
        const Complex tc = t->terms().begin()->second;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto block = cg_block(kHalf, cols[c].lambda, ctx);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const Complex x = pi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
                const double shift = rows[r].lambda.value() - cols[c].lambda.value();
                if (x == Complex(0.0)) continue;
                CHECK(std::abs(shift) == 0.5);
                // independent assembly: coefficient times two CG coefficients, GNS-rescaled
                const double cc = block->coeff(rows[r].lambda, ti.m, cols[c].m) * block->coeff(rows[r].lambda, ti.n, cols[c].n);
                const Complex expect = tc * cc * gns_scale(cols[c], ctx) / gns_scale(rows[r], ctx);
                CHECK(std::abs(shift * x - shift * expect) < 1e-12);
            }
        }
    }
}

TEST_CASE("chirality of the even triple") {
    const QContext ctx(0.5);
    for (const auto& wp : kPairs) {
        const auto r = chirality_checks(wp, HalfInt::from_int(5), ctx);
        CAPTURE(wp.k());
        CAPTURE(wp.l());
        CHECK(r.omega_squared == 0.0);
        CHECK(r.omega_selfadjoint == 0.0);
        CHECK(r.anticommutator == 0.0);
        CHECK(r.commutator_a < 1e-12);
        CHECK(r.commutator_b < 1e-12);
    }
    const auto d = even_dirac(WeightPair(1, 1), kOne);
    CHECK(max_abs(d.entries - d.entries.adjoint()) == 0.0);
    CHECK(d.entries.rows() == static_cast<Eigen::Index>(d.basis.size()));
    // D'^2 = (lambda + 1)^2 on each copy
    const CMatrix d2 = d.entries * d.entries;
    for (std::size_t i = 0; i < d.basis.size(); ++i) {
        const double w = d.basis[i].t.lambda.value() + 1;
        CHECK(d2(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) == Complex(w * w));
    }
}

TEST_CASE("the Fredholm module is degenerate") {
    const QContext ctx(0.5);
    for (const auto& wp : kPairs) {
        const auto r = fredholm_degeneracy(wp, HalfInt::from_int(5), ctx);
        CAPTURE(wp.k());
        CAPTURE(wp.l());
        CHECK(r.f_squared == 0.0);
        CHECK(r.f_selfadjoint == 0.0);
        CHECK(r.commutator_a < 1e-12);
        CHECK(r.commutator_b < 1e-12);
        CHECK(r.commutator_bstar < 1e-12);
    }
    // flipping the back-swap sign squares to -1 instead
    const auto anti = fredholm_degeneracy(WeightPair(1, 1), kOne, ctx, SwapConvention::antisymmetric);
    CHECK(anti.f_squared == doctest::Approx(2.0));
    const CMatrix f = even_fredholm(WeightPair(1, 1), kOne, 0, SwapConvention::antisymmetric).entries;
    CHECK(max_abs(f * f + CMatrix::Identity(f.rows(), f.cols())) == 0.0);
}

TEST_CASE("nonzero degree even basis") {
    const QContext ctx(0.5);
    const WeightPair wp(1, 2);
    const auto b = even_basis(wp, HalfInt::from_int(3), 2);
    REQUIRE(!b.empty());
    for (const auto& e : b) CHECK(degree(wp, e.t) == 2);
    const auto a = wp_gens(wp, ctx).a;
    const auto pa = even_representation(a, wp, HalfInt::from_int(3), ctx, 2);
    const auto w = even_chirality(wp, HalfInt::from_int(3), 2);
    CHECK(max_abs(pa.entries * w.entries - w.entries * pa.entries) == 0.0);
}

TEST_CASE("spectrum table serialization") {
    SpectrumTable t;
    t.add(2.0, 3);
    t.add(-1.5, 1);
    t.add(2.0, 1);
    t.add(0.1, 0);
    CHECK(t.rows().size() == 2);
    CHECK(t.multiplicity(2.0) == 4);
    CHECK_THROWS_AS(t.add(1.0, -1), std::invalid_argument);
    std::ostringstream os;
    t.write_csv(os);
    CHECK(os.str() == "eigenvalue,multiplicity\n-1.5,1\n2,4\n");
    CHECK(t.to_json() == "{\"rows\":[{\"eigenvalue\":-1.5,\"multiplicity\":1},{\"eigenvalue\":2,\"multiplicity\":4}]}");
    SpectrumTable r;
    r.add(0.1, 1);
    std::ostringstream rs;
    r.write_csv(rs);
    CHECK(std::stod(rs.str().substr(rs.str().find('\n') + 1)) == 0.1);
}
