#include "qwp/teardrop.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace qwp {

SUWord repeat(SUGen g, std::int64_t times) {
    if (times < 0) throw std::invalid_argument("repeat: negative count");
    return SUWord(static_cast<std::size_t>(times), g);
}

SUWord operator*(const SUWord& a, const SUWord& b) {
    SUWord out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

namespace {

void apply_letter(SUGen g, const Ket& k, double c, KetVector& out, const QContext& ctx) {
    const double q = ctx.q();
    switch (g) {
        case SUGen::alpha:
            out[{k.z, k.n + 1}] += c * std::sqrt(1.0 - std::pow(q, 2.0 * static_cast<double>(k.n + 1)));
            break;
        case SUGen::alpha_star:
            // kills e_0
            if (k.n > 0) out[{k.z, k.n - 1}] += c * std::sqrt(1.0 - std::pow(q, 2.0 * static_cast<double>(k.n)));
            break;
        case SUGen::beta:
            out[{k.z + 1, k.n}] += c * std::pow(q, static_cast<double>(k.n));
            break;
        case SUGen::beta_star:
            out[{k.z - 1, k.n}] += c * std::pow(q, static_cast<double>(k.n));
            break;
    }
}

void check_copy(int l, int s) {
    if (l < 1) throw std::invalid_argument("teardrop: l must be positive");
    if (s < 1 || s > l) throw std::invalid_argument("teardrop: copy index out of range");
}

std::int64_t ambient_n(int l, int s, std::int64_t p) { return l * p + s - 1; }

double max_entry(const RMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

}  // namespace

KetVector apply_word(const SUWord& w, const KetVector& v, const QContext& ctx) {
    KetVector cur = v;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        KetVector next;
        for (const auto& [k, c] : cur) apply_letter(*it, k, c, next, ctx);
        cur = std::move(next);
    }
    return cur;
}

SeqOperator wp_rep(int l, std::int64_t m, int s, WPGen gen, std::int64_t N, const QContext& ctx) {
    check_copy(l, s);
    if (N < 2) throw std::invalid_argument("wp_rep: N must be at least 2");
    const SUWord a{SUGen::beta, SUGen::beta_star};
    const SUWord b = SUWord{SUGen::beta} * repeat(SUGen::alpha, l);
    const SUWord bstar = repeat(SUGen::alpha_star, l) * SUWord{SUGen::beta_star};
    const SUWord& w = gen == WPGen::a ? a : gen == WPGen::b ? b : bstar;

    SeqOperator op;
    for (std::int64_t p = 0; p < N; ++p) op.basis.push_back({m + p, s, p});
    op.entries = RMatrix::Zero(N, N);
    for (std::int64_t p = 0; p < N; ++p) {
        const KetVector image = apply_word(w, {{{m + p, ambient_n(l, s, p)}, 1.0}}, ctx);
        for (const auto& [k, c] : image) {
            const std::int64_t pp = k.n / l;
            // the teardrop algebra preserves both the copy and X_m
            if (k.n % l != s - 1 || k.z - pp != m) throw std::logic_error("wp_rep: image left the copy");
            if (pp < N) op.entries(pp, p) += c;
        }
    }
    return op;
}

WPRelationReport teardrop_relations(int l, std::int64_t N, const QContext& ctx) {
    if (N < 4) throw std::invalid_argument("teardrop_relations: N must be at least 4");
    const double q = ctx.q();
    const std::int64_t in = N - 2;
    WPRelationReport r;
    for (int s = 1; s <= l; ++s) {
        const RMatrix A = wp_rep(l, 0, s, WPGen::a, N, ctx).entries;
        const RMatrix B = wp_rep(l, 0, s, WPGen::b, N, ctx).entries;
        const RMatrix Bs = wp_rep(l, 0, s, WPGen::bstar, N, ctx).entries;
        const RMatrix I = RMatrix::Identity(N, N);
        RMatrix lower = A * std::pow(q, 2.0 * l), upper = A;
        for (int i = 0; i < l; ++i) lower = lower * (I - std::pow(q, 2.0 * (i + 1)) * A);
        for (int i = 1; i <= l; ++i) upper = upper * (I - std::pow(q, -2.0 * (i - 1)) * A);
        r.a_bstar_commutation = std::max(r.a_bstar_commutation,
                                         max_entry((A * Bs - std::pow(q, -2.0 * l) * Bs * A).topLeftCorner(in, in)));
        r.bstar_b = std::max(r.bstar_b, max_entry((Bs * B - lower).topLeftCorner(in, in)));
        r.b_bstar = std::max(r.b_bstar, max_entry((B * Bs - upper).topLeftCorner(in, in)));
    }
    return r;
}

SeqOperator lens_rep(int l, int s, LensGen gen, std::int64_t N_z, std::int64_t N, const QContext& ctx) {
    check_copy(l, s);
    if (N_z < 3) throw std::invalid_argument("lens_rep: window too small");
    if (N < 2) throw std::invalid_argument("lens_rep: N must be at least 2");
    const SUWord w = gen == LensGen::alpha_l ? repeat(SUGen::alpha, l) : SUWord{SUGen::beta};
    SeqOperator op;
    for (std::int64_t z = -N_z; z <= N_z; ++z)
        for (std::int64_t p = 0; p < N; ++p) op.basis.push_back({z, s, p});
    const std::int64_t dim = static_cast<std::int64_t>(op.basis.size());
    auto position = [&](std::int64_t z, std::int64_t p) { return (z + N_z) * N + p; };
    op.entries = RMatrix::Zero(dim, dim);
    for (const auto& src : op.basis) {
        const KetVector image = apply_word(w, {{{src.z, ambient_n(l, s, src.p)}, 1.0}}, ctx);
        for (const auto& [k, c] : image) {
            const std::int64_t pp = k.n / l;
            if (std::abs(k.z) > N_z || pp >= N) continue;
            op.entries(position(k.z, pp), position(src.z, src.p)) += c;
        }
    }
    return op;
}

double lens_commutation_residual(int l, std::int64_t N_z, std::int64_t N, const QContext& ctx) {
    double worst = 0.0;
    for (int s = 1; s <= l; ++s) {
        const SeqOperator al = lens_rep(l, s, LensGen::alpha_l, N_z, N, ctx);
        const RMatrix be = lens_rep(l, s, LensGen::beta, N_z, N, ctx).entries;
        const RMatrix diff = be * al.entries - std::pow(ctx.q(), l) * al.entries * be;
        // both orders need one step in z and one in p of headroom
        for (std::size_t c = 0; c < al.basis.size(); ++c) {
            const auto& src = al.basis[c];
            if (src.z + 1 > N_z || src.p + 1 >= N) continue;
            worst = std::max(worst, diff.col(static_cast<Eigen::Index>(c)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

BlockStructureReport block_structure_evidence(int l, std::int64_t n, int j, std::int64_t N, const QContext& ctx) {
    // j = l is the consistency case (alpha*)^l L[n], which sits in L[n+1]
    if (l < 1 || j < 1 || j > l) throw std::invalid_argument("block_structure_evidence: need 1 <= j <= l");
    if (N < 16) throw std::invalid_argument("block_structure_evidence: N must be at least 16");
    const std::int64_t an = std::abs(n);

    std::vector<std::pair<std::string, SUWord>> samples;
    const SUWord a{SUGen::beta, SUGen::beta_star};
    if (n > 0) {
        samples.push_back({"(alpha*)^" + std::to_string(n * l), repeat(SUGen::alpha_star, n * l)});
        samples.push_back({"beta^" + std::to_string(n), repeat(SUGen::beta, n)});
        samples.push_back({"(alpha*)^" + std::to_string(n * l) + " a", repeat(SUGen::alpha_star, n * l) * a});
    } else if (n < 0) {
        samples.push_back({"alpha^" + std::to_string(an * l), repeat(SUGen::alpha, an * l)});
        samples.push_back({"(beta*)^" + std::to_string(an), repeat(SUGen::beta_star, an)});
    } else {
        samples.push_back({"1", {}});
        samples.push_back({"a", a});
        samples.push_back({"b", SUWord{SUGen::beta} * repeat(SUGen::alpha, l)});
        samples.push_back({"b*", repeat(SUGen::alpha_star, l) * SUWord{SUGen::beta_star}});
    }

    BlockStructureReport r;
    r.l = l;
    r.n = n;
    r.j = j;
    r.N = N;
    r.tail_threshold = std::pow(ctx.q(), static_cast<double>(N) / 4.0);
    r.off_pattern_threshold = 10.0 * ctx.tol();
    const std::int64_t margin = an + 2;
    const auto at = [N](int s, std::int64_t p) { return static_cast<Eigen::Index>((s - 1) * N + p); };

    for (const auto& [label, y] : samples) {
        const SUWord x = repeat(SUGen::alpha_star, j) * y;
        RMatrix op = RMatrix::Zero(l * N, l * N);
        for (int s = 1; s <= l; ++s)
            for (std::int64_t p = 0; p < N; ++p)
                for (const auto& [k, c] : apply_word(x, {{{p, ambient_n(l, s, p)}, 1.0}}, ctx)) {
                    const int ts = static_cast<int>(k.n % l) + 1;
                    const std::int64_t tp = k.n / l;
                    if (tp < N) op(at(ts, tp), at(s, p)) += c;
                }
        for (int s = 1; s <= l; ++s) {
            const int target = s <= j ? s + l - j : s - j;
            const std::int64_t d = s <= j ? n + 1 : n;
            for (int t = 1; t <= l; ++t)
                if (t != target) r.off_pattern = std::max(r.off_pattern, max_entry(op.block(at(t, 0), at(s, 0), N, N)));
            const auto B = op.block(at(target, 0), at(s, 0), N, N);
            const std::int64_t ref = N - margin - 1;
            const double c = B(ref - d, ref);
            double defect = 0.0;
            for (std::int64_t p = N / 2; p < N - margin; ++p)
                for (std::int64_t pp = 0; pp < N; ++pp) defect = std::max(defect, std::abs(B(pp, p) - (pp == p - d ? c : 0.0)));
            r.blocks.push_back({label, s, target, d, c, defect});
            r.max_tail_defect = std::max(r.max_tail_defect, defect);
        }
    }
    return r;
}

namespace {

std::string projection_token(std::int64_t index) {
    const std::string digits = std::to_string(index);
    return digits.size() == 1 ? "P_" + digits : "P_{" + digits + "}";
}

}  // namespace

std::string ProjectionClass::str() const {
    std::string sum;
    for (std::size_t i = 0; i < indices.size(); ++i) sum += (i ? " ⊕ " : "") + projection_token(indices[i]);
    return cofinite ? "1 - (" + sum + ")" : "I_1 ⊕ " + sum;
}

std::vector<std::int64_t> ProjectionClass::k0() const {
    std::vector<std::int64_t> out{1};
    out.insert(out.end(), indices.begin(), indices.end());
    return out;
}

RMatrix ProjectionClass::matrix(std::int64_t N) const {
    const std::int64_t dim = l * N;
    RMatrix p = RMatrix::Zero(dim, dim);
    for (int s = 0; s < l; ++s)
        for (std::int64_t i = 0; i < std::min<std::int64_t>(std::abs(indices[static_cast<std::size_t>(s)]), N); ++i)
            p(s * N + i, s * N + i) = 1.0;
    if (cofinite) return RMatrix::Identity(dim, dim) - p;
    RMatrix out = RMatrix::Zero(2 * dim, 2 * dim);
    out.topLeftCorner(dim, dim).setIdentity();
    out.bottomRightCorner(dim, dim) = p;
    return out;
}

ProjectionClass ktheory_class(int l, std::int64_t n, int j) {
    if (l < 1) throw std::invalid_argument("ktheory_class: l must be positive");
    if (j < 0 || j > l - 1) throw std::invalid_argument("ktheory_class: need 0 <= j <= l - 1");
    ProjectionClass c{l, n, j, n >= 0 ? 1 : 0, n < 0, {}};
    for (int s = 1; s <= l; ++s) c.indices.push_back(s <= l - j ? n : n + 1);
    return c;
}

}  // namespace qwp
