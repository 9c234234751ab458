#include "qwp/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qwp/cg.hpp"

namespace qwp {

namespace {

const HalfInt kHalf = HalfInt::half();

std::vector<HalfInt> half_steps_to(HalfInt max) {
    std::vector<HalfInt> out;
    for (std::int64_t t = 0; t <= max.twice(); ++t) out.push_back(HalfInt::from_twice(t));
    return out;
}

std::vector<HalfInt> weights_of(HalfInt lambda) {
    std::vector<HalfInt> out;
    for (std::int64_t t = -lambda.twice(); t <= lambda.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
    return out;
}

// Adds c * t^lambda_{m,n} when the index exists; C or S vanish exactly where it does not.
void add_term(AlgebraElement::Terms& terms, HalfInt lambda, HalfInt m, HalfInt n, double c) {
    const BasisIndex idx{lambda, m, n};
    if (idx.valid() && c != 0.0) terms[idx] += c;
}

double max_entry(const CMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

bool SpinorBasisIndex::valid() const {
    if (j.twice() < 0 || !valid_weight(j, mu)) return false;
    if (arrow == Arrow::up) return valid_weight(j + kHalf, m);
    return j.twice() >= 1 && valid_weight(j - kHalf, m);
}

std::string SpinorBasisIndex::str() const {
    return "|" + j.str() + " " + m.str() + " " + mu.str() + (arrow == Arrow::up ? " up>" : " down>");
}

Spinor spinor_vector(const SpinorBasisIndex& idx, const QContext& ctx) {
    if (!idx.valid()) throw std::invalid_argument("spinor_vector: invalid index " + idx.str());
    AlgebraElement::Terms plus, minus;
    if (idx.arrow == Arrow::down) {
        const HalfInt jm = idx.j - kHalf;
        const double scale = ctx.qpow(idx.m.value()) * std::sqrt(q_int(jm.twice() + 1, ctx));
        const auto [c, s] = cg_coeff_updown(idx.j, idx.mu, ctx);
        add_term(minus, jm, idx.m, idx.mu + kHalf, scale * c);
        add_term(plus, jm, idx.m, idx.mu - kHalf, scale * s);
    } else {
        const HalfInt jp = idx.j + kHalf;
        const double scale = ctx.qpow(idx.m.value()) * std::sqrt(q_int(jp.twice() + 1, ctx));
        const auto [c, s] = cg_coeff_updown(idx.j + HalfInt::from_int(1), idx.mu, ctx);
        add_term(minus, jp, idx.m, idx.mu + kHalf, -scale * s);
        add_term(plus, jp, idx.m, idx.mu - kHalf, scale * c);
    }
    return {AlgebraElement(std::move(plus)), AlgebraElement(std::move(minus))};
}

Complex spinor_inner(const Spinor& a, const Spinor& b, const QContext& ctx) {
    return inner(a.plus, b.plus, ctx) + inner(a.minus, b.minus, ctx);
}

double spinor_distance(const Spinor& a, const Spinor& b) {
    return std::max(distance(a.plus, b.plus), distance(a.minus, b.minus));
}

std::vector<SpinorBasisIndex> spinor_basis(HalfInt j_max) {
    std::vector<SpinorBasisIndex> out;
    for (HalfInt j : half_steps_to(j_max))
        for (Arrow arrow : {Arrow::up, Arrow::down}) {
            if (arrow == Arrow::down && j.twice() == 0) continue;
            const HalfInt jm = arrow == Arrow::up ? j + kHalf : j - kHalf;
            for (HalfInt m : weights_of(jm))
                for (HalfInt mu : weights_of(j)) out.push_back({j, m, mu, arrow});
        }
    return out;
}

SpinorBasisIndex spinor_index(const WeightPair& wp, const CoinvariantSpinorIndex& c) {
    return {c.j, c.m(wp), c.mu(wp), c.arrow};
}

void SpectrumTable::add(double eigenvalue, std::int64_t multiplicity) {
    if (multiplicity < 0) throw std::invalid_argument("SpectrumTable: negative multiplicity");
    if (multiplicity == 0) return;
    auto it = std::lower_bound(rows_.begin(), rows_.end(), eigenvalue,
                               [](const SpectrumRow& r, double ev) { return r.eigenvalue < ev; });
    if (it != rows_.end() && it->eigenvalue == eigenvalue)
        it->multiplicity += multiplicity;
    else
        rows_.insert(it, SpectrumRow{eigenvalue, multiplicity});
}

std::int64_t SpectrumTable::multiplicity(double eigenvalue) const {
    for (const auto& r : rows_)
        if (r.eigenvalue == eigenvalue) return r.multiplicity;
    return 0;
}

std::int64_t SpectrumTable::total() const {
    std::int64_t n = 0;
    for (const auto& r : rows_) n += r.multiplicity;
    return n;
}

void SpectrumTable::write_csv(std::ostream& os) const {
    os << "eigenvalue,multiplicity\n";
    for (const auto& r : rows_) os << fmt_double(r.eigenvalue) << ',' << r.multiplicity << '\n';
}

std::string SpectrumTable::to_json() const {
    std::string out = "{\"rows\":[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (i) out += ',';
        out += "{\"eigenvalue\":" + fmt_double(rows_[i].eigenvalue) +
               ",\"multiplicity\":" + std::to_string(rows_[i].multiplicity) + "}";
    }
    return out + "]}";
}

SpectrumTable ambient_dirac_spectrum(HalfInt j_max) {
    if (j_max.twice() < 0) throw std::invalid_argument("ambient_dirac_spectrum: negative j_max");
    SpectrumTable t;
    for (HalfInt j : half_steps_to(j_max)) {
        const std::int64_t tj = j.twice();
        t.add(j.value() * 2 + 1.5, (tj + 1) * (tj + 2));
        t.add(-(j.value() * 2 + 0.5), tj * (tj + 1));
    }
    return t;
}

Spinor q_dirac_apply(const Spinor& v, const QContext& ctx, double fe_sign) {
    const double q = ctx.q();
    const double d = q - 1.0 / q;
    const double off = d / std::sqrt(q);
    const double pre = std::pow(q, 1.5);
    using L = Letter;
    const AlgebraElement plus = right_act({L::k, L::k}, v.plus, ctx) +
                                Complex(fe_sign * d * d / q) * right_act({L::f, L::e}, v.plus, ctx) +
                                Complex(off) * right_act({L::f, L::kinv}, v.minus, ctx);
    const AlgebraElement minus =
        Complex(off) * right_act({L::kinv, L::e}, v.plus, ctx) + right_act({L::kinv, L::kinv}, v.minus, ctx);
    return {Complex(pre) * plus, Complex(pre) * minus};
}

QDiracReport q_dirac_check(HalfInt j_max, const QContext& ctx, double fe_sign) {
    if (j_max > HalfInt::from_int(kQDiracMaxJ)) throw std::invalid_argument("q_dirac_check: j_max above guard");
    QDiracReport r;
    for (const auto& idx : spinor_basis(j_max)) {
        const Spinor v = spinor_vector(idx, ctx);
        const double twoj = idx.j.value() * 2;
        const double expected = idx.arrow == Arrow::up ? ctx.qpow(-(twoj + 1.5)) : ctx.qpow(twoj + 0.5);
        const Spinor w = q_dirac_apply(v, ctx, fe_sign);
        r.max_residual = std::max(r.max_residual, spinor_distance(w, {Complex(expected) * v.plus, Complex(expected) * v.minus}));
        ++r.vectors;
    }
    return r;
}

CoinvariantDiracReport coinvariant_dirac_check(const WeightPair& wp, HalfInt j_max, const QContext& ctx) {
    if (j_max > HalfInt::from_int(kQDiracMaxJ)) throw std::invalid_argument("coinvariant_dirac_check: j_max above guard");
    CoinvariantDiracReport r;
    const std::int64_t lift = fixed_lift(wp);
    for (const auto& c : coinvariant_spinor_basis(wp, j_max)) {
        const Spinor v = spinor_vector(spinor_index(wp, c), ctx);
        for (const auto& [t, x] : v.plus.terms())
            if (degree(wp, t) + spinor_degree(wp, lift, SpinorLeg::plus) != 0) r.coinvariant = false;
        for (const auto& [t, x] : v.minus.terms())
            if (degree(wp, t) + spinor_degree(wp, lift, SpinorLeg::minus) != 0) r.coinvariant = false;

        const Spinor w = q_dirac_apply(v, ctx);
        const Complex rayleigh = spinor_inner(v, w, ctx) / spinor_inner(v, v, ctx);
        const Spinor scaled{rayleigh * v.plus, rayleigh * v.minus};
        r.max_residual = std::max(r.max_residual, spinor_distance(w, scaled));
        const double D = -std::log(rayleigh.real()) / std::log(ctx.q());
        const double expected = c.arrow == Arrow::up ? 2.0 * (c.j.value() + 1) : -2.0 * c.j.value();
        r.max_eigenvalue_error = std::max(r.max_eigenvalue_error, std::abs(D + 0.5 - expected));
        ++r.vectors;
    }
    return r;
}

SpectrumTable odd_triple_spectrum(const WeightPair& wp, HalfInt j_max) {
    SpectrumTable t;
    for (HalfInt j : half_steps_to(j_max)) {
        const double ev = 2.0 * (j.value() + 1);
        t.add(ev, dim_V_up(wp, j));
        t.add(-ev, dim_V_down(wp, j + HalfInt::from_int(1)));
    }
    return t;
}

SpectrumTable even_triple_spectrum(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n) {
    std::map<HalfInt, std::int64_t> mult;
    if (degree_n == 0) {
        for (HalfInt lambda : half_steps_to(lambda_max)) mult[lambda] = dim_V(wp, lambda);
    } else {
        for (const auto& idx : homogeneous_coord_basis(wp, lambda_max, degree_n)) ++mult[idx.lambda];
    }
    SpectrumTable t;
    for (const auto& [lambda, n] : mult) {
        t.add(lambda.value() + 1, n);
        t.add(-(lambda.value() + 1), n);
    }
    return t;
}

double summability_partial_sum(const WeightPair& wp, std::int64_t N, Triple triple, double exponent) {
    if (N < 1) throw std::invalid_argument("summability_partial_sum: N must be positive");
    double sigma = 0.0;
    for (std::int64_t t = 0; t <= 2 * N; ++t) {
        const HalfInt x = HalfInt::from_twice(t);
        // both signs carry the same multiplicity
        const std::int64_t mult = triple == Triple::odd ? dim_V_up(wp, x) : dim_V(wp, x);
        if (mult == 0) continue;
        const double ev = triple == Triple::odd ? 2.0 * (x.value() + 1) : x.value() + 1;
        sigma += 2.0 * static_cast<double>(mult) * std::pow(ev, -exponent);
    }
    return sigma;
}

CMatrix gns_matrix(const AlgebraElement& t, const std::vector<BasisIndex>& rows, const std::vector<BasisIndex>& cols,
                   const QContext& ctx) {
    std::map<BasisIndex, Eigen::Index> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i) row_of.emplace(rows[i], static_cast<Eigen::Index>(i));
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const double sc = gns_scale(cols[c], ctx);
        const AlgebraElement image = multiply(t, AlgebraElement::basis(cols[c]), ctx);
        for (const auto& [r, coef] : image.terms()) {
            auto it = row_of.find(r);
            if (it != row_of.end()) out(it->second, static_cast<Eigen::Index>(c)) = coef * sc / gns_scale(r, ctx);
        }
    }
    return out;
}

namespace {

HalfInt top_lambda(const AlgebraElement& t) {
    HalfInt top;
    for (const auto& [idx, c] : t.terms()) top = std::max(top, idx.lambda);
    return top;
}

// Columns whose image under t stays inside lambda <= Lambda.
std::vector<BasisIndex> interior_columns(const AlgebraElement& t, HalfInt Lambda) {
    std::vector<BasisIndex> out;
    const HalfInt cap = Lambda - top_lambda(t);
    for (HalfInt lambda : half_steps_to(cap))
        for (HalfInt m : weights_of(lambda))
            for (HalfInt n : weights_of(lambda)) out.push_back({lambda, m, n});
    return out;
}

bool uniform_shift(const AlgebraElement& t) {
    if (t.empty()) return true;
    const auto& first = t.terms().begin()->first;
    for (const auto& [idx, c] : t.terms())
        if (idx.m != first.m || idx.n != first.n) return false;
    return true;
}

double largest_singular_value(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.cols() <= m.rows()) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m * m.adjoint(), Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace

double commutator_norm(const AlgebraElement& t, HalfInt Lambda, const QContext& ctx) {
    if (!uniform_shift(t)) return commutator_norm_dense(t, Lambda, ctx);
    // t^mu_{ab} t^lambda_{mn} only reaches indices (.., a+m, b+n): one block per column weight pair
    struct Sector {
        std::map<HalfInt, Eigen::Index> rows, cols;
        std::vector<std::tuple<HalfInt, HalfInt, Complex>> entries;
    };
    std::map<std::pair<HalfInt, HalfInt>, Sector> sectors;
    for (const auto& c : interior_columns(t, Lambda)) {
        Sector& s = sectors[{c.m, c.n}];
        s.cols.emplace(c.lambda, 0);
        const double sc = gns_scale(c, ctx);
        const AlgebraElement image = multiply(t, AlgebraElement::basis(c), ctx);
        for (const auto& [r, coef] : image.terms()) {
            s.rows.emplace(r.lambda, 0);
            s.entries.emplace_back(r.lambda, c.lambda, (r.lambda.value() - c.lambda.value()) * coef * sc / gns_scale(r, ctx));
        }
    }
    double norm = 0.0;
    for (auto& [key, s] : sectors) {
        Eigen::Index i = 0;
        for (auto& [l, pos] : s.rows) pos = i++;
        i = 0;
        for (auto& [l, pos] : s.cols) pos = i++;
        CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(s.rows.size()), static_cast<Eigen::Index>(s.cols.size()));
        for (const auto& [rl, cl, x] : s.entries) m(s.rows.at(rl), s.cols.at(cl)) += x;
        norm = std::max(norm, largest_singular_value(m));
    }
    return norm;
}

double commutator_norm_dense(const AlgebraElement& t, HalfInt Lambda, const QContext& ctx) {
    std::vector<BasisIndex> rows;
    for (HalfInt lambda : half_steps_to(Lambda))
        for (HalfInt m : weights_of(lambda))
            for (HalfInt n : weights_of(lambda)) rows.push_back({lambda, m, n});
    const auto cols = interior_columns(t, Lambda);
    CMatrix a = gns_matrix(t, rows, cols, ctx);
    for (Eigen::Index r = 0; r < a.rows(); ++r)
        for (Eigen::Index c = 0; c < a.cols(); ++c)
            a(r, c) *= rows[static_cast<std::size_t>(r)].lambda.value() - cols[static_cast<std::size_t>(c)].lambda.value();
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(0);
}

std::vector<EvenBasisIndex> even_basis(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n) {
    const auto idx = homogeneous_coord_basis(wp, lambda_max, degree_n);
    std::vector<EvenBasisIndex> out;
    for (Arrow copy : {Arrow::up, Arrow::down})
        for (const auto& t : idx) out.push_back({t, copy});
    return out;
}

namespace {

// Swap t^up <-> t^down weighted by weight(lambda); the down-to-up entry carries `back_sign`.
TruncatedOperator copy_swap(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n, double back_sign,
                            double (*weight)(HalfInt)) {
    TruncatedOperator op{even_basis(wp, lambda_max, degree_n), {}};
    const Eigen::Index half = static_cast<Eigen::Index>(op.basis.size() / 2);
    op.entries = CMatrix::Zero(2 * half, 2 * half);
    for (Eigen::Index i = 0; i < half; ++i) {
        const double w = weight(op.basis[static_cast<std::size_t>(i)].t.lambda);
        op.entries(half + i, i) = w;
        op.entries(i, half + i) = back_sign * w;
    }
    return op;
}

double back_sign(SwapConvention conv) { return conv == SwapConvention::symmetric ? 1.0 : -1.0; }

}  // namespace

TruncatedOperator even_dirac(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n, SwapConvention conv) {
    return copy_swap(wp, lambda_max, degree_n, back_sign(conv), [](HalfInt l) { return l.value() + 1; });
}

TruncatedOperator even_fredholm(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n, SwapConvention conv) {
    return copy_swap(wp, lambda_max, degree_n, back_sign(conv), [](HalfInt) { return 1.0; });
}

TruncatedOperator even_chirality(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree_n) {
    TruncatedOperator op{even_basis(wp, lambda_max, degree_n), {}};
    const Eigen::Index dim = static_cast<Eigen::Index>(op.basis.size());
    op.entries = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        op.entries(i, i) = op.basis[static_cast<std::size_t>(i)].copy == Arrow::up ? 1.0 : -1.0;
    return op;
}

TruncatedOperator even_representation(const AlgebraElement& t, const WeightPair& wp, HalfInt lambda_max,
                                      const QContext& ctx, std::int64_t degree_n) {
    const auto idx = homogeneous_coord_basis(wp, lambda_max, degree_n);
    const CMatrix block = gns_matrix(t, idx, idx, ctx);
    const Eigen::Index half = block.rows();
    TruncatedOperator op{even_basis(wp, lambda_max, degree_n), CMatrix::Zero(2 * half, 2 * half)};
    op.entries.topLeftCorner(half, half) = block;
    op.entries.bottomRightCorner(half, half) = block;
    return op;
}

double ChiralityReport::max() const {
    return std::max({omega_squared, omega_selfadjoint, anticommutator, commutator_a, commutator_b});
}

ChiralityReport chirality_checks(const WeightPair& wp, HalfInt lambda_max, const QContext& ctx) {
    const CMatrix w = even_chirality(wp, lambda_max).entries;
    const CMatrix d = even_dirac(wp, lambda_max).entries;
    const auto [a, b] = wp_gens(wp, ctx);
    const CMatrix pa = even_representation(a, wp, lambda_max, ctx).entries;
    const CMatrix pb = even_representation(b, wp, lambda_max, ctx).entries;
    const CMatrix id = CMatrix::Identity(w.rows(), w.cols());
    ChiralityReport r;
    r.omega_squared = max_entry(w * w - id);
    r.omega_selfadjoint = max_entry(w - w.adjoint());
    r.anticommutator = max_entry(w * d + d * w);
    r.commutator_a = max_entry(pa * w - w * pa);
    r.commutator_b = max_entry(pb * w - w * pb);
    return r;
}

double FredholmReport::max() const {
    return std::max({f_squared, f_selfadjoint, commutator_a, commutator_b, commutator_bstar});
}

FredholmReport fredholm_degeneracy(const WeightPair& wp, HalfInt lambda_max, const QContext& ctx, SwapConvention conv) {
    const CMatrix f = even_fredholm(wp, lambda_max, 0, conv).entries;
    const auto [a, b] = wp_gens(wp, ctx);
    const CMatrix pa = even_representation(a, wp, lambda_max, ctx).entries;
    const CMatrix pb = even_representation(b, wp, lambda_max, ctx).entries;
    const CMatrix pbs = even_representation(star(b, ctx), wp, lambda_max, ctx).entries;
    FredholmReport r;
    r.f_squared = max_entry(f * f - CMatrix::Identity(f.rows(), f.cols()));
    r.f_selfadjoint = max_entry(f - f.adjoint());
    r.commutator_a = max_entry(f * pa - pa * f);
    r.commutator_b = max_entry(f * pb - pb * f);
    r.commutator_bstar = max_entry(f * pbs - pbs * f);
    return r;
}

}  // namespace qwp
