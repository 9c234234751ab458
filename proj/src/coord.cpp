#include "qwp/coord.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qwp/cg.hpp"

namespace qwp {

std::string BasisIndex::str() const { return "(" + lambda.str() + "," + m.str() + "," + n.str() + ")"; }

AlgebraElement::AlgebraElement(Terms terms, double prune) : terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (!it->first.valid()) throw std::invalid_argument("AlgebraElement: invalid basis index " + it->first.str());
        if (std::abs(it->second) <= prune) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
}

AlgebraElement AlgebraElement::unit() { return basis(BasisIndex{}, 1.0); }

AlgebraElement AlgebraElement::basis(const BasisIndex& idx, Complex coeff) { return AlgebraElement(Terms{{idx, coeff}}); }

Complex AlgebraElement::coeff(const BasisIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Complex{} : it->second;
}

double AlgebraElement::max_abs() const {
    double m = 0.0;
    for (const auto& [idx, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

AlgebraElement AlgebraElement::pruned(double threshold) const { return AlgebraElement(terms_, threshold); }

AlgebraElement AlgebraElement::operator+(const AlgebraElement& o) const {
    AlgebraElement out = *this;
    out += o;
    return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [idx, c] : o.terms_) {
        auto [it, inserted] = terms_.try_emplace(idx, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{}) terms_.erase(it);
        }
    }
    return *this;
}

AlgebraElement AlgebraElement::operator-() const { return Complex(-1.0) * *this; }

AlgebraElement AlgebraElement::operator-(const AlgebraElement& o) const { return *this + (-o); }

AlgebraElement operator*(Complex s, const AlgebraElement& a) {
    AlgebraElement out;
    if (s == Complex{}) return out;
    for (const auto& [idx, c] : a.terms_) out.terms_.emplace(idx, s * c);
    return out;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) { return (a - b).max_abs(); }

SU2qGenerators gens(const QContext& ctx) {
    const HalfInt h = HalfInt::half();
    return {
        AlgebraElement::basis({h, h, h}),
        AlgebraElement::basis({h, h, -h}),
        AlgebraElement::basis({h, -h, -h}),
        AlgebraElement::basis({h, -h, h}, -1.0 / ctx.q()),
    };
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const QContext& ctx) {
    AlgebraElement::Terms acc;
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            const auto block = cg_block(ia.lambda, ib.lambda, ctx);
            const HalfInt m = ia.m + ib.m;
            const HalfInt n = ia.n + ib.n;
            for (HalfInt mu : couple(ia.lambda, ib.lambda)) {
                if (abs(m) > mu || abs(n) > mu) continue;
                const double w = block->coeff(mu, ia.m, ib.m) * block->coeff(mu, ia.n, ib.n);
                if (w == 0.0) continue;
                acc[BasisIndex{mu, m, n}] += ca * cb * w;
            }
        }
    }
    return AlgebraElement(std::move(acc), prune_threshold(ctx));
}

AlgebraElement power(const AlgebraElement& a, int n, const QContext& ctx) {
    if (n < 0) throw std::invalid_argument("power: negative exponent");
    AlgebraElement out = AlgebraElement::unit();
    for (int i = 0; i < n; ++i) out = multiply(out, a, ctx);
    return out;
}

AlgebraElement star(const AlgebraElement& a, const QContext& ctx) {
    AlgebraElement::Terms out;
    for (const auto& [idx, c] : a.terms()) {
        const double sign_scale = std::pow(-ctx.q(), (idx.n - idx.m).as_integer());
        out.emplace(BasisIndex{idx.lambda, -idx.m, -idx.n}, std::conj(c) * sign_scale);
    }
    return AlgebraElement(std::move(out));
}

namespace {

// Applies a per-lambda matrix to either the row (m) or column (n) index.
template <class MatrixFor>
AlgebraElement act_on_index(const AlgebraElement& a, bool on_column, MatrixFor&& matrix_for, const QContext& ctx) {
    AlgebraElement::Terms acc;
    std::map<std::int64_t, CMatrix> cache;
    for (const auto& [idx, c] : a.terms()) {
        auto it = cache.find(idx.lambda.twice());
        if (it == cache.end()) it = cache.emplace(idx.lambda.twice(), matrix_for(idx.lambda)).first;
        const CMatrix& mat = it->second;
        const HalfInt moving = on_column ? idx.n : idx.m;
        const Eigen::Index col = weight_index(idx.lambda, moving);
        for (Eigen::Index r = 0; r < mat.rows(); ++r) {
            const Complex w = mat(r, col);
            if (w == Complex{}) continue;
            const HalfInt target = HalfInt::from_twice(2 * r - idx.lambda.twice());
            const BasisIndex out = on_column ? BasisIndex{idx.lambda, idx.m, target} : BasisIndex{idx.lambda, target, idx.n};
            acc[out] += c * w;
        }
    }
    return AlgebraElement(std::move(acc), prune_threshold(ctx));
}

}  // namespace

Complex pairing(const AlgebraElement& a, const GeneratorWord& w, const QContext& ctx) {
    Complex sum{};
    std::map<std::int64_t, CMatrix> cache;
    for (const auto& [idx, c] : a.terms()) {
        auto it = cache.find(idx.lambda.twice());
        if (it == cache.end()) it = cache.emplace(idx.lambda.twice(), irrep_word(idx.lambda, w, ctx)).first;
        sum += c * it->second(weight_index(idx.lambda, idx.m), weight_index(idx.lambda, idx.n));
    }
    return sum;
}

AlgebraElement right_act(const GeneratorWord& w, const AlgebraElement& a, const QContext& ctx) {
    return act_on_index(a, true, [&](HalfInt lambda) { return irrep_word(lambda, w, ctx); }, ctx);
}

CMatrix left_action_matrix(HalfInt lambda, const GeneratorWord& w, const QContext& ctx) {
    const auto d = irrep_dim(lambda);
    CMatrix acc = CMatrix::Identity(d, d);
    for (Letter g : w.letters()) {
        const ScaledLetter t = left_twist(g);
        acc = acc * (t.scale * dual_irrep_matrix(lambda, t.letter, ctx));
    }
    return acc;
}

AlgebraElement left_act(const GeneratorWord& w, const AlgebraElement& a, const QContext& ctx) {
    return act_on_index(a, false, [&](HalfInt lambda) { return left_action_matrix(lambda, w, ctx); }, ctx);
}

Complex haar(const AlgebraElement& a) { return a.coeff(BasisIndex{}); }

Complex inner(const AlgebraElement& a, const AlgebraElement& b, const QContext& ctx) {
    return haar(multiply(star(a, ctx), b, ctx));
}

double gns_scale(const BasisIndex& idx, const QContext& ctx) {
    return ctx.qpow(idx.m.value()) * std::sqrt(q_int(idx.lambda.twice() + 1, ctx));
}

AlgebraElement gns_basis_vector(const BasisIndex& idx, const QContext& ctx) {
    if (!idx.valid()) throw std::invalid_argument("gns_basis_vector: invalid index " + idx.str());
    return AlgebraElement::basis(idx, gns_scale(idx, ctx));
}

void write_records(std::ostream& os, const AlgebraElement& a) {
    char buf[160];
    for (const auto& [idx, c] : a.terms()) {
        std::snprintf(buf, sizeof buf, "%lld %lld %lld %.17g %.17g\n", static_cast<long long>(idx.lambda.twice()),
                      static_cast<long long>(idx.m.twice()), static_cast<long long>(idx.n.twice()), c.real(), c.imag());
        os << buf;
    }
}

AlgebraElement read_records(std::istream& is) {
    AlgebraElement::Terms terms;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long tl = 0, tm = 0, tn = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> tl >> tm >> tn >> re >> im)) throw std::invalid_argument("read_records: malformed line: " + line);
        const BasisIndex idx{HalfInt::from_twice(tl), HalfInt::from_twice(tm), HalfInt::from_twice(tn)};
        terms[idx] += Complex(re, im);
    }
    return AlgebraElement(std::move(terms));
}

}  // namespace qwp
