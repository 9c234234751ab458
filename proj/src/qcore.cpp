#include "qwp/qcore.hpp"

#include <cmath>
#include <stdexcept>

namespace qwp {

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

QContext::QContext(double q, double tol) : q_(q), tol_(tol) {
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("q must lie in the open interval (0,1)");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

double QContext::qpow(double x) const { return std::pow(q_, x); }

double q_int(std::int64_t n, const QContext& ctx) {
    if (n == 0) return 0.0;
    const double q = ctx.q();
    const double nd = static_cast<double>(n);
    return (std::pow(q, nd) - std::pow(q, -nd)) / (q - 1.0 / q);
}

std::string letter_name(Letter g) {
    switch (g) {
        case Letter::e: return "e";
        case Letter::f: return "f";
        case Letter::k: return "k";
        case Letter::kinv: return "kinv";
    }
    return "?";
}

ScaledLetter antipode(Letter g, const QContext& ctx) {
    switch (g) {
        case Letter::e: return {-ctx.q(), Letter::e};
        case Letter::f: return {-1.0 / ctx.q(), Letter::f};
        case Letter::k: return {1.0, Letter::kinv};
        case Letter::kinv: return {1.0, Letter::k};
    }
    throw std::logic_error("antipode: bad letter");
}

ScaledLetter left_twist(Letter g) {
    switch (g) {
        case Letter::e: return {-1.0, Letter::f};
        case Letter::f: return {-1.0, Letter::e};
        case Letter::k: return {1.0, Letter::kinv};
        case Letter::kinv: return {1.0, Letter::k};
    }
    throw std::logic_error("left_twist: bad letter");
}

Letter star_letter(Letter g) {
    switch (g) {
        case Letter::e: return Letter::f;
        case Letter::f: return Letter::e;
        default: return g;
    }
}

double counit(Letter g) { return (g == Letter::k || g == Letter::kinv) ? 1.0 : 0.0; }

GeneratorWord::GeneratorWord(std::initializer_list<Letter> letters) {
    for (Letter g : letters) {
        if (!factors_.empty() && factors_.back().letter == g) {
            ++factors_.back().exponent;
        } else {
            factors_.push_back({g, 1});
        }
    }
}

GeneratorWord::GeneratorWord(std::vector<Factor> factors) : factors_(std::move(factors)) {
    for (const auto& f : factors_) {
        if (f.exponent < 1) throw std::invalid_argument("generator exponents must be >= 1");
    }
}

std::vector<Letter> GeneratorWord::letters() const {
    std::vector<Letter> out;
    for (const auto& f : factors_) out.insert(out.end(), static_cast<std::size_t>(f.exponent), f.letter);
    return out;
}

std::string GeneratorWord::str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += ' ';
        s += letter_name(f.letter);
        if (f.exponent != 1) s += '^' + std::to_string(f.exponent);
    }
    return s;
}

IrrepMatrix irrep_matrix(HalfInt lambda, Letter g, const QContext& ctx) {
    if (lambda.twice() < 0) throw std::invalid_argument("irrep_matrix: negative highest weight");
    const auto d = irrep_dim(lambda);
    CMatrix m = CMatrix::Zero(d, d);
    for (std::int64_t i = 0; i < d; ++i) {
        // weight of column i is m_i = i - lambda; work with doubled integers
        const std::int64_t two_m = 2 * i - lambda.twice();
        const std::int64_t lm = (lambda.twice() - two_m) / 2;  // lambda - m
        const std::int64_t lp = (lambda.twice() + two_m) / 2;  // lambda + m
        switch (g) {
            case Letter::e:
                if (i + 1 < d) m(i + 1, i) = std::sqrt(q_int(lm, ctx) * q_int(lp + 1, ctx));
                break;
            case Letter::f:
                if (i > 0) m(i - 1, i) = std::sqrt(q_int(lm + 1, ctx) * q_int(lp, ctx));
                break;
            case Letter::k:
                m(i, i) = ctx.qpow(two_m / 2.0);
                break;
            case Letter::kinv:
                m(i, i) = ctx.qpow(-two_m / 2.0);
                break;
        }
    }
    return {lambda, std::move(m)};
}

CMatrix irrep_word(HalfInt lambda, const GeneratorWord& w, const QContext& ctx) {
    const auto d = irrep_dim(lambda);
    CMatrix acc = CMatrix::Identity(d, d);
    for (const auto& f : w.factors()) {
        const CMatrix g = irrep_matrix(lambda, f.letter, ctx).entries;
        for (int i = 0; i < f.exponent; ++i) acc = acc * g;
    }
    return acc;
}

CMatrix dual_irrep_matrix(HalfInt lambda, Letter g, const QContext& ctx) {
    const ScaledLetter s = antipode(g, ctx);
    return (s.scale * irrep_matrix(lambda, s.letter, ctx).entries).transpose();
}

CMatrix dual_irrep_word(HalfInt lambda, const GeneratorWord& w, const QContext& ctx) {
    const auto d = irrep_dim(lambda);
    CMatrix acc = CMatrix::Identity(d, d);
    for (Letter g : w.letters()) acc = acc * dual_irrep_matrix(lambda, g, ctx);
    return acc;
}

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

CMatrix coproduct_action(HalfInt lambda1, HalfInt lambda2, Letter g, const QContext& ctx) {
    auto rho1 = [&](Letter x) { return irrep_matrix(lambda1, x, ctx).entries; };
    auto rho2 = [&](Letter x) { return irrep_matrix(lambda2, x, ctx).entries; };
    switch (g) {
        case Letter::k:
        case Letter::kinv:
            return kron(rho1(g), rho2(g));
        case Letter::e:
        case Letter::f:
            // Delta(x) = x (x) k + k^{-1} (x) x for x in {e, f}
            return kron(rho1(g), rho2(Letter::k)) + kron(rho1(Letter::kinv), rho2(g));
    }
    throw std::logic_error("coproduct_action: bad letter");
}

}  // namespace qwp
