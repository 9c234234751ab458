#include "qwp/cg.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace qwp {

std::vector<HalfInt> couple(HalfInt lambda1, HalfInt lambda2) {
    if (lambda1.twice() < 0 || lambda2.twice() < 0) throw std::invalid_argument("couple: negative highest weight");
    std::vector<HalfInt> out;
    for (HalfInt mu = abs(lambda1 - lambda2); mu <= lambda1 + lambda2; mu += HalfInt::from_int(1)) out.push_back(mu);
    return out;
}

CGBlock::CGBlock(HalfInt lambda1, HalfInt lambda2, RMatrix entries)
    : lambda1_(lambda1), lambda2_(lambda2), entries_(std::move(entries)) {}

Eigen::Index CGBlock::row(HalfInt mu, HalfInt m) const {
    // components below mu contribute (2nu+1) rows each
    Eigen::Index offset = 0;
    for (HalfInt nu = abs(lambda1_ - lambda2_); nu < mu; nu += HalfInt::from_int(1)) offset += irrep_dim(nu);
    return offset + weight_index(mu, m);
}

Eigen::Index CGBlock::column(HalfInt m1, HalfInt m2) const {
    return weight_index(lambda1_, m1) * irrep_dim(lambda2_) + weight_index(lambda2_, m2);
}

double CGBlock::coeff(HalfInt mu, HalfInt m1, HalfInt m2) const {
    const HalfInt m = m1 + m2;
    if (!valid_weight(lambda1_, m1) || !valid_weight(lambda2_, m2)) return 0.0;
    if (mu < abs(lambda1_ - lambda2_) || mu > lambda1_ + lambda2_ || !mu.same_parity(lambda1_ + lambda2_)) return 0.0;
    if (!valid_weight(mu, m)) return 0.0;
    return entries_(row(mu, m), column(m1, m2));
}

namespace {

// log [n]_q without forming q^{-n}; n >= 1.
double log_q_int(std::int64_t n, const QContext& ctx) {
    const double q = ctx.q();
    return -static_cast<double>(n) * std::log(q) + std::log1p(-std::pow(q, 2.0 * static_cast<double>(n))) -
           std::log(1.0 / q - q);
}

// log of the e-ladder coefficient sqrt([lambda - m][lambda + m + 1]); m < lambda.
double log_raise(HalfInt lambda, HalfInt m, const QContext& ctx) {
    return 0.5 * (log_q_int((lambda - m).as_integer(), ctx) + log_q_int((lambda + m).as_integer() + 1, ctx));
}

CGBlock compute_block(HalfInt l1, HalfInt l2, const QContext& ctx) {
    const Eigen::Index d2 = irrep_dim(l2), dim = irrep_dim(l1) * d2;
    const RMatrix lower = coproduct_action(l1, l2, Letter::f, ctx).real();
    const double log_q = std::log(ctx.q());
    const HalfInt one = HalfInt::from_int(1);
    CGBlock shape(l1, l2, RMatrix());
    RMatrix out = RMatrix::Zero(dim, dim);

    // Top component first: the ladder only amplifies errors along higher components, which are
    // projected out at every step, and damps those along lower ones.
    const auto components = couple(l1, l2);
    for (auto it = components.rbegin(); it != components.rend(); ++it) {
        const HalfInt mu = *it;
        // Highest weight: Delta(e) v = 0 is a two-term recurrence in m1,
        // c(m1+1) = -c(m1) E1(m1) q^{mu+1} / E2(mu - m1 - 1), run in log magnitude.
        const HalfInt lo = std::max(-l1, mu - l2), hi = std::min(l1, mu + l2);
        std::vector<double> logs{0.0};
        std::vector<int> signs{1};
        for (HalfInt m1 = lo; m1 < hi; m1 += one) {
            logs.push_back(logs.back() + log_raise(l1, m1, ctx) + (mu + one).value() * log_q -
                           log_raise(l2, mu - m1 - one, ctx));
            signs.push_back(-signs.back());
        }
        const double top = *std::max_element(logs.begin(), logs.end());
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        const int flip = signs.back();  // positive on the largest m1
        std::size_t i = 0;
        for (HalfInt m1 = lo; m1 <= hi; m1 += one, ++i)
            v(shape.column(m1, mu - m1)) = flip * signs[i] * std::exp(logs[i] - top);
        v.normalize();

        for (HalfInt m = mu;; m -= one) {
            for (int pass = 0; pass < 2; ++pass)
                for (HalfInt nu = mu + one; nu <= l1 + l2; nu += one) {
                    if (!valid_weight(nu, m)) continue;
                    const auto r = out.row(shape.row(nu, m));
                    v -= r.dot(v) * r.transpose();
                }
            v.normalize();
            out.row(shape.row(mu, m)) = v.transpose();
            if (m == -mu) break;
            v = lower * v;
        }
    }
    return CGBlock(l1, l2, std::move(out));
}

struct CacheKey {
    std::int64_t two_l1;
    std::int64_t two_l2;
    std::uint64_t q_bits;
    auto operator<=>(const CacheKey&) const = default;
};

std::shared_mutex cache_mutex;
std::map<CacheKey, std::shared_ptr<const CGBlock>> cache;

}  // namespace

std::shared_ptr<const CGBlock> cg_block(HalfInt lambda1, HalfInt lambda2, const QContext& ctx) {
    if (lambda1.twice() < 0 || lambda2.twice() < 0) throw std::invalid_argument("cg_block: negative highest weight");
    std::uint64_t bits = 0;
    const double q = ctx.q();
    std::memcpy(&bits, &q, sizeof bits);
    const CacheKey key{lambda1.twice(), lambda2.twice(), bits};
    {
        std::shared_lock lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    auto block = std::make_shared<const CGBlock>(compute_block(lambda1, lambda2, ctx));
    std::unique_lock lock(cache_mutex);
    auto [it, inserted] = cache.emplace(key, std::move(block));
    return it->second;
}

void clear_cg_cache() {
    std::unique_lock lock(cache_mutex);
    cache.clear();
}

std::size_t cg_cache_size() {
    std::shared_lock lock(cache_mutex);
    return cache.size();
}

std::pair<double, double> cg_coeff_updown(HalfInt j, HalfInt mu, const QContext& ctx) {
    if (j.twice() < 1) throw std::invalid_argument("cg_coeff_updown: j must be at least 1/2");
    if (!valid_weight(j, mu)) throw std::invalid_argument("cg_coeff_updown: mu out of range");
    const double two_j = q_int(j.twice(), ctx);
    const double c = ctx.qpow(-(j + mu).value() / 2.0) * std::sqrt(q_int((j - mu).as_integer(), ctx) / two_j);
    const double s = ctx.qpow((j - mu).value() / 2.0) * std::sqrt(q_int((j + mu).as_integer(), ctx) / two_j);
    return {c, s};
}

}  // namespace qwp
