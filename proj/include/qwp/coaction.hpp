#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "qwp/coord.hpp"

namespace qwp {

/// Coprime pair (k, l) fixing the circle coaction, equivalently a Z-grading.
class WeightPair {
public:
    WeightPair(int k, int l);

    int k() const { return k_; }
    int l() const { return l_; }
    int sum() const { return k_ + l_; }

private:
    int k_;
    int l_;
};

/// -(m+n)k + (m-n)l.
std::int64_t degree(const WeightPair& wp, const BasisIndex& idx);

/// Common degree of all terms, or nullopt for an inhomogeneous (or empty) element.
std::optional<std::int64_t> homogeneous_degree(const WeightPair& wp, const AlgebraElement& a);

std::set<std::int64_t> degrees_present(const WeightPair& wp, const AlgebraElement& a);

/// Terms of a whose degree equals i.
AlgebraElement project_degree(const AlgebraElement& a, const WeightPair& wp, std::int64_t i);

struct WPGenerators {
    AlgebraElement a;  // beta beta*
    AlgebraElement b;  // beta^k alpha^l
};

WPGenerators wp_gens(const WeightPair& wp, const QContext& ctx);

struct WPRelationReport {
    double a_bstar_commutation = 0.0;  // a b* - q^{-2l} b* a
    double bstar_b = 0.0;              // b* b - q^{2kl} a^k prod_{m=0}^{l-1} (1 - q^{2(m+1)} a)
    double b_bstar = 0.0;              // b b* - a^k prod_{m=1}^{l} (1 - q^{-2(m-1)} a)
    double max() const;
};

/// Largest k + l accepted by verify_wp_relations.
inline constexpr int kWPRelationGuard = 8;

WPRelationReport verify_wp_relations(const WeightPair& wp, const QContext& ctx);

/// Degree of a generator under the induced coaction on U_q(su2).
std::int64_t uq_degree(const WeightPair& wp, Letter g);
std::int64_t uq_degree(const WeightPair& wp, const GeneratorWord& w);

enum class SpinorLeg { plus, minus };

/// Lifted coaction theta_i on M_1/2: e+ has degree i, e- has degree i + k + l.
std::int64_t spinor_degree(const WeightPair& wp, std::int64_t i, SpinorLeg leg);

/// The fixed lift used for coinvariant spinors (e+ of degree -k).
inline std::int64_t fixed_lift(const WeightPair& wp) { return -wp.k(); }

/// Degree-0 indices (lambda, p(l+k), p(l-k)) with lambda <= lambda_max, by p-enumeration.
std::vector<BasisIndex> coinvariant_coord_basis(const WeightPair& wp, HalfInt lambda_max);

/// All indices of a fixed degree with lambda <= lambda_max, by scanning every (m, n).
std::vector<BasisIndex> homogeneous_coord_basis(const WeightPair& wp, HalfInt lambda_max, std::int64_t deg);

enum class Arrow { up, down };

/// Label (j, p, arrow) of a coinvariant spinor |j, p(l+k) - 1/2, p(l-k), arrow>.
struct CoinvariantSpinorIndex {
    HalfInt j;
    HalfInt p;
    Arrow arrow;

    HalfInt m(const WeightPair& wp) const;
    HalfInt mu(const WeightPair& wp) const;
    bool legal(const WeightPair& wp) const;

    auto operator<=>(const CoinvariantSpinorIndex&) const = default;
};

std::vector<CoinvariantSpinorIndex> coinvariant_spinor_basis(const WeightPair& wp, HalfInt j_max);

/// Closed forms, with the matching p-counting oracles.
std::int64_t dim_V_down(const WeightPair& wp, HalfInt j);
std::int64_t dim_V_down_oracle(const WeightPair& wp, HalfInt j);
std::int64_t dim_V_up(const WeightPair& wp, HalfInt j);
std::int64_t dim_V_up_oracle(const WeightPair& wp, HalfInt j);
std::int64_t dim_V(const WeightPair& wp, HalfInt lambda);
std::int64_t dim_V_oracle(const WeightPair& wp, HalfInt lambda);

}  // namespace qwp
