#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "qwp/qcore.hpp"

namespace qwp {

/// Irreducible components of M_l1 (x) M_l2: |l1-l2|, ..., l1+l2.
std::vector<HalfInt> couple(HalfInt lambda1, HalfInt lambda2);

/// Orthogonal q-Clebsch-Gordan matrix for M_l1 (x) M_l2.
///
/// Rows are ordered by component mu ascending and, inside a component, by
/// weight ascending. Columns follow the lexicographic tensor basis (m1, m2).
/// Conjugating coproduct_action by this matrix gives the direct sum of the
/// ladder-form irreducibles. Each highest-weight row is signed so that its
/// entry on the column with the largest m1 is positive.
class CGBlock {
public:
    CGBlock(HalfInt lambda1, HalfInt lambda2, RMatrix entries);

    HalfInt lambda1() const { return lambda1_; }
    HalfInt lambda2() const { return lambda2_; }
    const RMatrix& entries() const { return entries_; }

    Eigen::Index row(HalfInt mu, HalfInt m) const;
    Eigen::Index column(HalfInt m1, HalfInt m2) const;

    /// C_q(l1 l2 mu; m1 m2 m1+m2); zero when the indices are out of range.
    double coeff(HalfInt mu, HalfInt m1, HalfInt m2) const;

private:
    HalfInt lambda1_;
    HalfInt lambda2_;
    RMatrix entries_;
};

/// Memoized; safe to call from several threads.
std::shared_ptr<const CGBlock> cg_block(HalfInt lambda1, HalfInt lambda2, const QContext& ctx);

/// Closed-form spin-1/2 coupling coefficients (C_{j mu}, S_{j mu}).
std::pair<double, double> cg_coeff_updown(HalfInt j, HalfInt mu, const QContext& ctx);

/// Drops every cached block (tests only).
void clear_cg_cache();
std::size_t cg_cache_size();

}  // namespace qwp
