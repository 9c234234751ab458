#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qwp/coaction.hpp"

namespace qwp {

// Operator models for k = 1. The faithful representation of C[SU_q(2)] lives on
// l^2(Z) (x) l^2(N_0); e_{lp+s-1} in the second leg is relabelled e^s_p.

enum class SUGen { alpha, alpha_star, beta, beta_star };

/// Operator product; the rightmost letter acts first.
using SUWord = std::vector<SUGen>;

SUWord repeat(SUGen g, std::int64_t times);
SUWord operator*(const SUWord& a, const SUWord& b);

/// Basis vector e_z (x) e_n.
struct Ket {
    std::int64_t z;
    std::int64_t n;

    auto operator<=>(const Ket&) const = default;
};

using KetVector = std::map<Ket, double>;

/// alpha e_n = sqrt(1 - q^{2(n+1)}) e_{n+1}; beta shifts z forward with weight q^n; stars are adjoints.
KetVector apply_word(const SUWord& w, const KetVector& v, const QContext& ctx);

/// Basis vector e_z (x) e^s_p of a truncated sequence space (s is 1-based).
struct SeqIndex {
    std::int64_t z;
    int s;
    std::int64_t p;

    auto operator<=>(const SeqIndex&) const = default;
};

struct SeqOperator {
    std::vector<SeqIndex> basis;
    RMatrix entries;
};

enum class WPGen { a, b, bstar };

/// Irreducible representation of the teardrop algebra on the copy s of X_m, p < N.
SeqOperator wp_rep(int l, std::int64_t m, int s, WPGen gen, std::int64_t N, const QContext& ctx);

/// Relation residuals of wp_rep on the leading (N - 2) block, maximized over the copies s.
WPRelationReport teardrop_relations(int l, std::int64_t N, const QContext& ctx);

enum class LensGen { alpha_l, beta };

/// Lens-space generator on z in [-N_z, N_z], p < N; images leaving the window are dropped.
SeqOperator lens_rep(int l, int s, LensGen gen, std::int64_t N_z, std::int64_t N, const QContext& ctx);

/// beta alpha^l - q^l alpha^l beta on sources whose images stay inside the window.
double lens_commutation_residual(int l, std::int64_t N_z, std::int64_t N, const QContext& ctx);

/// One source copy of one sampled operator (alpha*)^j y, y in L[n].
struct BlockCheck {
    std::string sample;
    int source;
    int target;
    std::int64_t shift;       // expected power of the backward shift
    double coefficient;       // fitted c in c S^shift + compact
    double tail_defect;       // max |B - c S^shift| over the tail window
};

struct BlockStructureReport {
    int l;
    std::int64_t n;
    int j;
    std::int64_t N;
    double off_pattern = 0.0;      // largest entry outside the expected copy blocks
    double max_tail_defect = 0.0;
    double tail_threshold = 0.0;   // q^{N/4}
    double off_pattern_threshold = 0.0;
    std::vector<BlockCheck> blocks;

    bool passed() const { return off_pattern < off_pattern_threshold && max_tail_defect < tail_threshold; }
};

/// Source copy s <= j lands in copy s + l - j as S^{n+1} + compact; s > j lands in copy s - j as S^n + compact.
BlockStructureReport block_structure_evidence(int l, std::int64_t n, int j, std::int64_t N, const QContext& ctx);

/// K-theory class of the degree nl + j component.
///
/// Copy s carries P_{indices[s-1]}, of rank |index|. For n >= 0 the class is
/// I_1 (+) P, otherwise 1 - P. In both cases the K_0 coordinates in the basis
/// ([1], [e^1_00], ..., [e^l_00]) are (1, indices...).
struct ProjectionClass {
    int l;
    std::int64_t n;
    int j;
    int identity_copies;  // 1 for n >= 0, 0 for the cofinite form
    bool cofinite;
    std::vector<std::int64_t> indices;

    std::string str() const;
    std::vector<std::int64_t> k0() const;

    /// Realization on N sites per copy: diag(I, P) for n >= 0 and 1 - P otherwise.
    RMatrix matrix(std::int64_t N) const;
};

ProjectionClass ktheory_class(int l, std::int64_t n, int j);

}  // namespace qwp
