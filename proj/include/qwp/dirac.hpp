#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwp/coaction.hpp"

namespace qwp {

/// Label of the orthonormal spinor |j m mu arrow> in L^2(SU_q(2)) (x) M_1/2.
struct SpinorBasisIndex {
    HalfInt j;
    HalfInt m;
    HalfInt mu;
    Arrow arrow;

    bool valid() const;
    std::string str() const;

    auto operator<=>(const SpinorBasisIndex&) const = default;
};

/// Element of C[SU_q(2)] (x) M_1/2 as its two legs.
struct Spinor {
    AlgebraElement plus;   // coefficient of e+
    AlgebraElement minus;  // coefficient of e-
};

Spinor spinor_vector(const SpinorBasisIndex& idx, const QContext& ctx);
Complex spinor_inner(const Spinor& a, const Spinor& b, const QContext& ctx);
double spinor_distance(const Spinor& a, const Spinor& b);

/// Every basis label with j <= j_max.
std::vector<SpinorBasisIndex> spinor_basis(HalfInt j_max);

/// |j, p(l+k) - 1/2, p(l-k), arrow>.
SpinorBasisIndex spinor_index(const WeightPair& wp, const CoinvariantSpinorIndex& c);

struct SpectrumRow {
    double eigenvalue;
    std::int64_t multiplicity;
};

/// Eigenvalues strictly increasing; zero multiplicities are never stored.
class SpectrumTable {
public:
    SpectrumTable() = default;

    /// Adds mult to the row of ev (creating it if needed).
    void add(double eigenvalue, std::int64_t multiplicity);

    const std::vector<SpectrumRow>& rows() const { return rows_; }
    std::int64_t multiplicity(double eigenvalue) const;
    std::int64_t total() const;

    void write_csv(std::ostream& os) const;
    std::string to_json() const;

private:
    std::vector<SpectrumRow> rows_;
};

/// D = 2j + 3/2 on up vectors, -(2j + 1/2) on down vectors.
SpectrumTable ambient_dirac_spectrum(HalfInt j_max);

/// q^{-eth} applied to a spinor. `fe_sign` multiplies the q^{-1}(q - q^{-1})^2 fe term.
Spinor q_dirac_apply(const Spinor& v, const QContext& ctx, double fe_sign = 1.0);

struct QDiracReport {
    double max_residual = 0.0;  // max coefficient of q^{-eth} v - expected * v
    std::size_t vectors = 0;
};

inline constexpr int kQDiracMaxJ = 3;

QDiracReport q_dirac_check(HalfInt j_max, const QContext& ctx, double fe_sign = 1.0);

struct CoinvariantDiracReport {
    double max_residual = 0.0;         // eigenvector defect of q^{-eth}
    double max_eigenvalue_error = 0.0;  // |recovered D + 1/2 - expected|
    bool coinvariant = true;           // every leg has the degree cancelling its spinor leg
    std::size_t vectors = 0;
};

/// Recovers D + 1/2 on every coinvariant spinor with j <= j_max from q^{-eth}.
CoinvariantDiracReport coinvariant_dirac_check(const WeightPair& wp, HalfInt j_max, const QContext& ctx);

SpectrumTable odd_triple_spectrum(const WeightPair& wp, HalfInt j_max);
SpectrumTable even_triple_spectrum(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree = 0);

enum class Triple { odd, even };

/// sigma_N = sum over index <= N of mult * |eigenvalue|^{-exponent}.
double summability_partial_sum(const WeightPair& wp, std::int64_t N, Triple triple, double exponent = 2.0);

/// Matrix of pi_h(t) between orthonormal GNS vectors.
CMatrix gns_matrix(const AlgebraElement& t, const std::vector<BasisIndex>& rows, const std::vector<BasisIndex>& cols,
                   const QContext& ctx);

/// || [Q, (pi_h + pi_h)(t)] || on the truncation lambda <= Lambda, restricted to source vectors whose image
/// stays inside the truncation. Uses the (m, n) sector splitting when t shifts weights uniformly.
double commutator_norm(const AlgebraElement& t, HalfInt Lambda, const QContext& ctx);

/// Same quantity by dense assembly; for cross-checks at small Lambda.
double commutator_norm_dense(const AlgebraElement& t, HalfInt Lambda, const QContext& ctx);

/// Basis vector t^{lambda, copy}_{mn} of H' (+) H'.
struct EvenBasisIndex {
    BasisIndex t;
    Arrow copy;

    auto operator<=>(const EvenBasisIndex&) const = default;
};

struct TruncatedOperator {
    std::vector<EvenBasisIndex> basis;
    CMatrix entries;
};

/// Copy-swap convention for D' and F'. `symmetric` is self-adjoint; `antisymmetric` flips the sign on down.
enum class SwapConvention { symmetric, antisymmetric };

/// Degree-n indices with lambda <= lambda_max, up copy first.
std::vector<EvenBasisIndex> even_basis(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree = 0);

TruncatedOperator even_dirac(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree = 0,
                             SwapConvention conv = SwapConvention::symmetric);
TruncatedOperator even_chirality(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree = 0);
TruncatedOperator even_fredholm(const WeightPair& wp, HalfInt lambda_max, std::int64_t degree = 0,
                                SwapConvention conv = SwapConvention::symmetric);
/// (pi_h + pi_h)(t) compressed to the truncation.
TruncatedOperator even_representation(const AlgebraElement& t, const WeightPair& wp, HalfInt lambda_max,
                                      const QContext& ctx, std::int64_t degree = 0);

/// Residuals are the largest entry magnitude of the named difference.
struct ChiralityReport {
    double omega_squared = 0.0;       // omega^2 - 1
    double omega_selfadjoint = 0.0;   // omega - omega*
    double anticommutator = 0.0;      // omega D' + D' omega
    double commutator_a = 0.0;        // [pi(a), omega]
    double commutator_b = 0.0;        // [pi(b), omega]
    double max() const;
};

ChiralityReport chirality_checks(const WeightPair& wp, HalfInt lambda_max, const QContext& ctx);

struct FredholmReport {
    double f_squared = 0.0;      // F'^2 - 1
    double f_selfadjoint = 0.0;  // F' - F'*
    double commutator_a = 0.0;   // [F', pi(a)]
    double commutator_b = 0.0;   // [F', pi(b)]
    double commutator_bstar = 0.0;
    double max() const;
};

FredholmReport fredholm_degeneracy(const WeightPair& wp, HalfInt lambda_max, const QContext& ctx,
                                   SwapConvention conv = SwapConvention::symmetric);

}  // namespace qwp
