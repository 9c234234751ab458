#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <string>

#include "qwp/qcore.hpp"

namespace qwp {

/// Label of the matrix element t^lambda_{mn}.
struct BasisIndex {
    HalfInt lambda;
    HalfInt m;
    HalfInt n;

    bool valid() const { return valid_weight(lambda, m) && valid_weight(lambda, n); }
    std::string str() const;

    auto operator<=>(const BasisIndex&) const = default;
};

/// Finite linear combination of matrix elements t^lambda_{mn} in C[SU_q(2)].
class AlgebraElement {
public:
    using Terms = std::map<BasisIndex, Complex>;

    AlgebraElement() = default;
    explicit AlgebraElement(Terms terms, double prune = 0.0);

    static AlgebraElement unit();
    static AlgebraElement basis(const BasisIndex& idx, Complex coeff = 1.0);

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// Coefficient of t^lambda_{mn} (zero when absent).
    Complex coeff(const BasisIndex& idx) const;

    /// Largest coefficient magnitude.
    double max_abs() const;

    AlgebraElement pruned(double threshold) const;

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& o);
    friend AlgebraElement operator*(Complex s, const AlgebraElement& a);

private:
    Terms terms_;
};

/// max |coeff| of a - b.
double distance(const AlgebraElement& a, const AlgebraElement& b);

struct SU2qGenerators {
    AlgebraElement alpha;
    AlgebraElement beta;
    AlgebraElement alpha_star;
    AlgebraElement beta_star;
};

SU2qGenerators gens(const QContext& ctx);

/// Coefficients below this are dropped after every product.
inline double prune_threshold(const QContext& ctx) { return ctx.tol() / 100.0; }

/// Clebsch-Gordan product of matrix elements, extended bilinearly.
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b, const QContext& ctx);

/// a^n by repeated multiplication; a^0 is the unit.
AlgebraElement power(const AlgebraElement& a, int n, const QContext& ctx);

/// Antilinear involution, (t^lambda_{mn})* = (-q)^{n-m} t^lambda_{-m,-n}.
AlgebraElement star(const AlgebraElement& a, const QContext& ctx);

/// a(x) with x the evaluated generator word.
Complex pairing(const AlgebraElement& a, const GeneratorWord& w, const QContext& ctx);

/// Right regular action: rho_lambda(x) applied to the column index.
AlgebraElement right_act(const GeneratorWord& w, const AlgebraElement& a, const QContext& ctx);

/// Left regular action: dual representation of the twisted word on the row index.
AlgebraElement left_act(const GeneratorWord& w, const AlgebraElement& a, const QContext& ctx);

/// Matrix rho*_lambda(twist(w)) used by left_act (row index transforms by its columns).
CMatrix left_action_matrix(HalfInt lambda, const GeneratorWord& w, const QContext& ctx);

/// Haar state: the t^0_{00} coefficient.
Complex haar(const AlgebraElement& a);

/// h(a* b).
Complex inner(const AlgebraElement& a, const AlgebraElement& b, const QContext& ctx);

/// Orthonormal GNS vector |lambda m n> = q^m sqrt([2 lambda + 1]) t^lambda_{mn}.
AlgebraElement gns_basis_vector(const BasisIndex& idx, const QContext& ctx);

/// q^m sqrt([2 lambda + 1]); converts t-coefficients to GNS coordinates by division.
double gns_scale(const BasisIndex& idx, const QContext& ctx);

/// Line-delimited records "two_lambda two_m two_n re im".
void write_records(std::ostream& os, const AlgebraElement& a);
AlgebraElement read_records(std::istream& is);

}  // namespace qwp
