#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qwp/halfint.hpp"

namespace qwp {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;

/// Deformation parameter and numeric tolerance shared by every module.
class QContext {
public:
    explicit QContext(double q = 0.5, double tol = 1e-9);

    double q() const { return q_; }
    double tol() const { return tol_; }

    /// q^x for real x.
    double qpow(double x) const;

private:
    double q_;
    double tol_;
};

/// [n]_q = (q^n - q^-n) / (q - q^-1).
double q_int(std::int64_t n, const QContext& ctx);

enum class Letter { e, f, k, kinv };

std::string letter_name(Letter g);

/// A letter with a scalar prefactor, e.g. S(e) = -q e.
struct ScaledLetter {
    double scale;
    Letter letter;
};

ScaledLetter antipode(Letter g, const QContext& ctx);
/// The automorphism e -> -f, f -> -e, k^{+-1} -> k^{-+1} used by the left action.
ScaledLetter left_twist(Letter g);
/// e* = f, f* = e, k* = k.
Letter star_letter(Letter g);
double counit(Letter g);

/// Product of generator powers; the empty word is the unit.
class GeneratorWord {
public:
    struct Factor {
        Letter letter;
        int exponent;
    };

    GeneratorWord() = default;
    GeneratorWord(std::initializer_list<Letter> letters);
    explicit GeneratorWord(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }

    /// Letters with exponents expanded, in word order.
    std::vector<Letter> letters() const;

    std::string str() const;

private:
    std::vector<Factor> factors_;
};

inline std::int64_t irrep_dim(HalfInt lambda) { return lambda.twice() + 1; }
/// Position of u_{lambda,m} in the ascending basis u_{lambda,-lambda}, ..., u_{lambda,lambda}.
inline std::int64_t weight_index(HalfInt lambda, HalfInt m) { return (m + lambda).as_integer(); }
inline bool valid_weight(HalfInt lambda, HalfInt m) {
    return lambda.twice() >= 0 && abs(m) <= lambda && m.same_parity(lambda);
}

/// Matrix of rho_lambda(g) in the ascending weight basis.
struct IrrepMatrix {
    HalfInt lambda;
    CMatrix entries;
};

IrrepMatrix irrep_matrix(HalfInt lambda, Letter g, const QContext& ctx);

/// rho_lambda(w_1 w_2 ... w_n) = rho(w_1) rho(w_2) ... rho(w_n).
CMatrix irrep_word(HalfInt lambda, const GeneratorWord& w, const QContext& ctx);

/// (rho_lambda(S(g)))^t.
CMatrix dual_irrep_matrix(HalfInt lambda, Letter g, const QContext& ctx);
CMatrix dual_irrep_word(HalfInt lambda, const GeneratorWord& w, const QContext& ctx);

/// (rho_l1 (x) rho_l2)(Delta(g)) on the lexicographic tensor basis (m1, m2).
CMatrix coproduct_action(HalfInt lambda1, HalfInt lambda2, Letter g, const QContext& ctx);

}  // namespace qwp
