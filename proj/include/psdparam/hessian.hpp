#pragma once

#include "psdparam/definiteness.hpp"
#include "psdparam/parametric.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psdparam {

/// c * x_i * x_j * x_k with 0 <= i <= j <= k <= n and x_0 = 1.
struct CubicTerm {
    double coefficient = 0.0;
    std::array<int, 3> indices{0, 0, 0};

    int degree() const;
    friend bool operator==(const CubicTerm&, const CubicTerm&) = default;
};

/// Sum of cubic terms with merged index multisets, sorted by indices.
class CubicPolynomial {
public:
    CubicPolynomial() = default;
    /// Normalizes: sorts each index triple, merges equal triples, drops zero
    /// coefficients. n must cover every index used.
    CubicPolynomial(std::size_t n, std::vector<CubicTerm> terms);

    std::size_t num_vars() const { return n_; }
    const std::vector<CubicTerm>& terms() const { return terms_; }

    /// Same terms over a larger variable count.
    CubicPolynomial with_num_vars(std::size_t n) const;

    double operator()(std::span<const double> x) const;

    friend bool operator==(const CubicPolynomial&, const CubicPolynomial&) = default;

private:
    std::size_t n_ = 0;
    std::vector<CubicTerm> terms_;
};

class ParseError : public std::runtime_error {
public:
    enum class Kind { syntax, degree, unknown_variable };
    ParseError(Kind kind, std::size_t position, const std::string& message);

    Kind kind() const { return kind_; }
    std::size_t position() const { return position_; }

private:
    Kind kind_;
    std::size_t position_;
};

/// Grammar: poly := term (('+'|'-') term)* ; term := [coeff] factor ('*'? factor)* ;
/// factor := var ['^' int] ; var := 'x' int | x | y | z. Exponents 1..3, total
/// degree <= 3. The variable count is the largest index used.
CubicPolynomial parse_polynomial(std::string_view text);

/// Canonical text form, e.g. "1*x1^3 + 2*x1^2*x2 - 1*x1*x2*x3"; reparses to
/// the identical term list.
std::string to_string(const CubicPolynomial& f);

/// Exact linear parametric Hessian: coefficient k < n multiplies x_{k+1},
/// coefficient n is the constant part with parameter fixed to [1,1].
/// Throws std::invalid_argument if box.size() != f.num_vars().
ParametricSymMatrix hessian(const CubicPolynomial& f, const ParameterBox& box);

struct ConvexityReport {
    Verdict verdict;
    IntervalMatrix relaxation;
    /// Relaxation diagnostics; empty when n is too large to enumerate signs.
    std::optional<bool> relaxation_strong_psd;
    std::optional<double> hertz_min_eig;
    std::optional<double> weyl_min_eig_bound;
};

/// decide(hessian(f, box), strong_psd) plus the interval-relaxation diagnostics.
ConvexityReport certify_convexity(const CubicPolynomial& f, const ParameterBox& box, const Options& opt = {});

} // namespace psdparam
