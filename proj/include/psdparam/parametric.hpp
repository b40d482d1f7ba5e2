#pragma once

#include "psdparam/interval.hpp"
#include "psdparam/linalg.hpp"
#include "psdparam/matrix.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace psdparam {

/// Box of parameter intervals p_1, ..., p_K.
class ParameterBox {
public:
    ParameterBox() = default;
    explicit ParameterBox(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {}

    std::size_t size() const { return intervals_.size(); }
    const Interval& operator[](std::size_t k) const { return intervals_[k]; }
    const std::vector<Interval>& intervals() const { return intervals_; }

    std::vector<double> lower() const;
    std::vector<double> upper() const;
    std::vector<double> mid() const;
    std::vector<double> rad() const;

    /// Entrywise membership with absolute slack.
    bool contains(std::span<const double> p, double slack = 1e-12) const;

private:
    std::vector<Interval> intervals_;
};

/// Raised when p lies outside the parameter box.
class OutOfBoxError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A(p) = sum_k A_k p_k with fixed symmetric A_k and p in a box.
class ParametricSymMatrix {
public:
    /// Throws std::invalid_argument on dimension or count mismatch.
    ParametricSymMatrix(std::vector<SymMatrix> coefficients, ParameterBox box);

    std::size_t dim() const { return dim_; }
    std::size_t num_params() const { return coeffs_.size(); }
    const std::vector<SymMatrix>& coefficients() const { return coeffs_; }
    const SymMatrix& coefficient(std::size_t k) const { return coeffs_[k]; }
    const ParameterBox& box() const { return box_; }

private:
    std::size_t dim_ = 0;
    std::vector<SymMatrix> coeffs_;
    ParameterBox box_;
};

/// sum_k A_k p_k. Throws OutOfBoxError if p is outside the box (1e-12 slack).
SymMatrix evaluate(const ParametricSymMatrix& pm, std::span<const double> p);
/// Same sum without the membership check; used by sweeps over known vertices.
void evaluate_into(const ParametricSymMatrix& pm, std::span<const double> p, SymMatrix& out);

/// Interval enclosure sum_k A_k * p_k (dependencies dropped).
IntervalMatrix relax(const ParametricSymMatrix& pm, Rounding r = Rounding::outward);

struct Preconditioned {
    Matrix preconditioner; ///< C = A(mid p)^{-1}
    IntervalMatrix relaxed; ///< M = sum_k (C A_k) p_k
};

/// Throws SingularMatrixError when A(mid p) cannot be inverted.
Preconditioned precondition_relax(const ParametricSymMatrix& pm);

enum class Definiteness { semidefinite, definite };

/// Vertex set of the box after fixing coordinates that cannot matter:
/// degenerate intervals, PSD coefficients (fixed at the lower end) and
/// NSD coefficients (fixed at the upper end). The free coordinates are
/// enumerated in Gray-code order.
class VertexPlan {
public:
    VertexPlan(const ParametricSymMatrix& pm, const Tolerance& tol = {});

    std::size_t num_params() const { return base_.size(); }
    std::size_t num_free() const { return free_.size(); }
    /// 2^free; saturates at UINT64_MAX for free >= 64.
    std::uint64_t count() const;
    const std::vector<std::size_t>& free_coordinates() const { return free_; }
    /// True for coordinates fixed by a reduction or degenerate interval.
    const std::vector<bool>& fixed_mask() const { return fixed_; }

    /// Fills p with the vertex at Gray-code position `index`.
    void vertex(std::uint64_t index, std::span<double> p) const;
    std::vector<double> vertex(std::uint64_t index) const;

private:
    std::vector<double> base_;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<std::size_t> free_;
    std::vector<bool> fixed_;
};

struct VertexAssignment {
    std::vector<double> values;
    std::vector<bool> fixed_mask;
};

/// Materializes the full reduced vertex sequence. Prefer VertexPlan for large sets.
std::vector<VertexAssignment> vertices(const ParametricSymMatrix& pm, const Tolerance& tol = {});

inline std::uint64_t gray_code(std::uint64_t i) { return i ^ (i >> 1); }

} // namespace psdparam
