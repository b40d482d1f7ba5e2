#include "psdparam/parametric.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace psdparam {

std::vector<double> ParameterBox::lower() const
{
    std::vector<double> v;
    v.reserve(size());
    for (const auto& i : intervals_)
        v.push_back(i.inf());
    return v;
}

std::vector<double> ParameterBox::upper() const
{
    std::vector<double> v;
    v.reserve(size());
    for (const auto& i : intervals_)
        v.push_back(i.sup());
    return v;
}

std::vector<double> ParameterBox::mid() const
{
    std::vector<double> v;
    v.reserve(size());
    for (const auto& i : intervals_)
        v.push_back(i.mid());
    return v;
}

std::vector<double> ParameterBox::rad() const
{
    std::vector<double> v;
    v.reserve(size());
    for (const auto& i : intervals_)
        v.push_back(i.rad());
    return v;
}

bool ParameterBox::contains(std::span<const double> p, double slack) const
{
    if (p.size() != size())
        return false;
    for (std::size_t k = 0; k < size(); ++k)
        if (!(p[k] >= intervals_[k].inf() - slack && p[k] <= intervals_[k].sup() + slack))
            return false;
    return true;
}

ParametricSymMatrix::ParametricSymMatrix(std::vector<SymMatrix> coefficients, ParameterBox box)
    : coeffs_(std::move(coefficients)), box_(std::move(box))
{
    if (coeffs_.size() != box_.size()) {
        std::ostringstream os;
        os << "ParametricSymMatrix: " << coeffs_.size() << " coefficient matrices but " << box_.size()
           << " parameters";
        throw std::invalid_argument(os.str());
    }
    if (coeffs_.empty())
        throw std::invalid_argument("ParametricSymMatrix: at least one parameter is required");
    dim_ = coeffs_.front().size();
    for (const auto& c : coeffs_)
        if (c.size() != dim_)
            throw std::invalid_argument("ParametricSymMatrix: coefficient matrices differ in size");
}

void evaluate_into(const ParametricSymMatrix& pm, std::span<const double> p, SymMatrix& out)
{
    if (out.size() != pm.dim())
        out = SymMatrix(pm.dim());
    else
        out *= 0.0;
    for (std::size_t k = 0; k < pm.num_params(); ++k)
        if (p[k] != 0.0)
            out.add_scaled(pm.coefficient(k), p[k]);
}

SymMatrix evaluate(const ParametricSymMatrix& pm, std::span<const double> p)
{
    if (p.size() != pm.num_params())
        throw std::invalid_argument("evaluate: parameter vector has wrong length");
    if (!pm.box().contains(p)) {
        std::ostringstream os;
        os << "evaluate: parameter vector outside the box";
        for (std::size_t k = 0; k < p.size(); ++k)
            if (!pm.box()[k].contains(p[k]))
                os << " (p" << k + 1 << " = " << p[k] << " not in " << to_string(pm.box()[k]) << ')';
        throw OutOfBoxError(os.str());
    }
    SymMatrix out(pm.dim());
    evaluate_into(pm, p, out);
    return out;
}

IntervalMatrix relax(const ParametricSymMatrix& pm, Rounding r)
{
    IntervalMatrix acc = scale(pm.coefficient(0), pm.box()[0], r);
    for (std::size_t k = 1; k < pm.num_params(); ++k)
        acc = im_add(acc, scale(pm.coefficient(k), pm.box()[k], r), r);
    return acc;
}

Preconditioned precondition_relax(const ParametricSymMatrix& pm)
{
    const std::vector<double> mid = pm.box().mid();
    Preconditioned out;
    out.preconditioner = invert(evaluate(pm, mid));
    out.relaxed = scale(out.preconditioner * pm.coefficient(0).matrix(), pm.box()[0]);
    for (std::size_t k = 1; k < pm.num_params(); ++k)
        out.relaxed = im_add(out.relaxed, scale(out.preconditioner * pm.coefficient(k).matrix(), pm.box()[k]));
    return out;
}

VertexPlan::VertexPlan(const ParametricSymMatrix& pm, const Tolerance& tol)
{
    const std::size_t k_count = pm.num_params();
    lower_ = pm.box().lower();
    upper_ = pm.box().upper();
    base_ = lower_;
    fixed_.assign(k_count, true);
    for (std::size_t k = 0; k < k_count; ++k) {
        if (pm.box()[k].degenerate())
            continue;
        const SymMatrix& a = pm.coefficient(k);
        const double tau = tol.for_matrix(a);
        const EigenDecomposition e = eig_sym(a, false);
        const double lo = e.values.empty() ? 0.0 : e.values.front();
        const double hi = e.values.empty() ? 0.0 : e.values.back();
        if (lo >= -tau) {
            base_[k] = lower_[k];
        } else if (hi <= tau) {
            base_[k] = upper_[k];
        } else {
            fixed_[k] = false;
            free_.push_back(k);
        }
    }
}

std::uint64_t VertexPlan::count() const
{
    if (free_.size() >= 64)
        return std::numeric_limits<std::uint64_t>::max();
    return std::uint64_t{1} << free_.size();
}

void VertexPlan::vertex(std::uint64_t index, std::span<double> p) const
{
    std::copy(base_.begin(), base_.end(), p.begin());
    const std::uint64_t code = gray_code(index);
    for (std::size_t b = 0; b < free_.size(); ++b) {
        const std::size_t k = free_[b];
        p[k] = (code >> b) & 1u ? upper_[k] : lower_[k];
    }
}

std::vector<double> VertexPlan::vertex(std::uint64_t index) const
{
    std::vector<double> p(base_.size());
    vertex(index, p);
    return p;
}

std::vector<VertexAssignment> vertices(const ParametricSymMatrix& pm, const Tolerance& tol)
{
    const VertexPlan plan(pm, tol);
    if (plan.num_free() > 30)
        throw std::length_error("vertices: too many free parameters to materialize");
    std::vector<VertexAssignment> out;
    out.reserve(plan.count());
    for (std::uint64_t i = 0; i < plan.count(); ++i)
        out.push_back({plan.vertex(i), plan.fixed_mask()});
    return out;
}

} // namespace psdparam
