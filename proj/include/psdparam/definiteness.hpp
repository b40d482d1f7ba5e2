#pragma once

#include "psdparam/interval.hpp"
#include "psdparam/linalg.hpp"
#include "psdparam/parametric.hpp"
#include "psdparam/sweep.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace psdparam {

enum class Status { proved, disproved, unknown };

enum class Goal { strong_psd, strong_pd, weak_psd, weak_pd };

/// Which procedure produced a verdict.
enum class Method { none, split, regularity, vertex, necessary, witness };

std::string_view to_string(Status s);
std::string_view to_string(Goal g);
std::string_view to_string(Method m);
Definiteness definiteness_of(Goal g);
bool is_strong(Goal g);

namespace cert {

/// Every reduced vertex was checked; `min_eig` is the smallest seen.
struct VertexList {
    std::uint64_t count = 0;
    std::size_t free_parameters = 0;
    double min_eig = 0.0;
    std::vector<double> argmin;
};

/// A vertex where the target property fails (or, for Unknown, is marginal).
struct CounterexampleVertex {
    std::vector<double> p;
    double min_eig = 0.0;
    double tau = 0.0;
    bool exact_refutation = false;
};

/// The summed matrix sum_k (A1_k lo_k - A2_k hi_k).
struct SplitWitness {
    SymMatrix matrix;
    double min_eig = 0.0;
    double tau = 0.0;
};

/// Upper bound on the spectral radius used in the regularity test.
struct BeeckWitness {
    double rho = 0.0;
    bool converged = false;
    double mid_min_eig = 0.0;
};

/// The summed matrix sum_k (A1_k hi_k - A2_k lo_k).
struct NecessaryFailure {
    SymMatrix matrix;
    double min_eig = 0.0;
    double tau = 0.0;
    bool exact_refutation = false;
};

/// A parameter point where A(p) has the target property.
struct WitnessPoint {
    std::vector<double> p;
    double min_eig = 0.0;
};

} // namespace cert

using Certificate = std::variant<std::monostate, cert::VertexList, cert::CounterexampleVertex, cert::SplitWitness,
                                 cert::BeeckWitness, cert::NecessaryFailure, cert::WitnessPoint>;

struct StageTiming {
    Method method = Method::none;
    Status status = Status::unknown;
    double milliseconds = 0.0;
};

struct Verdict {
    Status status = Status::unknown;
    Method method = Method::none;
    Certificate certificate;
    /// Free-form reason for Unknown results (budget, singular midpoint, ...).
    std::string note;
    /// Filled by decide(): one entry per stage that ran, in order.
    std::vector<StageTiming> stages;
};

struct Options {
    Tolerance tol;
    std::uint64_t vertex_budget = std::uint64_t{1} << 20;
    Exec exec = Exec::parallel;
    unsigned restarts = 20;
    std::uint64_t seed = 0x5EED;
    /// Regularity needs rho < 1 - margin.
    double regularity_margin = 1e-9;
};

/// A_k = plus - minus with the spectral split skipped for PSD (minus = 0)
/// and NSD (plus = 0) coefficients.
PsdSplit split_coefficient(const SymMatrix& a, const Tolerance& tol);

/// sum_k (A1_k lo_k - A2_k hi_k); the matrix tested by the splitting condition.
SymMatrix split_lower_sum(const ParametricSymMatrix& pm, const Tolerance& tol);
/// sum_k (A1_k hi_k - A2_k lo_k); the matrix tested by the necessary condition.
SymMatrix split_upper_sum(const ParametricSymMatrix& pm, const Tolerance& tol);

/// Vertex characterization over the reduced vertex set.
Verdict strong_psd(const ParametricSymMatrix& pm, const Options& opt = {});
Verdict strong_pd(const ParametricSymMatrix& pm, const Options& opt = {});

/// Splitting sufficient condition; never Disproved.
Verdict strong_psd_split(const ParametricSymMatrix& pm, const Options& opt = {});
Verdict strong_pd_split(const ParametricSymMatrix& pm, const Options& opt = {});

/// Necessary condition for weak (semi)definiteness; Disproved or Unknown.
Verdict weak_psd_necessary(const ParametricSymMatrix& pm, const Options& opt = {});
Verdict weak_pd_necessary(const ParametricSymMatrix& pm, const Options& opt = {});

/// Positive definite at mid p plus the preconditioned Beeck regularity
/// condition; Proved or Unknown.
Verdict strong_pd_regularity(const ParametricSymMatrix& pm, const Options& opt = {});

/// Classical sign-vector characterizations for a symmetric interval matrix.
/// Throw std::invalid_argument for an asymmetric input.
bool strong_psd_interval(const IntervalMatrix& a, const Options& opt = {});
bool strong_pd_interval(const IntervalMatrix& a, const Options& opt = {});

/// Exact smallest eigenvalue over the symmetric members of `a`:
/// min over z (z_1 = +1) of lambda_min(Mid A - diag(z) Rad A diag(z)).
double hertz_min_eig(const IntervalMatrix& a, Exec exec = Exec::parallel);

/// lambda_min(Mid A) - rho(Rad A): the cheap Weyl-type lower bound on the
/// same quantity. Never larger than hertz_min_eig.
double weyl_min_eig_bound(const IntervalMatrix& a);

/// Multi-start projected coordinate ascent on lambda_min(A(p)). Returns a
/// point where A(p) is PD (min_eig > tau) or PSD (min_eig >= -tau).
std::optional<cert::WitnessPoint> weak_witness(const ParametricSymMatrix& pm, Definiteness d, const Options& opt = {});
inline std::optional<cert::WitnessPoint> weak_pd_witness(const ParametricSymMatrix& pm, const Options& opt = {})
{
    return weak_witness(pm, Definiteness::definite, opt);
}

/// Cheap-to-expensive cascade. Strong goals: split, regularity (PD only),
/// vertices; weak goals: necessary condition, witness search.
Verdict decide(const ParametricSymMatrix& pm, Goal goal, const Options& opt = {});

/// Run exactly one procedure for `goal` (used by the CLI's --method switch).
/// Combinations that do not apply (e.g. regularity for a PSD goal) yield Unknown.
Verdict decide_with(const ParametricSymMatrix& pm, Goal goal, Method method, const Options& opt = {});

} // namespace psdparam
