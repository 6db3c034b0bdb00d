#pragma once

#include <cstdint>
#include <vector>

#include "knotcurv/curve.hpp"

namespace knotcurv {

/// A curve abstracted as the sequence of spherical-shell indices occupied
/// by its equal-length sub-arcs, relative to a basepoint. Consecutive
/// labels differ by at most one; epsilon (the sub-arc length) is < 1.
struct LabelString {
    std::vector<int> labels;
    double epsilon = 0.0;
    double kappa = 0.0;  // total curvature of the source curve
    Vec3 basepoint;

    std::size_t size() const { return labels.size(); }
};

/// Cuts the curve into M equal-length sub-arcs and labels each with the
/// index n of the shell S[n, n+1] it occupies; a sub-arc meeting the
/// sphere S[n] gets label n. Requires M > length (so epsilon < 1) and the
/// whole curve at distance >= 2 from the basepoint.
LabelString shell_labels(const SampledCurve& curve, const Vec3& basepoint, std::size_t M);

/// The Phi(n) bound 8*kappa*n^(3/2)/eps + 6*n/eps.
double beta_bound(double kappa, double epsilon, double n);

struct ShellProfile {
    std::vector<int> levels;      // n = 2 .. max label
    std::vector<double> phi;      // occurrences of each label
    std::vector<double> Phi;      // cumulative counts
    std::vector<double> beta;     // bound per level
    std::vector<int> violations;  // levels with Phi(n) >= beta(n)
};

ShellProfile shell_profile(const LabelString& ls);

/// Maximum number of pairwise non-overlapping jumps <n ... n+2 ... n>
/// (greedy earliest-endpoint scan; jumps may share one endpoint term).
long long count_jumps(const LabelString& ls, int n);

/// Maximum number of disjoint substrings of length ceil(3*(n+1)/eps) whose
/// labels are all <= n. With `shifted`, the length is ceil(3*(n+2)/eps)
/// and labels <= n+1.
long long count_low_substrings(const LabelString& ls, int n, bool shifted = false);

/// Energy-maximizing relabeling: real-valued label counts whose cumulative
/// sums saturate beta(n) at every level (the bound values are used
/// un-rounded, so the counts are not integers).
struct ExtremalString {
    std::vector<double> phi;  // phi[i] = mass at label i + 2
    double epsilon = 0.0;
    double kappa = 0.0;
    int max_label = 0;

    double energy() const;
    double cumulative(int n) const;
};

/// Builds the extremal string by appending top-label mass and then
/// lowering labels greedily; energy never decreases at any elementary
/// step (asserted when check_steps is set). Requires Phi(n) < beta(n).
ExtremalString construct_extremal_string(const LabelString& ls, bool check_steps = false);

/// E(L) = sum over n of phi(n) * epsilon / (n-1)^2.
double string_energy(const LabelString& ls);

struct ShellExponent {
    double beta_hat = 0.0;  // mean log-log slope of shell arclength vs n
    bool in_conjectured_range = false;  // beta_hat in [0, 2]
    double mean_residual = 0.0;
    struct PointFit {
        std::size_t vertex = 0;
        double slope = 0.0;
        double residual = 0.0;
        std::size_t shells = 0;
    };
    std::vector<PointFit> per_point;
};

/// Least-squares fit of log(shell arclength) against log(n) over seeded
/// random basepoints on the curve. Diagnostic only; callers should feed a
/// thickness-normalized curve for the density reading to make sense.
ShellExponent estimate_shell_exponent(const SampledCurve& curve, std::size_t basepoints,
                                      std::uint64_t seed);

/// Arclength of the curve inside each shell S[n, n+1] about the basepoint
/// (exact per-segment slicing); index i holds shell n = i.
std::vector<double> shell_arclengths(const SampledCurve& curve, const Vec3& basepoint);

}  // namespace knotcurv
