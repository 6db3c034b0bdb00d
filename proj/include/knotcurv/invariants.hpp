#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "knotcurv/curve.hpp"

namespace knotcurv {

struct InvariantOptions {
    unsigned workers = 0;  // 0 = use hardware concurrency
    bool refine = false;   // also compare against a 2x resampling (Richardson)
};

/// All continuous invariants of one curve. Closed-curve-only quantities
/// are absent for open inputs. error_estimates holds the analytic
/// near-diagonal band bounds (and "<name>_refine" deltas when refining);
/// bounds enter the estimates, never the values.
struct InvariantReport {
    double length = 0.0;
    double total_curvature = 0.0;
    std::optional<double> thickness;
    std::optional<double> ropelength;
    std::optional<double> acn;
    std::optional<double> writhe;
    std::optional<double> mobius_energy;
    std::optional<double> near;
    std::optional<double> far;
    std::map<std::string, double> error_estimates;
};

/// Sum of exterior angles between consecutive edge tangents (wraparound
/// included when closed; open endpoints contribute no turning).
double total_curvature(const SampledCurve& curve);

struct ThicknessDetail {
    double radius = 0.0;   // min(min_rad, dcsd / 2)
    double min_rad = 0.0;  // smallest circumradius over consecutive vertex triples
    double dcsd = 0.0;     // doubly-critical self distance (inf when no critical pair)
    std::size_t dcsd_seg_a = 0, dcsd_seg_b = 0;
    double min_gap = 0.0;  // smallest distance over non-adjacent segment pairs
    std::size_t gap_seg_a = 0, gap_seg_b = 0;
};

/// Polygonal thickness radius: min of the triple circumradius minimum and
/// half the doubly-critical self distance. Requires a closed, embedded
/// curve; self-intersections are reported with the offending segment pair.
ThicknessDetail thickness_detail(const SampledCurve& curve);
double thickness_radius(const SampledCurve& curve);

double ropelength(const SampledCurve& curve);

struct PairIntegrals {
    double acn = 0.0;            // (1/4pi) * ordered double sum of |<Tx,Ty,x-y>| / |x-y|^3
    double writhe = 0.0;         // same without the absolute value
    double mobius_energy = 0.0;  // ordered double sum of 1/|x-y|^2 - 1/arc^2
    double near = 0.0;           // unnormalized integral over arc <= pi R
    double far = 0.0;            // unnormalized integral over arc >= pi R
    double acn_band_error = 0.0;
    double writhe_band_error = 0.0;
    double mobius_band_error = 0.0;
    double near_band_error = 0.0;
    double thickness = 0.0;      // the R used for the near/far threshold
};

/// One O(N^2) midpoint-rule pass over non-adjacent segment pairs,
/// evaluating all Gauss-type double integrals together. Deterministic
/// reduction: per-row sums in fixed order, pairwise tree over rows, so the
/// result is bit-identical for any worker count.
PairIntegrals pair_integrals(const SampledCurve& curve, const InvariantOptions& opts = {});

struct ScalarWithError {
    double value = 0.0;
    double error = 0.0;
};

ScalarWithError acn(const SampledCurve& curve, const InvariantOptions& opts = {});
ScalarWithError writhe(const SampledCurve& curve, const InvariantOptions& opts = {});
ScalarWithError mobius_energy(const SampledCurve& curve, const InvariantOptions& opts = {});

struct NearFarSplit {
    double near = 0.0;
    double far = 0.0;
    double error = 0.0;
};
NearFarSplit near_far_split(const SampledCurve& curve, const InvariantOptions& opts = {});

/// Midpoint-rule line integral of 1/|y - x0|^2 over the curve.
ScalarWithError illumination(const SampledCurve& curve, const Vec3& basepoint);

struct OracleResult {
    double mean = 0.0;
    long long min_observed = 0;
    std::size_t directions = 0;
    std::size_t retries = 0;              // degenerate projections that were re-aimed
    std::vector<long long> counts;        // per-direction crossing counts
};

/// Counts transversal crossings of the projection along seeded uniform
/// random directions. Degenerate projections are deterministically
/// perturbed by 1e-6 radians and retried.
OracleResult projection_crossing_oracle(const SampledCurve& curve, std::size_t directions,
                                        std::uint64_t seed, unsigned workers = 0);

InvariantReport compute_invariants(const SampledCurve& curve, const InvariantOptions& opts = {});

/// Pointwise consequences of thickness used by the Near/Far analysis.
struct PointwiseCheck {
    std::string name;
    bool pass = true;
    double worst_ratio = 0.0;  // worst lhs/rhs over all checked pairs
    std::size_t checked = 0;
    std::size_t worst_a = 0, worst_b = 0;
};

/// Chord bound from Schur's theorem: arc <= pi R implies
/// |x-y| >= 2 R sin(arc / 2R), up to rel_tol.
PointwiseCheck check_schur_chord(const SampledCurve& curve, double thickness,
                                 double rel_tol = 1e-3);
/// Near-band integrand bound (pi/4)(pi/2)^2 / R^2 on pairs with arc <= pi R.
PointwiseCheck check_near_integrand_bound(const SampledCurve& curve, double thickness,
                                          double rel_tol = 5e-2);
/// Every consecutive-triple circumradius >= R.
PointwiseCheck check_circumradius_bound(const SampledCurve& curve, double thickness,
                                        double rel_tol = 1e-9);
/// Gap bound: arc >= pi R implies |x-y| >= 2R, up to rel_tol.
PointwiseCheck check_gap_bound(const SampledCurve& curve, double thickness,
                               double rel_tol = 1e-3);

}  // namespace knotcurv
