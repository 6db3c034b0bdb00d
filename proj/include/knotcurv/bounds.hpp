#pragma once

#include <optional>
#include <string>
#include <vector>

#include "knotcurv/curve.hpp"
#include "knotcurv/invariants.hpp"
#include "knotcurv/shells.hpp"

namespace knotcurv {

/// One certified inequality instance. pass is exactly lhs <= rhs +
/// tolerance_used; tolerance_used may be negative when the check folds a
/// measurement error into the conservative side.
struct BoundCertificate {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool pass = false;
    double tolerance_used = 0.0;
    std::string inputs_digest;
};

BoundCertificate make_certificate(const std::string& name, double lhs, double rhs,
                                  double tolerance, const std::string& digest);

/// FNV-1a digest of a curve plus a free-form note, for certificate
/// provenance strings.
std::string curve_digest(const SampledCurve& curve, const std::string& note);

/// Packing lemma: L <= rho * (kappa + 2) for open curves, L <= rho * kappa
/// for closed ones; adds the corollary certificate (1 <= kappa) when
/// L >= 3 rho. rho defaults to the min-enclosing-ball radius and the curve
/// must fit in a ball of the supplied radius.
std::vector<BoundCertificate> check_packing(const SampledCurve& curve,
                                            std::optional<double> rho = std::nullopt);

/// Oscillation lemma for an arc from sphere radius a out past radius b and
/// back: kappa >= pi - 2 asin(a/b), plus the 2*sqrt(2)/sqrt(a+1) form when
/// b >= a+1 and the simplified 2/sqrt(a) form when also a >= 2. The
/// measured curvature is taken on a 4x refined resampling.
std::vector<BoundCertificate> check_oscillation(const SampledCurve& arc, double a, double b,
                                                const Vec3& center);

/// Illumination lemma: integral of 1/|y-x0|^2 <= 16 + 43 kappa, for curves
/// at distance >= 2 from the basepoint.
BoundCertificate check_illumination(const SampledCurve& curve, const Vec3& basepoint);

/// Main theorem, both the headline constant (acn < 4 E_L kappa) and the
/// assembled constant c = (c2 + (b1 + c1)/2pi) / 4pi with b1 =
/// 2pi(pi/4)(pi/2)^2, c1 = 16, c2 = 43. The acn quadrature error is folded
/// into the left side.
std::vector<BoundCertificate> check_main_theorem(const SampledCurve& curve,
                                                 const InvariantOptions& opts = {});

/// The shell-label machinery as certificates: contiguity, the Phi < beta
/// proposition, the jump and low-substring constraints, energy
/// monotonicity E(L_Y) <= E(L*), the E(L*) < 16 + 43 kappa bound, and
/// illumination <= E(L_Y). M = 0 picks the smallest valid sub-arc count
/// with epsilon around 0.8.
std::vector<BoundCertificate> check_shell_suite(const SampledCurve& curve, const Vec3& basepoint,
                                                std::size_t M = 0);

}  // namespace knotcurv
