// Picard iteration with convergence certification.
//
// Finite spaces iterate until an exact fixed-point index is hit (or a cycle
// proves there is none on this orbit); analytic spaces declare convergence
// through a windowed left-Cauchy criterion, since the limit is unknown a
// priori.  Because d may be asymmetric, both forward gaps a_n = d(x_{n-1},
// x_n) and backward gaps c_n = d(x_n, x_{n-1}) are recorded; convergence is
// judged on the forward orientation and the backward one is diagnostic.
//
// A certified run also carries a gap-decay certificate a_n <=
// envelope^{n-1}(a_1) against the monotone envelope of the governing
// comparison function (banach / nonlinear / extended / quasi modes; the
// iterated hypothesis does not imply that single-step bound).
//
// Finite results are cross-checked against the brute-force fixed-point
// oracle; a certified hypothesis on an A1 space with a non-singleton oracle
// set, or a converged limit outside it, is an implementation bug and throws
// OracleMismatch rather than reporting anything.

#ifndef PICARD_SOLVER_HPP
#define PICARD_SOLVER_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "picard/contraction.hpp"

namespace picard {

enum class StopReason { Tolerance, MaxIter, ExactFixedPoint };

inline const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::Tolerance: return "tolerance";
        case StopReason::MaxIter: return "max_iter";
        case StopReason::ExactFixedPoint: return "exact_fixed_point";
    }
    return "max_iter";
}

enum class Uniqueness { VerifiedByOracle, VerifiedByContractionArgument, Unverified };

inline const char* to_string(Uniqueness u) {
    switch (u) {
        case Uniqueness::VerifiedByOracle: return "verified-by-oracle";
        case Uniqueness::VerifiedByContractionArgument: return "verified-by-contraction-argument";
        case Uniqueness::Unverified: return "unverified";
    }
    return "unverified";
}

struct SolveOptions {
    double tol = 1e-9;
    std::size_t max_iter = 100000;
    std::size_t window = 8;
    bool force_run = false;                 // iterate even when the hypothesis fails
    std::optional<double> alt_start;        // analytic two-start uniqueness seed
    PhiPolicy phi_policy = PhiPolicy::Enforce;
    SamplerConfig sampler;
};

struct FiniteOrbit {
    std::vector<std::size_t> points;
    std::vector<Rat> forward_gaps;   // a_n = d(x_{n-1}, x_n)
    std::vector<Rat> backward_gaps;  // c_n = d(x_n, x_{n-1})
    bool converged = false;
    std::optional<std::size_t> limit;
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::MaxIter;
    bool cycle_detected = false;
};

struct AnalyticOrbit {
    std::vector<double> points;
    std::vector<double> forward_gaps;
    std::vector<double> backward_gaps;
    bool converged = false;
    std::optional<double> limit;
    std::size_t iterations = 0;
    StopReason stop_reason = StopReason::MaxIter;
    double window_forward_max = 0;
    double window_backward_max = 0;
};

inline FiniteOrbit picard_orbit(const FiniteSpace& s, const FiniteMap& f, std::size_t x0,
                                const SolveOptions& opts = {}) {
    if (x0 >= s.size()) throw std::invalid_argument("start point out of range");
    FiniteOrbit orb;
    orb.points.push_back(x0);
    std::vector<char> seen(s.size(), 0);
    seen[x0] = 1;
    std::size_t x = x0;
    while (orb.iterations < opts.max_iter) {
        std::size_t nx = f(x);
        if (nx == x) {
            orb.stop_reason = StopReason::ExactFixedPoint;
            // a fixed point of f is only a d-limit of its own orbit when the
            // self-distance vanishes
            orb.converged = s.d(x, x).is_zero();
            if (orb.converged) orb.limit = x;
            return orb;
        }
        orb.forward_gaps.push_back(s.d(x, nx));
        orb.backward_gaps.push_back(s.d(nx, x));
        orb.points.push_back(nx);
        ++orb.iterations;
        if (seen[nx]) {  // revisiting a non-fixed point: the orbit cycles forever
            orb.cycle_detected = true;
            orb.stop_reason = StopReason::MaxIter;
            return orb;
        }
        seen[nx] = 1;
        x = nx;
    }
    return orb;
}

inline AnalyticOrbit picard_orbit(const AnalyticSpace& s, const AnalyticMap& f, double x0,
                                  const SolveOptions& opts = {}) {
    if (opts.window < 1) throw std::invalid_argument("window must be >= 1");
    if (!(opts.tol > 0)) throw std::invalid_argument("tolerance must be positive");
    AnalyticOrbit orb;
    orb.points.push_back(x0);
    double x = x0;
    while (orb.iterations < opts.max_iter) {
        double nx = f(x);
        if (!std::isfinite(nx)) return orb;
        orb.forward_gaps.push_back(s.d(x, nx));
        orb.backward_gaps.push_back(s.d(nx, x));
        orb.points.push_back(nx);
        ++orb.iterations;
        x = nx;

        if (orb.points.size() >= opts.window + 1) {
            std::size_t lo = orb.points.size() - opts.window;
            double fwd = 0, bwd = 0;
            for (std::size_t i = lo; i < orb.points.size(); ++i)
                for (std::size_t j = i + 1; j < orb.points.size(); ++j) {
                    fwd = std::max(fwd, s.d(orb.points[i], orb.points[j]));
                    bwd = std::max(bwd, s.d(orb.points[j], orb.points[i]));
                }
            orb.window_forward_max = fwd;
            orb.window_backward_max = bwd;
            if (fwd <= opts.tol) {
                orb.converged = true;
                orb.stop_reason = StopReason::Tolerance;
                orb.limit = orb.points.back();
                return orb;
            }
        }
    }
    return orb;
}

inline std::vector<std::size_t> brute_force_fixed_points(const FiniteMap& f) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f(i) == i) out.push_back(i);
    return out;
}

// ---------------------------------------------------------------------------
// Contraction modes

struct ModeBanach {
    Rat alpha;
};
struct ModeNonlinear {
    PiecewiseFn phi;
};
struct ModeExtended {
    PiecewiseFn phi1, phi2, phi3;
};
struct ModeIterated {
    PiecewiseFn phi;
    std::size_t n = 0;
};
struct ModeQuasi {
    PiecewiseFn psi1, psi2, psi3;
};

using Mode = std::variant<ModeBanach, ModeNonlinear, ModeExtended, ModeIterated, ModeQuasi>;

inline std::string mode_name(const Mode& m) {
    switch (m.index()) {
        case 0: return "banach";
        case 1: return "nonlinear";
        case 2: return "extended";
        case 3: return "iterated";
        case 4: return "quasi";
    }
    return "?";
}

/// Monotone envelope of the comparison function governing single-step gap
/// decay; absent for the iterated mode, whose hypothesis constrains only the
/// (n+1)-st iterate.
inline std::optional<PiecewiseFn> governing_envelope(const Mode& m) {
    if (const auto* b = std::get_if<ModeBanach>(&m)) return PiecewiseFn::affine(b->alpha, Rat(0));
    if (const auto* nl = std::get_if<ModeNonlinear>(&m)) return monotone_envelope(nl->phi);
    if (const auto* ex = std::get_if<ModeExtended>(&m))
        return monotone_envelope(max_combine({ex->phi1, ex->phi2, ex->phi3}));
    if (const auto* q = std::get_if<ModeQuasi>(&m))
        return monotone_envelope(max_combine({q->psi1, q->psi2, q->psi3}));
    return std::nullopt;
}

inline HypothesisReport run_hypothesis(const FiniteSpace& s, const FiniteMap& f, const Mode& m,
                                       PhiPolicy policy) {
    if (const auto* b = std::get_if<ModeBanach>(&m)) return check_banach(s, f, b->alpha);
    if (const auto* nl = std::get_if<ModeNonlinear>(&m))
        return check_nonlinear_contraction(s, f, nl->phi, policy);
    if (const auto* ex = std::get_if<ModeExtended>(&m))
        return check_extended_contraction(s, f, ex->phi1, ex->phi2, ex->phi3, policy);
    if (const auto* it = std::get_if<ModeIterated>(&m))
        return check_iterated_contraction(s, f, it->phi, it->n, policy);
    const auto& q = std::get<ModeQuasi>(m);
    auto rep = check_extended_contraction(s, f, q.psi1, q.psi2, q.psi3, policy);
    rep.mode = "quasi";
    return rep;
}

inline HypothesisReport run_hypothesis(const AnalyticSpace& s, const AnalyticMap& f, const Mode& m,
                                       PhiPolicy policy, const SamplerConfig& cfg) {
    if (const auto* b = std::get_if<ModeBanach>(&m)) return check_banach(s, f, b->alpha, cfg);
    if (const auto* nl = std::get_if<ModeNonlinear>(&m))
        return check_nonlinear_contraction(s, f, nl->phi, policy, cfg);
    if (const auto* ex = std::get_if<ModeExtended>(&m))
        return check_extended_contraction(s, f, ex->phi1, ex->phi2, ex->phi3, policy, cfg);
    if (const auto* it = std::get_if<ModeIterated>(&m))
        return check_iterated_contraction(s, f, it->phi, it->n, policy, cfg);
    const auto& q = std::get<ModeQuasi>(m);
    auto rep = check_extended_contraction(s, f, q.psi1, q.psi2, q.psi3, policy, cfg);
    rep.mode = "quasi";
    return rep;
}

// ---------------------------------------------------------------------------
// Certified solve

struct GapCertificate {
    bool checked = false;
    bool ok = true;
    double worst_excess = 0;     // max over n of a_n - envelope^{n-1}(a_1)
    std::size_t worst_index = 0; // 1-based gap index attaining it
};

inline GapCertificate check_gap_decay(const std::vector<double>& forward_gaps,
                                      const PiecewiseFn& envelope, double slack = 1e-12) {
    GapCertificate cert;
    cert.checked = true;
    if (forward_gaps.empty()) return cert;
    double bound = forward_gaps.front();
    for (std::size_t n = 0; n < forward_gaps.size(); ++n) {
        if (n > 0) bound = envelope.eval(bound);
        double excess = forward_gaps[n] - bound;
        if (excess > cert.worst_excess) {
            cert.worst_excess = excess;
            cert.worst_index = n + 1;
        }
    }
    cert.ok = cert.worst_excess <= slack;
    return cert;
}

struct PreconditionReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
};

struct OracleMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct FiniteFixedPointResult {
    HypothesisReport hypothesis;
    PreconditionReport preconditions;
    std::optional<DContinuityReport> d_continuity;
    std::optional<FiniteOrbit> orbit;
    std::vector<std::size_t> oracle;  // brute-force fixed points of f
    Uniqueness uniqueness = Uniqueness::Unverified;
    std::optional<std::size_t> fixed_point;
    bool certified = false;
    GapCertificate gap_certificate;
};

struct AnalyticFixedPointResult {
    HypothesisReport hypothesis;
    PreconditionReport preconditions;
    std::optional<AnalyticOrbit> orbit;
    std::optional<AnalyticOrbit> second_orbit;
    Uniqueness uniqueness = Uniqueness::Unverified;
    std::optional<double> fixed_point;
    bool certified = false;
    GapCertificate gap_certificate;
};

namespace solvedetail {

inline bool needs_d_continuity(const Mode& m) {
    return std::holds_alternative<ModeExtended>(m) || std::holds_alternative<ModeQuasi>(m) ||
           std::holds_alternative<ModeIterated>(m);
}

} // namespace solvedetail

inline FiniteFixedPointResult solve_fixed_point(const FiniteSpace& s, const FiniteMap& f,
                                                const Mode& mode, std::size_t x0,
                                                const SolveOptions& opts = {}) {
    FiniteFixedPointResult res;
    res.hypothesis = run_hypothesis(s, f, mode, opts.phi_policy);

    if (solvedetail::needs_d_continuity(mode)) {
        res.d_continuity = check_d_continuity(s, f);
        if (!res.d_continuity->holds) res.preconditions.fail("map is not left sequentially d-continuous");
    }
    auto axioms = classify_axioms(s);
    if (std::holds_alternative<ModeQuasi>(mode) && !(axioms.a1.holds && axioms.a3.holds))
        res.preconditions.fail("quasi mode requires a quasi-metric space (A1 and A3)");

    res.certified = res.hypothesis.holds && res.hypothesis.phi_ok && res.preconditions.ok;
    if (!res.certified && !opts.force_run) return res;

    res.orbit = picard_orbit(s, f, x0, opts);
    res.oracle = brute_force_fixed_points(f);

    if (res.certified && axioms.a1.holds && res.oracle.size() != 1)
        throw OracleMismatch("hypothesis verified on an A1 space but f has " +
                             std::to_string(res.oracle.size()) + " fixed points");
    if (res.orbit->converged) {
        std::size_t limit = *res.orbit->limit;
        bool in_oracle = false;
        for (std::size_t p : res.oracle) in_oracle |= p == limit;
        if (!in_oracle) throw OracleMismatch("orbit limit is not a fixed point of f");
        res.fixed_point = limit;
        if (res.oracle.size() == 1) res.uniqueness = Uniqueness::VerifiedByOracle;
    }

    if (res.certified && res.orbit) {
        if (auto env = governing_envelope(mode)) {
            std::vector<double> gaps;
            gaps.reserve(res.orbit->forward_gaps.size());
            for (const Rat& g : res.orbit->forward_gaps) gaps.push_back(g.to_double());
            res.gap_certificate = check_gap_decay(gaps, *env);
        }
    }
    return res;
}

inline AnalyticFixedPointResult solve_fixed_point(const AnalyticSpace& s, const AnalyticMap& f,
                                                  const Mode& mode, double x0,
                                                  const SolveOptions& opts = {}) {
    if (!s.domain().contains(x0)) throw std::invalid_argument("start point outside the domain");
    AnalyticFixedPointResult res;
    res.hypothesis = run_hypothesis(s, f, mode, opts.phi_policy, opts.sampler);

    if (!s.complete()) res.preconditions.fail("analytic space is not asserted complete");
    if (std::holds_alternative<ModeQuasi>(mode)) {
        auto axioms = classify_axioms(s, opts.sampler);
        if (!(axioms.a1.holds && axioms.a3.holds))
            res.preconditions.fail("quasi mode requires a quasi-metric space (A1 and A3, sampled)");
    }

    res.certified = res.hypothesis.holds && res.hypothesis.phi_ok && res.preconditions.ok;
    if (!res.certified && !opts.force_run) return res;

    res.orbit = picard_orbit(s, f, x0, opts);
    if (res.orbit->converged) res.fixed_point = res.orbit->limit;

    double alt = opts.alt_start.value_or(
        s.domain().whole_line ? x0 + 1 : (s.domain().lo + s.domain().hi) / 2);
    if (!s.domain().contains(alt)) alt = (s.domain().lo + s.domain().hi) / 2;
    if (alt != x0) {
        res.second_orbit = picard_orbit(s, f, alt, opts);
        if (res.fixed_point && res.second_orbit->converged) {
            double u = *res.fixed_point, v = *res.second_orbit->limit;
            if (s.d(u, v) <= 10 * opts.tol && s.d(v, u) <= 10 * opts.tol)
                res.uniqueness = Uniqueness::VerifiedByContractionArgument;
        }
    }

    if (res.certified && res.orbit) {
        if (auto env = governing_envelope(mode)) res.gap_certificate = check_gap_decay(res.orbit->forward_gaps, *env);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Power-map reduction: solve for f^l, lift the fixed point back to f

enum class LiftOutcome { Ok, HypothesisFailed, LiftFailure };

inline const char* to_string(LiftOutcome o) {
    switch (o) {
        case LiftOutcome::Ok: return "ok";
        case LiftOutcome::HypothesisFailed: return "hypothesis-failed";
        case LiftOutcome::LiftFailure: return "lift-failure";
    }
    return "?";
}

struct FinitePowerResult {
    std::size_t l = 1;
    LiftOutcome outcome = LiftOutcome::LiftFailure;
    std::string reason;
    std::vector<std::size_t> power_oracle;  // fixed points of f^l
    std::optional<FiniteFixedPointResult> power_solve;
    std::optional<FiniteOrbit> base_orbit;
    std::optional<std::size_t> fixed_point;
    bool subsample_consistent = false;  // (x_{l n}) of f equals the f^l orbit
};

inline FinitePowerResult power_map_reduction(const FiniteSpace& s, const FiniteMap& f, std::size_t l,
                                             const Mode& mode, std::size_t x0,
                                             const SolveOptions& opts = {}) {
    if (l < 1) throw std::invalid_argument("power must be >= 1");
    FinitePowerResult res;
    res.l = l;
    FiniteMap g = compose_power(f, l);
    res.power_oracle = brute_force_fixed_points(g);
    if (res.power_oracle.size() != 1) {
        res.reason = "f^" + std::to_string(l) + " has " + std::to_string(res.power_oracle.size()) +
                     " fixed points; the uniqueness premise fails";
        return res;
    }
    res.power_solve = solve_fixed_point(s, g, mode, x0, opts);
    if (!res.power_solve->fixed_point) {
        res.outcome = LiftOutcome::HypothesisFailed;
        res.reason = res.power_solve->certified ? "power orbit did not converge"
                                                : "hypothesis fails for f^" + std::to_string(l);
        return res;
    }
    std::size_t u = *res.power_solve->fixed_point;
    if (f(u) != u) {
        res.reason = "fixed point of f^" + std::to_string(l) + " is not fixed by f";
        return res;
    }
    res.base_orbit = picard_orbit(s, f, x0, opts);
    if (!res.base_orbit->converged || *res.base_orbit->limit != u) {
        res.reason = "orbit of f does not converge to the lifted fixed point";
        return res;
    }
    res.subsample_consistent = true;
    const auto& base = res.base_orbit->points;
    const auto& pow = res.power_solve->orbit->points;
    for (std::size_t k = 0; k < pow.size(); ++k) {
        std::size_t ix = k * l;
        std::size_t expect = ix < base.size() ? base[ix] : base.back();
        if (pow[k] != expect) res.subsample_consistent = false;
    }
    res.outcome = LiftOutcome::Ok;
    res.fixed_point = u;
    return res;
}

struct AnalyticPowerResult {
    std::size_t l = 1;
    LiftOutcome outcome = LiftOutcome::LiftFailure;
    std::string reason;
    std::optional<AnalyticFixedPointResult> power_solve;
    std::optional<AnalyticOrbit> base_orbit;
    std::optional<double> fixed_point;
    double lift_residual_forward = 0;   // d(u, f(u))
    double lift_residual_backward = 0;  // d(f(u), u)
};

inline AnalyticPowerResult power_map_reduction(const AnalyticSpace& s, const AnalyticMap& f,
                                               std::size_t l, const Mode& mode, double x0,
                                               const SolveOptions& opts = {}) {
    if (l < 1) throw std::invalid_argument("power must be >= 1");
    AnalyticPowerResult res;
    res.l = l;
    AnalyticMap g = compose_power(f, l);
    res.power_solve = solve_fixed_point(s, g, mode, x0, opts);
    if (!res.power_solve->fixed_point) {
        res.outcome = LiftOutcome::HypothesisFailed;
        res.reason = res.power_solve->certified ? "power orbit did not converge"
                                                : "hypothesis fails for f^" + std::to_string(l);
        return res;
    }
    double u = *res.power_solve->fixed_point;
    res.lift_residual_forward = s.d(u, f(u));
    res.lift_residual_backward = s.d(f(u), u);
    if (res.lift_residual_forward > opts.tol || res.lift_residual_backward > opts.tol) {
        res.reason = "fixed point of f^" + std::to_string(l) + " is not fixed by f within tolerance";
        return res;
    }
    res.base_orbit = picard_orbit(s, f, x0, opts);
    if (!res.base_orbit->converged) {
        res.reason = "orbit of f did not converge";
        return res;
    }
    double last = *res.base_orbit->limit;
    if (s.d(last, u) > 10 * opts.tol || s.d(u, last) > 10 * opts.tol) {
        res.reason = "orbit of f converges away from the lifted fixed point";
        return res;
    }
    res.outcome = LiftOutcome::Ok;
    res.fixed_point = u;
    return res;
}

} // namespace picard

#endif
