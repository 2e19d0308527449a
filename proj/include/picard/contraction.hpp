// Self-maps and verifiers for the contraction hypotheses.
//
// Every verifier reports the worst margin (max over checked pairs of
// lhs - rhs) and the pair attaining it, so near-violations stay visible.
// Finite spaces are scanned exhaustively in exact arithmetic with holds
// meaning margin <= 0; analytic spaces are sampled over a seeded pair set
// and compared with an absolute tolerance of 1e-12.  All inequalities are
// non-strict, matching the hypotheses they verify.

#ifndef PICARD_CONTRACTION_HPP
#define PICARD_CONTRACTION_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "picard/comparison.hpp"
#include "picard/space.hpp"

namespace picard {

constexpr double kAnalyticMarginTol = 1e-12;

class FiniteMap {
public:
    static FiniteMap make(std::vector<std::size_t> image, std::size_t n) {
        if (image.size() != n)
            throw std::invalid_argument("map image has " + std::to_string(image.size()) +
                                        " entries, expected " + std::to_string(n));
        for (std::size_t v : image)
            if (v >= n) throw std::invalid_argument("map image index " + std::to_string(v) + " out of range");
        FiniteMap m;
        m.image_ = std::move(image);
        return m;
    }

    std::size_t size() const { return image_.size(); }
    std::size_t operator()(std::size_t i) const { return image_[i]; }
    const std::vector<std::size_t>& image() const { return image_; }

    friend bool operator==(const FiniteMap& a, const FiniteMap& b) { return a.image_ == b.image_; }

private:
    std::vector<std::size_t> image_;
};

inline FiniteMap compose_power(const FiniteMap& f, std::size_t l) {
    if (l < 1) throw std::invalid_argument("map power must be >= 1");
    std::vector<std::size_t> img(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) img[i] = i;
    for (std::size_t step = 0; step < l; ++step)
        for (std::size_t i = 0; i < f.size(); ++i) img[i] = f(img[i]);
    return FiniteMap::make(std::move(img), f.size());
}

class AnalyticMap {
public:
    static AnalyticMap make(Expr f, std::size_t power = 1) {
        if (power < 1) throw std::invalid_argument("map power must be >= 1");
        AnalyticMap m;
        m.f_ = std::move(f);
        m.power_ = power;
        return m;
    }

    double operator()(double x) const {
        double v = x;
        for (std::size_t i = 0; i < power_; ++i) v = f_.eval(v);
        return v;
    }

    std::size_t power() const { return power_; }
    const Expr& expr() const { return f_; }

    /// Sampled image-in-domain check; a map that leaves the domain is rejected.
    void validate_range(const AnalyticSpace& s, const SamplerConfig& cfg = {}) const {
        auto [lo, hi] = s.domain().sample_box(cfg);
        for (double x : sampling::points(lo, hi, cfg)) {
            double y = (*this)(x);
            if (!s.domain().contains(y))
                throw std::invalid_argument("map image " + std::to_string(y) + " leaves the domain at x = " +
                                            std::to_string(x));
        }
    }

private:
    Expr f_ = Expr::parse("x", {"x"});
    std::size_t power_ = 1;
};

inline AnalyticMap compose_power(const AnalyticMap& f, std::size_t l) {
    if (l < 1) throw std::invalid_argument("map power must be >= 1");
    return AnalyticMap::make(f.expr(), f.power() * l);
}

struct HypothesisReport {
    std::string mode;
    bool holds = false;
    bool phi_ok = true;  // Phi-membership of the supplied comparison functions
    double worst_margin = 0;
    std::vector<std::size_t> witness_ix;
    std::vector<double> witness_pt;
    Coverage coverage;
};

/// Whether verifiers insist on Phi-membership of supplied functions or only
/// record the failure and scan anyway (for counterexample exploration).
enum class PhiPolicy { Enforce, WarnOnly };

namespace hypdetail {

template <typename Rhs>
HypothesisReport scan_finite(const std::string& mode, const FiniteSpace& s, const FiniteMap& f,
                             Rhs rhs) {
    HypothesisReport rep;
    rep.mode = mode;
    std::optional<Rat> worst;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            Rat margin = s.d(f(i), f(j)) - rhs(i, j);
            if (!worst || margin > *worst) {
                worst = margin;
                wi = i;
                wj = j;
            }
        }
    rep.worst_margin = worst ? worst->to_double() : 0.0;
    rep.holds = !worst || *worst <= Rat(0);
    rep.witness_ix = {wi, wj};
    return rep;
}

template <typename Rhs>
HypothesisReport scan_analytic(const std::string& mode, const AnalyticSpace& s, const AnalyticMap& f,
                               Rhs rhs, const SamplerConfig& cfg) {
    HypothesisReport rep;
    rep.mode = mode;
    auto [lo, hi] = s.domain().sample_box(cfg);
    auto prs = sampling::point_pairs(lo, hi, cfg);
    rep.coverage = Coverage::sampled(cfg.seed, prs.size());
    bool first = true;
    for (auto [x, y] : prs) {
        double margin = s.d(f(x), f(y)) - rhs(x, y);
        if (first || margin > rep.worst_margin) {
            rep.worst_margin = margin;
            rep.witness_pt = {x, y};
            first = false;
        }
    }
    rep.holds = rep.worst_margin <= kAnalyticMarginTol;
    return rep;
}

inline bool phi_gate(HypothesisReport& rep, PhiPolicy policy,
                     std::initializer_list<const PiecewiseFn*> fns) {
    for (const PiecewiseFn* f : fns)
        if (!check_phi_membership(*f).verdict) rep.phi_ok = false;
    return rep.phi_ok || policy == PhiPolicy::WarnOnly;
}

} // namespace hypdetail

inline void require_contraction_factor(const Rat& alpha) {
    if (alpha < Rat(0) || alpha >= Rat(1))
        throw std::invalid_argument("contraction factor must lie in [0, 1)");
}

inline HypothesisReport check_banach(const FiniteSpace& s, const FiniteMap& f, const Rat& alpha) {
    require_contraction_factor(alpha);
    return hypdetail::scan_finite("banach", s, f, [&](std::size_t i, std::size_t j) {
        return alpha * s.d(i, j);
    });
}

inline HypothesisReport check_banach(const AnalyticSpace& s, const AnalyticMap& f, const Rat& alpha,
                                     const SamplerConfig& cfg = {}) {
    require_contraction_factor(alpha);
    double a = alpha.to_double();
    return hypdetail::scan_analytic("banach", s, f, [&](double x, double y) { return a * s.d(x, y); },
                                    cfg);
}

inline HypothesisReport check_nonlinear_contraction(const FiniteSpace& s, const FiniteMap& f,
                                                    const PiecewiseFn& phi,
                                                    PhiPolicy policy = PhiPolicy::Enforce) {
    HypothesisReport gate;
    gate.mode = "nonlinear";
    if (!hypdetail::phi_gate(gate, policy, {&phi})) return gate;
    auto rep = hypdetail::scan_finite("nonlinear", s, f, [&](std::size_t i, std::size_t j) {
        return phi.eval(s.d(i, j));
    });
    rep.phi_ok = gate.phi_ok;
    return rep;
}

inline HypothesisReport check_nonlinear_contraction(const AnalyticSpace& s, const AnalyticMap& f,
                                                    const PiecewiseFn& phi,
                                                    PhiPolicy policy = PhiPolicy::Enforce,
                                                    const SamplerConfig& cfg = {}) {
    HypothesisReport gate;
    gate.mode = "nonlinear";
    if (!hypdetail::phi_gate(gate, policy, {&phi})) return gate;
    auto rep = hypdetail::scan_analytic("nonlinear", s, f,
                                        [&](double x, double y) { return phi.eval(s.d(x, y)); }, cfg);
    rep.phi_ok = gate.phi_ok;
    return rep;
}

inline HypothesisReport check_extended_contraction(const FiniteSpace& s, const FiniteMap& f,
                                                   const PiecewiseFn& p1, const PiecewiseFn& p2,
                                                   const PiecewiseFn& p3,
                                                   PhiPolicy policy = PhiPolicy::Enforce) {
    HypothesisReport gate;
    gate.mode = "extended";
    if (!hypdetail::phi_gate(gate, policy, {&p1, &p2, &p3})) return gate;
    auto rep = hypdetail::scan_finite("extended", s, f, [&](std::size_t i, std::size_t j) {
        return max(p1.eval(s.d(i, j)), max(p2.eval(s.d(i, f(i))), p3.eval(s.d(j, f(j)))));
    });
    rep.phi_ok = gate.phi_ok;
    return rep;
}

inline HypothesisReport check_extended_contraction(const AnalyticSpace& s, const AnalyticMap& f,
                                                   const PiecewiseFn& p1, const PiecewiseFn& p2,
                                                   const PiecewiseFn& p3,
                                                   PhiPolicy policy = PhiPolicy::Enforce,
                                                   const SamplerConfig& cfg = {}) {
    HypothesisReport gate;
    gate.mode = "extended";
    if (!hypdetail::phi_gate(gate, policy, {&p1, &p2, &p3})) return gate;
    auto rep = hypdetail::scan_analytic("extended", s, f, [&](double x, double y) {
        double fx = f(x), fy = f(y);
        return std::fmax(p1.eval(s.d(x, y)), std::fmax(p2.eval(s.d(x, fx)), p3.eval(s.d(y, fy))));
    }, cfg);
    rep.phi_ok = gate.phi_ok;
    return rep;
}

inline HypothesisReport check_iterated_contraction(const FiniteSpace& s, const FiniteMap& f,
                                                   const PiecewiseFn& phi, std::size_t n,
                                                   PhiPolicy policy = PhiPolicy::Enforce) {
    HypothesisReport gate;
    gate.mode = "iterated";
    if (!hypdetail::phi_gate(gate, policy, {&phi})) return gate;

    // iter[k][i] = f^k(i) for k = 0..n+1
    std::vector<std::vector<std::size_t>> iter(n + 2, std::vector<std::size_t>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) iter[0][i] = i;
    for (std::size_t k = 1; k <= n + 1; ++k)
        for (std::size_t i = 0; i < s.size(); ++i) iter[k][i] = f(iter[k - 1][i]);

    HypothesisReport rep;
    rep.mode = "iterated";
    rep.phi_ok = gate.phi_ok;
    std::optional<Rat> worst;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            Rat inner(0);
            for (std::size_t k = 0; k <= n; ++k) inner = max(inner, s.d(iter[k][i], iter[k][j]));
            Rat margin = s.d(iter[n + 1][i], iter[n + 1][j]) - phi.eval(inner);
            if (!worst || margin > *worst) {
                worst = margin;
                wi = i;
                wj = j;
            }
        }
    rep.worst_margin = worst ? worst->to_double() : 0.0;
    rep.holds = !worst || *worst <= Rat(0);
    rep.witness_ix = {wi, wj};
    return rep;
}

inline HypothesisReport check_iterated_contraction(const AnalyticSpace& s, const AnalyticMap& f,
                                                   const PiecewiseFn& phi, std::size_t n,
                                                   PhiPolicy policy = PhiPolicy::Enforce,
                                                   const SamplerConfig& cfg = {}) {
    HypothesisReport rep;
    rep.mode = "iterated";
    if (!hypdetail::phi_gate(rep, policy, {&phi})) return rep;
    auto [lo, hi] = s.domain().sample_box(cfg);
    auto prs = sampling::point_pairs(lo, hi, cfg);
    rep.coverage = Coverage::sampled(cfg.seed, prs.size());
    bool first = true;
    for (auto [x, y] : prs) {
        double inner = 0, u = x, v = y;
        for (std::size_t k = 0; k <= n; ++k) {
            inner = std::fmax(inner, s.d(u, v));
            u = f(u);
            v = f(v);
        }
        double margin = s.d(u, v) - phi.eval(inner);  // u, v now hold the (n+1)-st iterates
        if (first || margin > rep.worst_margin) {
            rep.worst_margin = margin;
            rep.witness_pt = {x, y};
            first = false;
        }
    }
    rep.holds = rep.worst_margin <= kAnalyticMarginTol;
    return rep;
}

struct DContinuityReport {
    bool holds = true;
    std::vector<std::size_t> witness;  // (a, x) with d(a,x) = 0 but d(f(a), f(x)) != 0
};

/// Left sequential d-continuity, finite-space reduction: the zero-distance
/// pattern must be preserved by f.
inline DContinuityReport check_d_continuity(const FiniteSpace& s, const FiniteMap& f) {
    for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t x = 0; x < s.size(); ++x)
            if (s.d(a, x).is_zero() && !s.d(f(a), f(x)).is_zero()) return {false, {a, x}};
    return {};
}

} // namespace picard

#endif
