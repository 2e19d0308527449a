// Distance structures and their structural checkers.
//
// A FiniteSpace is an n x n matrix of exact nonnegative distances with no
// axioms assumed; an AnalyticSpace is an expression d(x,y) over an interval
// or the whole line, checked by seeded sampling.  On top of these live the
// axiom taxonomy (A0-A3), balls B(x,r) = {y : d(y,x) < r}, the closed-set
// topology induced by the set distance d(A,x) = inf d(a,x), and the W3 / JMS
// property checkers.
//
// Finite-space checks are exhaustive and exact.  Sequence-quantified
// properties reduce on finite spaces: distances take finitely many values,
// so d(x_n, x) -> 0 forces eventually-zero distances and any convergent
// sequence has a constant subsequence.  W3 therefore becomes "no point has
// two distinct zero-distance targets", and sequential d-continuity becomes a
// zero-pattern condition (see contraction.hpp).

#ifndef PICARD_SPACE_HPP
#define PICARD_SPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "picard/expr.hpp"
#include "picard/rational.hpp"
#include "picard/sampling.hpp"

namespace picard {

struct Coverage {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::size_t samples = 0;

    static Coverage sampled(std::uint64_t seed, std::size_t samples) { return {false, seed, samples}; }
};

class FiniteSpace {
public:
    static FiniteSpace make(std::vector<std::string> labels, std::vector<std::vector<Rat>> matrix) {
        FiniteSpace s;
        std::size_t n = labels.size();
        if (n == 0) throw std::invalid_argument("finite space needs at least one point");
        if (matrix.size() != n)
            throw std::invalid_argument("dmatrix is " + std::to_string(matrix.size()) + "x" +
                                        std::to_string(matrix.empty() ? 0 : matrix[0].size()) +
                                        ", expected " + std::to_string(n) + " rows");
        for (std::size_t i = 0; i < n; ++i) {
            if (matrix[i].size() != n)
                throw std::invalid_argument("dmatrix row " + std::to_string(i) + " has " +
                                            std::to_string(matrix[i].size()) + " entries, expected " +
                                            std::to_string(n));
            for (const Rat& v : matrix[i])
                if (v < Rat(0)) throw std::invalid_argument("negative distance entry");
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (labels[i] == labels[j]) throw std::invalid_argument("duplicate point label " + labels[i]);
        s.labels_ = std::move(labels);
        s.d_.reserve(n * n);
        for (auto& row : matrix)
            for (auto& v : row) s.d_.push_back(v);
        return s;
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    std::optional<std::size_t> index(const std::string& label) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        return std::nullopt;
    }

    const Rat& d(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }

private:
    std::vector<std::string> labels_;
    std::vector<Rat> d_;
};

class AnalyticSpace {
public:
    struct Domain {
        bool whole_line = false;
        double lo = 0, hi = 1;

        bool contains(double x) const { return whole_line || (x >= lo && x <= hi); }
        std::pair<double, double> sample_box(const SamplerConfig& cfg) const {
            return whole_line ? std::make_pair(cfg.line_lo, cfg.line_hi) : std::make_pair(lo, hi);
        }
    };

    static AnalyticSpace make(Domain dom, Expr dexpr, bool complete, const SamplerConfig& cfg = {}) {
        if (!dom.whole_line && !(dom.lo < dom.hi))
            throw std::invalid_argument("analytic domain interval is empty");
        AnalyticSpace s;
        s.dom_ = dom;
        s.d_ = std::move(dexpr);
        s.complete_ = complete;
        auto [lo, hi] = dom.sample_box(cfg);
        for (auto [x, y] : sampling::point_pairs(lo, hi, cfg)) {
            if (s.d(x, y) < 0)
                throw std::invalid_argument("distance expression is negative at sampled pair (" +
                                            std::to_string(x) + ", " + std::to_string(y) + ")");
        }
        return s;
    }

    const Domain& domain() const { return dom_; }
    bool complete() const { return complete_; }
    double d(double x, double y) const { return d_.eval(x, y); }

private:
    Domain dom_;
    Expr d_ = Expr::parse("0", {"x", "y"});
    bool complete_ = false;
};

enum class Taxonomy { Metric, PseudoMetric, QuasiMetric, Symmetric, PseudoQuasiMetric, None };

inline const char* to_string(Taxonomy t) {
    switch (t) {
        case Taxonomy::Metric: return "metric";
        case Taxonomy::PseudoMetric: return "pseudo-metric";
        case Taxonomy::QuasiMetric: return "quasi-metric";
        case Taxonomy::Symmetric: return "symmetric";
        case Taxonomy::PseudoQuasiMetric: return "pseudo quasi-metric";
        case Taxonomy::None: return "none";
    }
    return "none";
}

struct AxiomReport {
    struct Flag {
        bool holds = true;
        std::vector<std::size_t> witness_ix;  // finite spaces: offending pair/triple
        std::vector<double> witness_pt;       // analytic spaces: offending sample

        void fail_ix(std::initializer_list<std::size_t> w) {
            if (holds) {
                holds = false;
                witness_ix = w;
            }
        }
        void fail_pt(std::initializer_list<double> w) {
            if (holds) {
                holds = false;
                witness_pt = w;
            }
        }
    };

    Flag a0, a1, a2, a3;
    Taxonomy taxonomy = Taxonomy::None;
    Coverage coverage;
};

namespace spacedetail {

inline Taxonomy assign_taxonomy(bool a0, bool a1, bool a2, bool a3) {
    if (a1 && a2 && a3) return Taxonomy::Metric;
    if (a0 && a2 && a3) return Taxonomy::PseudoMetric;
    if (a1 && a3) return Taxonomy::QuasiMetric;
    if (a1 && a2) return Taxonomy::Symmetric;
    if (a0 && a3) return Taxonomy::PseudoQuasiMetric;
    return Taxonomy::None;
}

} // namespace spacedetail

/// Exhaustive A0-A3 classification of a finite space; witnesses are the
/// lexicographically first violations.
inline AxiomReport classify_axioms(const FiniteSpace& s) {
    AxiomReport rep;
    std::size_t n = s.size();
    for (std::size_t i = 0; i < n && rep.a0.holds; ++i)
        for (std::size_t j = 0; j < n && rep.a0.holds; ++j)
            if (i != j && s.d(i, j).is_zero()) rep.a0.fail_ix({i, j});
    rep.a1 = rep.a0;
    if (rep.a1.holds)
        for (std::size_t i = 0; i < n && rep.a1.holds; ++i)
            if (!s.d(i, i).is_zero()) rep.a1.fail_ix({i, i});
    for (std::size_t i = 0; i < n && rep.a2.holds; ++i)
        for (std::size_t j = i + 1; j < n && rep.a2.holds; ++j)
            if (s.d(i, j) != s.d(j, i)) rep.a2.fail_ix({i, j});
    for (std::size_t i = 0; i < n && rep.a3.holds; ++i)
        for (std::size_t j = 0; j < n && rep.a3.holds; ++j)
            for (std::size_t k = 0; k < n && rep.a3.holds; ++k)
                if (s.d(i, j) > s.d(i, k) + s.d(k, j)) rep.a3.fail_ix({i, j, k});
    rep.taxonomy = spacedetail::assign_taxonomy(rep.a0.holds, rep.a1.holds, rep.a2.holds, rep.a3.holds);
    return rep;
}

/// Sampled classification of an analytic space; the report records the seed.
/// Equality checks use an absolute tolerance of 1e-12.
inline AxiomReport classify_axioms(const AnalyticSpace& s, const SamplerConfig& cfg = {}) {
    constexpr double eps = 1e-12;
    AxiomReport rep;
    auto [lo, hi] = s.domain().sample_box(cfg);
    auto pts = sampling::points(lo, hi, cfg);
    rep.coverage = Coverage::sampled(cfg.seed, pts.size());

    for (double x : pts) {
        if (!rep.a1.holds) break;
        if (std::fabs(s.d(x, x)) > eps) rep.a1.fail_pt({x, x});
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            double x = pts[i], y = pts[j];
            if (std::fabs(x - y) < 1e-9) continue;
            if ((rep.a0.holds || rep.a1.holds) && std::fabs(s.d(x, y)) <= eps) {
                rep.a0.fail_pt({x, y});
                rep.a1.fail_pt({x, y});
            }
            if (rep.a2.holds && std::fabs(s.d(x, y) - s.d(y, x)) > eps) rep.a2.fail_pt({x, y});
        }
    }
    for (std::size_t i = 0; i < pts.size() && rep.a3.holds; ++i)
        for (std::size_t j = 0; j < pts.size() && rep.a3.holds; ++j)
            for (std::size_t k = 0; k < pts.size() && rep.a3.holds; ++k)
                if (s.d(pts[i], pts[j]) > s.d(pts[i], pts[k]) + s.d(pts[k], pts[j]) + eps)
                    rep.a3.fail_pt({pts[i], pts[j], pts[k]});
    rep.taxonomy = spacedetail::assign_taxonomy(rep.a0.holds, rep.a1.holds, rep.a2.holds, rep.a3.holds);
    return rep;
}

/// B(x, r) = {y : d(y, x) < r}; note the argument order in d.
inline std::vector<std::size_t> ball(const FiniteSpace& s, std::size_t x, const Rat& r) {
    if (x >= s.size()) throw std::invalid_argument("unknown point index");
    if (!(Rat(0) < r)) throw std::invalid_argument("ball radius must be positive");
    std::vector<std::size_t> out;
    for (std::size_t y = 0; y < s.size(); ++y)
        if (s.d(y, x) < r) out.push_back(y);
    return out;
}

/// Analytic balls are membership predicates rather than materialized sets.
inline std::function<bool(double)> ball(const AnalyticSpace& s, double x, double r) {
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
    if (!s.domain().contains(x)) throw std::invalid_argument("ball center outside the domain");
    return [s, x, r](double y) { return s.domain().contains(y) && s.d(y, x) < r; };
}

/// d(A, x) = inf over a in A of d(a, x); nullopt encodes +infinity (empty A).
inline std::optional<Rat> set_distance(const FiniteSpace& s, const std::vector<std::size_t>& a,
                                       std::size_t x) {
    std::optional<Rat> best;
    for (std::size_t p : a) {
        const Rat& v = s.d(p, x);
        if (!best || v < *best) best = v;
    }
    return best;
}

namespace spacedetail {

inline bool is_closed_mask(const FiniteSpace& s, std::uint32_t mask) {
    std::size_t n = s.size();
    for (std::size_t x = 0; x < n; ++x) {
        if (mask & (1u << x)) continue;
        bool zero = false;
        for (std::size_t a = 0; a < n && !zero; ++a)
            if ((mask & (1u << a)) && s.d(a, x).is_zero()) zero = true;
        if (zero) return false;  // d(A,x) = 0 but x not in A
    }
    return true;
}

} // namespace spacedetail

constexpr std::size_t kDefaultEnumerationBound = 16;

/// All closed subsets of the topology induced by d, as bitmasks over point
/// indices.  Exact enumeration; refuses spaces above the bound instead of
/// silently sampling.
inline std::vector<std::uint32_t> closed_sets(const FiniteSpace& s,
                                              std::size_t bound = kDefaultEnumerationBound) {
    if (s.size() > bound)
        throw std::invalid_argument("subset enumeration over " + std::to_string(s.size()) +
                                    " points exceeds the bound of " + std::to_string(bound));
    std::vector<std::uint32_t> out;
    std::uint32_t total = 1u << s.size();
    for (std::uint32_t mask = 0; mask < total; ++mask)
        if (spacedetail::is_closed_mask(s, mask)) out.push_back(mask);
    return out;
}

inline bool is_closed(const FiniteSpace& s, std::uint32_t mask,
                      std::size_t bound = kDefaultEnumerationBound) {
    if (s.size() > bound)
        throw std::invalid_argument("subset checks limited to " + std::to_string(bound) + " points");
    return spacedetail::is_closed_mask(s, mask);
}

inline bool is_open(const FiniteSpace& s, std::uint32_t mask,
                    std::size_t bound = kDefaultEnumerationBound) {
    if (s.size() > bound)
        throw std::invalid_argument("subset checks limited to " + std::to_string(bound) + " points");
    std::uint32_t full = (1u << s.size()) - 1;
    return spacedetail::is_closed_mask(s, full & ~mask);
}

struct W3Report {
    bool holds = true;
    std::vector<std::size_t> witness;  // (a, y, z): d(a,y) = d(a,z) = 0 with y != z
};

/// W3 on a finite space: no point may sit at zero distance from two distinct
/// targets.  (Finite-space reduction of the sequence formulation.)
inline W3Report check_w3(const FiniteSpace& s) {
    std::size_t n = s.size();
    for (std::size_t a = 0; a < n; ++a) {
        std::optional<std::size_t> first;
        for (std::size_t y = 0; y < n; ++y) {
            if (!s.d(a, y).is_zero()) continue;
            if (first) return {false, {a, *first, y}};
            first = y;
        }
    }
    return {};
}

struct JmsWitness {
    Rat r;
    Rat ball_diameter_sup;             // R = sup of diam(B(x, r)) over x
    Rat delta;                         // r / 2
    Rat eta;                           // R, or the fallback below when R = 0
    bool eta_degenerate = false;       // R was 0; eta is the least positive distance (or the cap)
    bool verified = true;              // the triple condition held exhaustively
    std::vector<std::size_t> violation;  // first (x, y, z) with d(x,z)+d(y,z) < delta but d(x,y) > eta
    std::size_t boundary_hits = 0;       // triples where d(x,y) == eta exactly
};

/// Emits the (delta, eta) = (r/2, R) certificate and verifies the triple
/// condition d(x,z) + d(y,z) < delta  =>  d(x,y) <= eta exhaustively.  The
/// non-strict comparison is what the ball-diameter construction actually
/// guarantees; boundary_hits counts the triples that attain eta.
inline JmsWitness jms_witness(const FiniteSpace& s, const Rat& r, const Rat& eta_cap = Rat(1)) {
    if (!(Rat(0) < r)) throw std::invalid_argument("jms radius must be positive");
    if (!(Rat(0) < eta_cap)) throw std::invalid_argument("eta cap must be positive");
    std::size_t n = s.size();
    JmsWitness w;
    w.r = r;

    Rat big(0);
    for (std::size_t x = 0; x < n; ++x) {
        auto b = ball(s, x, r);
        for (std::size_t a : b)
            for (std::size_t c : b)
                if (s.d(a, c) > big) big = s.d(a, c);
    }
    w.ball_diameter_sup = big;
    w.delta = r / Rat(2);
    if (big > Rat(0)) {
        w.eta = big;
    } else {
        w.eta_degenerate = true;
        std::optional<Rat> least;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (s.d(i, j) > Rat(0) && (!least || s.d(i, j) < *least)) least = s.d(i, j);
        w.eta = least ? *least : eta_cap;
    }

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z) {
                if (!(s.d(x, z) + s.d(y, z) < w.delta)) continue;
                if (s.d(x, y) > w.eta) {
                    if (w.verified) {
                        w.verified = false;
                        w.violation = {x, y, z};
                    }
                } else if (s.d(x, y) == w.eta) {
                    ++w.boundary_hits;
                }
            }
    return w;
}

struct JmsSample {
    double r = 0, ball_diameter_sup = 0, delta = 0, eta = 0;
    bool verified = true;
    Coverage coverage;
};

/// Sampled analogue for analytic spaces; approximate and marked as such.
inline JmsSample jms_witness(const AnalyticSpace& s, double r, const SamplerConfig& cfg = {}) {
    if (!(r > 0)) throw std::invalid_argument("jms radius must be positive");
    auto [lo, hi] = s.domain().sample_box(cfg);
    auto pts = sampling::points(lo, hi, cfg);
    JmsSample w;
    w.r = r;
    w.coverage = Coverage::sampled(cfg.seed, pts.size());
    for (double x : pts) {
        std::vector<double> members;
        for (double y : pts)
            if (s.d(y, x) < r) members.push_back(y);
        for (double a : members)
            for (double c : members) w.ball_diameter_sup = std::max(w.ball_diameter_sup, s.d(a, c));
    }
    w.delta = r / 2;
    w.eta = w.ball_diameter_sup;
    for (double x : pts)
        for (double y : pts)
            for (double z : pts)
                if (s.d(x, z) + s.d(y, z) < w.delta && s.d(x, y) > w.eta + 1e-12) w.verified = false;
    return w;
}

struct CauchyVerdict {
    bool observed = false;
    std::size_t tail_index = 0;   // least N with max over m > n >= N of d(x_n, x_m) <= tol
    double max_tail_gap = 0;      // that maximum, for the reported N
};

/// Empirical left-Cauchy check of a recorded trace: finds the least tail
/// index past which all forward pairs stay within tol.  A tail needs at
/// least two points to witness anything.
inline CauchyVerdict check_left_cauchy(const std::vector<std::size_t>& trace, const FiniteSpace& s,
                                       const Rat& tol) {
    if (trace.empty()) throw std::invalid_argument("empty trace");
    for (std::size_t start = 0; start + 1 < trace.size(); ++start) {
        Rat worst(0);
        bool ok = true;
        for (std::size_t i = start; i < trace.size() && ok; ++i)
            for (std::size_t j = i + 1; j < trace.size() && ok; ++j) {
                const Rat& g = s.d(trace[i], trace[j]);
                if (g > worst) worst = g;
                if (g > tol) ok = false;
            }
        if (ok) return {true, start, worst.to_double()};
    }
    return {};
}

inline CauchyVerdict check_left_cauchy(const std::vector<double>& trace, const AnalyticSpace& s,
                                       double tol) {
    if (trace.empty()) throw std::invalid_argument("empty trace");
    for (std::size_t start = 0; start + 1 < trace.size(); ++start) {
        double worst = 0;
        bool ok = true;
        for (std::size_t i = start; i < trace.size() && ok; ++i)
            for (std::size_t j = i + 1; j < trace.size() && ok; ++j) {
                double g = s.d(trace[i], trace[j]);
                worst = std::max(worst, g);
                if (g > tol) ok = false;
            }
        if (ok) return {true, start, worst};
    }
    return {};
}

} // namespace picard

#endif
