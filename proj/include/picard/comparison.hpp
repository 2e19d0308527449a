// Decision procedures for comparison functions.
//
// A comparison function satisfies f(0) = 0 and f(t) < t for t > 0.  The Phi
// class additionally requires, at every r > 0, left limit < r and right
// limit <= r, plus a plateau clause: wherever the right limit equals s, the
// function must be identically s on some (s, s+eps).  Because every function
// here is piecewise affine with exact rational pieces, each of these
// conditions reduces to finitely many endpoint/slope tests and is decided
// exactly; only iterate decay (the Matkowski condition) is a bounded
// semi-decision.

#ifndef PICARD_COMPARISON_HPP
#define PICARD_COMPARISON_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "picard/piecewise.hpp"

namespace picard {

struct ComparisonReport {
    bool holds = true;
    std::optional<Rat> witness;  // t with f(t) >= t, or 0 when f(0) != 0
};

struct FlagWitness {
    bool ok = true;
    std::optional<Rat> witness;

    void fail(const Rat& r) {
        if (ok) {
            ok = false;
            witness = r;
        }
    }
};

struct PhiReport {
    bool is_comparison = false;
    FlagWitness left_limsup;
    FlagWitness right_limsup;
    FlagWitness plateau;
    bool verdict = false;
};

struct MatkowskiProbe {
    double probe = 0;
    bool decayed = false;
    std::size_t steps = 0;
};

struct MatkowskiReport {
    bool monotone = false;
    std::optional<Rat> monotone_witness;
    std::vector<MatkowskiProbe> probes;
    bool undecided_iterate = false;  // some probe exhausted n_max without decaying
    bool holds = false;
};

struct IterateTrace {
    std::vector<double> values;  // starts at s, ends at the last computed iterate
    bool converged = false;
    std::size_t steps = 0;
};

namespace cmpdetail {

// difference against the identity: g(t) = law(t) - t
inline Rat gap(const AffineLaw& law, const Rat& t) { return law(t) - t; }
inline Rat gap_slope(const AffineLaw& law) { return law.slope - Rat(1); }

// root of gap() for non-zero gap slope
inline Rat gap_root(const AffineLaw& law) { return -law.intercept / gap_slope(law); }

// a point strictly right of lo where gap > 0, assuming gap(lo) > 0
inline Rat pos_gap_point(const AffineLaw& law, const Rat& lo, const std::optional<Rat>& hi) {
    Rat upper = hi ? *hi : lo + Rat(2);
    if (gap_slope(law) < Rat(0)) upper = min(upper, gap_root(law));
    return (lo + upper) / Rat(2);
}

struct Interval {
    Rat lo;
    bool unbounded;
    Rat hi;  // meaningful when !unbounded
};

inline Interval piece_interval(const PiecewiseFn& f, std::size_t i) {
    const auto& ps = f.pieces();
    if (i + 1 < ps.size()) return {ps[i].start, false, ps[i + 1].start};
    return {ps[i].start, true, Rat(0)};
}

} // namespace cmpdetail

/// f(0) = 0 and f(t) < t for all t > 0, decided exactly.
inline ComparisonReport check_comparison(const PiecewiseFn& f) {
    using namespace cmpdetail;
    const auto& ps = f.pieces();
    if (!ps.front().at.is_zero()) return {false, Rat(0)};
    for (std::size_t i = 1; i < ps.size(); ++i)
        if (!(ps[i].at < ps[i].start)) return {false, ps[i].start};

    for (std::size_t i = 0; i < ps.size(); ++i) {
        const AffineLaw& law = ps[i].law;
        Interval iv = piece_interval(f, i);
        Rat gu = gap(law, iv.lo);
        if (iv.unbounded) {
            Rat s = gap_slope(law);
            if (s > Rat(0)) {
                Rat t = max(iv.lo, gap_root(law)) + Rat(1);
                return {false, t};
            }
            if (s.is_zero()) {
                if (gu >= Rat(0)) return {false, iv.lo + Rat(1)};
            } else if (gu > Rat(0)) {
                return {false, (iv.lo + gap_root(law)) / Rat(2)};
            }
        } else {
            Rat gw = gap(law, iv.hi);
            if (gu.is_zero() && gw.is_zero()) return {false, (iv.lo + iv.hi) / Rat(2)};
            if (gu > Rat(0)) {
                Rat upper = gw <= Rat(0) ? gap_root(law) : iv.hi;
                return {false, (iv.lo + upper) / Rat(2)};
            }
            if (gw > Rat(0)) {
                Rat lower = gu < Rat(0) ? gap_root(law) : iv.lo;
                return {false, (lower + iv.hi) / Rat(2)};
            }
        }
    }
    return {};
}

/// Membership in the Phi class.  Each flag is decided exactly; the verdict is
/// their conjunction with check_comparison.
inline PhiReport check_phi_membership(const PiecewiseFn& f) {
    using namespace cmpdetail;
    PhiReport rep;
    rep.is_comparison = check_comparison(f).holds;
    const auto& ps = f.pieces();

    for (std::size_t i = 0; i < ps.size(); ++i) {
        const AffineLaw& law = ps[i].law;
        Interval iv = piece_interval(f, i);
        Rat s = gap_slope(law);
        Rat gu = gap(law, iv.lo);

        // left limits live on (lo, hi] (or (lo, inf)); they must be < r
        if (iv.unbounded) {
            if (s > Rat(0))
                rep.left_limsup.fail(max(iv.lo, gap_root(law)) + Rat(1));
            else if (s.is_zero()) {
                if (law.intercept >= Rat(0) && gu >= Rat(0)) rep.left_limsup.fail(iv.lo + Rat(1));
            } else if (gu > Rat(0))
                rep.left_limsup.fail((iv.lo + gap_root(law)) / Rat(2));
        } else {
            Rat gw = gap(law, iv.hi);
            if (gw >= Rat(0))
                rep.left_limsup.fail(iv.hi);
            else if (gu > Rat(0))
                rep.left_limsup.fail((iv.lo + gap_root(law)) / Rat(2));
        }

        // right limits live on [lo, hi) (minus r = 0); they must be <= r
        if (iv.unbounded) {
            if (s > Rat(0))
                rep.right_limsup.fail(max(iv.lo, gap_root(law)) + Rat(1));
            else if (s.is_zero()) {
                if (gu > Rat(0)) rep.right_limsup.fail(iv.lo > Rat(0) ? iv.lo : Rat(1));
            } else if (gu > Rat(0)) {
                rep.right_limsup.fail(iv.lo > Rat(0) ? iv.lo : gap_root(law) / Rat(2));
            }
        } else {
            Rat gw = gap(law, iv.hi);
            if (gu > Rat(0))
                rep.right_limsup.fail(iv.lo > Rat(0) ? iv.lo : pos_gap_point(law, iv.lo, iv.hi));
            else if (gw > Rat(0))
                rep.right_limsup.fail((max(iv.lo, gap_root(law)) + iv.hi) / Rat(2));
        }

        // plateau clause: wherever the right limit equals s, the adjacent law
        // must be the constant s
        if (s.is_zero() && law.intercept.is_zero()) {
            rep.plateau.fail(iv.lo > Rat(0) ? iv.lo : (iv.unbounded ? Rat(1) : iv.hi / Rat(2)));
        } else if (!s.is_zero()) {
            Rat root = gap_root(law);
            bool inside = root >= iv.lo && root > Rat(0) && (iv.unbounded || root < iv.hi);
            if (inside && !law.slope.is_zero()) rep.plateau.fail(root);
        }
    }

    rep.verdict = rep.is_comparison && rep.left_limsup.ok && rep.right_limsup.ok && rep.plateau.ok;
    return rep;
}

/// Boyd-Wong condition: right limit < s for every s > 0.
inline FlagWitness check_boyd_wong(const PiecewiseFn& f) {
    using namespace cmpdetail;
    FlagWitness flag;
    const auto& ps = f.pieces();
    for (std::size_t i = 0; i < ps.size() && flag.ok; ++i) {
        const AffineLaw& law = ps[i].law;
        Interval iv = piece_interval(f, i);
        Rat s = gap_slope(law);
        Rat gu = gap(law, iv.lo);
        if (iv.unbounded) {
            if (s > Rat(0))
                flag.fail(max(iv.lo, gap_root(law)) + Rat(1));
            else if (s.is_zero()) {
                if (law.intercept >= Rat(0)) flag.fail(iv.lo > Rat(0) ? iv.lo : Rat(1));
            } else {
                if (iv.lo > Rat(0) && gu >= Rat(0)) flag.fail(iv.lo);
                else if (iv.lo.is_zero() && gu > Rat(0)) flag.fail(gap_root(law) / Rat(2));
            }
        } else {
            Rat gw = gap(law, iv.hi);
            if (iv.lo > Rat(0) && gu >= Rat(0)) {
                flag.fail(iv.lo);
            } else if (iv.lo.is_zero() && gu > Rat(0)) {
                flag.fail(pos_gap_point(law, iv.lo, iv.hi));
            } else if (gw > Rat(0)) {
                flag.fail((max(iv.lo, gap_root(law)) + iv.hi) / Rat(2));
            } else if (gu.is_zero() && gw.is_zero()) {
                flag.fail((iv.lo + iv.hi) / Rat(2));
            }
        }
    }
    return flag;
}

/// Pasicki condition: every s > 0 has f <= s on some right neighborhood
/// (s, s+eps).  Fails exactly when a right limit exceeds s, or equals s with
/// a rising law behind it.
inline FlagWitness check_pasicki(const PiecewiseFn& f) {
    using namespace cmpdetail;
    FlagWitness flag;
    const auto& ps = f.pieces();
    for (std::size_t i = 0; i < ps.size() && flag.ok; ++i) {
        const AffineLaw& law = ps[i].law;
        Interval iv = piece_interval(f, i);
        Rat s = gap_slope(law);
        Rat gu = gap(law, iv.lo);
        if (iv.unbounded) {
            if (s > Rat(0)) {
                flag.fail(max(iv.lo, gap_root(law)) + Rat(1));
            } else if (s.is_zero()) {
                if (law.intercept >= Rat(0)) flag.fail(iv.lo > Rat(0) ? iv.lo : Rat(1));
            } else {
                if (gu > Rat(0))
                    flag.fail(iv.lo > Rat(0) ? iv.lo : gap_root(law) / Rat(2));
                else if (gu.is_zero() && iv.lo > Rat(0) && law.slope > Rat(0))
                    flag.fail(iv.lo);
            }
        } else {
            Rat gw = gap(law, iv.hi);
            if (gu > Rat(0)) {
                flag.fail(iv.lo > Rat(0) ? iv.lo : pos_gap_point(law, iv.lo, iv.hi));
            } else if (gw > Rat(0)) {
                flag.fail((max(iv.lo, gap_root(law)) + iv.hi) / Rat(2));
            } else if (gu.is_zero() && gw.is_zero()) {
                flag.fail((iv.lo + iv.hi) / Rat(2));
            } else if (gu.is_zero() && iv.lo > Rat(0) && law.slope > Rat(0)) {
                flag.fail(iv.lo);
            }
        }
    }
    return flag;
}

/// Exact monotonicity (slopes and junctions) plus a probed iterate-decay
/// check.  The iterate half is a semi-decision: exhausting n_max marks the
/// report undecided rather than proving divergence.
inline MatkowskiReport check_matkowski(const PiecewiseFn& f, const std::vector<double>& probes,
                                       std::size_t n_max = 10000, double tol = 1e-9) {
    if (probes.empty()) throw std::invalid_argument("matkowski check needs at least one probe");
    MatkowskiReport rep;
    rep.monotone = true;
    const auto& ps = f.pieces();
    for (std::size_t i = 0; i < ps.size() && rep.monotone; ++i) {
        if (ps[i].law.slope < Rat(0)) {
            rep.monotone = false;
            rep.monotone_witness = ps[i].start;
            break;
        }
        Rat right_limit = ps[i].law(ps[i].start);
        if (ps[i].at > right_limit) {  // downward jump into the piece
            rep.monotone = false;
            rep.monotone_witness = ps[i].start;
            break;
        }
        if (i > 0 && ps[i - 1].law(ps[i].start) > ps[i].at) {  // downward jump at the breakpoint
            rep.monotone = false;
            rep.monotone_witness = ps[i].start;
            break;
        }
    }

    bool all_decayed = true;
    for (double p : probes) {
        MatkowskiProbe mp;
        mp.probe = p;
        double v = p;
        for (std::size_t n = 0; n < n_max; ++n) {
            v = f.eval(v);
            ++mp.steps;
            if (v <= tol) {
                mp.decayed = true;
                break;
            }
        }
        if (!mp.decayed) {
            all_decayed = false;
            rep.undecided_iterate = true;
        }
        rep.probes.push_back(mp);
    }
    rep.holds = rep.monotone && all_decayed;
    return rep;
}

inline std::vector<double> default_matkowski_probes() { return {1e-3, 1.0, 1e3}; }

/// Monotone non-decreasing envelope: env(0) = 0 and env(t) = sup of f over
/// (0, t] for t > 0, computed exactly piece by piece.  Dominates f pointwise
/// on (0, inf) and never decreases.
inline PiecewiseFn monotone_envelope(const PiecewiseFn& f) {
    using namespace cmpdetail;
    std::vector<PiecewiseFn::Piece> out;
    std::optional<Rat> sup;  // running sup of f over (0, t), nullopt = empty

    auto sup_with = [](const std::optional<Rat>& s, const Rat& v) {
        return s ? max(*s, v) : v;
    };

    const auto& ps = f.pieces();
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const AffineLaw& law = ps[i].law;
        Interval iv = piece_interval(f, i);
        Rat at_env = i == 0 ? Rat(0) : sup_with(sup, ps[i].at);
        std::optional<Rat> closed = i == 0 ? sup : std::optional<Rat>(sup_with(sup, ps[i].at));
        Rat right = law(iv.lo);

        if (law.slope <= Rat(0)) {
            Rat c = sup_with(closed, right);
            out.push_back({iv.lo, at_env, AffineLaw{Rat(0), c}});
            sup = c;
        } else if (!closed || right >= *closed) {
            out.push_back({iv.lo, at_env, law});
            if (!iv.unbounded) sup = law(iv.hi);
        } else if (!iv.unbounded && law(iv.hi) <= *closed) {
            out.push_back({iv.lo, at_env, AffineLaw{Rat(0), *closed}});
            sup = *closed;
        } else {
            Rat cross = (*closed - law.intercept) / law.slope;
            out.push_back({iv.lo, at_env, AffineLaw{Rat(0), *closed}});
            out.push_back({cross, *closed, law});
            if (!iv.unbounded) sup = law(iv.hi);
        }
    }
    return PiecewiseFn::make(std::move(out));
}

/// Pointwise maximum of two piecewise-affine functions, exact (breakpoint
/// union plus crossing points of overlapping laws).
inline PiecewiseFn pointwise_max(const PiecewiseFn& f, const PiecewiseFn& g) {
    using namespace cmpdetail;
    std::vector<Rat> events;
    for (const auto& p : f.pieces()) events.push_back(p.start);
    for (const auto& p : g.pieces()) events.push_back(p.start);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    auto law_on = [](const PiecewiseFn& fn, const Rat& u) {
        const auto& ps = fn.pieces();
        std::size_t lo = 0;
        for (std::size_t i = ps.size(); i-- > 0;)
            if (ps[i].start <= u) {
                lo = i;
                break;
            }
        return ps[lo].law;
    };

    std::vector<PiecewiseFn::Piece> out;
    for (std::size_t e = 0; e < events.size(); ++e) {
        Rat u = events[e];
        bool last = e + 1 == events.size();
        Rat at = max(f.eval(u), g.eval(u));
        AffineLaw lf = law_on(f, u);
        AffineLaw lg = law_on(g, u);
        if (lf == lg) {
            out.push_back({u, at, lf});
            continue;
        }
        Rat ds = lf.slope - lg.slope;
        Rat du = lf(u) - lg(u);
        if (last) {
            if (du.is_zero()) {
                out.push_back({u, at, ds > Rat(0) ? lf : lg});
            } else if (!ds.is_zero()) {
                Rat cross = (lg.intercept - lf.intercept) / ds;
                bool flips = cross > u && ((du > Rat(0)) != (ds > Rat(0)));
                if (flips) {
                    out.push_back({u, at, du > Rat(0) ? lf : lg});
                    out.push_back({cross, lf(cross), du > Rat(0) ? lg : lf});
                } else {
                    out.push_back({u, at, du > Rat(0) ? lf : lg});
                }
            } else {
                out.push_back({u, at, du > Rat(0) ? lf : lg});
            }
        } else {
            Rat w = events[e + 1];
            Rat dw = lf(w) - lg(w);
            if ((du > Rat(0) && dw < Rat(0)) || (du < Rat(0) && dw > Rat(0))) {
                Rat cross = (lg.intercept - lf.intercept) / ds;
                out.push_back({u, at, du > Rat(0) ? lf : lg});
                out.push_back({cross, lf(cross), du > Rat(0) ? lg : lf});
            } else if (du > Rat(0) || (du.is_zero() && dw > Rat(0))) {
                out.push_back({u, at, lf});
            } else {
                out.push_back({u, at, lg});
            }
        }
    }
    return PiecewiseFn::make(std::move(out));
}

/// Pointwise maximum of a nonempty family.  Callers wanting the Phi-closure
/// guarantee (a max of Phi members is again in Phi) should verify membership
/// of the inputs with check_phi_membership.
inline PiecewiseFn max_combine(const std::vector<PiecewiseFn>& fs) {
    if (fs.empty()) throw std::invalid_argument("max_combine needs at least one function");
    PiecewiseFn acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) acc = pointwise_max(acc, fs[i]);
    return acc;
}

/// Iterates f starting at s until the value drops to tol or n_max is spent.
inline IterateTrace iterate_to_zero(const PiecewiseFn& f, double s, std::size_t n_max = 10000,
                                    double tol = 1e-9) {
    if (!(s > 0)) throw std::invalid_argument("iterate_to_zero needs s > 0");
    IterateTrace tr;
    tr.values.push_back(s);
    double v = s;
    while (tr.steps < n_max) {
        v = f.eval(v);
        tr.values.push_back(v);
        ++tr.steps;
        if (v <= tol) {
            tr.converged = true;
            break;
        }
    }
    return tr;
}

} // namespace picard

#endif
