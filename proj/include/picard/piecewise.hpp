// Piecewise-affine functions [0,inf) -> [0,inf) with exact rational pieces.
//
// Representation: breakpoints t0=0 < t1 < ... < tk, one Piece per breakpoint.
// Piece i fixes the value at t_i explicitly (so jumps are representable) and
// an affine law that governs the open interval (t_i, t_{i+1}); the last law
// extends to +infinity.  Nonnegativity is enforced at construction: every
// at-value is >= 0, every bounded law is >= 0 at both interval closures, and
// the unbounded law has nonnegative slope.
//
// One-sided limits at any point are read off the adjacent laws, which is what
// makes limsup conditions on these functions decidable instead of sampled.

#ifndef PICARD_PIECEWISE_HPP
#define PICARD_PIECEWISE_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "picard/rational.hpp"

namespace picard {

struct AffineLaw {
    Rat slope;
    Rat intercept;

    Rat operator()(const Rat& t) const { return slope * t + intercept; }
    double at(double t) const { return slope.to_double() * t + intercept.to_double(); }

    friend bool operator==(const AffineLaw& a, const AffineLaw& b) {
        return a.slope == b.slope && a.intercept == b.intercept;
    }
};

class PiecewiseFn {
public:
    struct Piece {
        Rat start;      // breakpoint t_i
        Rat at;         // f(t_i), may jump away from the adjacent laws
        AffineLaw law;  // governs (t_i, t_{i+1}), or (t_k, inf) for the last piece
    };

    static PiecewiseFn make(std::vector<Piece> pieces) {
        if (pieces.empty()) throw std::invalid_argument("piecewise function needs at least one piece");
        if (!pieces.front().start.is_zero())
            throw std::invalid_argument("piecewise domain must start at 0");
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
            if (!(pieces[i].start < pieces[i + 1].start))
                throw std::invalid_argument("breakpoints must be strictly increasing");
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            const Piece& p = pieces[i];
            if (p.at < Rat(0)) throw std::invalid_argument("negative value at breakpoint " + p.start.str());
            bool last = i + 1 == pieces.size();
            if (last) {
                if (p.law.slope < Rat(0))
                    throw std::invalid_argument("unbounded piece has negative slope; function would go negative");
                if (p.law(p.start) < Rat(0))
                    throw std::invalid_argument("unbounded piece negative at its left end");
            } else {
                if (p.law(p.start) < Rat(0) || p.law(pieces[i + 1].start) < Rat(0))
                    throw std::invalid_argument("piece negative inside [" + p.start.str() + ", " +
                                                pieces[i + 1].start.str() + ")");
            }
        }
        PiecewiseFn f;
        f.pieces_ = std::move(pieces);
        f.normalize();
        f.cache_doubles();
        return f;
    }

    /// Single affine law on all of [0, inf); f(0) = intercept.
    static PiecewiseFn affine(const Rat& slope, const Rat& intercept) {
        return make({Piece{Rat(0), intercept, AffineLaw{slope, intercept}}});
    }

    static PiecewiseFn constant(const Rat& c) { return affine(Rat(0), c); }

    const std::vector<Piece>& pieces() const { return pieces_; }
    std::size_t piece_count() const { return pieces_.size(); }

    Rat eval(const Rat& t) const {
        if (t < Rat(0)) throw std::invalid_argument("piecewise function evaluated at negative argument");
        std::size_t i = locate(t);
        if (t == pieces_[i].start) return pieces_[i].at;
        return pieces_[i].law(t);
    }
    Rat eval(std::int64_t t) const { return eval(Rat(t)); }

    double eval(double t) const {
        if (t < 0) throw std::invalid_argument("piecewise function evaluated at negative argument");
        std::size_t lo = 0;
        for (std::size_t i = pieces_.size(); i-- > 0;) {
            if (dstarts_[i] <= t) {
                lo = i;
                break;
            }
        }
        if (t == dstarts_[lo]) return pieces_[lo].at.to_double();
        return pieces_[lo].law.at(t);
    }

    /// Exact one-sided limits at r > 0, read from the adjacent affine laws.
    /// For piecewise-affine functions these coincide with the one-sided limsups.
    std::pair<Rat, Rat> one_sided_limits(const Rat& r) const {
        if (!(Rat(0) < r)) throw std::invalid_argument("one-sided limits require r > 0");
        std::size_t right = locate(r);
        std::size_t left = right;
        if (r == pieces_[right].start) left = right - 1;  // right > 0 since r > 0 = t0
        return {pieces_[left].law(r), pieces_[right].law(r)};
    }

    friend bool operator==(const PiecewiseFn& a, const PiecewiseFn& b) {
        if (a.pieces_.size() != b.pieces_.size()) return false;
        for (std::size_t i = 0; i < a.pieces_.size(); ++i) {
            if (a.pieces_[i].start != b.pieces_[i].start || a.pieces_[i].at != b.pieces_[i].at ||
                !(a.pieces_[i].law == b.pieces_[i].law))
                return false;
        }
        return true;
    }
    friend bool operator!=(const PiecewiseFn& a, const PiecewiseFn& b) { return !(a == b); }

private:
    std::vector<Piece> pieces_;
    std::vector<double> dstarts_;

    PiecewiseFn() = default;

    std::size_t locate(const Rat& t) const {
        std::size_t lo = 0;
        for (std::size_t i = pieces_.size(); i-- > 0;) {
            if (pieces_[i].start <= t) {
                lo = i;
                break;
            }
        }
        return lo;
    }

    // Drop breakpoints that neither change the law nor carry a jump.
    void normalize() {
        std::vector<Piece> out;
        out.reserve(pieces_.size());
        out.push_back(pieces_.front());
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            const Piece& p = pieces_[i];
            const Piece& prev = out.back();
            if (prev.law == p.law && p.at == prev.law(p.start)) continue;
            out.push_back(p);
        }
        pieces_ = std::move(out);
    }

    void cache_doubles() {
        dstarts_.clear();
        dstarts_.reserve(pieces_.size());
        for (const Piece& p : pieces_) dstarts_.push_back(p.start.to_double());
    }
};

} // namespace picard

#endif
