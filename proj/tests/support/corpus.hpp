// Seeded generators shared by the property and acceptance suites.
//
// Comparison functions are built from eighths-grid breakpoints and law values
// pinned strictly below the identity at interval closures, so membership in
// the comparison class holds by construction while Phi / Boyd-Wong / Pasicki
// membership varies with the injected boundary features (plateaus, rising
// touches, downward jumps).  Tail slopes stay <= 7/8 so iterate decay fits
// the probe budgets used by the suites.
//
// Finite spaces come in flavors: line metrics (A1 symmetric with triangle),
// quasi (positive asymmetric entries closed under min-plus), and raw
// (arbitrary nonnegative entries, zero diagonal).

#ifndef PICARD_TESTS_CORPUS_HPP
#define PICARD_TESTS_CORPUS_HPP

#include <random>
#include <vector>

#include "picard/comparison.hpp"
#include "picard/contraction.hpp"
#include "picard/space.hpp"

namespace corpus {

using picard::AffineLaw;
using picard::FiniteMap;
using picard::FiniteSpace;
using picard::PiecewiseFn;
using picard::Rat;

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Rat eighth(Rng& rng, std::size_t lo, std::size_t hi) {
    return Rat(static_cast<std::int64_t>(pick(rng, lo, hi)), 8);
}

inline std::vector<Rat> breakpoints(Rng& rng, std::size_t count) {
    std::vector<Rat> bps{Rat(0)};
    std::size_t grid = 1;
    for (std::size_t i = 0; i < count; ++i) {
        grid += pick(rng, 1, 16);
        if (grid > 64) break;
        bps.push_back(Rat(static_cast<std::int64_t>(grid), 8));
    }
    return bps;
}

inline AffineLaw law_through(const Rat& u, const Rat& vu, const Rat& w, const Rat& vw) {
    Rat slope = (vw - vu) / (w - u);
    return AffineLaw{slope, vu - slope * u};
}

/// Arbitrary comparison function: below the identity by construction, with
/// optional plateaus, rising touches (which break Phi) and non-monotone laws.
inline PiecewiseFn gen_comparison(Rng& rng) {
    auto bps = breakpoints(rng, pick(rng, 0, 3));
    std::vector<PiecewiseFn::Piece> pieces;
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const Rat& u = bps[i];
        Rat at = i == 0 ? Rat(0) : u * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
        bool last = i + 1 == bps.size();
        if (last) {
            Rat slope = eighth(rng, 0, 7);
            Rat vu = u * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
            pieces.push_back({u, at, AffineLaw{slope, vu - slope * u}});
        } else {
            const Rat& w = bps[i + 1];
            std::size_t feature = pick(rng, 0, 9);
            if (feature == 0) {
                // plateau: constant at exactly u; right limit equals u there
                pieces.push_back({u, at, AffineLaw{Rat(0), u}});
            } else if (feature == 1 && !u.is_zero()) {
                // rising touch: law(u) = u with positive slope; kills Phi
                pieces.push_back({u, at, law_through(u, u, w, w * Rat(7, 8))});
            } else {
                Rat vu = u * Rat(static_cast<std::int64_t>(pick(rng, 0, 8)), 8);
                Rat vw = w * Rat(static_cast<std::int64_t>(pick(rng, 0, 8)), 8);
                if (vu == u && vw == w) vw = w * Rat(7, 8);
                pieces.push_back({u, at, law_through(u, vu, w, vw)});
            }
        }
    }
    return PiecewiseFn::make(std::move(pieces));
}

/// Member of the Phi class by construction (verified before returning).
inline PiecewiseFn gen_phi(Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        auto bps = breakpoints(rng, pick(rng, 0, 3));
        std::vector<PiecewiseFn::Piece> pieces;
        for (std::size_t i = 0; i < bps.size(); ++i) {
            const Rat& u = bps[i];
            Rat at = i == 0 ? Rat(0) : u * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
            bool last = i + 1 == bps.size();
            if (last) {
                Rat slope = eighth(rng, 0, 7);
                Rat vu = u * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
                pieces.push_back({u, at, AffineLaw{slope, vu - slope * u}});
            } else {
                const Rat& w = bps[i + 1];
                if (pick(rng, 0, 4) == 0 && !u.is_zero()) {
                    pieces.push_back({u, at, AffineLaw{Rat(0), u}});  // admissible plateau
                } else {
                    Rat vu = u * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
                    Rat vw = w * Rat(static_cast<std::int64_t>(pick(rng, 0, 7)), 8);
                    pieces.push_back({u, at, law_through(u, vu, w, vw)});
                }
            }
        }
        PiecewiseFn f = PiecewiseFn::make(std::move(pieces));
        if (picard::check_phi_membership(f).verdict) return f;
    }
    return PiecewiseFn::affine(Rat(1, 2), Rat(0));
}

/// Monotone non-decreasing Phi member (Matkowski-style corpus entry).
inline PiecewiseFn gen_monotone_phi(Rng& rng) {
    auto bps = breakpoints(rng, pick(rng, 0, 3));
    std::vector<PiecewiseFn::Piece> pieces;
    Rat cur(0);  // value carried in from the left
    for (std::size_t i = 0; i < bps.size(); ++i) {
        const Rat& u = bps[i];
        bool last = i + 1 == bps.size();
        Rat cap = u * Rat(7, 8);
        Rat vu = cur < cap ? cur + (cap - cur) * Rat(static_cast<std::int64_t>(pick(rng, 0, 2)), 2) : cur;
        Rat at = i == 0 ? Rat(0) : (pick(rng, 0, 1) ? cur : vu);  // between the one-sided limits
        if (last) {
            Rat slope = eighth(rng, 0, 7);
            pieces.push_back({u, at, AffineLaw{slope, vu - slope * u}});
        } else {
            const Rat& w = bps[i + 1];
            Rat capw = w * Rat(7, 8);
            Rat vw = vu < capw ? vu + (capw - vu) * Rat(static_cast<std::int64_t>(pick(rng, 0, 2)), 2) : vu;
            pieces.push_back({u, at, law_through(u, vu, w, vw)});
            cur = vw;
        }
    }
    return PiecewiseFn::make(std::move(pieces));
}

// ---------------------------------------------------------------------------
// finite spaces

inline FiniteSpace from_matrix(std::vector<std::vector<Rat>> m) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m.size(); ++i) labels.push_back("p" + std::to_string(i));
    return FiniteSpace::make(std::move(labels), std::move(m));
}

/// Distinct points on a line; |.|-induced metric.
inline FiniteSpace gen_space_metric(Rng& rng, std::size_t n) {
    std::vector<Rat> pos;
    std::size_t grid = 0;
    for (std::size_t i = 0; i < n; ++i) {
        grid += pick(rng, 1, 8);
        pos.push_back(Rat(static_cast<std::int64_t>(grid), 8));
    }
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = picard::abs(pos[i] - pos[j]);
    return from_matrix(std::move(m));
}

/// Positive asymmetric entries closed under min-plus: quasi-metric (A1 + A3).
inline FiniteSpace gen_space_quasi(Rng& rng, std::size_t n) {
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) m[i][j] = eighth(rng, 1, 32);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (m[i][k] + m[k][j] < m[i][j]) m[i][j] = m[i][k] + m[k][j];
    return from_matrix(std::move(m));
}

/// Arbitrary nonnegative entries with zero diagonal; no axioms, occasional
/// off-diagonal zeros feed the W3 checkers.
inline FiniteSpace gen_space_raw(Rng& rng, std::size_t n, bool allow_zeros = true) {
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) {
                std::size_t lo = allow_zeros && pick(rng, 0, 7) == 0 ? 0 : 1;
                m[i][j] = eighth(rng, lo, 32);
            }
    return from_matrix(std::move(m));
}

inline FiniteMap gen_map_random(Rng& rng, std::size_t n) {
    std::vector<std::size_t> img(n);
    for (auto& v : img) v = pick(rng, 0, n - 1);
    return FiniteMap::make(std::move(img), n);
}

inline FiniteMap gen_map_constant(Rng& rng, std::size_t n) {
    return FiniteMap::make(std::vector<std::size_t>(n, pick(rng, 0, n - 1)), n);
}

/// Map into a cluster whose internal distances stay below phi(least positive
/// distance); with a monotone phi the nonlinear hypothesis then holds by
/// construction.  Falls back to a constant map when the cluster is trivial.
inline FiniteMap gen_map_clustered(Rng& rng, const FiniteSpace& s, const PiecewiseFn& monotone_phi) {
    std::size_t n = s.size();
    std::optional<Rat> minpos;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (s.d(i, j) > Rat(0) && (!minpos || s.d(i, j) < *minpos)) minpos = s.d(i, j);
    std::size_t center = pick(rng, 0, n - 1);
    std::vector<std::size_t> cluster{center};
    if (minpos) {
        Rat budget = monotone_phi.eval(*minpos);
        for (std::size_t q = 0; q < n; ++q) {
            if (q == center) continue;
            bool fits = true;
            for (std::size_t t : cluster)
                fits = fits && s.d(q, t) <= budget && s.d(t, q) <= budget && s.d(q, q) <= budget;
            if (fits) cluster.push_back(q);
        }
    }
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = cluster[pick(rng, 0, cluster.size() - 1)];
    img[center] = center;
    return FiniteMap::make(std::move(img), n);
}

} // namespace corpus

#endif
