#include "doctest.h"

#include "picard/derived.hpp"
#include "support/corpus.hpp"

using namespace picard;

namespace {

PiecewiseFn half() { return PiecewiseFn::affine(Rat(1, 2), Rat(0)); }

} // namespace

TEST_CASE("star space on hand instances") {
    // identity map over an A1 space leaves the distance untouched
    corpus::Rng rng(41);
    auto s = corpus::gen_space_quasi(rng, 4);
    std::vector<std::size_t> idimg{0, 1, 2, 3};
    auto star = star_space(s, FiniteMap::make(idimg, 4));
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(star.space.d(i, j) == s.d(i, j));

    // two-point asymmetric space with a swap
    auto two = FiniteSpace::make({"0", "1"}, {{Rat(0), Rat(2)}, {Rat(1), Rat(0)}});
    auto swapped = star_space(two, FiniteMap::make({1, 0}, 2));
    CHECK(swapped.space.d(0, 1) == Rat(2));  // max{2, d(0,1)=2, d(1,0)=1}
    CHECK(swapped.space.d(1, 0) == Rat(2));  // max{1, d(1,0)=1, d(0,1)=2}
    CHECK(swapped.space.d(0, 0) == Rat(0));

    // constant map folds in only the displacement of the moved point
    auto crushed = star_space(two, FiniteMap::make({0, 0}, 2));
    CHECK(crushed.space.d(0, 1) == picard::max(two.d(0, 1), two.d(1, 0)));
}

TEST_CASE("orbit-max space on hand instances") {
    auto s = FiniteSpace::make({"0", "1", "2"}, {{Rat(0), Rat(1), Rat(2)},
                                                 {Rat(1), Rat(0), Rat(1)},
                                                 {Rat(2), Rat(1), Rat(0)}});
    auto cyc = FiniteMap::make({1, 2, 0}, 3);
    auto om = orbit_max_space(s, cyc, 1);
    CHECK(om.space.d(0, 1) == Rat(1));  // max{d(0,1), d(1,2)} = max{1,1}
    CHECK(om.space.d(0, 2) == Rat(2));  // max{d(0,2), d(1,0)} = max{2,1}

    auto idm = FiniteMap::make({0, 1, 2}, 3);
    auto om_id = orbit_max_space(s, idm, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(om_id.space.d(i, j) == s.d(i, j));

    auto constant = FiniteMap::make({0, 0, 0}, 3);
    auto om_c = orbit_max_space(s, constant, 2);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            if (i != j) CHECK(om_c.space.d(i, j) == s.d(i, j));  // iterates collapse to d(0,0)=0

    CHECK_THROWS(orbit_max_space(s, cyc, 0));
}

TEST_CASE("star agrees with orbit-max when both reduce to the same pairs") {
    auto two = FiniteSpace::make({"0", "1"}, {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}});
    auto swap = FiniteMap::make({1, 0}, 2);
    auto st = star_space(two, swap);
    auto om = orbit_max_space(two, swap, 1);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(st.space.d(i, j) == om.space.d(i, j));
}

TEST_CASE("inheritance clauses pass across a zero-diagonal corpus") {
    corpus::Rng rng(42);
    for (int i = 0; i < 60; ++i) {
        FiniteSpace s = i % 3 == 0   ? corpus::gen_space_metric(rng, 2 + i % 5)
                        : i % 3 == 1 ? corpus::gen_space_quasi(rng, 2 + i % 5)
                                     : corpus::gen_space_raw(rng, 2 + i % 5);
        auto f = i % 2 ? corpus::gen_map_random(rng, s.size()) : corpus::gen_map_constant(rng, s.size());
        auto star = star_space(s, f);
        auto rep = verify_inheritance(s, star);
        CHECK(rep.all_pass());

        auto g = corpus::gen_map_random(rng, s.size());
        auto om = orbit_max_space(s, f, g, 1 + i % 3);
        auto rep2 = verify_inheritance(s, om);
        CHECK(rep2.domination.pass);
        CHECK(rep2.w3_transfer.pass);
        CHECK(rep2.jms_witness_exists.pass);
        CHECK(rep2.cauchy_transfer.pass);
    }
}

TEST_CASE("cauchy transfer genuinely fails on positive self-distances") {
    // overlap space: d(i,i) = 1, d(0,1) = d(1,0) = 0; the constant map parks
    // on a fixed point whose self-distance never decays in the base
    auto two = FiniteSpace::make({"0", "1"}, {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    auto crush = FiniteMap::make({0, 0}, 2);
    auto star = star_space(two, crush);
    auto rep = verify_inheritance(two, star);
    CHECK(!rep.cauchy_transfer.pass);  // surfaced loudly, not swallowed
    CHECK(!rep.cauchy_transfer.detail.empty());
}

TEST_CASE("contraction transfers to the star space through the envelope") {
    corpus::Rng rng(43);
    auto half_fn = half();
    int transfers = 0;
    for (int i = 0; i < 120 && transfers < 30; ++i) {
        auto s = i % 2 ? corpus::gen_space_metric(rng, 2 + i % 5) : corpus::gen_space_quasi(rng, 2 + i % 5);
        auto phi = corpus::gen_monotone_phi(rng);
        if (!check_phi_membership(phi).verdict) continue;
        auto f = i % 3 ? corpus::gen_map_clustered(rng, s, phi) : corpus::gen_map_constant(rng, s.size());
        if (!check_nonlinear_contraction(s, f, phi).holds) continue;
        auto env = monotone_envelope(phi);
        // the one-step Picard gap inequality must hold before the transfer claim applies
        bool gaps_ok = true;
        for (std::size_t x = 0; x < s.size(); ++x)
            gaps_ok = gaps_ok && s.d(f(x), f(f(x))) <= env.eval(s.d(x, f(x)));
        if (!gaps_ok) continue;
        ++transfers;
        auto star = star_space(s, f);
        CHECK(check_nonlinear_contraction(star.space, f, env, PhiPolicy::WarnOnly).holds);
    }
    CHECK(transfers >= 30);
    (void)half_fn;
}
