#include "doctest.h"

#include "picard/comparison.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace picard;

TEST_CASE("phi class is closed under pointwise max") {
    corpus::Rng rng(101);
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_phi(rng);
        auto g = corpus::gen_phi(rng);
        auto m = max_combine({f, g});
        CHECK(check_phi_membership(m).verdict);
        for (double t : {0.05, 0.4, 1.0, 2.7, 9.0})
            CHECK(m.eval(t) >= std::max(f.eval(t), g.eval(t)) - 1e-12);
    }
}

TEST_CASE("envelope dominates and never decreases") {
    corpus::Rng rng(102);
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_comparison(rng);
        auto env = monotone_envelope(f);
        for (double t : {0.01, 0.3, 0.9, 1.5, 4.2, 11.0})
            CHECK(env.eval(t) >= f.eval(t) - 1e-12);
        // exact monotonicity: nonnegative slopes and no downward jumps
        const auto& ps = env.pieces();
        for (std::size_t k = 0; k < ps.size(); ++k) {
            CHECK(ps[k].law.slope >= Rat(0));
            CHECK(ps[k].at <= ps[k].law(ps[k].start));
            if (k > 0) CHECK(ps[k - 1].law(ps[k].start) <= ps[k].at);
        }
        CHECK(env.eval(Rat(0)) == Rat(0));
    }
}

TEST_CASE("matkowski members are phi members") {
    corpus::Rng rng(103);
    int matkowski_hits = 0;
    for (int i = 0; i < 300; ++i) {
        auto f = i % 2 ? corpus::gen_monotone_phi(rng) : corpus::gen_comparison(rng);
        auto mk = check_matkowski(f, default_matkowski_probes());
        if (!mk.holds) continue;
        ++matkowski_hits;
        CHECK(check_phi_membership(f).verdict);
    }
    CHECK(matkowski_hits > 50);  // the corpus must actually exercise the implication
}

TEST_CASE("boyd-wong members satisfy pasicki") {
    corpus::Rng rng(104);
    int bw_hits = 0;
    for (int i = 0; i < 300; ++i) {
        auto f = corpus::gen_comparison(rng);
        if (!check_comparison(f).holds) continue;
        if (check_boyd_wong(f).ok) {
            ++bw_hits;
            CHECK(check_pasicki(f).ok);
        }
    }
    CHECK(bw_hits > 50);
}

TEST_CASE("boyd-wong or pasicki forces iterate decay") {
    corpus::Rng rng(105);
    int decays_checked = 0;
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_comparison(rng);
        if (!check_comparison(f).holds) continue;
        if (!check_boyd_wong(f).ok && !check_pasicki(f).ok) continue;
        for (double probe : {1e-3, 1.0, 1e3}) {
            auto tr = iterate_to_zero(f, probe, 10000, 1e-9);
            CHECK(tr.converged);
            ++decays_checked;
        }
    }
    CHECK(decays_checked > 100);
}

TEST_CASE("failure witnesses are genuine, numerically") {
    corpus::Rng rng(107);
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_comparison(rng);

        auto bw = check_boyd_wong(f);
        if (!bw.ok) {
            REQUIRE(bw.witness);
            double w = bw.witness->to_double();
            // the right limit at the witness reaches w
            CHECK(oracles::numeric_limit(f, w, false) >= w - 1e-9);
        }

        auto pa = check_pasicki(f);
        if (!pa.ok) {
            REQUIRE(pa.witness);
            double w = pa.witness->to_double();
            // some point just right of the witness exceeds it
            double worst = 0;
            for (int k = 2; k <= 9; ++k) worst = std::max(worst, f.eval(w + std::pow(10.0, -k)) - w);
            CHECK(worst > -1e-9);
        }

        auto phi = check_phi_membership(f);
        if (phi.is_comparison && !phi.left_limsup.ok) {
            double w = phi.left_limsup.witness->to_double();
            CHECK(oracles::numeric_limit(f, w, true) >= w - 1e-9);
        }
    }
}

TEST_CASE("comparison witnesses point at genuine violations") {
    corpus::Rng rng(108);
    for (int i = 0; i < 100; ++i) {
        // push one law of an honest comparison function above the identity
        auto f = corpus::gen_comparison(rng);
        auto pieces = f.pieces();
        auto& law = pieces[corpus::pick(rng, 0, pieces.size() - 1)].law;
        law.intercept = law.intercept + pieces.back().start + Rat(2);
        auto mutant = PiecewiseFn::make(std::move(pieces));
        auto rep = check_comparison(mutant);
        CHECK(!rep.holds);
        REQUIRE(rep.witness);
        if (*rep.witness > Rat(0)) CHECK(mutant.eval(*rep.witness) >= *rep.witness);
    }
}

TEST_CASE("generated phi members really are phi members") {
    corpus::Rng rng(106);
    for (int i = 0; i < 100; ++i) {
        CHECK(check_phi_membership(corpus::gen_phi(rng)).verdict);
        CHECK(check_comparison(corpus::gen_comparison(rng)).holds);
        auto m = corpus::gen_monotone_phi(rng);
        CHECK(check_matkowski(m, {1.0}, 10000, 1e-9).monotone);
        CHECK(check_comparison(m).holds);
    }
}

TEST_CASE("limit-based verdicts agree with numeric limits at the breakpoints") {
    // violations of the one-sided conditions concentrate at breakpoints, so a
    // numeric sweep there catches a checker that wrongly reports OK
    corpus::Rng rng(109);
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_comparison(rng);
        bool bw_ok = check_boyd_wong(f).ok;
        bool pa_ok = check_pasicki(f).ok;
        auto phi = check_phi_membership(f);
        for (const auto& p : f.pieces()) {
            double s = p.start.to_double();
            if (s <= 0) continue;
            double rl = oracles::numeric_limit(f, s, false);
            double ll = oracles::numeric_limit(f, s, true);
            if (rl > s + 1e-6) {
                CHECK(!bw_ok);
                CHECK(!pa_ok);
                CHECK(!phi.right_limsup.ok);
            } else if (rl > s - 1e-6) {
                CHECK(!bw_ok);  // right limit touching s already breaks strictness
            }
            if (ll > s + 1e-6) CHECK(!phi.left_limsup.ok);
            // rising law out of a touching right limit breaks the plateau
            if (std::fabs(rl - s) < 1e-9 && f.eval(s + 1e-7) > s + 1e-8) {
                CHECK(!pa_ok);
                CHECK(!phi.plateau.ok);
            }
        }
    }
}

TEST_CASE("max_combine evaluates to the exact pointwise maximum") {
    corpus::Rng rng(110);
    for (int i = 0; i < 150; ++i) {
        auto f = corpus::gen_comparison(rng);
        auto g = corpus::gen_comparison(rng);
        auto m = pointwise_max(f, g);
        for (int k = 0; k <= 200; ++k) {
            Rat t(k, 16);  // sixteenths sweep past every eighths-grid breakpoint
            CHECK(m.eval(t) == picard::max(f.eval(t), g.eval(t)));
        }
    }
}

TEST_CASE("envelope equals the running sup exactly") {
    // independent oracle: the sup of an affine law over a half-open interval
    // is the larger of its one-sided values, so the running sup over (0, t]
    // is a finite max over interval ends and breakpoint values
    auto running_sup = [](const PiecewiseFn& f, const Rat& t) {
        const auto& ps = f.pieces();
        std::optional<Rat> sup;
        auto bump = [&](const Rat& v) { sup = sup ? picard::max(*sup, v) : v; };
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const Rat& u = ps[i].start;
            if (u > Rat(0) && u <= t) bump(ps[i].at);
            if (!(u < t)) continue;
            Rat upper = t;
            if (i + 1 < ps.size()) upper = picard::min(upper, ps[i + 1].start);
            bump(ps[i].law(u));      // right limit into the open interval
            bump(ps[i].law(upper));  // value (or limit) at the interval's end
        }
        return *sup;
    };
    corpus::Rng rng(111);
    for (int i = 0; i < 200; ++i) {
        auto f = corpus::gen_comparison(rng);
        auto env = monotone_envelope(f);
        for (int k = 1; k <= 150; ++k) {
            Rat t(k, 16);
            CHECK(env.eval(t) == running_sup(f, t));
        }
        CHECK(env.eval(Rat(0)) == Rat(0));
    }
}
