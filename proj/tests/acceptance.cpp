// Acceptance gate: one line per criterion, exit code = number of failures.
// Every comparison below is exact; there are no tolerances anywhere.

#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "padyn/builtin.hpp"
#include "padyn/pipeline.hpp"

using namespace padyn;

namespace {

FieldContext ctx5() { return FieldContext(5, 2); }
FieldElement fe(long n) { return FieldElement(ctx5(), n); }
HalfInt W(long long n) { return HalfInt::whole(n); }

bool expect(bool ok, const std::string& what, std::string& why) {
    if (!ok && why.empty()) why = what;
    return ok;
}

// 1. R reduces to the pair [-X*Y, 0] and is bad; the conjugate is bad too.
bool criterion1(std::string& why) {
    ReductionReport red = builtin::base_map(ctx5()).reduction();
    bool ok = expect(red.rendered == "[-X*Y, 0]", "pair " + red.rendered, why);
    ok &= expect(!red.good, "base flagged good", why);
    ok &= expect(!builtin::conjugated_map(ctx5()).reduction().good, "conjugate flagged good", why);
    return ok;
}

// 2. Multiplier 1/5 (repelling) at 0; derived multiplier -1/2 of unit norm
//    (indifferent) on the 2-cycle {1, inf}.
bool criterion2(std::string& why) {
    RationalMap r = builtin::base_map(ctx5());
    PeriodicPointsResult pp1 = periodic_points(r, 1, 8);
    bool ok = expect(pp1.orbits.size() == 1 &&
                         pp1.orbits[0].points[0] == ProjPoint::finite(fe(0)),
                     "fixed point 0 not found", why);
    if (ok) {
        ok &= expect(pp1.orbits[0].lambda == FieldElement(ctx5(), mpq_class(1, 5)),
                     "multiplier at 0 is " + pp1.orbits[0].lambda.str(), why);
        ok &= expect(pp1.orbits[0].cls == CycleClass::Repelling,
                     cycle_class_str(pp1.orbits[0].cls) + " at 0", why);
    }
    PeriodicPointsResult pp2 = periodic_points(r, 2, 8);
    const PeriodicOrbit* two = nullptr;
    for (const PeriodicOrbit& o : pp2.orbits) {
        if (o.period != 2) continue;
        bool inf = false, one = false;
        for (const ProjPoint& q : o.points) {
            if (q.is_infinite()) inf = true;
            else if (q.value() == fe(1)) one = true;
        }
        if (inf && one) two = &o;
    }
    ok &= expect(two != nullptr, "2-cycle {1, inf} not found", why);
    if (two) {
        ok &= expect(two->lambda == FieldElement(ctx5(), mpq_class(-1, 2)),
                     "cycle multiplier " + two->lambda.str(), why);
        ok &= expect(two->cls == CycleClass::Indifferent, "cycle not indifferent", why);
        ok &= expect(pnorm(two->lambda) == Norm::one(), "multiplier norm not 1", why);
    }
    return ok;
}

// 3. Both Siegel cycles verify with 32 exact-isometry sample pairs.
bool criterion3(std::string& why) {
    RationalMap r = builtin::base_map(ctx5());
    RationalMap m = builtin::conjugated_map(ctx5());
    std::vector<Region> under_r{Region::disk(fe(1), W(0)),
                                Region::around_infinity(ctx5(), W(-1))};
    std::vector<Region> under_m{Region::disk(fe(0), W(1)), Region::disk(fe(1), W(0))};
    SiegelCycle a = verify_siegel_cycle(r, under_r, 32, 0);
    SiegelCycle b = verify_siegel_cycle(m, under_m, 32, 0);
    bool ok = expect(a.verified, "cycle {D_1(1), D_5(inf)} under R failed", why);
    ok &= expect(b.verified, "cycle {D_1/5(0), D_1(1)} under the conjugate failed", why);
    for (auto& [map, disks] : {std::pair(r, under_r), std::pair(m, under_m)}) {
        IsometryResult iso = verify_isometry(map, 2, disks[0], 32, 0);
        ok &= expect(iso.pairs == 32 && iso.failures == 0 && iso.pole_events == 0,
                     "isometry sampling on " + disks[0].str(), why);
    }
    return ok;
}

// 4. disk_image(R^phi, B_1/25(0)) = B_1/5(1) with t = 1/5 exactly.
bool criterion4(std::string& why) {
    DiskImage im = disk_image(builtin::conjugated_map(ctx5()), Region::ball(fe(0), W(2)), 32, 0);
    bool ok = expect(im.image.same_set(Region::ball(fe(1), W(1))),
                     "image is " + im.image.str(), why);
    ok &= expect(Norm::exp(im.image.radius_exp()) == Norm::exp(W(1)), "t != 1/5", why);
    ok &= expect(Norm::exp(im.image.radius_exp()).str(5) == "1/5", "t renders wrong", why);
    return ok;
}

// 5. Example 1 construction: exactly (5z^3 - 30z + 125)/((z-25)(z-5)), degree 3.
bool criterion5(std::string& why) {
    RationalMap m = builtin::conjugated_map(ctx5());
    RationalMap q = construct_herman_map(m, HermanParams{fe(0), fe(25)});
    Poly num({mpq_class(125), mpq_class(-30), mpq_class(0), mpq_class(5)});
    Poly den = Poly({mpq_class(-25), mpq_class(1)}) * Poly({mpq_class(-5), mpq_class(1)});
    RationalMap printed(ctx5(), num, den);
    bool ok = expect(q.same_map(printed), "constructed map differs from the printed form", why);
    ok &= expect(q.degree() == 3 && q.degree() == m.degree() + 1, "degree is not d + 1", why);
    return ok;
}

// 6. Scaled reductions on D_1/25(0) -> D_1/5(1): degree 1 for the input map,
//    degree 2 for the constructed one.
bool criterion6(std::string& why) {
    RationalMap m = builtin::conjugated_map(ctx5());
    RationalMap q = construct_herman_map(m, HermanParams{fe(0), fe(25)});
    Region src = Region::disk(fe(0), W(2)), tgt = Region::disk(fe(1), W(1));
    ScaledReduction sm = scaled_reduction(m, src, tgt, 32, 0);
    ScaledReduction sq = scaled_reduction(q, src, tgt, 32, 0);
    bool ok = expect(sm.degree == 1, "input degree " + std::to_string(sm.degree), why);
    ok &= expect(sq.degree == 2, "constructed degree " + std::to_string(sq.degree), why);
    return ok;
}

// 7. The ring cycle A_1/25^1/5(0) <-> A_1/5^1(1) verifies under Q, with
//    samples of valuation 3/2; widening ring 0 fails with the pole witness.
bool criterion7(std::string& why) {
    RationalMap m = builtin::conjugated_map(ctx5());
    HermanParams prm{fe(0), fe(25)};
    SiegelCycle cyc = verify_siegel_cycle(
        m, {Region::disk(fe(0), W(1)), Region::disk(fe(1), W(0))}, 32, 0);
    RationalMap q = construct_herman_map(m, prm);
    std::vector<Region> rings = herman_rings(m, cyc, prm);
    bool ok = expect(rings.size() == 2 &&
                         rings[0].same_set(Region::annulus(fe(0), W(2), W(1))) &&
                         rings[1].same_set(Region::annulus(fe(1), W(1), W(0))),
                     "rings are not the printed pair", why);
    for (const FieldElement& z : sample_region(rings[0], 32, 0))
        ok &= expect(vp(z) == Valuation::halves(3), "sample valuation " + vp(z).str(), why);
    HermanCycle hc{m, q, rings, prm, true, true, false, {}};
    ok &= expect(verify_herman_cycle(hc, 32, 0).pass(), "ring cycle failed", why);

    std::vector<Region> widened{Region::annulus(fe(0), W(3), W(1)),
                                Region::annulus(fe(1), W(1), W(0))};
    HermanCycle bad{m, q, widened, prm, true, true, false, {}};
    VerificationReport neg = verify_herman_cycle(bad, 32, 0);
    bool witnessed = false;
    if (const Check* pole = neg.find("pole-audit"); pole && !pole->pass)
        for (const Witness& w : pole->witnesses)
            if (w.detail.find("pole at z = 25") != std::string::npos) witnessed = true;
    ok &= expect(!neg.pass() && witnessed, "widened ring did not expose the pole", why);
    return ok;
}

// 8. Example 2 construction: degree 3 with Q(125) = 651, verified rings, and
//    the documented divergence from the printed formula.
bool criterion8(std::string& why) {
    builtin::Example ex = builtin::example2();
    SiegelCycle cyc = verify_siegel_cycle(ex.map, ex.disks, 32, 0);
    RationalMap q = construct_herman_map(ex.map, ex.params);
    bool ok = expect(q.degree() == 3, "degree " + std::to_string(q.degree()), why);
    ok &= expect(q.eval_value(fe(125)) == fe(651),
                 "Q(125) = " + q.eval_value(fe(125)).str(), why);
    HermanCycle hc{ex.map, q, herman_rings(ex.map, cyc, ex.params), ex.params,
                   false, true, false, {}};
    ok &= expect(verify_herman_cycle(hc, 32, 0).pass(), "ring verification failed", why);

    JobSpec spec;
    spec.command = "reproduce";
    spec.example = 2;
    RunResult run = padyn::run(spec);
    ok &= expect(run.exit_code == 0, "reproduce --example 2 exited nonzero", why);
    ok &= expect(run.document["results"]["reference_agrees"] == false,
                 "printed formula unexpectedly matches", why);
    bool flagged = false;
    for (const json& c : run.document["report"]["checks"])
        if (c["name"] == "reference-discrepancy" && c["pass"] == true) flagged = true;
    ok &= expect(flagged, "no reference-discrepancy record", why);
    return ok;
}

// 9. All five property suites pass at their full sizes.
bool criterion9(std::string& why) {
    bool ok = true;
    for (const Check& c : {selftest::ultrametric_suite(1000, 11), selftest::newton_suite(100, 23),
                           selftest::hensel_suite(100, 37), selftest::ratio_suite(50, 41),
                           selftest::resultant_suite(50, 53)}) {
        std::string detail = c.witnesses.empty() ? "" : ": " + c.witnesses[0].detail;
        ok &= expect(c.pass, c.name + detail, why);
    }
    return ok;
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<bool(std::string&)>>> criteria{
        {"reduction pair [-X*Y, 0], both presentations bad", criterion1},
        {"multiplier 1/5 repelling at 0; -1/2 indifferent on {1, inf}", criterion2},
        {"both Siegel cycles verified, 32 exact-isometry pairs", criterion3},
        {"disk image B_1/25(0) -> B_1/5(1), t = 1/5", criterion4},
        {"construction 1: (5z^3 - 30z + 125)/((z-25)(z-5)), degree 3", criterion5},
        {"scaled reductions: input degree 1, constructed degree 2", criterion6},
        {"ring cycle verified; widened ring exposes the pole", criterion7},
        {"construction 2: Q(125) = 651, divergence documented", criterion8},
        {"property suites: 1000/100/100/50/50, zero failures", criterion9},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string why;
        bool ok = false;
        try {
            ok = criteria[i].second(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << "criterion " << (i + 1) << ": " << (ok ? "PASS" : "FAIL") << " -- "
                  << criteria[i].first;
        if (!ok && !why.empty()) std::cout << " (" << why << ")";
        std::cout << "\n";
    }
    return failures;
}
