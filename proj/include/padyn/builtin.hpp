#pragma once

#include <string>
#include <vector>

#include "padyn/herman.hpp"

// Embedded data for the two worked C_5 examples, so `reproduce` runs offline.
namespace padyn::builtin {

struct Example {
    int number;
    RationalMap base;             // R(z) = (z^2 - z/5)/(z^2 - 1)
    RationalMap map;              // the degree-2 input of the ring construction
    std::vector<Region> disks;    // Siegel cycle the construction consumes
    std::vector<Region> extra_disks;
    std::string extra_label;      // what extra_disks demonstrate, and under which map
    bool extra_under_base;
    HermanParams params;
    RationalMap reference_q;      // the printed closed form, expanded
    bool reference_matches;
    Region image_frame_source;    // closed balls B_{1/25}, B_{1/5}: the isometry frame
    Region image_frame_target;
    Region scaled_frame_source;   // open-disk frame for the scaled reductions
    Region scaled_frame_target;
    std::vector<std::string> discrepancies;
};

inline RationalMap base_map(const FieldContext& ctx) {
    return RationalMap(ctx, Poly({mpq_class(0), mpq_class(-1, 5), mpq_class(1)}),
                            Poly({mpq_class(-1), mpq_class(0), mpq_class(1)}));
}

inline RationalMap conjugated_map(const FieldContext& ctx) {
    return RationalMap(ctx, Poly({mpq_class(5), mpq_class(0), mpq_class(-5)}),
                            Poly({mpq_class(5), mpq_class(-1)}));
}

inline Example example1() {
    FieldContext ctx(5, 2);
    FieldElement zero = FieldElement::zero(ctx), one = FieldElement::one(ctx);
    return Example{
        1,
        base_map(ctx),
        conjugated_map(ctx),
        {Region::disk(zero, HalfInt::whole(1)), Region::disk(one, HalfInt::whole(0))},
        {Region::disk(one, HalfInt::whole(0)), Region::around_infinity(ctx, HalfInt::whole(-1))},
        "Siegel cycle {D_1(1), D_5(inf)} of the original map",
        true,
        HermanParams{zero, FieldElement(ctx, 25)},
        // (5z^3 - 30z + 125) / ((z - 25)(z - 5))
        RationalMap(ctx, Poly({mpq_class(125), mpq_class(-30), mpq_class(0), mpq_class(5)}),
                         Poly({mpq_class(125), mpq_class(-30), mpq_class(1)})),
        true,
        Region::ball(zero, HalfInt::whole(2)),
        Region::ball(one, HalfInt::whole(1)),
        Region::disk(zero, HalfInt::whole(2)),
        Region::disk(one, HalfInt::whole(1)),
        {},
    };
}

inline Example example2() {
    FieldContext ctx(5, 2);
    FieldElement z0(ctx, 125), w1(ctx, 651);
    return Example{
        2,
        base_map(ctx),
        conjugated_map(ctx),
        {Region::disk(z0, HalfInt::whole(1)), Region::disk(w1, HalfInt::whole(0))},
        {Region::disk(z0, HalfInt::whole(2)), Region::disk(w1, HalfInt::whole(1))},
        "small Siegel cycle {D_(1/25)(125), D_(1/5)(651)} around the returning orbit",
        false,
        HermanParams{z0, FieldElement(ctx, 25)},
        // printed reference: (5z^3 - 1276z^2 + 83974z - 308600) / (150 - z)
        RationalMap(ctx, Poly({mpq_class(-308600), mpq_class(83974), mpq_class(-1276), mpq_class(5)}),
                         Poly({mpq_class(150), mpq_class(-1)})),
        false,
        Region::ball(z0, HalfInt::whole(2)),
        Region::ball(w1, HalfInt::whole(1)),
        Region::disk(z0, HalfInt::whole(2)),
        Region::disk(w1, HalfInt::whole(1)),
        {
            "orbit value: the printed first-step value 615 is inconsistent; the map sends 125 to 651, "
            "and the printed second iterate 3280 60/323 = 1059500/323 equals the image of 651, so 651 is correct",
            "closed form: the printed reference formula for the constructed map defines a different rational map "
            "(cross-multiplication of the two fraction pairs disagrees), although it too evaluates to 651 at z = 125; "
            "the constructed map is certified by the hypothesis, proximity, and ring checks instead",
        },
    };
}

inline Example example(int n) {
    if (n == 1) return example1();
    if (n == 2) return example2();
    throw std::invalid_argument("unknown builtin example number");
}

} // namespace padyn::builtin
