#pragma once

#include "vkg/pcgroup.hpp"

// Hand-refined PC presentations used as fixtures across the test suite.
// All relative orders are 2; tails were derived by hand from the usual
// presentations and are cross-checked against brute force in the tests.

namespace vkg_test {

using vkg::PcPresentation;

inline PcPresentation c2() {
    PcPresentation p;
    p.ngens = 1;
    return p;
}

// g1^2 = g2
inline PcPresentation c4() {
    PcPresentation p;
    p.ngens = 2;
    p.power_tail[0] = 0b10;
    return p;
}

inline PcPresentation c2xc2() {
    PcPresentation p;
    p.ngens = 2;
    return p;
}

// g1^2 = g2, g2^2 = g3  (C8)
inline PcPresentation c8() {
    PcPresentation p;
    p.ngens = 3;
    p.power_tail[0] = 0b010;
    p.power_tail[1] = 0b100;
    return p;
}

// g1 = reflection, g2 = rotation, g3 = rotation^2:
// g2^2 = g3, [g2,g1] = g3
inline PcPresentation d8() {
    PcPresentation p;
    p.ngens = 3;
    p.power_tail[1] = 0b100;
    p.comm_tail[1][0] = 0b100;
    return p;
}

// g1^2 = g2^2 = [g2,g1] = g3
inline PcPresentation q8() {
    PcPresentation p;
    p.ngens = 3;
    p.power_tail[0] = 0b100;
    p.power_tail[1] = 0b100;
    p.comm_tail[1][0] = 0b100;
    return p;
}

// D16 with g1 = s, g2 = r, g3 = r^2, g4 = r^4:
// [g2,g1] = r^-2 = g3 g4, [g3,g1] = r^-4 = g4
inline PcPresentation d16() {
    PcPresentation p;
    p.ngens = 4;
    p.power_tail[1] = 0b0100;
    p.power_tail[2] = 0b1000;
    p.comm_tail[1][0] = 0b1100;
    p.comm_tail[2][0] = 0b1000;
    return p;
}

// <a,b | a^8 = b^4 = 1, b^-1 a b = a^3> refined along
// g1 = b, g2 = b^2, g3 = a, g4 = a^2, g5 = a^4.
inline PcPresentation g32_13() {
    PcPresentation p;
    p.ngens = 5;
    p.power_tail[0] = 0b00010;  // b^2 = g2
    p.power_tail[2] = 0b01000;  // a^2 = g4
    p.power_tail[3] = 0b10000;  // (a^2)^2 = g5
    p.comm_tail[2][0] = 0b01000;  // [a,b] = a^2
    p.comm_tail[3][0] = 0b10000;  // [a^2,b] = a^4
    return p;
}

// Same chain for <a,b | a^8 = b^4 = 1, b^-1 a b = a^-1>:
// [a,b] = a^6 = g4 g5, [a^2,b] = a^4 = g5
inline PcPresentation g32_14() {
    PcPresentation p;
    p.ngens = 5;
    p.power_tail[0] = 0b00010;
    p.power_tail[2] = 0b01000;
    p.power_tail[3] = 0b10000;
    p.comm_tail[2][0] = 0b11000;
    p.comm_tail[3][0] = 0b10000;
    return p;
}

}  // namespace vkg_test
