#pragma once

#include <cstdlib>

namespace mbeq {

// One of the two closed half-lines meeting at the origin. Component index j
// selects by parity: even j lives on [0,inf), odd j on (-inf,0].
struct HalfLine {
    int parity = 0; // 0: [0,inf), 1: (-inf,0]

    static HalfLine for_index(long j) { return HalfLine{int(((j % 2) + 2) % 2)}; }

    double sign() const { return parity ? -1.0 : 1.0; }
    bool is_negative() const { return parity != 0; }
    bool contains(double x) const { return parity ? x <= 0.0 : x >= 0.0; }

    friend bool operator==(HalfLine a, HalfLine b) { return a.parity == b.parity; }
    friend bool operator!=(HalfLine a, HalfLine b) { return a.parity != b.parity; }
};

} // namespace mbeq
