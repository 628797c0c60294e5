#pragma once

#include <string>
#include <vector>

#include "qcasim/core.hpp"

namespace qcasim {

struct LayoutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LayoutParams {
    PhysicalConstants constants;
    double a = 1.0;      // active-dot separation, nm
    double h = 0.5;      // active-dot elevation, nm
    double pitch = 2.4;  // pair center-to-center spacing along the signal direction, nm
    TwoStateParams cell;
};

// A resolved cell pair: indices into CircuitLayout::molecules, ordered by
// appearance. `device_cell` indices count device molecules only and index
// bits of the 2^M basis; -1 for driver pairs.
struct PairRef {
    int pair_id = 0;
    int first = 0;
    int second = 0;
    int device_cell_first = -1;
    int device_cell_second = -1;
    double sign = 1.0;
    bool is_driver = false;
    bool is_output = false;
};

struct CircuitLayout {
    std::vector<MoleculeSpec> molecules;
    LayoutParams params;

    std::string name;
    bool rotated = false;
    std::vector<int> input_bits;

    // Device molecules in order of appearance; position in this list is the
    // cell index (bit k of a basis word = state of cell k).
    std::vector<int> device_indices() const;
    int device_count() const;

    std::vector<PairRef> pairs() const;         // all pairs, sorted by pair_id
    std::vector<PairRef> device_pairs() const;  // device pairs only
    std::vector<PairRef> output_pairs() const;

    // Throws LayoutError on malformed pairing, overlapping molecules
    // (separation < a/2), missing drivers, or bad parameters.
    void validate() const;
};

// Stock circuit builders. Geometry: signal runs along +x; unrotated
// molecules have a_vec = a y^; the two molecules of a pair sit at
// center -+ (a/2) x^ so the four active dots form an a x a square.
// Pair centers are laid out on a `pitch`-spaced grid (default 2.4 nm;
// tighter pitches leave the rotated majority gate vulnerable to kinks
// near the junction under E_x around 0.5 E_o).
CircuitLayout build_wire(int n_pairs, int input_bit, bool rotated, const LayoutParams& p = {});
CircuitLayout build_fan_in(int input_bit, bool rotated, const LayoutParams& p = {});
CircuitLayout build_fan_out(int input_bit, bool rotated, const LayoutParams& p = {});
CircuitLayout build_inverter(int input_bit, bool rotated, const LayoutParams& p = {});
CircuitLayout build_majority(int bit_a, int bit_b, int bit_c, bool rotated,
                             const LayoutParams& p = {});

// Rotates each pair's two molecules by +90 degrees about the pair center
// (about z^): positions and a_vec both rotate, pair centers stay put.
// Handedness signs are recomputed, so the encoded bits are preserved.
CircuitLayout rotate_pairs(const CircuitLayout& layout);

// Layout document I/O (JSON, strict schema, format_version 1).
CircuitLayout load_layout(const std::string& text);
std::string save_layout(const CircuitLayout& layout);

}  // namespace qcasim
