#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kh/errors.hpp"

namespace kh {

using EdgeId = std::uint32_t;

// One crossing of an oriented diagram, PD style: the four incident edges
// (a,b,c,d) are listed counterclockwise starting from the incoming
// under-strand edge a. The under-strand runs a -> c. The over-strand runs
// d -> b at a positive crossing and b -> d at a negative one:
//
//            c                        c
//            ^                        ^
//            |                        |
//      b <---+--- d             b ----+---> d
//            |                        |
//            |                        |
//            a        (+)             a        (-)
//
// (under always enters at a and leaves at c; the over arrow's direction
// fixes the sign.)
struct Crossing {
    std::array<EdgeId, 4> e{};
    int sign = 0; // +1 or -1

    EdgeId a() const { return e[0]; }
    EdgeId b() const { return e[1]; }
    EdgeId c() const { return e[2]; }
    EdgeId d() const { return e[3]; }

    EdgeId over_in() const { return sign > 0 ? e[3] : e[1]; }
    EdgeId over_out() const { return sign > 0 ? e[1] : e[3]; }

    bool operator==(const Crossing& o) const { return e == o.e && sign == o.sign; }
};

struct Basepoint {
    enum class Kind { Edge, FreeLoop };
    Kind kind = Kind::Edge;
    std::uint32_t index = 0;

    bool operator==(const Basepoint& o) const { return kind == o.kind && index == o.index; }
};

struct ValidationReport {
    bool ok = false;
    std::vector<std::string> violations;
    int component_count = 0;
    int writhe = 0;
    std::vector<int> signs;
};

// An oriented link diagram. Edge identifiers are 0-based and contiguous;
// every edge appears exactly twice among the crossing tuples. Components
// without any crossing (split unknot circles) are counted in free_loops and
// own no edges. Instances from the public constructors are validated and
// immutable.
class Diagram {
public:
    Diagram() = default;

    // Unvalidated construction; validate() reports on it, finalize() promotes it.
    static Diagram unchecked(std::vector<Crossing> crossings, int free_loops = 0,
                             std::optional<Basepoint> basepoint = std::nullopt);

    const std::vector<Crossing>& crossings() const { return crossings_; }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }
    EdgeId edge_count() const { return static_cast<EdgeId>(2 * crossings_.size()); }
    int free_loops() const { return free_loops_; }
    const std::optional<Basepoint>& basepoint() const { return basepoint_; }

    bool finalized() const { return finalized_; }

    int positive_crossings() const;
    int negative_crossings() const;

    // Components are indexed 0..component_count-1: first the components that
    // own edges, ordered by smallest edge id, then the free loops.
    int component_count() const;
    int component_of_edge(EdgeId e) const;
    const std::vector<std::vector<EdgeId>>& component_edges() const;
    EdgeId next_edge(EdgeId e) const; // successor along the orientation

    Diagram with_basepoint(Basepoint bp) const;
    Diagram with_component_reversed(int component) const;

    // Relabels edges in deterministic traversal order (components by smallest
    // edge, then along the orientation) and sorts the crossing list. Two
    // diagrams equal up to edge relabeling have equal canonical forms.
    Diagram canonical_form() const;

    bool same_crossings(const Diagram& o) const {
        return crossings_ == o.crossings_ && free_loops_ == o.free_loops_;
    }

    // Checks all invariants on the raw data without throwing.
    friend ValidationReport validate(const Diagram& d);

    friend Diagram finalize(Diagram d); // throws on invariant violation

private:
    void compute_derived(); // assumes raw data already checked

    std::vector<Crossing> crossings_;
    int free_loops_ = 0;
    std::optional<Basepoint> basepoint_;

    bool finalized_ = false;
    std::vector<EdgeId> next_;
    std::vector<int> comp_of_edge_;
    std::vector<std::vector<EdgeId>> comp_edges_;
};

struct BraidWord {
    int strands = 1;
    std::vector<int> letters; // letter k: generator sigma_|k| with sign(k); |k| < strands
};

// "X(a,b,c,d) X(e,f,g,h) ..." with positive integer edge labels, separated by
// whitespace and/or commas. Rejects empty input; the 0-crossing unknot is only
// available from parse_braid and the builtin table.
Diagram parse_pd(const std::string& text);

std::string serialize_pd(const Diagram& d); // 1-based labels, inverse of parse_pd

Diagram parse_braid(const BraidWord& word);

// names: unknot, unknot_kink_pos, unknot_kink_neg, trefoil_rh, trefoil_lh,
//        figure8, t2_4, hopf_pos
Diagram builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

int writhe(const Diagram& d);
int self_writhe(const Diagram& d, int component);

// Sum of signs over crossings between two distinct components; the linking
// number is half of this.
int signed_crossings_between(const Diagram& d, int comp_a, int comp_b);

Diagram mirror(const Diagram& d);

} // namespace kh
