#include "kh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace kh {

namespace {

// Union-find with parity: find() returns (root, xor of values along the path),
// so v[x] XOR v[y] is known whenever x and y share a root.
struct ParityUF {
    std::vector<int> parent;
    std::vector<std::uint8_t> parity; // parity to parent

    explicit ParityUF(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[r] != r) {
            p ^= parity[r];
            r = parent[r];
        }
        // path compression
        while (parent[x] != r) {
            int nxt = parent[x];
            int np = p ^ parity[x];
            parent[x] = r;
            parity[x] = static_cast<std::uint8_t>(p);
            p = np;
            x = nxt;
        }
        return {r, p};
    }

    // enforce v[x] XOR v[y] == rel; returns false on contradiction
    bool join(int x, int y, int rel) {
        auto [rx, px] = find(x);
        auto [ry, py] = find(y);
        if (rx == ry) return (px ^ py) == rel;
        parent[rx] = ry;
        parity[rx] = static_cast<std::uint8_t>(px ^ py ^ rel);
        return true;
    }
};

struct Occurrence {
    int crossing;
    int slot; // 0..3 = a,b,c,d
};

bool is_under_slot(int slot) { return slot == 0 || slot == 2; }

// head = the edge's arrival end. Slot a is a head, slot c a tail; for over
// slots it depends on the crossing's over-direction variable v (v = true
// means the over-strand enters at d, i.e. the crossing is positive).
// head(k, b) = !v_k, head(k, d) = v_k.

std::vector<std::vector<Occurrence>> occurrence_table(const std::vector<Crossing>& crossings,
                                                      EdgeId edge_count,
                                                      std::vector<std::string>* violations) {
    std::vector<std::vector<Occurrence>> occ(edge_count);
    bool out_of_range = false;
    for (int k = 0; k < static_cast<int>(crossings.size()); ++k) {
        for (int slot = 0; slot < 4; ++slot) {
            EdgeId e = crossings[k].e[slot];
            if (e >= edge_count) {
                out_of_range = true;
                continue;
            }
            occ[e].push_back({k, slot});
        }
    }
    if (violations) {
        if (out_of_range)
            violations->push_back("edge label out of range (labels must be 0..2c-1)");
        for (EdgeId e = 0; e < edge_count; ++e) {
            if (occ[e].size() != 2)
                violations->push_back("edge " + std::to_string(e + 1) + " appears " +
                                      std::to_string(occ[e].size()) + " times (expected 2)");
        }
    }
    return occ;
}

} // namespace

Diagram Diagram::unchecked(std::vector<Crossing> crossings, int free_loops,
                           std::optional<Basepoint> basepoint) {
    Diagram d;
    d.crossings_ = std::move(crossings);
    d.free_loops_ = free_loops;
    d.basepoint_ = basepoint;
    return d;
}

int Diagram::positive_crossings() const {
    int n = 0;
    for (const auto& x : crossings_) n += x.sign > 0;
    return n;
}

int Diagram::negative_crossings() const {
    int n = 0;
    for (const auto& x : crossings_) n += x.sign < 0;
    return n;
}

int Diagram::component_count() const {
    return static_cast<int>(comp_edges_.size()) + free_loops_;
}

int Diagram::component_of_edge(EdgeId e) const { return comp_of_edge_.at(e); }

const std::vector<std::vector<EdgeId>>& Diagram::component_edges() const { return comp_edges_; }

EdgeId Diagram::next_edge(EdgeId e) const { return next_.at(e); }

Diagram Diagram::with_basepoint(Basepoint bp) const {
    if (bp.kind == Basepoint::Kind::Edge && bp.index >= edge_count())
        throw Error(ErrorKind::MalformedSyntax, "basepoint edge out of range");
    if (bp.kind == Basepoint::Kind::FreeLoop && static_cast<int>(bp.index) >= free_loops_)
        throw Error(ErrorKind::MalformedSyntax, "basepoint free loop out of range");
    Diagram d = *this;
    d.basepoint_ = bp;
    return d;
}

ValidationReport validate(const Diagram& d) {
    ValidationReport rep;
    const auto& X = d.crossings_;
    EdgeId ne = d.edge_count();

    auto occ = occurrence_table(X, ne, &rep.violations);

    for (int k = 0; k < static_cast<int>(X.size()); ++k) {
        if (X[k].sign != 1 && X[k].sign != -1)
            rep.violations.push_back("crossing " + std::to_string(k) + " has no sign");
    }
    if (d.free_loops_ < 0) rep.violations.push_back("negative free loop count");

    if (rep.violations.empty()) {
        // orientation: every edge needs exactly one head and one tail
        std::vector<int> heads(ne, 0), tails(ne, 0);
        for (const auto& x : X) {
            heads[x.a()]++;
            tails[x.c()]++;
            heads[x.over_in()]++;
            tails[x.over_out()]++;
        }
        for (EdgeId e = 0; e < ne; ++e) {
            if (heads[e] != 1 || tails[e] != 1) {
                rep.violations.push_back("inconsistent orientation at edge " + std::to_string(e + 1));
            }
        }
    }

    if (d.basepoint_) {
        const auto& bp = *d.basepoint_;
        bool bad = (bp.kind == Basepoint::Kind::Edge && bp.index >= ne) ||
                   (bp.kind == Basepoint::Kind::FreeLoop &&
                    static_cast<int>(bp.index) >= d.free_loops_);
        if (bad) rep.violations.push_back("basepoint does not name a valid edge or free loop");
    }

    rep.ok = rep.violations.empty();
    if (rep.ok) {
        Diagram tmp = d;
        tmp.compute_derived();
        rep.component_count = tmp.component_count();
        rep.writhe = writhe(tmp);
        for (const auto& x : X) rep.signs.push_back(x.sign);
    }
    return rep;
}

Diagram finalize(Diagram d) {
    ValidationReport rep = validate(d);
    if (!rep.ok) {
        std::string msg = rep.violations.front();
        ErrorKind kind = ErrorKind::NonOrientable;
        if (msg.find("appears") != std::string::npos || msg.find("out of range") != std::string::npos)
            kind = ErrorKind::EdgeCountViolation;
        else if (msg.find("basepoint") != std::string::npos || msg.find("sign") != std::string::npos ||
                 msg.find("free loop") != std::string::npos)
            kind = ErrorKind::MalformedSyntax;
        throw Error(kind, msg);
    }
    d.compute_derived();
    return d;
}

void Diagram::compute_derived() {
    EdgeId ne = edge_count();
    next_.assign(ne, 0);
    for (const auto& x : crossings_) {
        next_[x.a()] = x.c();
        next_[x.over_in()] = x.over_out();
    }
    comp_of_edge_.assign(ne, -1);
    comp_edges_.clear();
    for (EdgeId start = 0; start < ne; ++start) {
        if (comp_of_edge_[start] != -1) continue;
        int id = static_cast<int>(comp_edges_.size());
        std::vector<EdgeId> edges;
        EdgeId e = start;
        do {
            comp_of_edge_[e] = id;
            edges.push_back(e);
            e = next_[e];
        } while (e != start);
        std::sort(edges.begin(), edges.end());
        comp_edges_.push_back(std::move(edges));
    }
    finalized_ = true;
}

Diagram parse_pd(const std::string& text) {
    // tokenize: X(<int>,<int>,<int>,<int>) separated by whitespace/commas
    std::vector<std::array<long long, 4>> raw;
    std::size_t i = 0;
    auto skip_sep = [&] {
        while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ','))
            ++i;
    };
    skip_sep();
    if (i >= text.size())
        throw Error(ErrorKind::MalformedSyntax, "empty PD code (the 0-crossing unknot has no PD form)");
    while (i < text.size()) {
        if (text[i] != 'X')
            throw Error(ErrorKind::MalformedSyntax, "expected 'X(' at position " + std::to_string(i));
        ++i;
        if (i >= text.size() || text[i] != '(')
            throw Error(ErrorKind::MalformedSyntax, "expected '(' after X");
        ++i;
        std::array<long long, 4> tup{};
        for (int slot = 0; slot < 4; ++slot) {
            skip_sep();
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i)
                throw Error(ErrorKind::MalformedSyntax, "expected edge label in crossing tuple");
            tup[slot] = std::stoll(text.substr(start, i - start));
            if (tup[slot] <= 0)
                throw Error(ErrorKind::MalformedSyntax, "edge labels must be positive");
        }
        skip_sep();
        if (i >= text.size() || text[i] != ')')
            throw Error(ErrorKind::MalformedSyntax, "expected ')' closing crossing tuple");
        ++i;
        raw.push_back(tup);
        skip_sep();
    }

    // normalize labels to 0-based contiguous by rank
    std::vector<long long> labels;
    for (const auto& t : raw)
        for (long long v : t) labels.push_back(v);
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (labels.size() != 2 * raw.size()) {
        // some label count is off; find one for the message
        std::map<long long, int> cnt;
        for (const auto& t : raw)
            for (long long v : t) cnt[v]++;
        for (auto [v, c] : cnt)
            if (c != 2)
                throw Error(ErrorKind::EdgeCountViolation,
                            "edge label " + std::to_string(v) + " appears " + std::to_string(c) +
                                " times (expected 2)");
    }
    auto rank = [&](long long v) {
        return static_cast<EdgeId>(std::lower_bound(labels.begin(), labels.end(), v) - labels.begin());
    };
    std::vector<Crossing> crossings(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        for (int slot = 0; slot < 4; ++slot) crossings[k].e[slot] = rank(raw[k][slot]);

    EdgeId ne = static_cast<EdgeId>(2 * crossings.size());
    std::vector<std::string> violations;
    auto occ = occurrence_table(crossings, ne, &violations);
    if (!violations.empty()) throw Error(ErrorKind::EdgeCountViolation, violations.front());

    // Infer over-strand directions. Variable v_k per crossing: v = true means
    // the over-strand enters at d (positive crossing). Under-strands are fixed
    // a -> c by the PD convention; each edge needs one head and one tail.
    int nc = static_cast<int>(crossings.size());
    ParityUF uf(nc + 1);
    const int TRUE_NODE = nc; // v[TRUE_NODE] := true
    auto force = [&](int k, bool value) {
        return uf.join(k, TRUE_NODE, value ? 0 : 1);
    };

    for (EdgeId e = 0; e < ne; ++e) {
        const auto& o = occ[e];
        bool u0 = is_under_slot(o[0].slot), u1 = is_under_slot(o[1].slot);
        if (u0 && u1) {
            // one must be a (head), the other c (tail)
            if (o[0].slot == o[1].slot)
                throw Error(ErrorKind::NonOrientable,
                            "edge " + std::to_string(e + 1) + " enters or leaves twice as under-strand");
        } else if (u0 || u1) {
            const Occurrence& under = u0 ? o[0] : o[1];
            const Occurrence& over = u0 ? o[1] : o[0];
            bool need_head_at_over = (under.slot == 2); // tail at c => head at the over end
            bool v = (over.slot == 3) ? need_head_at_over : !need_head_at_over;
            if (!force(over.crossing, v))
                throw Error(ErrorKind::NonOrientable,
                            "no consistent orientation (conflict at edge " + std::to_string(e + 1) + ")");
        } else {
            // both over: exactly one head. head(k,b) = !v_k, head(k,d) = v_k
            bool d0 = (o[0].slot == 3), d1 = (o[1].slot == 3);
            int rel = 1 ^ (d0 ^ d1 ? 1 : 0); // v0 XOR v1
            if (o[0].crossing == o[1].crossing) continue; // over-kink, always consistent
            if (!uf.join(o[0].crossing, o[1].crossing, rel))
                throw Error(ErrorKind::NonOrientable,
                            "no consistent orientation (conflict at edge " + std::to_string(e + 1) + ")");
        }
    }

    // Components that never pass under leave their crossing group unseeded;
    // orient them so the group's smallest edge label flows into its first
    // listed occurrence.
    for (EdgeId e = 0; e < ne; ++e) {
        const auto& o = occ[e];
        if (is_under_slot(o[0].slot) || is_under_slot(o[1].slot)) continue;
        auto [root, par] = uf.find(o[0].crossing);
        auto [troot, tpar] = uf.find(TRUE_NODE);
        if (root == troot) continue;
        // smallest still-free over edge: make its first occurrence the head
        bool v = (o[0].slot == 3);
        force(o[0].crossing, v);
    }

    for (int k = 0; k < nc; ++k) {
        auto [root, par] = uf.find(k);
        auto [troot, tpar] = uf.find(TRUE_NODE);
        if (root != troot)
            throw Error(ErrorKind::NonOrientable, "could not orient crossing " + std::to_string(k));
        crossings[k].sign = ((par ^ tpar) == 0) ? +1 : -1; // equal parity with TRUE => v true
    }

    return finalize(Diagram::unchecked(std::move(crossings)));
}

std::string serialize_pd(const Diagram& d) {
    if (d.free_loops() != 0)
        throw Error(ErrorKind::MalformedSyntax, "diagrams with free loops have no PD form");
    if (d.crossing_count() == 0)
        throw Error(ErrorKind::MalformedSyntax, "the 0-crossing unknot has no PD form");
    std::ostringstream out;
    for (int k = 0; k < d.crossing_count(); ++k) {
        const auto& x = d.crossings()[k];
        if (k) out << ' ';
        out << "X(" << x.e[0] + 1 << ',' << x.e[1] + 1 << ',' << x.e[2] + 1 << ',' << x.e[3] + 1 << ')';
    }
    return out.str();
}

Diagram parse_braid(const BraidWord& word) {
    if (word.strands < 1)
        throw Error(ErrorKind::InvalidLetter, "strand count must be at least 1");
    for (int k : word.letters) {
        if (k == 0 || std::abs(k) >= word.strands)
            throw Error(ErrorKind::InvalidLetter,
                        "letter " + std::to_string(k) + " invalid on " + std::to_string(word.strands) +
                            " strands");
    }

    int s = word.strands;
    std::vector<EdgeId> current(s);
    std::iota(current.begin(), current.end(), 0);
    EdgeId counter = static_cast<EdgeId>(s);
    std::vector<Crossing> crossings;
    crossings.reserve(word.letters.size());

    // strands run downward; positive letter = the strand entering from the
    // right passes over
    for (int k : word.letters) {
        int p = std::abs(k) - 1;
        EdgeId u = current[p], v = current[p + 1];
        EdgeId w = counter++, z = counter++;
        Crossing x;
        if (k > 0) {
            x.e = {u, w, z, v};
            x.sign = +1;
        } else {
            x.e = {v, u, w, z};
            x.sign = -1;
        }
        crossings.push_back(x);
        current[p] = w;
        current[p + 1] = z;
    }

    // close up: bottom of position i joins top edge i
    int free_loops = 0;
    for (int i = 0; i < s; ++i) {
        if (current[i] == static_cast<EdgeId>(i)) {
            ++free_loops; // strand untouched by any crossing
            continue;
        }
        for (auto& x : crossings)
            for (auto& e : x.e)
                if (e == current[i]) e = static_cast<EdgeId>(i);
    }

    // renormalize labels to 0..2c-1
    std::vector<EdgeId> used;
    for (const auto& x : crossings)
        for (EdgeId e : x.e) used.push_back(e);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    for (auto& x : crossings)
        for (auto& e : x.e)
            e = static_cast<EdgeId>(std::lower_bound(used.begin(), used.end(), e) - used.begin());

    return finalize(Diagram::unchecked(std::move(crossings), free_loops));
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "unknot", "unknot_kink_pos", "unknot_kink_neg", "trefoil_rh",
        "trefoil_lh", "figure8", "t2_4", "hopf_pos",
    };
    return names;
}

Diagram builtin(const std::string& name) {
    if (name == "unknot") return parse_braid({1, {}});
    if (name == "unknot_kink_pos") return parse_braid({2, {1}});
    if (name == "unknot_kink_neg") return parse_braid({2, {-1}});
    if (name == "trefoil_rh") return parse_braid({2, {1, 1, 1}});
    if (name == "trefoil_lh") return parse_braid({2, {-1, -1, -1}});
    if (name == "figure8") return parse_braid({3, {1, -2, 1, -2}});
    if (name == "t2_4") return parse_braid({2, {1, 1, 1, 1}});
    if (name == "hopf_pos") return parse_braid({2, {1, 1}});
    throw Error(ErrorKind::UnknownName, "no built-in diagram named '" + name + "'");
}

int writhe(const Diagram& d) {
    int w = 0;
    for (const auto& x : d.crossings()) w += x.sign;
    return w;
}

int self_writhe(const Diagram& d, int component) {
    if (component < 0 || component >= d.component_count())
        throw Error(ErrorKind::InvalidComponentIndex,
                    "component " + std::to_string(component) + " of " +
                        std::to_string(d.component_count()));
    int w = 0;
    for (const auto& x : d.crossings()) {
        if (d.component_of_edge(x.a()) == component && d.component_of_edge(x.b()) == component)
            w += x.sign;
    }
    return w;
}

int signed_crossings_between(const Diagram& d, int comp_a, int comp_b) {
    for (int c : {comp_a, comp_b})
        if (c < 0 || c >= d.component_count())
            throw Error(ErrorKind::InvalidComponentIndex, "component " + std::to_string(c));
    int sum = 0;
    for (const auto& x : d.crossings()) {
        int cu = d.component_of_edge(x.a());
        int co = d.component_of_edge(x.b());
        if ((cu == comp_a && co == comp_b) || (cu == comp_b && co == comp_a)) sum += x.sign;
    }
    return sum;
}

Diagram mirror(const Diagram& d) {
    std::vector<Crossing> out;
    out.reserve(d.crossings().size());
    for (const auto& x : d.crossings()) {
        Crossing y;
        if (x.sign > 0) {
            y.e = {x.e[3], x.e[0], x.e[1], x.e[2]};
            y.sign = -1;
        } else {
            y.e = {x.e[1], x.e[2], x.e[3], x.e[0]};
            y.sign = +1;
        }
        out.push_back(y);
    }
    return finalize(Diagram::unchecked(std::move(out), d.free_loops(), d.basepoint()));
}

Diagram Diagram::with_component_reversed(int component) const {
    if (component < 0 || component >= component_count())
        throw Error(ErrorKind::InvalidComponentIndex, "component " + std::to_string(component));
    std::vector<Crossing> out = crossings_;
    for (auto& x : out) {
        bool under_rev = comp_of_edge_[x.a()] == component;
        bool over_rev = comp_of_edge_[x.b()] == component;
        if (under_rev) x.e = {x.e[2], x.e[3], x.e[0], x.e[1]};
        if (under_rev != over_rev) x.sign = -x.sign;
    }
    return finalize(Diagram::unchecked(std::move(out), free_loops_, basepoint_));
}

Diagram Diagram::canonical_form() const {
    EdgeId ne = edge_count();
    std::vector<EdgeId> relabel(ne, 0);
    EdgeId next_id = 0;
    for (const auto& comp : comp_edges_) {
        EdgeId e = comp.front(); // smallest edge of the component
        do {
            relabel[e] = next_id++;
            e = next_[e];
        } while (e != comp.front());
    }
    std::vector<Crossing> out = crossings_;
    for (auto& x : out)
        for (auto& e : x.e) e = relabel[e];
    std::sort(out.begin(), out.end(), [](const Crossing& l, const Crossing& r) {
        return std::tie(l.e, l.sign) < std::tie(r.e, r.sign);
    });
    std::optional<Basepoint> bp = basepoint_;
    if (bp && bp->kind == Basepoint::Kind::Edge) bp->index = relabel[bp->index];
    return finalize(Diagram::unchecked(std::move(out), free_loops_, bp));
}

} // namespace kh
