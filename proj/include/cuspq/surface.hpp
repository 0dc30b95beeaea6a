#pragma once

#include <array>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "holonomy.hpp"
#include "qtorus.hpp"

namespace cuspq {

enum class EdgeKind { Inner, Open, Loop };
enum class OmegaKind { Hole, Orbifold };

struct Edge {
    std::string name;
    EdgeKind kind = EdgeKind::Inner;
    OmegaKind omega_kind = OmegaKind::Hole;  // loops only
    int order = 0;                           // orbifold p
};

struct Vertex {
    std::string name;
    bool cusp = false;
    std::vector<int> slots;  // half-edge ids, clockwise; -1 while unfilled
};

// One step of a path on the graph: leave along half-edge h. The transition to the
// next step is an ordinary turn, or for wind != 0 a pass around the loop at the far
// end of h (wind > 0 counterclockwise, F tokens; wind < 0 clockwise, Finv tokens).
struct Step {
    int h = -1;
    int wind = 0;
    bool operator==(const Step&) const = default;
};

struct GraphPath {
    std::vector<Step> steps;
    bool closed = true;  // open paths start and end at cusps
};

struct Face {
    std::vector<int> halfedges;  // departing half-edges in walk order
    bool has_cusp = false;
    bool loop_only = false;
    std::string loop;            // omega name for loop_only faces
    std::vector<int> multiplicity;  // per generator
};

class FatGraph {
public:
    int genus = 0, s_h = 0, s_o = 0, n = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    // half-edge h = 2*edge + end; end 0 is "a", end 1 is "b".
    // Open edges keep end b at the cusp.
    static int half(int e, int end) { return 2 * e + end; }
    static int edge_of(int h) { return h / 2; }
    static int other(int h) { return h ^ 1; }

    std::pair<int, int> where(int h) const {
        rebuild();
        return where_.at(h);
    }
    int slot_h(int v, int i) const {
        const auto& s = vertices[v].slots;
        int k = static_cast<int>(s.size());
        return s[((i % k) + k) % k];
    }
    int edge_index(const std::string& name) const {
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].name == name) return static_cast<int>(i);
        return -1;
    }
    int vertex_index(const std::string& name) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i].name == name) return static_cast<int>(i);
        return -1;
    }
    const Edge& edge(int h) const { return edges[edge_of(h)]; }
    bool is_loop_h(int h) const { return edge(h).kind == EdgeKind::Loop; }
    bool at_cusp(int h) const { return vertices[where(h).first].cusp; }

    std::vector<int> generators() const {
        std::vector<int> g;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].kind != EdgeKind::Loop) g.push_back(static_cast<int>(i));
        return g;
    }
    std::vector<int> loops() const {
        std::vector<int> g;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edges[i].kind == EdgeKind::Loop) g.push_back(static_cast<int>(i));
        return g;
    }
    std::vector<std::string> generator_names() const {
        std::vector<std::string> r;
        for (int e : generators()) r.push_back(edges[e].name);
        return r;
    }
    std::vector<std::string> omega_names() const {
        std::vector<std::string> r;
        for (int e : loops()) r.push_back(edges[e].name);
        return r;
    }
    int trivalent_count() const {
        int c = 0;
        for (auto& v : vertices) c += !v.cusp;
        return c;
    }
    int cusp_count() const { return static_cast<int>(vertices.size()) - trivalent_count(); }

    // arriving at the vertex through half-edge h, leave by a left or right turn
    int turn(int h, char t) const {
        auto [v, i] = where(h);
        return slot_h(v, t == 'L' ? i + 1 : i - 1);
    }
    // which turn takes arrival through a to departure through b at one vertex
    char turn_between(int a, int b) const {
        auto [va, ia] = where(a);
        auto [vb, ib] = where(b);
        if (va != vb || vertices[va].cusp) throw input_error("turn between half-edges at different vertices");
        if (ib == (ia + 1) % 3) return 'L';
        if (ib == (ia + 2) % 3) return 'R';
        throw input_error("path backtracks along edge " + edge(a).name);
    }

    // clockwise order reversed at every vertex
    FatGraph mirrored() const {
        FatGraph g = *this;
        for (auto& v : g.vertices)
            if (!v.cusp) std::swap(v.slots[1], v.slots[2]);
        g.dirty_ = true;
        return g;
    }

    void touch() { dirty_ = true; }

private:
    void rebuild() const {
        if (!dirty_) return;
        where_.assign(2 * edges.size(), {-1, -1});
        for (std::size_t v = 0; v < vertices.size(); ++v)
            for (std::size_t i = 0; i < vertices[v].slots.size(); ++i)
                if (vertices[v].slots[i] >= 0)
                    where_[vertices[v].slots[i]] = {static_cast<int>(v), static_cast<int>(i)};
        dirty_ = false;
    }
    mutable std::vector<std::pair<int, int>> where_;
    mutable bool dirty_ = true;
};

// ---- parser ----

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> r;
    for (std::string t; is >> t;) r.push_back(t);
    return r;
}

[[noreturn]] inline void fail_at(int line, int col, const std::string& m) {
    throw input_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + m);
}

inline int parse_int(const std::string& s, int line, int col) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail_at(line, col, "expected integer, got '" + s + "'");
    }
}

}  // namespace detail

inline FatGraph parse_surface(const std::string& text) {
    FatGraph g;
    bool header = false;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    struct Pending {
        int edge, line;
        std::string vertex;
    };
    std::vector<Pending> loops;

    auto column_of = [&](const std::string& line, const std::string& tok) {
        auto p = line.find(tok);
        return p == std::string::npos ? 1 : static_cast<int>(p) + 1;
    };
    auto place = [&](const std::string& line, const std::string& spec, int h) {
        int col = column_of(line, spec);
        auto dot = spec.find('.');
        std::string vn = spec.substr(0, dot);
        int v = g.vertex_index(vn);
        if (v < 0) detail::fail_at(lineno, col, "unknown vertex '" + vn + "'");
        auto& vert = g.vertices[v];
        int slot = 0;
        if (vert.cusp) {
            if (dot != std::string::npos && spec.substr(dot + 1) != "0")
                detail::fail_at(lineno, col, "cusp vertex '" + vn + "' has a single slot");
        } else {
            if (dot == std::string::npos) detail::fail_at(lineno, col, "missing slot in '" + spec + "'");
            slot = detail::parse_int(spec.substr(dot + 1), lineno, col + static_cast<int>(dot) + 1);
            if (slot < 0 || slot > 2) detail::fail_at(lineno, col, "slot out of range in '" + spec + "'");
        }
        if (vert.slots[slot] >= 0) detail::fail_at(lineno, col, "duplicate slot '" + spec + "'");
        vert.slots[slot] = h;
        return v;
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::split_ws(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        if (kw == "surface") {
            if (header) detail::fail_at(lineno, 1, "duplicate surface line");
            header = true;
            std::set<std::string> seen;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                auto eq = tok[i].find('=');
                int col = column_of(line, tok[i]);
                if (eq == std::string::npos) detail::fail_at(lineno, col, "expected key=value");
                std::string k = tok[i].substr(0, eq);
                int v = detail::parse_int(tok[i].substr(eq + 1), lineno, col + static_cast<int>(eq) + 1);
                if (v < 0) detail::fail_at(lineno, col, "negative count");
                if (k == "g") g.genus = v;
                else if (k == "s_h") g.s_h = v;
                else if (k == "s_o") g.s_o = v;
                else if (k == "n") g.n = v;
                else detail::fail_at(lineno, col, "unknown key '" + k + "'");
                seen.insert(k);
            }
            for (const char* k : {"g", "s_h", "s_o", "n"})
                if (!seen.count(k)) detail::fail_at(lineno, 1, std::string("missing key '") + k + "'");
        } else if (kw == "vertex") {
            if (tok.size() != 3) detail::fail_at(lineno, 1, "expected: vertex <name> trivalent|cusp");
            if (g.vertex_index(tok[1]) >= 0)
                detail::fail_at(lineno, column_of(line, tok[1]), "duplicate vertex '" + tok[1] + "'");
            Vertex v;
            v.name = tok[1];
            if (tok[2] == "trivalent") v.slots.assign(3, -1);
            else if (tok[2] == "cusp") {
                v.cusp = true;
                v.slots.assign(1, -1);
            } else detail::fail_at(lineno, column_of(line, tok[2]), "unknown vertex kind '" + tok[2] + "'");
            g.vertices.push_back(std::move(v));
        } else if (kw == "edge") {
            if (tok.size() < 4) detail::fail_at(lineno, 1, "edge line too short");
            if (g.edge_index(tok[1]) >= 0)
                detail::fail_at(lineno, column_of(line, tok[1]), "duplicate edge '" + tok[1] + "'");
            Edge e;
            e.name = tok[1];
            int idx = static_cast<int>(g.edges.size());
            if (tok[2] == "inner" || tok[2] == "open") {
                if (tok.size() != 5) detail::fail_at(lineno, 1, "expected two endpoints");
                e.kind = tok[2] == "inner" ? EdgeKind::Inner : EdgeKind::Open;
                g.edges.push_back(e);
                int v0 = place(line, tok[3], FatGraph::half(idx, 0));
                int v1 = place(line, tok[4], FatGraph::half(idx, 1));
                bool c0 = g.vertices[v0].cusp, c1 = g.vertices[v1].cusp;
                if (e.kind == EdgeKind::Inner && (c0 || c1))
                    detail::fail_at(lineno, 1, "inner edge '" + e.name + "' ends at a cusp");
                if (e.kind == EdgeKind::Open) {
                    if (c0 == c1) detail::fail_at(lineno, 1, "open edge '" + e.name + "' needs one cusp end");
                    if (c0) {
                        // keep end b at the cusp
                        auto& s0 = g.vertices[v0].slots;
                        auto& s1 = g.vertices[v1].slots;
                        for (auto& h : s0) if (h == FatGraph::half(idx, 0)) h = FatGraph::half(idx, 1);
                        for (auto& h : s1) if (h == FatGraph::half(idx, 1)) h = FatGraph::half(idx, 0);
                    }
                }
            } else if (tok[2] == "loop") {
                e.kind = EdgeKind::Loop;
                bool have_omega = false;
                for (std::size_t i = 4; i < tok.size(); ++i) {
                    int col = column_of(line, tok[i]);
                    if (tok[i] == "omega=hole") {
                        e.omega_kind = OmegaKind::Hole;
                        have_omega = true;
                    } else if (tok[i] == "omega=orbifold") {
                        e.omega_kind = OmegaKind::Orbifold;
                        have_omega = true;
                    } else if (tok[i].rfind("p=", 0) == 0) {
                        e.order = detail::parse_int(tok[i].substr(2), lineno, col + 2);
                    } else detail::fail_at(lineno, col, "unknown loop attribute '" + tok[i] + "'");
                }
                if (!have_omega) detail::fail_at(lineno, 1, "loop needs omega=hole or omega=orbifold");
                if (e.omega_kind == OmegaKind::Orbifold && e.order < 2)
                    detail::fail_at(lineno, 1, "orbifold loop needs p >= 2");
                if (e.omega_kind == OmegaKind::Hole && e.order != 0)
                    detail::fail_at(lineno, 1, "hole loop takes no p");
                g.edges.push_back(e);
                loops.push_back({idx, lineno, tok[3]});
            } else detail::fail_at(lineno, column_of(line, tok[2]), "unknown edge kind '" + tok[2] + "'");
        } else {
            detail::fail_at(lineno, 1, "unknown keyword '" + kw + "'");
        }
    }
    if (!header) throw input_error("missing surface line");
    // loops fill the two free slots of their vertex
    for (auto& p : loops) {
        int v = g.vertex_index(p.vertex);
        if (v < 0) detail::fail_at(p.line, 1, "unknown vertex '" + p.vertex + "'");
        auto& s = g.vertices[v].slots;
        if (g.vertices[v].cusp) detail::fail_at(p.line, 1, "loop at cusp vertex");
        int end = 0;
        for (auto& h : s)
            if (h < 0 && end < 2) h = FatGraph::half(p.edge, end++);
        if (end != 2) detail::fail_at(p.line, 1, "vertex '" + p.vertex + "' has no room for loop");
    }
    for (auto& v : g.vertices)
        for (std::size_t i = 0; i < v.slots.size(); ++i)
            if (v.slots[i] < 0)
                throw input_error("dangling slot " + v.name + "." + std::to_string(i));
    g.touch();
    return g;
}

inline FatGraph load_surface(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_surface(ss.str());
}

// text form accepted by parse_surface
inline std::string format_surface(const FatGraph& g) {
    std::ostringstream os;
    os << "surface g=" << g.genus << " s_h=" << g.s_h << " s_o=" << g.s_o << " n=" << g.n << "\n";
    for (auto& v : g.vertices) os << "vertex " << v.name << (v.cusp ? " cusp" : " trivalent") << "\n";
    auto end = [&](int h) {
        auto [v, i] = g.where(h);
        const auto& vx = g.vertices[v];
        return vx.cusp ? vx.name : vx.name + "." + std::to_string(i);
    };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        int a = FatGraph::half(static_cast<int>(e), 0), b = FatGraph::half(static_cast<int>(e), 1);
        os << "edge " << ed.name;
        if (ed.kind == EdgeKind::Loop) {
            os << " loop " << g.vertices[g.where(a).first].name;
            if (ed.omega_kind == OmegaKind::Hole) os << " omega=hole";
            else os << " omega=orbifold p=" << ed.order;
        } else {
            os << (ed.kind == EdgeKind::Inner ? " inner " : " open ") << end(a) << " " << end(b);
        }
        os << "\n";
    }
    return os.str();
}

// ---- derived structure ----

// left-turn boundary walks
inline std::vector<Face> faces(const FatGraph& g) {
    std::vector<Face> out;
    const int H = 2 * static_cast<int>(g.edges.size());
    std::vector<bool> used(H, false);
    auto gens = g.generators();
    for (int start = 0; start < H; ++start) {
        if (used[start]) continue;
        Face f;
        f.multiplicity.assign(gens.size(), 0);
        int h = start;
        while (!used[h]) {
            used[h] = true;
            f.halfedges.push_back(h);
            int a = FatGraph::other(h);
            if (g.at_cusp(a)) {
                f.has_cusp = true;
                h = a;
            } else {
                h = g.turn(a, 'L');
            }
        }
        bool all_loop = true;
        for (int x : f.halfedges) {
            int e = FatGraph::edge_of(x);
            if (g.edges[e].kind == EdgeKind::Loop) {
                f.loop = g.edges[e].name;
            } else {
                all_loop = false;
                auto it = std::find(gens.begin(), gens.end(), e);
                f.multiplicity[it - gens.begin()] += 1;
            }
        }
        f.loop_only = all_loop;
        if (!all_loop) f.loop.clear();
        out.push_back(std::move(f));
    }
    return out;
}

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> info;
    bool ok() const { return errors.empty(); }
};

inline int expected_generators(const FatGraph& g, int s_c) {
    int s = g.s_h + g.s_o;
    if (g.n == 0) return 6 * g.genus - 6 + 3 * s;
    return 6 * g.genus - 6 + 2 * s + s_c + 2 * g.n;
}
inline int expected_lamination(const FatGraph& g) {
    return 6 * g.genus - 6 + 3 * (g.s_h + g.s_o) + 2 * g.n;
}

inline ValidationReport validate(const FatGraph& g) {
    ValidationReport r;
    auto err = [&](std::string m) { r.errors.push_back(std::move(m)); };
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const Edge& ed = g.edges[e];
        auto [va, ia] = g.where(FatGraph::half(static_cast<int>(e), 0));
        auto [vb, ib] = g.where(FatGraph::half(static_cast<int>(e), 1));
        if (va < 0 || vb < 0) {
            err("edge " + ed.name + " is dangling");
            continue;
        }
        bool ca = g.vertices[va].cusp, cb = g.vertices[vb].cusp;
        switch (ed.kind) {
            case EdgeKind::Inner:
                if (ca || cb) err("inner edge " + ed.name + " touches a cusp");
                break;
            case EdgeKind::Open:
                if (ca || !cb) err("open edge " + ed.name + " must join a trivalent vertex to a cusp");
                break;
            case EdgeKind::Loop:
                if (va != vb || ca) err("loop " + ed.name + " must start and end at one trivalent vertex");
                break;
        }
    }
    for (auto& v : g.vertices) {
        if (v.cusp && v.slots.size() != 1) err("cusp " + v.name + " must be univalent");
        if (!v.cusp && v.slots.size() != 3) err("vertex " + v.name + " must be trivalent");
    }
    if (!r.ok()) return r;

    const int s = g.s_h + g.s_o;
    const int V3 = g.trivalent_count();
    const int Vc = g.cusp_count();
    const int E = static_cast<int>(g.edges.size());
    int want3 = 4 * g.genus + 2 * s + g.n - 4;
    if (V3 != want3)
        err("trivalent vertices " + std::to_string(V3) + " != 4g+2s+n-4 = " + std::to_string(want3));
    if (Vc != g.n) err("cusp vertices " + std::to_string(Vc) + " != n = " + std::to_string(g.n));

    auto fs = faces(g);
    const int F = static_cast<int>(fs.size());
    if (F != s) err("boundary components " + std::to_string(F) + " != s_h+s_o = " + std::to_string(s));
    if (V3 + Vc - E != 2 - 2 * g.genus - F)
        err("Euler count V-E = " + std::to_string(V3 + Vc - E) + " != 2-2g-F = " +
            std::to_string(2 - 2 * g.genus - F));

    int s_c = 0, loop_faces = 0, bare = 0;
    for (auto& f : fs) {
        if (f.has_cusp) ++s_c;
        else if (f.loop_only) ++loop_faces;
        else ++bare;
    }
    auto L = g.loops();
    int orb = 0;
    for (int e : L) orb += g.edges[e].omega_kind == OmegaKind::Orbifold;
    if (orb != g.s_o) err("orbifold loops " + std::to_string(orb) + " != s_o = " + std::to_string(g.s_o));
    if (loop_faces != static_cast<int>(L.size())) err("every loop must bound its own monogon");
    if (g.n >= 1 && bare != 0) err("hole without cusp not enclosed by a loop");

    const int ngen = static_cast<int>(g.generators().size());
    int want = expected_generators(g, s_c);
    if (ngen != want)
        err("generator count " + std::to_string(ngen) + " != expected " + std::to_string(want));
    if (g.n >= 1) {
        int lam = ngen + static_cast<int>(L.size());
        if (lam != expected_lamination(g))
            err("lamination size " + std::to_string(lam) + " != 6g-6+3s+2n = " +
                std::to_string(expected_lamination(g)));
    }
    r.info.push_back("generators " + std::to_string(ngen));
    r.info.push_back("trivalent " + std::to_string(V3) + " cusps " + std::to_string(Vc) + " faces " +
                     std::to_string(F) + " cusped_faces " + std::to_string(s_c));
    return r;
}

// Per trivalent vertex, +1 to eps(J_i, J_{i+1}) for clockwise-consecutive edges.
// With include_loops the loops are appended as extra rows and columns.
inline std::vector<std::vector<int>> epsilon_raw(const FatGraph& g, bool include_loops) {
    std::vector<int> ids = g.generators();
    if (include_loops)
        for (int e : g.loops()) ids.push_back(e);
    std::map<int, int> pos;
    for (std::size_t i = 0; i < ids.size(); ++i) pos[ids[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> eps(ids.size(), std::vector<int>(ids.size(), 0));
    for (auto& v : g.vertices) {
        if (v.cusp) continue;
        for (int i = 0; i < 3; ++i) {
            int a = FatGraph::edge_of(v.slots[i]);
            int b = FatGraph::edge_of(v.slots[(i + 1) % 3]);
            if (!pos.count(a) || !pos.count(b)) continue;
            eps[pos[a]][pos[b]] += 1;
            eps[pos[b]][pos[a]] -= 1;
        }
    }
    return eps;
}

inline BasisPtr epsilon_matrix(const FatGraph& g) {
    auto names = g.generator_names();
    std::vector<GenKind> kinds;
    for (int e : g.generators())
        kinds.push_back(g.edges[e].kind == EdgeKind::Open ? GenKind::Cusp : GenKind::Inner);
    std::vector<int> ord;
    for (int e : g.loops())
        ord.push_back(g.edges[e].omega_kind == OmegaKind::Orbifold ? g.edges[e].order : 0);
    return make_basis(names, kinds, epsilon_raw(g, false), g.omega_names(), ord);
}

// Boundary sums of non-loop faces, as half-unit exponent vectors, plus the omegas.
inline std::vector<QLaurent> casimirs(const FatGraph& g, const BasisPtr& basis) {
    std::vector<QLaurent> out;
    for (auto& f : faces(g)) {
        if (f.loop_only) {
            out.push_back(QLaurent::omega(basis, f.loop));
            continue;
        }
        out.push_back(QLaurent::monomial(basis, f.multiplicity));
    }
    return out;
}

// ---- paths ----

// left turns backwards from departing half-edge h to a cusp; steps before h, in order
inline std::vector<Step> walk_left_back(const FatGraph& g, int h) {
    std::vector<Step> rev;
    const std::size_t guard = 8 * g.edges.size() + 8;
    int cur = h;
    while (rev.size() < guard) {
        auto [v, i] = g.where(cur);
        int prev = g.slot_h(v, i - 1);
        if (g.is_loop_h(prev)) {
            // went round the loop counterclockwise, arriving and leaving through cur
            rev.push_back({FatGraph::other(cur), 1});
            cur = FatGraph::other(cur);
            continue;
        }
        rev.push_back({FatGraph::other(prev), 0});
        if (g.edge(prev).kind == EdgeKind::Open) {
            std::reverse(rev.begin(), rev.end());
            return rev;
        }
        cur = FatGraph::other(prev);
    }
    throw input_error("left walk does not reach a cusp");
}

// right turns forward after arriving through half-edge h; returns the winding of the
// incoming step and the steps that follow
inline std::pair<int, std::vector<Step>> walk_right_fwd(const FatGraph& g, int h) {
    std::vector<Step> out;
    int incoming = 0;
    const std::size_t guard = 8 * g.edges.size() + 8;
    int cur = h;
    while (out.size() < guard) {
        int d = g.turn(cur, 'R');
        if (g.is_loop_h(d)) {
            (out.empty() ? incoming : out.back().wind) = -1;
            out.push_back({cur, 0});
            cur = FatGraph::other(cur);
            continue;
        }
        out.push_back({d, 0});
        if (g.edge(d).kind == EdgeKind::Open) return {incoming, out};
        cur = FatGraph::other(d);
    }
    throw input_error("right walk does not reach a cusp");
}

// end y of edge e sits at a vertex whose other two slots are a loop
inline std::optional<int> loop_end(const FatGraph& g, int e) {
    if (g.edges[e].kind != EdgeKind::Inner) return std::nullopt;
    for (int y = 0; y < 2; ++y) {
        auto [v, i] = g.where(FatGraph::half(e, y));
        if (g.is_loop_h(g.slot_h(v, i + 1)) && g.is_loop_h(g.slot_h(v, i + 2))) return y;
    }
    return std::nullopt;
}

// left turns to reach e, then right turns; loop-adjacent edges go round the loop
inline GraphPath dual_arc_path(const FatGraph& g, int e) {
    GraphPath p;
    p.closed = false;
    const Edge& ed = g.edges[e];
    if (ed.kind == EdgeKind::Loop) throw input_error("loops carry no arc");
    if (ed.kind == EdgeKind::Open) {
        p.steps = walk_left_back(g, FatGraph::half(e, 0));
        p.steps.push_back({FatGraph::half(e, 0), 0});
        return p;
    }
    if (auto y = loop_end(g, e)) {
        int x = 1 - *y;
        p.steps = walk_left_back(g, FatGraph::half(e, x));
        p.steps.push_back({FatGraph::half(e, x), 1});
        auto [w, right] = walk_right_fwd(g, FatGraph::half(e, x));
        p.steps.push_back({FatGraph::half(e, *y), w});
        p.steps.insert(p.steps.end(), right.begin(), right.end());
        return p;
    }
    p.steps = walk_left_back(g, FatGraph::half(e, 0));
    auto [w, right] = walk_right_fwd(g, FatGraph::half(e, 1));
    p.steps.push_back({FatGraph::half(e, 0), w});
    p.steps.insert(p.steps.end(), right.begin(), right.end());
    return p;
}

struct PathItem {
    enum Kind { Edge, L, R, Loop } kind;
    int edge = -1;  // edge id; loop edge for Loop
    int wind = 0;
};

inline std::vector<PathItem> path_items(const FatGraph& g, const GraphPath& p) {
    std::vector<PathItem> out;
    const std::size_t m = p.steps.size();
    for (std::size_t k = 0; k < m; ++k) {
        const Step& s = p.steps[k];
        out.push_back({PathItem::Edge, FatGraph::edge_of(s.h), 0});
        if (!p.closed && k + 1 == m) break;
        const Step& nx = p.steps[(k + 1) % m];
        int arr = FatGraph::other(s.h);
        if (s.wind != 0) {
            auto [v, i] = g.where(arr);
            int loop = -1;
            for (int h : g.vertices[v].slots)
                if (g.is_loop_h(h)) loop = FatGraph::edge_of(h);
            if (loop < 0) throw input_error("winding away from a loop");
            if (nx.h != arr) throw input_error("loop pass must return along the same edge");
            out.push_back({PathItem::Loop, loop, s.wind});
        } else {
            out.push_back({g.turn_between(arr, nx.h) == 'L' ? PathItem::L : PathItem::R, -1, 0});
        }
    }
    return out;
}

// matrix word: path items reversed, arcs prefixed by K
inline PathWord to_word(const FatGraph& g, const GraphPath& p) {
    auto items = path_items(g, p);
    PathWord w;
    if (!p.closed) w.tokens.push_back({Token::K, "", 1});
    for (auto it = items.rbegin(); it != items.rend(); ++it) {
        switch (it->kind) {
            case PathItem::Edge: w.tokens.push_back({Token::X, g.edges[it->edge].name, 1}); break;
            case PathItem::L: w.tokens.push_back({Token::L, "", 1}); break;
            case PathItem::R: w.tokens.push_back({Token::R, "", 1}); break;
            case PathItem::Loop:
                w.tokens.push_back({it->wind > 0 ? Token::F : Token::Finv, g.edges[it->edge].name,
                                    std::abs(it->wind)});
                break;
        }
    }
    return w;
}

// realize a matrix word as a path on the graph; q(k) tokens are dropped
inline GraphPath from_word(const FatGraph& g, const PathWord& w) {
    std::vector<Token> toks;
    for (auto& t : w.tokens)
        if (t.kind != Token::Q) toks.push_back(t);
    GraphPath p;
    p.closed = w.closed();
    if (!p.closed) {
        if (toks.empty() || toks.front().kind != Token::K ||
            std::count_if(toks.begin(), toks.end(), [](auto& t) { return t.kind == Token::K; }) != 1)
            throw input_error("arc words must have the form K ...");
        toks.erase(toks.begin());
    }
    std::reverse(toks.begin(), toks.end());
    if (p.closed) {
        auto first = std::find_if(toks.begin(), toks.end(), [](auto& t) { return t.kind == Token::X; });
        if (first == toks.end()) throw input_error("closed word without edges");
        std::rotate(toks.begin(), first, toks.end());
    }
    // alternate edge, transition
    std::vector<const Token*> edges, trans;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        bool want_edge = i % 2 == 0;
        bool is_edge = toks[i].kind == Token::X;
        if (want_edge != is_edge) throw input_error("word does not alternate edges and turns");
        (is_edge ? edges : trans).push_back(&toks[i]);
    }
    if (p.closed ? trans.size() != edges.size() : trans.size() + 1 != edges.size())
        throw input_error("word does not alternate edges and turns");
    for (auto* e : edges)
        if (g.edge_index(e->name) < 0 || g.edges[g.edge_index(e->name)].kind == EdgeKind::Loop)
            throw input_error("unknown edge '" + e->name + "'");

    int e0 = g.edge_index(edges[0]->name);
    for (int end = 0; end < 2; ++end) {
        int h = FatGraph::half(e0, end);
        if (!p.closed && !g.at_cusp(h)) continue;
        std::vector<Step> steps{{h, 0}};
        bool ok = true;
        for (std::size_t k = 0; k < trans.size() && ok; ++k) {
            int arr = FatGraph::other(steps.back().h);
            const Token& t = *trans[k];
            int next_edge = g.edge_index(edges[(k + 1) % edges.size()]->name);
            if (g.at_cusp(arr)) {
                ok = false;
                break;
            }
            int d;
            if (t.kind == Token::L || t.kind == Token::R) {
                d = g.turn(arr, t.kind == Token::L ? 'L' : 'R');
            } else if (t.kind == Token::F || t.kind == Token::Finv) {
                auto [v, i] = g.where(arr);
                int le = g.edge_index(t.name);
                bool here = le >= 0 && FatGraph::edge_of(g.slot_h(v, i + 1)) == le &&
                            FatGraph::edge_of(g.slot_h(v, i + 2)) == le;
                if (!here) {
                    ok = false;
                    break;
                }
                steps.back().wind = t.kind == Token::F ? t.k : -t.k;
                d = arr;
            } else {
                throw input_error("unexpected token " + to_string(t));
            }
            if (FatGraph::edge_of(d) != next_edge) {
                ok = false;
                break;
            }
            if (p.closed && k + 1 == trans.size()) {
                if (d != steps.front().h) ok = false;
            } else {
                steps.push_back({d, 0});
            }
        }
        if (ok && !p.closed && !g.at_cusp(FatGraph::other(steps.back().h))) ok = false;
        if (ok) {
            p.steps = std::move(steps);
            return p;
        }
    }
    throw input_error("word '" + to_string(w) + "' is not a path on the graph");
}

// ---- dual lamination ----

struct DualArc {
    std::string edge;
    GraphPath path;
    PathWord word;     // Hermitian normalized
    QLaurent lambda;   // single Weyl monomial
    std::vector<int> exponent;
    bool frozen = false;
    int qshift = 0;    // quarter powers added by the normalizing q(k) token
};

struct DualLamination {
    std::vector<DualArc> arcs;
    std::vector<std::string> omegas;
    std::size_t size() const { return arcs.size() + omegas.size(); }
};

inline DualArc dual_arc(const FatGraph& g, const BasisPtr& basis, int e) {
    DualArc a;
    a.edge = g.edges[e].name;
    a.frozen = g.edges[e].kind == EdgeKind::Open;
    a.path = dual_arc_path(g, e);
    a.word = to_word(g, a.path);
    QLaurent t = trace(basis, a.word, Mode::Quantum);
    if (!t.is_monomial()) throw input_error("arc " + a.edge + " trace is not a monomial");
    auto& [k, c] = *t.terms().begin();
    if (c != Rat(1)) throw input_error("arc " + a.edge + " trace has coefficient " + format_rat(c));
    if (k.qpow != 0) {
        a.qshift = -k.qpow;
        a.word.tokens.insert(a.word.tokens.begin(), Token{Token::Q, "", -k.qpow});
    }
    a.exponent = k.exp;
    a.lambda = QLaurent::monomial(basis, k.exp);
    return a;
}

inline DualLamination dual_lamination(const FatGraph& g, const BasisPtr& basis) {
    if (g.cusp_count() == 0) throw input_error("dual lamination needs at least one cusp");
    DualLamination d;
    for (int e : g.generators()) d.arcs.push_back(dual_arc(g, basis, e));
    d.omegas = g.omega_names();
    return d;
}

}  // namespace cuspq
