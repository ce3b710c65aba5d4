#include "cohsys/curve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace cohsys {

namespace {

std::string comp_id(int i) { return "component " + std::to_string(i + 1); }

}  // namespace

NodalCurve NodalCurve::build(std::vector<long long> genera,
                             std::vector<std::pair<int, int>> edges,
                             std::vector<long long> ample_degrees,
                             const BuildOptions& opts) {
    const int n = static_cast<int>(genera.size());
    if (n == 0) throw ShapeError("curve: components list must be nonempty");
    if (static_cast<int>(ample_degrees.size()) != n)
        throw ShapeError("curve: ample_degrees length " + std::to_string(ample_degrees.size()) +
                         " does not match component count " + std::to_string(n));
    if (n == 1 && !opts.allow_smooth)
        throw ValidationError("curve: a single-component (smooth) curve requires allow_smooth");

    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto [u, v] = edges[e];
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ShapeError("curve: edge " + std::to_string(e + 1) + " references a component outside 1.." +
                             std::to_string(n));
        if (u == v)
            throw CycleError("curve: edge " + std::to_string(e + 1) + " joins " + comp_id(u) +
                             " to itself; the dual graph must be a tree");
        auto key = std::minmax(u, v);
        if (!seen.insert(key).second)
            throw CycleError("curve: duplicate edge between " + comp_id(key.first) + " and " +
                             comp_id(key.second) + "; the dual graph must be a tree");
    }
    if (static_cast<int>(edges.size()) > n - 1)
        throw CycleError("curve: " + std::to_string(edges.size()) + " edges on " + std::to_string(n) +
                         " components force a cycle; the dual graph must be a tree");
    if (static_cast<int>(edges.size()) < n - 1)
        throw DisconnectedError("curve: " + std::to_string(edges.size()) + " edges cannot connect " +
                                std::to_string(n) + " components");

    // Exactly n-1 well-formed distinct edges: connectivity now implies a tree.
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    std::vector<char> vis(n, 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!vis[v]) {
                vis[v] = 1;
                ++reached;
                stack.push_back(v);
            }
    }
    if (reached != n) {
        int missing = 0;
        while (vis[missing]) ++missing;
        throw DisconnectedError("curve: " + comp_id(missing) + " is not connected to component 1");
    }

    for (int i = 0; i < n; ++i) {
        if (genera[i] < 0) throw GenusError("curve: " + comp_id(i) + " has negative genus");
        if (genera[i] < 2 && !opts.allow_low_genus)
            throw GenusError("curve: " + comp_id(i) + " has genus " + std::to_string(genera[i]) +
                             " < 2; pass allow_low_genus to accept it");
    }

    long long g = 0;
    for (int i = 0; i < n; ++i) {
        if (ample_degrees[i] < 1)
            throw DegreeError("curve: ample degree on " + comp_id(i) + " must be >= 1");
        g = std::gcd(g, ample_degrees[i]);
    }
    if (g != 1)
        throw GcdError("curve: ample multidegree has gcd " + std::to_string(g) + "; it must be 1");

    NodalCurve c;
    c.genera_ = std::move(genera);
    c.edges_ = std::move(edges);
    c.ample_ = std::move(ample_degrees);
    c.opts_ = opts;
    c.vdeg_.assign(n, 0);
    for (auto [u, v] : c.edges_) {
        ++c.vdeg_[u];
        ++c.vdeg_[v];
    }
    c.pa_ = std::accumulate(c.genera_.begin(), c.genera_.end(), 0LL);

    long long total = std::accumulate(c.ample_.begin(), c.ample_.end(), 0LL);
    c.pol_.total = total;
    Rat sum(0);
    for (int i = 0; i < n; ++i) {
        Rat w(c.ample_[i], total);
        if (w.sgn() <= 0 || w > Rat(1) || (n >= 2 && w >= Rat(1)))
            throw InternalError("curve: weight on " + comp_id(i) + " escaped (0,1)");
        sum += w;
        c.pol_.weights.push_back(w);
    }
    if (sum != Rat(1)) throw InternalError("curve: weights do not sum to 1");
    return c;
}

int NodalCurve::leaf_component() const {
    if (component_count() == 1)
        throw SingleComponentError("curve: a smooth curve has no leaf component");
    for (int i = 0; i < component_count(); ++i)
        if (vdeg_[i] == 1) return i;
    throw InternalError("curve: tree without a leaf");  // unreachable
}

SubcurveData subcurve_data(const NodalCurve& curve, const Subcurve& b) {
    const int n = curve.component_count();
    if (b.members.empty()) throw EmptySubcurveError("subcurve: member list must be nonempty");
    std::vector<char> in(n, 0);
    int prev = -1;
    for (int i : b.members) {
        if (i < 0 || i >= n)
            throw ShapeError("subcurve: member " + std::to_string(i + 1) + " outside 1.." + std::to_string(n));
        if (i <= prev) throw ShapeError("subcurve: members must be strictly increasing");
        prev = i;
        in[i] = 1;
    }

    auto pieces_of = [&](const std::vector<char>& mask) {
        std::vector<char> vis(n, 0);
        int pieces = 0;
        for (int s = 0; s < n; ++s) {
            if (!mask[s] || vis[s]) continue;
            ++pieces;
            std::vector<int> stack{s};
            vis[s] = 1;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                for (auto [a, c] : curve.edges()) {
                    int v = -1;
                    if (a == u) v = c;
                    else if (c == u) v = a;
                    if (v >= 0 && mask[v] && !vis[v]) {
                        vis[v] = 1;
                        stack.push_back(v);
                    }
                }
            }
        }
        return pieces;
    };

    SubcurveData out;
    long long gsum = 0;
    for (int i : b.members) gsum += curve.genus(i);
    out.connected_pieces = pieces_of(in);
    out.genus = gsum - (out.connected_pieces - 1);

    for (int e = 0; e < curve.node_count(); ++e) {
        auto [u, v] = curve.edges()[e];
        if (in[u] != in[v]) out.boundary_nodes.push_back(e);
    }

    if (static_cast<int>(b.members.size()) < n) {
        Subcurve comp;
        std::vector<char> cmask(n, 0);
        for (int i = 0; i < n; ++i)
            if (!in[i]) {
                comp.members.push_back(i);
                cmask[i] = 1;
            }
        long long cg = 0;
        for (int i : comp.members) cg += curve.genus(i);
        int cpieces = pieces_of(cmask);
        out.complement_genus = cg - (cpieces - 1);
        out.complement = std::move(comp);

        long long lhs = curve.arithmetic_genus();
        long long rhs = out.genus + out.complement_genus +
                        static_cast<long long>(out.boundary_nodes.size()) - 1;
        if (lhs != rhs)
            throw InternalError("subcurve: genus additivity failed (" + std::to_string(lhs) +
                                " != " + std::to_string(rhs) + ")");
    }
    return out;
}

}  // namespace cohsys
