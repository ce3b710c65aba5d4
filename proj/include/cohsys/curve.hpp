#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cohsys/errors.hpp"
#include "cohsys/rational.hpp"

namespace cohsys {

struct BuildOptions {
    bool allow_smooth = false;     // accept a single-component curve
    bool allow_low_genus = false;  // accept components of genus 0 or 1
};

// Weights w_i = a_i / sum(a) attached to the components by the ample class.
struct Polarization {
    std::vector<Rat> weights;
    long long total = 0;  // sum of the ample multidegree
};

// Connected nodal curve of compact type: a vertex-weighted tree whose
// vertices are the irreducible components and whose edges are the nodes.
// Component indices are 0-based in the library; all I/O is 1-based.
class NodalCurve {
public:
    static NodalCurve build(std::vector<long long> genera,
                            std::vector<std::pair<int, int>> edges,
                            std::vector<long long> ample_degrees,
                            const BuildOptions& opts = {});

    int component_count() const { return static_cast<int>(genera_.size()); }
    int node_count() const { return static_cast<int>(edges_.size()); }

    long long genus(int i) const { return genera_.at(i); }
    long long ample_degree(int i) const { return ample_.at(i); }
    const std::vector<long long>& genera() const { return genera_; }
    const std::vector<long long>& ample_degrees() const { return ample_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const Polarization& polarization() const { return pol_; }

    long long arithmetic_genus() const { return pa_; }
    long long chi_structure_sheaf() const { return 1 - pa_; }

    // Number of nodes lying on component i (vertex degree in the tree).
    int vertex_degree(int i) const { return vdeg_.at(i); }

    // Smallest index of a component meeting the rest of the curve in a
    // single node. Throws SingleComponentError for a one-component curve.
    int leaf_component() const;

    bool allow_smooth() const { return opts_.allow_smooth; }
    bool allow_low_genus() const { return opts_.allow_low_genus; }

private:
    NodalCurve() = default;

    std::vector<long long> genera_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<long long> ample_;
    std::vector<int> vdeg_;
    Polarization pol_;
    long long pa_ = 0;
    BuildOptions opts_;
};

// Nonempty set of component indices (0-based, strictly increasing).
struct Subcurve {
    std::vector<int> members;
};

struct SubcurveData {
    long long genus = 0;                  // arithmetic genus of the subcurve
    std::vector<int> boundary_nodes;      // edge indices meeting the complement
    int connected_pieces = 0;             // of the subcurve itself
    std::optional<Subcurve> complement;   // absent when the subcurve is everything
    long long complement_genus = 0;       // 0 when complement is absent
};

// Computes genus / boundary data of a subcurve and checks the additivity
// identity pa(C) = pa(B) + pa(C-B) + #boundary - 1 for proper subcurves.
SubcurveData subcurve_data(const NodalCurve& curve, const Subcurve& b);

}  // namespace cohsys
