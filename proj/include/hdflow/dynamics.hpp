#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hdflow/selfmap.hpp"

// Functional graph of the self-map on P^1(F_{p^f}): every node has exactly
// one outgoing edge, so each component is a rho (a tail feeding a cycle).
// Node naming follows the integer encodings plus "inf" so exported graphs
// line up with the orbit diagrams literally.

namespace hdflow {

struct Cycle {
    u64 period = 0;               // nodes.size()
    std::vector<ProjPoint> nodes; // rotated to start at the minimal node
};

struct OrbitPath {
    std::vector<ProjPoint> tail;  // preperiodic prefix, possibly empty
    std::vector<ProjPoint> cycle; // canonical rotation, never empty
};

class OrbitGraph {
  public:
    // edges[i] = successor index; index i < q is the element with encoding
    // i, index q is infinity. Builds tails and the cycle decomposition.
    OrbitGraph(CtxPtr ctx, FieldElement lam, std::vector<u64> edges);

    const CtxPtr& ctx() const { return ctx_; }
    const FieldElement& lambda() const { return lam_; }
    u64 node_count() const { return edges_.size(); } // q + 1

    ProjPoint node(u64 index) const;
    u64 index_of(const ProjPoint& pt) const;

    ProjPoint successor(const ProjPoint& pt) const;
    u64 tail_length(const ProjPoint& pt) const; // 0 exactly on cycles
    bool is_periodic(const ProjPoint& pt) const { return tail_length(pt) == 0; }

    // sorted by (length, first node); infinity orders after every encoding
    const std::vector<Cycle>& cycles() const { return cycles_; }
    std::vector<std::pair<ProjPoint, u64>> periodic_points() const;

    const std::vector<u64>& edge_table() const { return edges_; }

    // same field, same lambda, same map
    friend bool operator==(const OrbitGraph& a, const OrbitGraph& b);
    friend bool operator!=(const OrbitGraph& a, const OrbitGraph& b) { return !(a == b); }

  private:
    CtxPtr ctx_;
    FieldElement lam_;
    std::vector<u64> edges_;
    std::vector<u64> tails_;
    std::vector<Cycle> cycles_;
};

inline constexpr u64 kDefaultNodeBound = 1000000;

// evaluates phi once per node of P^1(F_q), data-parallel across jobs threads;
// FieldTooLarge when q exceeds max_nodes
OrbitGraph functional_graph(const SelfMap& sm, u64 max_nodes = kDefaultNodeBound, u32 jobs = 1);

// Brent cycle detection from a single start; no field-size bound
OrbitPath orbit(const SelfMap& sm, const ProjPoint& start);

std::vector<std::pair<ProjPoint, u64>> periodic_points(const SelfMap& sm,
                                                       u64 max_nodes = kDefaultNodeBound);

std::string export_dot(const OrbitGraph& g);
std::string export_json(const OrbitGraph& g);
OrbitGraph graph_from_json(const std::string& text);

} // namespace hdflow
