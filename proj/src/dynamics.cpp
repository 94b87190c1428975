#include "hdflow/dynamics.hpp"

#include <algorithm>
#include <thread>

#include <json.hpp>

namespace hdflow {

namespace {

// rotate a cycle so the smallest index comes first
void canonicalize(std::vector<u64>& cyc) {
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
}

} // namespace

OrbitGraph::OrbitGraph(CtxPtr ctx, FieldElement lam, std::vector<u64> edges)
    : ctx_(std::move(ctx)), lam_(std::move(lam)), edges_(std::move(edges)) {
    const u64 n = edges_.size();
    if (n != ctx_->q() + 1) raise(errc::shape_mismatch, "edge table does not cover P^1");
    for (u64 e : edges_)
        if (e >= n) raise(errc::index_out_of_range, "edge target outside the node set");

    // one pass of path-following: color 0 untouched, 1 on the current walk,
    // 2 settled. A walk that re-enters itself has found a new cycle.
    tails_.assign(n, 0);
    std::vector<unsigned char> state(n, 0);
    std::vector<u64> path;
    std::vector<std::vector<u64>> raw;
    for (u64 s = 0; s < n; ++s) {
        if (state[s]) continue;
        path.clear();
        u64 x = s;
        while (!state[x]) {
            state[x] = 1;
            path.push_back(x);
            x = edges_[x];
        }
        if (state[x] == 1) {
            size_t pos = path.size();
            while (path[pos - 1] != x) --pos;
            --pos;
            std::vector<u64> cyc(path.begin() + static_cast<long>(pos), path.end());
            for (u64 c : cyc) {
                tails_[c] = 0;
                state[c] = 2;
            }
            raw.push_back(std::move(cyc));
            path.resize(pos);
        }
        for (size_t i = path.size(); i-- > 0;) {
            tails_[path[i]] = tails_[edges_[path[i]]] + 1;
            state[path[i]] = 2;
        }
    }

    for (auto& cyc : raw) canonicalize(cyc);
    std::sort(raw.begin(), raw.end(), [](const std::vector<u64>& a, const std::vector<u64>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.front() < b.front();
    });
    cycles_.reserve(raw.size());
    for (const auto& cyc : raw) {
        Cycle c;
        c.period = cyc.size();
        for (u64 i : cyc) c.nodes.push_back(node(i));
        cycles_.push_back(std::move(c));
    }
}

ProjPoint OrbitGraph::node(u64 index) const {
    if (index > ctx_->q()) raise(errc::index_out_of_range, "node index out of range");
    if (index == ctx_->q()) return ProjPoint::infinity();
    return ProjPoint::finite(ctx_->encode(index));
}

u64 OrbitGraph::index_of(const ProjPoint& pt) const {
    return pt.is_infinity() ? ctx_->q() : pt.value().encode();
}

ProjPoint OrbitGraph::successor(const ProjPoint& pt) const { return node(edges_[index_of(pt)]); }

u64 OrbitGraph::tail_length(const ProjPoint& pt) const { return tails_[index_of(pt)]; }

std::vector<std::pair<ProjPoint, u64>> OrbitGraph::periodic_points() const {
    std::vector<std::pair<u64, u64>> flat;
    for (const auto& c : cycles_)
        for (const auto& pt : c.nodes) flat.emplace_back(index_of(pt), c.period);
    std::sort(flat.begin(), flat.end());
    std::vector<std::pair<ProjPoint, u64>> out;
    out.reserve(flat.size());
    for (auto [i, per] : flat) out.emplace_back(node(i), per);
    return out;
}

bool operator==(const OrbitGraph& a, const OrbitGraph& b) {
    return a.ctx_->p() == b.ctx_->p() && a.ctx_->f() == b.ctx_->f() &&
           a.ctx_->modulus() == b.ctx_->modulus() && a.lam_.encode() == b.lam_.encode() &&
           a.edges_ == b.edges_;
}

OrbitGraph functional_graph(const SelfMap& sm, u64 max_nodes, u32 jobs) {
    const CtxPtr& ctx = sm.ctx();
    const u64 q = ctx->q();
    if (q > max_nodes)
        raise(errc::field_too_large,
              "graph over " + std::to_string(q) + " nodes exceeds the bound " + std::to_string(max_nodes));
    const u64 n = q + 1;
    std::vector<u64> edges(n);

    auto run = [&](u64 lo, u64 hi) {
        for (u64 i = lo; i < hi; ++i) {
            ProjPoint src = i == q ? ProjPoint::infinity() : ProjPoint::finite(ctx->encode(i));
            ProjPoint dst = sm.eval(src);
            edges[i] = dst.is_infinity() ? q : dst.value().encode();
        }
    };

    if (jobs <= 1 || n < 2 * jobs) {
        run(0, n);
    } else {
        std::vector<std::thread> workers;
        u64 chunk = (n + jobs - 1) / jobs;
        for (u32 t = 0; t < jobs; ++t) {
            u64 lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back(run, lo, hi);
        }
        for (auto& w : workers) w.join();
    }
    return OrbitGraph(ctx, sm.lambda(), std::move(edges));
}

OrbitPath orbit(const SelfMap& sm, const ProjPoint& start) {
    // Brent: hare advances through powers of two until it meets a frozen
    // tortoise; the step count since the last freeze is the period
    u64 power = 1, period = 1;
    ProjPoint tortoise = start;
    ProjPoint hare = sm.eval(start);
    while (tortoise != hare) {
        if (power == period) {
            tortoise = hare;
            power <<= 1;
            period = 0;
        }
        hare = sm.eval(hare);
        ++period;
    }

    tortoise = start;
    hare = start;
    for (u64 i = 0; i < period; ++i) hare = sm.eval(hare);
    OrbitPath out;
    while (tortoise != hare) {
        out.tail.push_back(tortoise);
        tortoise = sm.eval(tortoise);
        hare = sm.eval(hare);
    }
    out.cycle.reserve(period);
    ProjPoint x = tortoise;
    for (u64 i = 0; i < period; ++i) {
        out.cycle.push_back(x);
        x = sm.eval(x);
    }

    const u64 q = sm.ctx()->q();
    auto key = [&](const ProjPoint& pt) { return pt.is_infinity() ? q : pt.value().encode(); };
    size_t best = 0;
    for (size_t i = 1; i < out.cycle.size(); ++i)
        if (key(out.cycle[i]) < key(out.cycle[best])) best = i;
    std::rotate(out.cycle.begin(), out.cycle.begin() + static_cast<long>(best), out.cycle.end());
    return out;
}

std::vector<std::pair<ProjPoint, u64>> periodic_points(const SelfMap& sm, u64 max_nodes) {
    return functional_graph(sm, max_nodes).periodic_points();
}

std::string export_dot(const OrbitGraph& g) {
    std::string out = "digraph phi {\n";
    for (const auto& c : g.cycles())
        for (const auto& pt : c.nodes) {
            auto name = pt.name();
            out += "  \"" + name + "\" [label=\"" + name + " period=" + std::to_string(c.period) + "\"];\n";
        }
    for (u64 i = 0; i < g.node_count(); ++i)
        out += "  \"" + g.node(i).name() + "\" -> \"" + g.successor(g.node(i)).name() + "\";\n";
    out += "}\n";
    return out;
}

std::string export_json(const OrbitGraph& g) {
    nlohmann::ordered_json j;
    j["p"] = g.ctx()->p();
    j["f"] = g.ctx()->f();
    j["modulus"] = g.ctx()->modulus();
    j["lambda"] = g.lambda().encode();
    auto edges = nlohmann::ordered_json::object();
    for (u64 i = 0; i < g.node_count(); ++i)
        edges[g.node(i).name()] = g.successor(g.node(i)).name();
    j["edges"] = std::move(edges);
    auto cycles = nlohmann::ordered_json::array();
    for (const auto& c : g.cycles()) {
        nlohmann::ordered_json jc;
        jc["period"] = c.period;
        auto nodes = nlohmann::ordered_json::array();
        for (const auto& pt : c.nodes) nodes.push_back(pt.name());
        jc["nodes"] = std::move(nodes);
        cycles.push_back(std::move(jc));
    }
    j["cycles"] = std::move(cycles);
    auto tails = nlohmann::ordered_json::object();
    for (u64 i = 0; i < g.node_count(); ++i) tails[g.node(i).name()] = g.tail_length(g.node(i));
    j["tails"] = std::move(tails);
    return j.dump(2) + "\n";
}

OrbitGraph graph_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    auto ctx = FieldCtx::make(j.at("p").get<u32>(), j.at("f").get<u32>(),
                              j.at("modulus").get<std::vector<u32>>());
    auto lam = ctx->encode(j.at("lambda").get<u64>());
    const u64 n = ctx->q() + 1;
    std::vector<u64> edges(n, n);
    for (const auto& [src, dst] : j.at("edges").items()) {
        auto a = ProjPoint::parse(src, ctx);
        auto b = ProjPoint::parse(dst.get<std::string>(), ctx);
        u64 i = a.is_infinity() ? ctx->q() : a.value().encode();
        edges[i] = b.is_infinity() ? ctx->q() : b.value().encode();
    }
    for (u64 e : edges)
        if (e >= n) raise(errc::shape_mismatch, "edge map does not cover every node");
    return OrbitGraph(std::move(ctx), std::move(lam), std::move(edges));
}

} // namespace hdflow
