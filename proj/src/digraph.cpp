#include "twosat/digraph.hpp"

#include <algorithm>

namespace twosat {

ImplicationDigraph::ImplicationDigraph(const Formula& f) : n_(f.n) {
    const uint32_t vertices = 2 * n_;
    offsets_.assign(vertices + 1, 0);
    for (const Clause& c : f.clauses) {
        offsets_[(c.a().code() ^ 1) + 1]++;
        offsets_[(c.b().code() ^ 1) + 1]++;
    }
    for (uint32_t v = 0; v < vertices; ++v) offsets_[v + 1] += offsets_[v];
    targets_.resize(f.clauses.size() * 2);
    std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const Clause& c : f.clauses) {
        targets_[cursor[c.a().code() ^ 1]++] = c.b().code();
        targets_[cursor[c.b().code() ^ 1]++] = c.a().code();
    }
}

bool ImplicationDigraph::has_edge(uint32_t from, uint32_t to) const {
    for (uint32_t w : successors(from))
        if (w == to) return true;
    return false;
}

namespace {

constexpr uint32_t kUnvisited = UINT32_MAX;

}  // namespace

// Single-pass iterative Tarjan; the explicit frame stack avoids recursion
// depth limits on instances with n ~ 10^6.  Scratch arrays are thread_local
// so sweeps over millions of instances do not churn the allocator.
SccResult strongly_connected_components(const ImplicationDigraph& d) {
    const uint32_t vertices = d.vertex_count();
    SccResult result;
    result.comp.assign(vertices, kUnvisited);

    struct Frame {
        uint32_t vertex;
        uint32_t next_edge;
    };
    thread_local std::vector<uint32_t> index, lowlink, stack;
    thread_local std::vector<uint8_t> on_stack;
    thread_local std::vector<Frame> frames;
    index.assign(vertices, kUnvisited);
    lowlink.assign(vertices, 0);
    on_stack.assign(vertices, 0);
    stack.clear();
    stack.reserve(vertices);
    frames.clear();
    uint32_t next_index = 0;

    // roots iterated downward so that a free variable's negation completes
    // first, making the extracted assignment all-FALSE on empty formulas
    for (uint32_t root = vertices; root-- > 0;) {
        if (index[root] != kUnvisited) continue;
        frames.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!frames.empty()) {
            Frame& frame = frames.back();
            uint32_t v = frame.vertex;
            auto succ = d.successors(v);
            bool descended = false;
            while (frame.next_edge < succ.size()) {
                uint32_t w = succ[frame.next_edge++];
                if (index[w] == kUnvisited) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                uint32_t id = result.count++;
                uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    result.comp[w] = id;
                } while (w != v);
            }
            frames.pop_back();
            if (!frames.empty()) {
                uint32_t parent = frames.back().vertex;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
    return result;
}

Condensation condensation(const ImplicationDigraph& d) {
    SccResult scc = strongly_connected_components(d);
    Condensation c;
    c.component_count = scc.count;
    c.components.resize(scc.count);
    for (uint32_t v = 0; v < d.vertex_count(); ++v)
        c.components[scc.comp[v]].push_back(v);
    for (uint32_t v = 0; v < d.vertex_count(); ++v)
        for (uint32_t w : d.successors(v))
            if (scc.comp[v] != scc.comp[w])
                c.dag_edges.emplace_back(scc.comp[v], scc.comp[w]);
    std::sort(c.dag_edges.begin(), c.dag_edges.end());
    c.dag_edges.erase(std::unique(c.dag_edges.begin(), c.dag_edges.end()),
                      c.dag_edges.end());
    c.scc_id = std::move(scc.comp);
    return c;
}

bool is_satisfiable(const ImplicationDigraph& d) {
    SccResult scc = strongly_connected_components(d);
    for (uint32_t v = 0; v < d.vertex_count(); v += 2)
        if (scc.comp[v] == scc.comp[v + 1]) return false;
    return true;
}

bool is_satisfiable(const Formula& f) {
    return is_satisfiable(ImplicationDigraph(f));
}

std::optional<Assignment> satisfying_assignment(const Formula& f) {
    ImplicationDigraph d(f);
    SccResult scc = strongly_connected_components(d);
    Assignment a(f.n, 0);
    for (uint32_t i = 0; i < f.n; ++i) {
        uint32_t pos = 2 * i, neg = 2 * i + 1;
        if (scc.comp[pos] == scc.comp[neg]) return std::nullopt;
        // smaller component id = completed earlier = later in topological order
        a[i] = scc.comp[pos] < scc.comp[neg] ? 1 : 0;
    }
    return a;
}

void ReachScratch::reset(uint32_t vertices) {
    if (stamp_.size() < vertices) stamp_.assign(vertices, 0);
    queue.clear();
    new_epoch();
}

void ReachScratch::new_epoch() {
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
}

bool reaches(const ImplicationDigraph& d, Literal from, Literal to, ReachScratch& s) {
    if (from == to) return true;
    s.reset(d.vertex_count());
    s.queue.clear();
    s.queue.push_back(from.code());
    s.mark(from.code());
    for (size_t head = 0; head < s.queue.size(); ++head) {
        for (uint32_t w : d.successors(s.queue[head])) {
            if (w == to.code()) return true;
            if (!s.visited(w)) {
                s.mark(w);
                s.queue.push_back(w);
            }
        }
    }
    return false;
}

bool reaches(const ImplicationDigraph& d, Literal from, Literal to) {
    ReachScratch s;
    return reaches(d, from, to, s);
}

std::vector<Literal> out_set(const ImplicationDigraph& d, Literal x) {
    ReachScratch s;
    s.reset(d.vertex_count());
    s.queue.push_back(x.code());
    s.mark(x.code());
    for (size_t head = 0; head < s.queue.size(); ++head) {
        for (uint32_t w : d.successors(s.queue[head])) {
            if (!s.visited(w)) {
                s.mark(w);
                s.queue.push_back(w);
            }
        }
    }
    std::vector<Literal> result;
    result.reserve(s.queue.size());
    for (uint32_t v : s.queue) result.push_back(Literal(v));
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<Literal> in_set(const ImplicationDigraph& d, Literal x) {
    // mirror identity: L-(x) = {~y : y in L+(~x)}
    std::vector<Literal> result = out_set(d, x.negate());
    for (Literal& l : result) l = l.negate();
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace twosat
