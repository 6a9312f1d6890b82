#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "twosat/digraph.hpp"
#include "twosat/formula.hpp"
#include "twosat/rng.hpp"

namespace twosat {

// Result of the trimmed local search.  The vertex set is strictly distinct
// by construction and the unoriented projection of the graph is distributed
// as the component of the root's variable in a random graph with edge
// probability 2p - p^2 (generative mode).
struct TrimmedOutGraph {
    Literal root;
    bool out_direction = true;  // false: in-graph, edges point toward the root
    std::vector<Literal> vertices;  // discovery order; vertices[0] == root
    std::vector<uint32_t> parent;   // tree parent index per vertex; root = UINT32_MAX
    std::vector<std::pair<Literal, Literal>> edges;  // digraph orientation (from, to)
    uint64_t test_count = 0;  // directed-edge tests performed
    struct PairRecord {
        uint32_t var_lo = 0, var_hi = 0;
        bool present = false;  // at least one of the two directed tests was yes
    };
    std::vector<PairRecord> tests;  // one record per unoriented pair touched
    bool tests_recorded = false;
    bool aborted = false;  // vertex cap exhausted before the frontier drained

    size_t size() const { return vertices.size(); }
    // the recorded unoriented projection has vertices-1 edges iff it is a tree
    bool is_tree() const { return edges.size() + 1 == vertices.size(); }
};

struct TrimmedOptions {
    uint64_t vertex_cap = UINT64_MAX;
    bool record_tests = true;
};

enum class SearchDir { kOut, kIn };

// Searcher with a shared variable pool.  Successive searches only grow into
// variables still in the pool, and every variable that enters a graph is
// removed, which keeps the shapes of successive searches independent (the
// discipline the hourglass procedures rely on).
class TrimmedSearcher {
  public:
    // generative: each directed-edge test is a fresh Bernoulli(p) draw; the
    // substep bookkeeping guarantees no directed edge is asked twice
    TrimmedSearcher(uint32_t n, double p, SplitMix64* rng);
    // replay: tests actual clause presence in the digraph
    TrimmedSearcher(const ImplicationDigraph* d, uint32_t n);

    std::vector<uint32_t>& pool() { return pool_; }
    const std::vector<uint32_t>& pool() const { return pool_; }
    void fill_pool_all();              // all variables 1..n
    void remove_from_pool(uint32_t var);
    bool in_pool(uint32_t var) const { return pos_[var] != UINT32_MAX; }

    // Runs the six-substep search from `root` among the first
    // min(reserve, pool size) pool variables (the root's variable never
    // counts as eligible).  Consumed variables leave the pool.
    TrimmedOutGraph search(Literal root, SearchDir dir, size_t reserve,
                           const TrimmedOptions& opt);

  private:
    uint32_t n_;
    double p_ = 0.0;
    SplitMix64* rng_ = nullptr;
    const ImplicationDigraph* digraph_ = nullptr;
    std::vector<uint32_t> pool_;  // variable ids (1-based)
    std::vector<uint32_t> pos_;   // var -> index in pool_, UINT32_MAX if absent
    std::vector<uint32_t> epos_;  // per-search eligibility scratch
    std::vector<uint32_t> vindex_;  // per-search vertex index scratch
};

// Deterministic replay of the search against a concrete formula, over the
// full variable universe.
TrimmedOutGraph trimmed_out_graph(const ImplicationDigraph& d, Literal x,
                                  const TrimmedOptions& opt = {});
TrimmedOutGraph trimmed_out_graph(const Formula& f, Literal x,
                                  const TrimmedOptions& opt = {});

// Coupled generative mode over n variables at clause probability p.
TrimmedOutGraph trimmed_out_graph_generative(uint32_t n, double p, Literal x,
                                             SplitMix64& rng,
                                             const TrimmedOptions& opt = {});

}  // namespace twosat
