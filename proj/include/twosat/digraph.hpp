#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "twosat/formula.hpp"

namespace twosat {

// Implication digraph D_F on the 2n literal vertices: each clause (x v y)
// contributes the edges ~x -> y and ~y -> x, so the edge set is skew
// symmetric (u -> w present iff ~w -> ~u present).  Adjacency is stored as
// compact CSR index arrays; the structure is immutable after construction
// and safe for concurrent read-only queries.
class ImplicationDigraph {
  public:
    explicit ImplicationDigraph(const Formula& f);

    uint32_t variable_count() const { return n_; }
    uint32_t vertex_count() const { return 2 * n_; }
    size_t edge_count() const { return targets_.size(); }

    std::span<const uint32_t> successors(uint32_t v) const {
        return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }
    // Predecessors of v are the negations of the successors of ~v (skew
    // symmetry), so no reverse index is stored.
    std::span<const uint32_t> successors_of_negation(uint32_t v) const {
        return successors(v ^ 1);
    }

    bool has_edge(uint32_t from, uint32_t to) const;

  private:
    uint32_t n_;
    std::vector<uint32_t> offsets_;
    std::vector<uint32_t> targets_;
};

struct SccResult {
    std::vector<uint32_t> comp;  // vertex -> component id
    uint32_t count = 0;
    // Component ids are assigned in completion order of the DFS, which is a
    // reverse topological order of the condensation: every edge u -> w with
    // comp[u] != comp[w] satisfies comp[u] > comp[w].
};

SccResult strongly_connected_components(const ImplicationDigraph& d);

struct Condensation {
    std::vector<uint32_t> scc_id;
    uint32_t component_count = 0;
    std::vector<std::vector<uint32_t>> components;       // grouped by id
    std::vector<std::pair<uint32_t, uint32_t>> dag_edges;  // deduplicated
};

Condensation condensation(const ImplicationDigraph& d);

// SAT iff no variable has both polarities in one strong component.
bool is_satisfiable(const ImplicationDigraph& d);
bool is_satisfiable(const Formula& f);

// When SAT, sets each literal TRUE iff its component is later than its
// negation's component in topological order (equivalently, earlier in the
// completion order); ties cannot occur for satisfiable formulas.
std::optional<Assignment> satisfying_assignment(const Formula& f);

// Reusable BFS scratch: epoch-stamped visited marks so that millions of
// reachability queries do not reallocate or clear buffers.
class ReachScratch {
  public:
    void reset(uint32_t vertices);

    bool visited(uint32_t v) const { return stamp_[v] == epoch_; }
    void mark(uint32_t v) { stamp_[v] = epoch_; }
    void new_epoch();

    std::vector<uint32_t> queue;

  private:
    std::vector<uint32_t> stamp_;
    uint32_t epoch_ = 0;
};

// Oriented-path reachability; reaches(x, x) is true by convention.
bool reaches(const ImplicationDigraph& d, Literal from, Literal to, ReachScratch& scratch);
bool reaches(const ImplicationDigraph& d, Literal from, Literal to);

// BFS closures L+(x) = {y : x ~> y} and L-(x) = {y : y ~> x}; both contain
// x itself.  Results are sorted by literal code.
std::vector<Literal> out_set(const ImplicationDigraph& d, Literal x);
std::vector<Literal> in_set(const ImplicationDigraph& d, Literal x);

}  // namespace twosat
