#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "twosat/digraph.hpp"
#include "twosat/formula.hpp"

namespace twosat {

// true iff no variable occurs with both polarities in the set
bool is_strictly_distinct(std::span<const Literal> literals);

enum class Membership : uint8_t { kMember, kNonMember, kUndetermined };

constexpr uint64_t kUnboundedCap = UINT64_MAX;

// Scratch for spine membership queries: per-variable polarity marks with
// epoch stamping, reused across millions of queries.
class SpineScratch {
  public:
    enum VisitResult { kNew = 0, kAlreadyVisited = 1, kConflict = 2 };

    void reset(uint32_t variables);
    // records the literal; kConflict means its variable has now been seen
    // with both polarities
    int visit(Literal l);
    std::vector<uint32_t> queue;

  private:
    std::vector<uint32_t> stamp_;
    std::vector<uint8_t> pols_;
    uint32_t epoch_ = 0;
};

// BFS from x: member as soon as some variable appears with both polarities
// among the visited literals (the out-set is then not strictly distinct);
// non-member if the BFS exhausts with all variables distinct; undetermined
// only if a bounded cap on visited literals is exhausted first.
Membership spine_membership(const ImplicationDigraph& d, Literal x,
                            uint64_t cap, SpineScratch& scratch);
Membership spine_membership(const ImplicationDigraph& d, Literal x,
                            uint64_t cap = kUnboundedCap);

struct SpineReport {
    enum class Method : uint8_t { kSccCycle, kBfsAbort };
    std::vector<Literal> members;  // sorted by code
    std::vector<Method> method;    // parallel to members
    size_t size() const { return members.size(); }
    bool contains(Literal l) const;
};

// Exact spine S(F) = {x : x ~> ~x}: literals whose strong component equals
// their negation's are members outright (contradictory cycle); the rest are
// settled by the early-abort membership BFS.
SpineReport spine(const Formula& f);
SpineReport spine(const ImplicationDigraph& d);

// Literals required FALSE in every assignment minimizing the number of
// violated clauses.  Exhaustive over assignments; rejects n > 24.
std::vector<Literal> backbone(const Formula& f);

}  // namespace twosat
