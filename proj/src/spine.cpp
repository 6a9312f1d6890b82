#include "twosat/spine.hpp"

#include <algorithm>
#include <stdexcept>

namespace twosat {

bool is_strictly_distinct(std::span<const Literal> literals) {
    std::vector<uint32_t> codes;
    codes.reserve(literals.size());
    for (Literal l : literals) codes.push_back(l.code());
    std::sort(codes.begin(), codes.end());
    for (size_t i = 1; i < codes.size(); ++i)
        if ((codes[i] >> 1) == (codes[i - 1] >> 1) && codes[i] != codes[i - 1])
            return false;
    return true;
}

void SpineScratch::reset(uint32_t variables) {
    if (stamp_.size() < variables) {
        stamp_.assign(variables, 0);
        pols_.assign(variables, 0);
    }
    queue.clear();
    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
}

int SpineScratch::visit(Literal l) {
    uint32_t var = l.code() >> 1;
    uint8_t bit = uint8_t(1) << (l.code() & 1);
    if (stamp_[var] != epoch_) {
        stamp_[var] = epoch_;
        pols_[var] = bit;
        return kNew;
    }
    if (pols_[var] & bit) return kAlreadyVisited;
    pols_[var] |= bit;
    return kConflict;
}

Membership spine_membership(const ImplicationDigraph& d, Literal x,
                            uint64_t cap, SpineScratch& s) {
    s.reset(d.variable_count());
    s.visit(x);
    s.queue.push_back(x.code());
    uint64_t visited = 1;
    for (size_t head = 0; head < s.queue.size(); ++head) {
        for (uint32_t w : d.successors(s.queue[head])) {
            int r = s.visit(Literal(w));
            if (r == SpineScratch::kAlreadyVisited) continue;
            if (r == SpineScratch::kConflict) return Membership::kMember;
            if (++visited > cap) return Membership::kUndetermined;
            s.queue.push_back(w);
        }
    }
    return Membership::kNonMember;
}

Membership spine_membership(const ImplicationDigraph& d, Literal x, uint64_t cap) {
    SpineScratch s;
    return spine_membership(d, x, cap, s);
}

bool SpineReport::contains(Literal l) const {
    return std::binary_search(members.begin(), members.end(), l);
}

SpineReport spine(const ImplicationDigraph& d) {
    SccResult scc = strongly_connected_components(d);
    SpineReport report;
    SpineScratch scratch;
    for (uint32_t code = 0; code < d.vertex_count(); ++code) {
        Literal l(code);
        if (scc.comp[code] == scc.comp[code ^ 1]) {
            report.members.push_back(l);
            report.method.push_back(SpineReport::Method::kSccCycle);
            continue;
        }
        if (spine_membership(d, l, kUnboundedCap, scratch) == Membership::kMember) {
            report.members.push_back(l);
            report.method.push_back(SpineReport::Method::kBfsAbort);
        }
    }
    return report;
}

SpineReport spine(const Formula& f) { return spine(ImplicationDigraph(f)); }

std::vector<Literal> backbone(const Formula& f) {
    if (f.n > 24)
        throw std::invalid_argument("backbone: n exceeds exhaustive-enumeration limit 24");
    const uint64_t assignments = 1ULL << f.n;
    uint64_t best = UINT64_MAX;
    // literals TRUE in some optimal assignment are not in the backbone
    std::vector<uint8_t> ever_true(2 * f.n, 0);
    for (uint64_t mask = 0; mask < assignments; ++mask) {
        uint64_t violated = 0;
        for (const Clause& c : f.clauses) {
            bool a_true = ((mask >> (c.a().variable() - 1)) & 1) != c.a().negated();
            bool b_true = ((mask >> (c.b().variable() - 1)) & 1) != c.b().negated();
            if (!a_true && !b_true) ++violated;
        }
        if (violated > best) continue;
        if (violated < best) {
            best = violated;
            std::fill(ever_true.begin(), ever_true.end(), 0);
        }
        for (uint32_t v = 0; v < f.n; ++v) {
            bool val = (mask >> v) & 1;
            ever_true[2 * v + (val ? 0 : 1)] = 1;
        }
    }
    std::vector<Literal> result;
    for (uint32_t code = 0; code < 2 * f.n; ++code)
        if (!ever_true[code]) result.push_back(Literal(code));
    return result;
}

}  // namespace twosat
