#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twosat {

// A literal over variables x_1..x_n, encoded as code = 2*(i-1) + polarity
// with polarity 0 for x_i and 1 for its negation.  Negation is a low-bit
// flip, and the code doubles as the vertex id in the implication digraph.
class Literal {
  public:
    Literal() : code_(0) {}
    explicit Literal(uint32_t code) : code_(code) {}

    static Literal positive(uint32_t var) { return Literal(2 * (var - 1)); }
    static Literal negative(uint32_t var) { return Literal(2 * (var - 1) + 1); }
    static Literal from_dimacs(int64_t lit) {
        return lit > 0 ? positive(uint32_t(lit)) : negative(uint32_t(-lit));
    }

    uint32_t code() const { return code_; }
    uint32_t variable() const { return code_ / 2 + 1; }
    bool negated() const { return code_ & 1; }
    Literal negate() const { return Literal(code_ ^ 1); }
    int64_t to_dimacs() const {
        return negated() ? -int64_t(variable()) : int64_t(variable());
    }

    friend bool operator==(Literal a, Literal b) { return a.code_ == b.code_; }
    friend bool operator!=(Literal a, Literal b) { return a.code_ != b.code_; }
    friend bool operator<(Literal a, Literal b) { return a.code_ < b.code_; }

    std::string str() const {
        return (negated() ? "-x" : "x") + std::to_string(variable());
    }

  private:
    uint32_t code_;
};

inline bool strictly_distinct(Literal a, Literal b) {
    return a.variable() != b.variable();
}

// An unordered 2-clause (a v b) on strictly distinct literals, stored with
// the smaller code first so that (x v y) and (y v x) compare equal.
class Clause {
  public:
    Clause() = default;
    Clause(Literal x, Literal y) : a_(x), b_(y) {
        if (b_ < a_) std::swap(a_, b_);
    }

    Literal a() const { return a_; }
    Literal b() const { return b_; }
    bool strictly_distinct() const { return twosat::strictly_distinct(a_, b_); }
    bool contains(Literal l) const { return a_ == l || b_ == l; }

    friend bool operator==(const Clause& x, const Clause& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator<(const Clause& x, const Clause& y) {
        return x.a_ != y.a_ ? x.a_ < y.a_ : x.b_ < y.b_;
    }

    std::string str() const { return "(" + a_.str() + " v " + b_.str() + ")"; }

  private:
    Literal a_, b_;
};

struct EnsembleTag {
    enum Kind { kFile, kFnm, kFnp, kProcess } kind = kFile;
    uint64_t m = 0;   // for kFnm
    double p = 0.0;   // for kFnp / kProcess

    static EnsembleTag file() { return {kFile, 0, 0.0}; }
    static EnsembleTag fnm(uint64_t m) { return {kFnm, m, 0.0}; }
    static EnsembleTag fnp(double p) { return {kFnp, 0, p}; }
    static EnsembleTag process(double p) { return {kProcess, 0, p}; }

    std::string str() const {
        switch (kind) {
            case kFnm: return "fnm{" + std::to_string(m) + "}";
            case kFnp: return "fnp{" + std::to_string(p) + "}";
            case kProcess: return "process{" + std::to_string(p) + "}";
            default: return "file";
        }
    }
};

// A 2-SAT formula: clause list over n variables.  Formulas are immutable
// after construction in all sampling paths and safe to share read-only.
struct Formula {
    uint32_t n = 0;
    std::vector<Clause> clauses;
    EnsembleTag ensemble = EnsembleTag::file();

    size_t clause_count() const { return clauses.size(); }
};

// Truth assignment: values[i-1] is the value of x_i (1 = TRUE).
using Assignment = std::vector<uint8_t>;

inline bool literal_true(Literal l, const Assignment& a) {
    bool v = a[l.variable() - 1] != 0;
    return l.negated() ? !v : v;
}

inline bool clause_satisfied(const Clause& c, const Assignment& a) {
    return literal_true(c.a(), a) || literal_true(c.b(), a);
}

inline bool formula_satisfied(const Formula& f, const Assignment& a) {
    for (const Clause& c : f.clauses)
        if (!clause_satisfied(c, a)) return false;
    return true;
}

}  // namespace twosat
