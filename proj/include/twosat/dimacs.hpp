#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "twosat/formula.hpp"

namespace twosat {

struct DimacsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimacsResult {
    Formula formula;
    std::vector<std::string> warnings;  // e.g. duplicate clauses dropped
};

// Parses DIMACS CNF restricted to width-2 clauses.  Rejects malformed
// headers, clauses of width != 2, variable indices out of range, and
// tautological clauses (x v -x).  Duplicate clauses keep one copy with a
// warning, since formulas are clause sets.
DimacsResult read_dimacs(std::istream& in);
DimacsResult read_dimacs(const std::string& text);

void write_dimacs(const Formula& f, std::ostream& out);
std::string write_dimacs(const Formula& f);

}  // namespace twosat
