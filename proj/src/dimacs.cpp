#include "twosat/dimacs.hpp"

#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace twosat {

DimacsResult read_dimacs(std::istream& in) {
    DimacsResult result;
    Formula& f = result.formula;

    std::string line;
    bool have_header = false;
    uint64_t declared_clauses = 0;
    std::vector<int64_t> pending;
    std::set<Clause> seen;

    auto finish_clause = [&](std::vector<int64_t>& lits) {
        if (lits.size() != 2)
            throw DimacsError("clause width must be 2, got " +
                              std::to_string(lits.size()));
        for (int64_t l : lits) {
            uint64_t v = l > 0 ? uint64_t(l) : uint64_t(-l);
            if (v == 0 || v > f.n)
                throw DimacsError("variable index out of range: " + std::to_string(l));
        }
        Literal a = Literal::from_dimacs(lits[0]);
        Literal b = Literal::from_dimacs(lits[1]);
        if (!strictly_distinct(a, b))
            throw DimacsError("clause literals must be strictly distinct: " +
                              std::to_string(lits[0]) + " " + std::to_string(lits[1]));
        Clause c(a, b);
        if (!seen.insert(c).second) {
            result.warnings.push_back("duplicate clause dropped: " + c.str());
        } else {
            f.clauses.push_back(c);
        }
        lits.clear();
    };

    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c' || line[0] == '%') continue;
        if (line[0] == 'p') {
            std::istringstream hs(line);
            std::string p, fmt;
            int64_t nv = -1, nc = -1;
            hs >> p >> fmt >> nv >> nc;
            if (hs.fail() || fmt != "cnf" || nv < 0 || nc < 0)
                throw DimacsError("malformed header: " + line);
            f.n = uint32_t(nv);
            declared_clauses = uint64_t(nc);
            have_header = true;
            continue;
        }
        if (!have_header) throw DimacsError("clause line before header");
        std::istringstream ls(line);
        int64_t lit;
        while (ls >> lit) {
            if (lit == 0) {
                finish_clause(pending);
            } else {
                pending.push_back(lit);
                if (pending.size() > 2)
                    throw DimacsError("clause width must be 2");
            }
        }
        if (ls.fail() && !ls.eof()) throw DimacsError("bad token in line: " + line);
    }
    if (!have_header) throw DimacsError("missing header");
    if (!pending.empty()) throw DimacsError("unterminated clause at end of input");
    if (declared_clauses != f.clauses.size() + result.warnings.size() &&
        declared_clauses != f.clauses.size()) {
        result.warnings.push_back("header declared " + std::to_string(declared_clauses) +
                                  " clauses, found " + std::to_string(f.clauses.size()));
    }
    f.ensemble = EnsembleTag::file();
    return result;
}

DimacsResult read_dimacs(const std::string& text) {
    std::istringstream in(text);
    return read_dimacs(in);
}

void write_dimacs(const Formula& f, std::ostream& out) {
    out << "p cnf " << f.n << " " << f.clauses.size() << "\n";
    for (const Clause& c : f.clauses)
        out << c.a().to_dimacs() << " " << c.b().to_dimacs() << " 0\n";
}

std::string write_dimacs(const Formula& f) {
    std::ostringstream out;
    write_dimacs(f, out);
    return out.str();
}

}  // namespace twosat
