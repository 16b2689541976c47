#include "revarith/gatelist.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace revarith {

void write_gatelist(std::ostream& os, const Circuit& circuit) {
    os << "# width " << circuit.width << "\n";
    for (const Gate& g : circuit.gates) {
        switch (g.num_controls) {
            case 0: os << "X " << g.target << "\n"; break;
            case 1: os << "CX " << g.ctrl[0] << " " << g.target << "\n"; break;
            case 2: os << "CCX " << g.ctrl[0] << " " << g.ctrl[1] << " " << g.target << "\n"; break;
            default:
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "gate list format only holds fully lowered circuits");
        }
    }
}

std::string serialize_gatelist(const Circuit& circuit) {
    std::ostringstream os;
    write_gatelist(os, circuit);
    return os.str();
}

Circuit read_gatelist(std::istream& is) {
    Circuit c;
    bool have_width = false;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') {
            std::istringstream hs(line.substr(start + 1));
            std::string word;
            if (hs >> word && word == "width") {
                if (!(hs >> c.width))
                    throw BuildError(BuildError::Kind::InvalidParams, "bad width header");
                have_width = true;
            }
            continue;
        }
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        Gate g;
        auto read_wire = [&](Wire& w) {
            long long v;
            if (!(ls >> v) || v < 0)
                throw BuildError(BuildError::Kind::InvalidParams,
                                 "parse error at line " + std::to_string(lineno));
            w = static_cast<Wire>(v);
        };
        if (kind == "X") {
            read_wire(g.target);
        } else if (kind == "CX") {
            g.num_controls = 1;
            read_wire(g.ctrl[0]);
            read_wire(g.target);
        } else if (kind == "CCX") {
            g.num_controls = 2;
            read_wire(g.ctrl[0]);
            read_wire(g.ctrl[1]);
            read_wire(g.target);
        } else {
            throw BuildError(BuildError::Kind::InvalidParams,
                             "unknown gate '" + kind + "' at line " + std::to_string(lineno));
        }
        c.gates.push_back(g);
    }
    if (!have_width) throw BuildError(BuildError::Kind::InvalidParams, "missing `# width` header");
    for (const Gate& g : c.gates) {
        auto check = [&](Wire w) {
            if (w >= c.width)
                throw BuildError(BuildError::Kind::WireOutOfRange, "gate wire exceeds width");
        };
        check(g.target);
        for (Wire w : c.controls(g)) check(w);
    }
    return c;
}

Circuit parse_gatelist(const std::string& text) {
    std::istringstream is(text);
    return read_gatelist(is);
}

} // namespace revarith
