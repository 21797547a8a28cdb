#include "sst/io.hpp"

#include "sst/errors.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace sst {

namespace {

std::string where(int line) { return "line " + std::to_string(line) + ": "; }

} // namespace

ParsedMachine parse_machine(const std::string& text) {
    ParsedMachine pm;
    int n = -1;
    std::vector<std::string> names;
    std::map<std::string, int> idx;
    std::optional<std::string> initial;
    struct Raw {
        int line;
        bool nd;
        std::string src, in, dst, out;
    };
    std::vector<Raw> raw;

    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string dir;
        if (!(ls >> dir)) continue;
        if (dir == "alphabet") {
            if (!(ls >> n) || n < 2) throw FormatError(where(ln) + "bad alphabet size");
        } else if (dir == "states") {
            std::string s;
            while (ls >> s) {
                if (idx.count(s)) throw FormatError(where(ln) + "duplicate state " + s);
                idx[s] = static_cast<int>(names.size());
                names.push_back(s);
            }
        } else if (dir == "initial") {
            std::string s;
            if (!(ls >> s)) throw FormatError(where(ln) + "missing initial state");
            initial = s;
        } else if (dir == "edge" || dir == "ndedge") {
            Raw r{ln, dir == "ndedge", {}, {}, {}, {}};
            if (!(ls >> r.src >> r.in >> r.dst >> r.out)) throw FormatError(where(ln) + "edge needs 4 fields");
            std::string extra;
            if (ls >> extra) throw FormatError(where(ln) + "trailing text after edge");
            raw.push_back(std::move(r));
        } else {
            throw FormatError(where(ln) + "unknown directive '" + dir + "'");
        }
    }
    if (n < 0) throw FormatError("missing alphabet directive");
    if (names.empty()) throw FormatError("missing states directive");
    auto state = [&](const std::string& s, int l) {
        auto it = idx.find(s);
        if (it == idx.end()) throw FormatError(where(l) + "unknown state " + s);
        return it->second;
    };
    bool any_nd = false, any_det = false;
    for (const auto& r : raw) (r.nd ? any_nd : any_det) = true;
    if (any_nd && any_det) throw FormatError("cannot mix edge and ndedge directives");
    pm.nondet = any_nd;
    if (initial) pm.initial = state(*initial, 0);
    if (pm.nondet) {
        pm.nd.n = n;
        pm.nd.names = names;
        for (const auto& r : raw) {
            NdEdge e{parse_word(r.in), state(r.src, r.line), state(r.dst, r.line), parse_word(r.out)};
            check_letters(e.input, n);
            check_letters(e.output, n);
            pm.nd.edges.push_back(std::move(e));
        }
        validate(pm.nd);
        return pm;
    }
    DetTransducer t(n, static_cast<int>(names.size()));
    t.names = names;
    std::vector<char> seen(static_cast<std::size_t>(t.size() * n), 0);
    for (const auto& r : raw) {
        Word in = parse_word(r.in);
        if (in.size() != 1) throw FormatError(where(r.line) + "deterministic edges need a single input letter");
        check_letters(in, n);
        const int q = state(r.src, r.line);
        char& s = seen[static_cast<std::size_t>(q * n + in[0])];
        if (s) throw FormatError(where(r.line) + "second edge for (" + r.src + ", " + r.in + ")");
        s = 1;
        Word o = parse_word(r.out);
        check_letters(o, n);
        t.set(q, in[0], state(r.dst, r.line), std::move(o));
    }
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < n; ++x)
            if (!seen[static_cast<std::size_t>(q * n + x)])
                throw FormatError("missing edge for state " + names[static_cast<std::size_t>(q)] + " letter " + std::to_string(x));
    validate(t);
    pm.det = std::move(t);
    return pm;
}

ParsedMachine load_machine(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_machine(ss.str());
}

DetTransducer load_det(const std::string& path) {
    ParsedMachine pm = load_machine(path);
    if (pm.nondet) throw FormatError(path + ": expected a deterministic machine");
    return pm.det;
}

std::string serialize(const DetTransducer& t, std::optional<int> initial) {
    std::ostringstream os;
    os << "alphabet " << t.n << "\nstates";
    for (const auto& s : t.names) os << ' ' << s;
    os << '\n';
    if (initial) os << "initial " << t.names[static_cast<std::size_t>(*initial)] << '\n';
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x)
            os << "edge " << t.names[static_cast<std::size_t>(q)] << ' ' << x << ' '
               << t.names[static_cast<std::size_t>(t.to(q, x))] << ' ' << to_string(t.emit(q, x)) << '\n';
    return os.str();
}

std::string serialize(const NondetTransducer& t) {
    std::ostringstream os;
    os << "alphabet " << t.n << "\nstates";
    for (const auto& s : t.names) os << ' ' << s;
    os << '\n';
    for (const auto& e : t.edges)
        os << "ndedge " << t.names[static_cast<std::size_t>(e.src)] << ' ' << to_string(e.input) << ' '
           << t.names[static_cast<std::size_t>(e.dst)] << ' ' << to_string(e.output) << '\n';
    return os.str();
}

namespace {

std::string quoted(const std::string& s) {
    std::string r = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') r += '\\';
        r += c;
    }
    return r + "\"";
}

std::string label(const Word& in, const Word& out) {
    return (in.empty() ? std::string("ε") : to_string(in)) + "|" + (out.empty() ? std::string("ε") : to_string(out));
}

} // namespace

std::string to_dot(const DetTransducer& t) {
    std::ostringstream os;
    os << "digraph T {\n  rankdir=LR;\n";
    for (const auto& s : t.names) os << "  " << quoted(s) << ";\n";
    for (int q = 0; q < t.size(); ++q)
        for (int x = 0; x < t.n; ++x)
            os << "  " << quoted(t.names[static_cast<std::size_t>(q)]) << " -> "
               << quoted(t.names[static_cast<std::size_t>(t.to(q, x))]) << " [label=" << quoted(label({x}, t.emit(q, x)))
               << "];\n";
    os << "}\n";
    return os.str();
}

std::string to_dot(const NondetTransducer& t) {
    std::ostringstream os;
    os << "digraph N {\n  rankdir=LR;\n";
    for (const auto& s : t.names) os << "  " << quoted(s) << ";\n";
    for (const auto& e : t.edges)
        os << "  " << quoted(t.names[static_cast<std::size_t>(e.src)]) << " -> " << quoted(t.names[static_cast<std::size_t>(e.dst)])
           << " [label=" << quoted(label(e.input, e.output)) << "];\n";
    os << "}\n";
    return os.str();
}

} // namespace sst
