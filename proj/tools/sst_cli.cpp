// Command-line front end.  Exit status: 0 success, 1 domain error,
// 2 format error or bad usage.
#include "CLI11.hpp"
#include "json.hpp"

#include "sst/acceptance.hpp"
#include "sst/dynamics.hpp"
#include "sst/errors.hpp"
#include "sst/images.hpp"
#include "sst/io.hpp"
#include "sst/markers.hpp"
#include "sst/reverse.hpp"
#include "sst/signatures.hpp"
#include "sst/sync.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace sst;
using nlohmann::json;

namespace {

struct Options {
    bool json = false;
    bool dot = false;
    int bound = -1;  // remainder / non-deterministic path bound
    int max_k = -1;  // synchronization level cap
};

// Text and structured forms of one report.
struct Report {
    std::string text;
    json data = json::object();
};

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v || !*v) return fallback;
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw FormatError(std::string(name) + " is not an integer");
    }
}

std::string names_list(const DetTransducer& t, const std::vector<int>& states) {
    std::string s = "[";
    for (std::size_t i = 0; i < states.size(); ++i) s += (i ? "," : "") + t.names[static_cast<std::size_t>(states[i])];
    return s + "]";
}

Report machine_report(const DetTransducer& t, const Options& o, std::optional<int> initial = std::nullopt) {
    Report r;
    r.text = o.dot ? to_dot(t) : serialize(t, initial);
    r.data = {{"alphabet", t.n}, {"states", t.names}, {"machine", serialize(t, initial)}};
    return r;
}

Report machine_report(const NondetTransducer& t, const Options& o) {
    Report r;
    r.text = o.dot ? to_dot(t) : serialize(t);
    r.data = {{"alphabet", t.n}, {"states", t.names}, {"machine", serialize(t)}};
    return r;
}

Report pair_report(const Pair& p, const Options& o) {
    Report r = machine_report(p.machine, o);
    std::string a = "# annotation";
    for (int q = 0; q < p.machine.size(); ++q)
        a += " " + p.machine.names[static_cast<std::size_t>(q)] + "=" + std::to_string(p.alpha[static_cast<std::size_t>(q)]);
    if (!o.dot) r.text += a + "\n";
    r.data["annotation"] = p.alpha;
    return r;
}

Report line(const std::string& s, json data) { return {s + "\n", std::move(data)}; }

std::string membership_text(const Membership& m) {
    if (m.member) return "true";
    if (!m.witness.empty()) return "false (witness state " + m.witness + ")";
    return "false (" + m.reason + ")";
}

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw FormatError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Annotation parse_annotation(const std::string& s, const DetTransducer& t) {
    Annotation a;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            a.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw FormatError("bad annotation entry '" + tok + "'");
        }
    }
    if (static_cast<int>(a.size()) != t.size()) throw FormatError("annotation needs one entry per state");
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strongly synchronizing transducer workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    o.bound = -1;
    o.max_k = -1;
    app.add_flag("--json", o.json, "structured output");
    app.add_flag("--dot", o.dot, "emit machines as Graphviz DOT");
    app.add_option("--bound", o.bound, "remainder / path bound (default: derived from the machine, or $SST_BOUND)");
    app.add_option("--max-k", o.max_k, "synchronization level cap (default: |Q|^2, or $SST_MAX_K)");

    std::function<Report()> run;
    std::string file, file2, state, seq, alpha, group, spec, a_word, b_word;
    int k = 1, r = 1, d = 2, e = 1, n = 2, l = 3, maxlen = 6, count = 1, depth = -1, criterion = 0;
    bool parallel = false;

    auto need_det = [&](const std::string& path) { return load_det(path); };

    auto* c = app.add_subcommand("validate", "parse and check a machine");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            ParsedMachine pm = load_machine(file);
            const int states = pm.nondet ? pm.nd.size() : pm.det.size();
            const int alph = pm.nondet ? pm.nd.n : pm.det.n;
            std::string kind = pm.nondet ? "nondeterministic" : "deterministic";
            return line("valid: n=" + std::to_string(alph) + " states=" + std::to_string(states) + " " + kind,
                        {{"valid", true}, {"alphabet", alph}, {"states", states}, {"kind", kind}});
        };
    });

    c = app.add_subcommand("minimize", "minimal representative");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            Minimized m = minimize(need_det(file));
            if (m.is_zx()) return line("Z_x x=" + to_string(m.zx->x), {{"zx", to_string(m.zx->x)}});
            return machine_report(*m.machine, o);
        };
    });

    c = app.add_subcommand("product", "minimal Core(A*B): A first, then B");
    c->add_option("a", file)->required();
    c->add_option("b", file2)->required();
    c->callback([&] { run = [&] { return machine_report(multiply(need_det(file), need_det(file2)), o); }; });

    c = app.add_subcommand("invert", "inverse machine");
    c->add_option("file", file)->required();
    c->callback([&] { run = [&] { return machine_report(invert(need_det(file), o.bound), o); }; });

    c = app.add_subcommand("sync", "synchronization level and core");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            ParsedMachine pm = load_machine(file);
            if (pm.nondet) {
                NdCircuitCheck ch = nd_circuit_check(pm.nd, o.bound);
                json j = {{"ok", ch.ok}, {"verified_up_to", ch.verified_up_to}};
                if (!ch.ok) {
                    j["witness"] = to_string(ch.witness);
                    j["circuits"] = ch.circuits;
                    throw DomainError("circuit count " + std::to_string(ch.circuits) + " at " + to_string(ch.witness));
                }
                return line("circuits=ok up_to=" + std::to_string(ch.verified_up_to), j);
            }
            SyncResult s = sync_level(pm.det, o.max_k);
            if (!s.synchronizing) throw DomainError("not synchronizing (cycle through " + names_list(pm.det, s.witness) + ")");
            std::vector<std::string> core_names;
            for (int q : s.core) core_names.push_back(pm.det.names[static_cast<std::size_t>(q)]);
            return line("level=" + std::to_string(s.level) + " core_states=" + names_list(pm.det, s.core),
                        {{"level", s.level}, {"core_states", core_names}});
        };
    });

    c = app.add_subcommand("core", "restriction to the core");
    c->add_option("file", file)->required();
    c->callback([&] { run = [&] { return machine_report(core(need_det(file)), o); }; });

    c = app.add_subcommand("image", "reduced antichain of a state's image");
    c->add_option("file", file)->required();
    c->add_option("state", state)->required();
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            const int q = t.index_of(state);
            if (q < 0) throw FormatError("unknown state " + state);
            Antichain a = image_antichain(t, q);
            std::vector<std::string> words;
            for (const auto& w : a.words) words.push_back(to_string(w));
            return line(to_string(a), {{"state", state}, {"antichain", words}});
        };
    });

    c = app.add_subcommand("sig", "cone-count signature mod n-1");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            const int s = sig(t);
            return line("sig = " + std::to_string(s) + " (mod " + std::to_string(t.n - 1) + ")", {{"sig", s}, {"modulus", t.n - 1}});
        };
    });

    c = app.add_subcommand("sigw", "signature in M_n");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            MnElement m = sig_omega(need_det(file));
            return line("sig_omega = " + m.str(), {{"sig_omega", m.str()}, {"exponents", m.v}, {"order", m.order()}});
        };
    });

    c = app.add_subcommand("sigk", "level-k signature of an annotated machine");
    c->add_option("file", file)->required();
    c->add_option("--k", k)->required()->check(CLI::PositiveNumber);
    c->add_option("--alpha", alpha, "comma-separated annotation in state order (default 0)");
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            Annotation a = alpha.empty() ? Annotation(static_cast<std::size_t>(t.size()), 0) : parse_annotation(alpha, t);
            const long long v = sig_k(t, a, k);
            long long m = 1;
            for (int i = 0; i < k; ++i) m *= t.n;
            return line("sig_" + std::to_string(k) + " = " + std::to_string(v) + " (mod " + std::to_string(m - 1) + ")",
                        {{"k", k}, {"sig_k", v}, {"modulus", m - 1}});
        };
    });

    c = app.add_subcommand("member", "group membership test");
    c->add_option("file", file)->required();
    c->add_option("--group", group)->required()->check(CLI::IsMember({"On", "Onr", "Ln", "Kn", "Dn"}));
    c->add_option("--r", r, "r for On,r");
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            Membership m = group == "On"    ? in_On(t)
                           : group == "Onr" ? in_Onr(t, r)
                           : group == "Ln"  ? in_Ln(t)
                           : group == "Kn"  ? in_Kn(t)
                                            : in_Dn(t);
            return line(membership_text(m), {{"group", group}, {"member", m.member}, {"reason", m.reason}, {"witness", m.witness}});
        };
    });

    c = app.add_subcommand("gen", "generator T(d,e) over n = d*e letters");
    c->add_option("--d", d)->required();
    c->add_option("--e", e)->required();
    c->callback([&] { run = [&] { return machine_report(generator(d * e, d, e), o); }; });

    c = app.add_subcommand("rev", "time-reversed non-deterministic machine");
    c->add_option("file", file)->required();
    c->callback([&] { run = [&] { return machine_report(rev(need_det(file)), o); }; });

    c = app.add_subcommand("rec", "deterministic reconstruction of a non-deterministic machine");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            ParsedMachine pm = load_machine(file);
            return machine_report(rec(pm.nondet ? pm.nd : as_nondet(pm.det), o.bound), o);
        };
    });

    c = app.add_subcommand("revaut", "reverse-arrows automorphism");
    c->add_option("file", file)->required();
    c->callback([&] { run = [&] { return machine_report(rev_automorphism(need_det(file)), o); }; });

    c = app.add_subcommand("revsig", "signature after reversal");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            const int s = rev_sig(t);
            return line("rev_sig = " + std::to_string(s) + " (mod " + std::to_string(t.n - 1) + ")", {{"rev_sig", s}, {"modulus", t.n - 1}});
        };
    });

    c = app.add_subcommand("probe-q1", "compare rev_sig(T) with sig(T^-1)");
    c->add_option("file", file)->required();
    c->callback([&] {
        run = [&] {
            ProbeQ1 p = probe_q1(need_det(file));
            return line("rev_sig = " + std::to_string(p.rev_sig) + ", sig(inverse) = " + std::to_string(p.inverse_sig) + ": " +
                            (p.agree() ? "agree" : "differ"),
                        {{"rev_sig", p.rev_sig}, {"inverse_sig", p.inverse_sig}, {"agree", p.agree()}});
        };
    });

    c = app.add_subcommand("apply", "act on an eventually periodic bi-infinite sequence");
    c->add_option("file", file)->required();
    c->add_option("--seq", seq, "\"(u)^-inf . v . (w)^inf @ t\"")->required();
    c->add_option("--alpha", alpha, "annotation (default: canonical)");
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            Annotation a = alpha.empty() ? canonical_annotation(t) : parse_annotation(alpha, t);
            if (!is_annotation(t, a)) throw DomainError("not an annotation of the machine");
            BiInfiniteSeq y = apply(Pair{t, a}, parse_seq(seq));
            return line(y.str(), {{"input", seq}, {"output", y.str()}});
        };
    });

    c = app.add_subcommand("pi", "action on rotation classes of prime words");
    c->add_option("file", file)->required();
    c->add_option("--maxlen", maxlen)->check(CLI::Range(1, 12));
    c->callback([&] {
        run = [&] {
            auto pi = pi_action(need_det(file), maxlen);
            Report rep;
            rep.data["action"] = json::object();
            for (const auto& [g, img] : pi) {
                rep.text += "[" + to_string(g) + "] -> [" + to_string(img) + "]\n";
                rep.data["action"][to_string(g)] = to_string(img);
            }
            return rep;
        };
    });

    c = app.add_subcommand("marker", "marker automorphism of a word pair");
    c->add_option("--a", a_word)->required();
    c->add_option("--b", b_word)->required();
    c->add_option("--n", n, "alphabet size")->check(CLI::Range(2, 16));
    c->callback([&] {
        run = [&] {
            MarkerPair p{n, parse_word(a_word), parse_word(b_word)};
            Check ch = validate_marker_pair(n, p.a, p.b);
            if (!ch.ok) throw DomainError("invalid marker pair: " + ch.reason);
            return pair_report(marker_automorphism(p), o);
        };
    });

    c = app.add_subcommand("marker-search", "first valid marker pairs of length l");
    c->add_option("--l", l)->required()->check(CLI::Range(2, 8));
    c->add_option("--n", n)->check(CLI::Range(2, 16));
    c->add_option("--count", count)->check(CLI::PositiveNumber);
    c->callback([&] {
        run = [&] {
            auto ps = search_marker_pairs(n, l, static_cast<std::size_t>(count));
            if (ps.empty()) throw DomainError("no marker pair of length " + std::to_string(l));
            Report rep;
            rep.data["pairs"] = json::array();
            for (const auto& p : ps) {
                rep.text += to_string(p.a) + " " + to_string(p.b) + "\n";
                rep.data["pairs"].push_back({to_string(p.a), to_string(p.b)});
            }
            return rep;
        };
    });

    c = app.add_subcommand("conveyor", "conveyor-belt automorphism from a spec file");
    c->add_option("--spec", spec)->required();
    c->callback([&] {
        run = [&] {
            ConveyorSystem cs = parse_conveyor(read_file(spec));
            Check ch = validate_conveyor(cs);
            if (!ch.ok) throw DomainError("invalid conveyor system: " + ch.reason);
            return pair_report(conveyor_automorphism(cs), o);
        };
    });

    c = app.add_subcommand("lift", "lift a D_n element to the r-rooted space");
    c->add_option("file", file)->required();
    c->add_option("--r", r)->required();
    c->add_option("--depth", depth, "cylinder depth for the bijectivity check (default: sync level + 2)");
    c->callback([&] {
        run = [&] {
            DetTransducer t = need_det(file);
            RootedLift L = lift_to_initial(t, r);
            const int dp = depth >= 0 ? depth : sync_level(t, o.max_k).level + 2;
            Check b = check_lift_bijective(L, dp);
            if (!b.ok) throw DomainError("lift is not bijective: " + b.reason);
            Report rep = machine_report(L.body.base, o, L.body.initial);
            if (!o.dot) rep.text += "# roots " + std::to_string(r) + ", bijective on cylinders of depth " + std::to_string(dp) + "\n";
            rep.data["roots"] = r;
            rep.data["bijective_depth"] = dp;
            return rep;
        };
    });

    c = app.add_subcommand("suite", "run the acceptance criteria");
    c->add_flag("--parallel", parallel, "run criteria concurrently");
    c->add_option("--criterion", criterion, "run a single criterion")->check(CLI::Range(1, 11));
    c->callback([&] {
        run = [&] {
            auto res = criterion ? std::vector<CriterionResult>{run_criterion(criterion)} : run_acceptance(parallel);
            Report rep;
            rep.data["criteria"] = json::array();
            bool all = true;
            for (const auto& cr : res) {
                rep.text += std::string(cr.pass ? "PASS" : "FAIL") + " " + std::to_string(cr.id) + " " + cr.title + ": " + cr.detail + "\n";
                rep.data["criteria"].push_back({{"id", cr.id}, {"title", cr.title}, {"pass", cr.pass}, {"detail", cr.detail}});
                all = all && cr.pass;
            }
            if (!all) {
                std::cout << (o.json ? rep.data.dump(2) + "\n" : rep.text);
                throw DomainError("acceptance criteria failed");
            }
            return rep;
        };
    });

    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a.empty() || a[0] == '-') continue;
        try {
            app.get_subcommand(a);
        } catch (const CLI::OptionNotFound&) {
            std::cerr << "unknown verb '" << a << "'\n";
            return 2;
        }
        break;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (o.bound < 0) o.bound = env_int("SST_BOUND", -1);
        if (o.max_k < 0) o.max_k = env_int("SST_MAX_K", -1);
        Report rep = run();
        if (o.json)
            std::cout << rep.data.dump(2) << "\n";
        else
            std::cout << rep.text;
        return 0;
    } catch (const FormatError& err) {
        std::cerr << "format error: " << err.what() << "\n";
        return 2;
    } catch (const DomainError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
