#pragma once

#include "sst/transducer.hpp"

#include <map>
#include <memory>
#include <utility>
#include <vector>

namespace sst {

// Pairwise prefix-incomparable words; reduced when no word has all n
// one-letter extensions present.
struct Antichain {
    std::vector<Word> words;
    int depth() const;
};
Antichain reduce_antichain(std::vector<Word> words, int n);
std::string to_string(const Antichain& a);

// A finite graph whose edges carry words; the set of infinite label
// sequences leaving a state is what the analyzer studies.  Used with output
// labels (images) and with input labels (domains).
struct LabelGraph {
    int n = 2;
    int states = 0;
    struct Edge {
        int dst;
        Word label;
    };
    std::vector<std::vector<Edge>> adj;
};
LabelGraph output_graph(const DetTransducer& t);
LabelGraph output_graph(const NondetTransducer& t);
LabelGraph input_graph(const NondetTransducer& t);

// Subset construction over positions inside edge labels.  A subset is
// universal when no extension empties it, i.e. the whole cone lies in the
// set of label sequences.
class ConeAnalyzer {
public:
    explicit ConeAnalyzer(LabelGraph g, std::size_t cap = 2'000'000);

    // Some infinite label sequence from `state` begins with w.
    bool readable(int state, const Word& w);
    // Every sequence beginning with w is a label sequence from `state`.
    bool covers(int state, const Word& w);
    // Minimal cone cover of the label sequences from `state`.  Throws
    // DomainError when the set is not clopen.
    Antichain cover(int state);

    const LabelGraph& graph() const { return g_; }

private:
    using Node = std::vector<int>;
    int intern(Node s);
    int start(int state);
    int step(int node, Letter c);
    bool universal(int node);

    LabelGraph g_;
    std::size_t cap_;
    std::vector<int> edge_base_;
    std::vector<std::pair<int, int>> pos_;  // position -> (state, edge index)
    std::vector<int> pos_offset_;
    std::vector<std::vector<int>> closure_;  // first-letter positions after eps moves
    std::map<Node, int> ids_;
    std::vector<Node> nodes_;
    std::vector<std::vector<int>> trans_;
    std::vector<signed char> status_;  // -1 unknown, 0 not universal, 1 universal
};

Antichain image_antichain(const DetTransducer& t, int q);

// (s, D): s cones of depth D tile the image of q.
struct ConeCount {
    long long s = 0;
    int depth = 0;
};
ConeCount uniform_cone_count(const Antichain& a, int n);
ConeCount uniform_cone_count(const DetTransducer& t, int q);

int default_remainder_bound(const DetTransducer& t);

// (w)L_q: the longest input prefix common to every input whose output lies
// in U_w.  Requires U_w inside the image of q.
Word remainder_L(const DetTransducer& t, int q, const Word& w, int bound = -1);
Word remainder_L(ConeAnalyzer& img, const DetTransducer& t, int q, const Word& w, int bound);

// The machine on pairs (w, q) with U_w in im(q) and (w)L_q empty, core only.
DetTransducer inverse_construction(const DetTransducer& t, int bound = -1);
// Minimal representative of the inverse.
DetTransducer invert(const DetTransducer& t, int bound = -1);

bool is_homeomorphism_state(const DetTransducer& t, int q);
bool is_automaton_invertible(const DetTransducer& t);

} // namespace sst
