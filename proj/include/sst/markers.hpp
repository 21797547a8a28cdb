#pragma once

#include "sst/dynamics.hpp"
#include "sst/transducer.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sst {

struct Check {
    bool ok = true;
    std::string reason;
};

struct MarkerPair {
    int n = 2;
    Word a, b;
};
// a != b, |a| = |b| >= 2, and in each of aa, ab, ba, bb the words a and b
// occur only at offsets 0 and l.
Check validate_marker_pair(int n, const Word& a, const Word& b);
// Lexicographically first pairs (a < b) of length l.
std::vector<MarkerPair> search_marker_pairs(int n, int l, std::size_t count);
std::optional<MarkerPair> search_marker_pair(int n, int l);

// Direct evaluation on a finite word: every block c3 with two {a,b}
// blocks on each side is swapped.  Positions lacking context are copied.
Word marker_image(const MarkerPair& p, const Word& x);
BiInfiniteSeq marker_apply(const MarkerPair& p, const BiInfiniteSeq& x);
Pair marker_automorphism(const MarkerPair& p);

// Map on runs u_1..u_k (letters indexed into U).
struct ConveyorRule {
    enum class Kind { Perm, Local, Composite } kind = Kind::Perm;
    std::vector<int> perm;      // Perm
    int delta = 0;              // Local: window u_(i-delta)..u_(i+delta)
    std::vector<int> table;     // Local: base |U|+1 windows, |U| is '#'
    std::vector<ConveyorRule> parts;  // Composite: applied in order

    std::vector<int> apply(const std::vector<int>& u, int alphabet) const;
    int radius() const;
};
ConveyorRule perm_rule(std::vector<int> perm);
// table entries for every window; windows with a '#' centre are ignored.
ConveyorRule local_rule(int alphabet, int delta, const std::function<int(const std::vector<int>&)>& f);

struct ConveyorSystem {
    int n = 2;
    Word w;
    std::vector<Word> U;
    ConveyorRule rule;
};
Check validate_conveyor(const ConveyorSystem& c, int k_check = 4);
Word conveyor_image(const ConveyorSystem& c, const Word& x);
BiInfiniteSeq conveyor_apply(const ConveyorSystem& c, const BiInfiniteSeq& x);
// a, then b (same w and U).
ConveyorSystem conveyor_compose(const ConveyorSystem& a, const ConveyorSystem& b);
Pair conveyor_automorphism(const ConveyorSystem& c);
// Text: "alphabet n", "w <word>", "U <word> <word> ...", then either
// "rule perm i j ..." or "rule local <delta>" followed by
// "map <tokens> -> <v>" lines (tokens are U indices or '#'; unlisted
// windows keep their centre).
ConveyorSystem parse_conveyor(const std::string& text);

// Local rule read off a finite-word evaluator.  The radius grows from
// r_start until every window value is stable under all extensions by
// `ext` letters on either side.  `ext` must cover the longest pattern the
// evaluator needs to recognise beyond a window.
LocalRule extract_rule(int n, const std::function<Word(const Word&)>& image, int r_start, int r_max, int ext = 1);

// Lift of a D_n element to the r-rooted Cantor space: a root letter in
// 0..r-1 passes through unchanged, then the minimal initial machine runs.
struct RootedLift {
    int r = 1;
    InitialDetTransducer body;
};
RootedLift lift_to_initial(const DetTransducer& d, int r);
RootedLift lift_product(const RootedLift& a, const RootedLift& b);
bool lift_equal(const RootedLift& a, const RootedLift& b);
bool lift_is_identity(const RootedLift& a);
// Images of the depth-`depth` cylinders are disjoint cone unions of total
// measure r.
Check check_lift_bijective(const RootedLift& a, int depth);

} // namespace sst
