#pragma once

#include "sst/transducer.hpp"

#include <optional>
#include <string>

namespace sst {

// Text format, one directive per line, '#' starts a comment:
//   alphabet <n>
//   states <id> <id> ...
//   initial <id>                      (optional)
//   edge <src> <letter> <dst> <word>  (deterministic)
//   ndedge <src> <word> <dst> <word>  (non-deterministic)
// Words are comma-separated letters, "-" for the empty word.
struct ParsedMachine {
    bool nondet = false;
    DetTransducer det;
    NondetTransducer nd;
    std::optional<int> initial;
};

ParsedMachine parse_machine(const std::string& text);
ParsedMachine load_machine(const std::string& path);
DetTransducer load_det(const std::string& path);

std::string serialize(const DetTransducer& t, std::optional<int> initial = std::nullopt);
std::string serialize(const NondetTransducer& t);
std::string to_dot(const DetTransducer& t);
std::string to_dot(const NondetTransducer& t);

} // namespace sst
