#pragma once

#include <stdexcept>
#include <string>

namespace entrank {

/// Malformed or inconsistent input file (corpus, topic, qrels, run).
struct LoadError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lookup of an id that does not resolve in the corpus or category graph.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated an operation precondition (negative scores, empty
/// denominator set, invalid fusion weights).
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace entrank
