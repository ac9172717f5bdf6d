// errors.hpp -- exception types thrown across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace resgame {

// Input graph (or subgraph) must be connected for this operation.
struct DisconnectedInput : std::invalid_argument {
    explicit DisconnectedInput(const std::string& what) : std::invalid_argument(what) {}
};

// Edge count exceeds the exhaustive-enumeration guard.
struct TooLarge : std::invalid_argument {
    explicit TooLarge(const std::string& what) : std::invalid_argument(what) {}
};

// Requested connectivity target cannot be reached from the given state.
struct InvalidTarget : std::invalid_argument {
    explicit InvalidTarget(const std::string& what) : std::invalid_argument(what) {}
};

// Attack/defense pair violates the containment rule (m_D <= m_A).
struct InvalidPair : std::invalid_argument {
    explicit InvalidPair(const std::string& what) : std::invalid_argument(what) {}
};

// Stage solver handed a table with no entries.
struct EmptyTable : std::invalid_argument {
    explicit EmptyTable(const std::string& what) : std::invalid_argument(what) {}
};

// Timeline generation produced a game of nonpositive length.
struct StallGuard : std::logic_error {
    explicit StallGuard(const std::string& what) : std::logic_error(what) {}
};

// A span that must be positive (e.g. the simulation horizon) is not.
struct NonPositiveDuration : std::invalid_argument {
    explicit NonPositiveDuration(const std::string& what) : std::invalid_argument(what) {}
};

// State vector size disagrees with the vertex count.
struct DimensionMismatch : std::invalid_argument {
    explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Initial state already within the consensus threshold.
struct AlreadyConsensus : std::invalid_argument {
    explicit AlreadyConsensus(const std::string& what) : std::invalid_argument(what) {}
};

// Config or parameter value outside its documented range.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace resgame
