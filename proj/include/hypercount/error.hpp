#ifndef HYPERCOUNT_ERROR_HPP
#define HYPERCOUNT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hypercount {

// Base of every error the library throws.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A query whose arguments are outside the operation's domain.
struct invalid_query : error {
    using error::error;
};

// A malformed ordering, hypergraph, partition or pattern.
struct invalid_structure : error {
    using error::error;
};

// A vertex count is not divisible by what the structure requires.
struct divisibility_error : error {
    using error::error;
};

// Parameters for which no object with the requested invariants exists.
struct construction_error : error {
    using error::error;
};

// An exhaustive search ran out of its node budget. Never carries a partial
// result: anything computed before the throw is discarded.
struct budget_exhausted : error {
    using error::error;
};

// File or stream problems; messages carry the path or line.
struct io_error : error {
    using error::error;
};

} // namespace hypercount

#endif // HYPERCOUNT_ERROR_HPP
