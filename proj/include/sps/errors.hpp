#ifndef SPS_ERRORS_HPP
#define SPS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sps {

enum class ErrorKind {
    BadVertexId,
    DuplicateArc,
    LoopForbidden,
    ArcNotFound,
    NotADag,
    OverlappingSets,
    NotAPartition,
    GuardViolation,
    TooLarge,
    PatternTooLarge,
    InvalidDecomposition,
    NoDecomposition,
    ArcFromBToA,
    BadRequest,
    HasLoops,
    BadPairs,
    BadPartition,
    NotTwoTwo,
    TooFewEdges,
    Parse,
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace sps

#endif
