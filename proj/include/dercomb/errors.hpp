#pragma once

#include <stdexcept>
#include <string>

namespace dercomb {

/// Malformed input: unknown labels, duplicate names, bad dimensions.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A category, functor or transformation law fails; what() names the witness.
class LawViolation : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A construction was asked for more simplicial dimensions than its input has.
class TruncationError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Isomorphism search refused because a level is larger than the search bound.
class SearchBoundExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace dercomb
