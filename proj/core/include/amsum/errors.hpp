#ifndef AMSUM_ERRORS_HPP
#define AMSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace amsum {

// Base type for all library errors so callers can catch one thing at the
// process boundary and map it to an exit code.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Tensor shape disagreement.
class DimensionError : public Error {
public:
    using Error::Error;
};

// Bad argument value (empty input, invalid distribution, bad ratio, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Out-of-range index into a distribution or id space.
class IndexError : public Error {
public:
    using Error::Error;
};

// Invalid UTF-8; message carries the byte offset.
class EncodingError : public Error {
public:
    using Error::Error;
};

// Corpus-level problems: empty corpus, too few examples, bad example.
class CorpusError : public Error {
public:
    using Error::Error;
};

// An example was rejected during encoding (empty article or title).
class ExampleRejectedError : public CorpusError {
public:
    using CorpusError::CorpusError;
};

// Malformed on-disk artifact (vocab, embedding, checkpoint, corpus file).
class FormatError : public Error {
public:
    using Error::Error;
};

// Inconsistent configuration (vocab/checkpoint mismatch, bad field combo).
class ConfigError : public Error {
public:
    using Error::Error;
};

// A decay schedule that would not decay.
class ScheduleError : public Error {
public:
    using Error::Error;
};

// The loss function handed to the gradient checker is not deterministic.
class DeterminismError : public Error {
public:
    using Error::Error;
};

// Zero-norm vector where a direction is required.
class DegenerateVectorError : public Error {
public:
    using Error::Error;
};

// Filesystem failures (missing file, failed write).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace amsum

#endif  // AMSUM_ERRORS_HPP
