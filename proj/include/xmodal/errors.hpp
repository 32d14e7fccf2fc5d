#pragma once

#include <stdexcept>
#include <string>

namespace xmodal {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix/vector dimensions do not line up. Message names both shapes.
struct ShapeError : Error {
    using Error::Error;
};

// A value is outside the operation's domain (negative counts, empty
// gallery, empty patch group, ...).
struct DomainError : Error {
    using Error::Error;
};

// Bad configuration or API usage: unknown keys, invalid hyperparameters,
// unknown modality tags, incompatible task requests.
struct ConfigError : Error {
    using Error::Error;
};

// Training produced a non-finite loss or parameter. Message carries the
// epoch (and phase, when known).
struct DivergenceError : Error {
    using Error::Error;
};

// Two row-aligned inputs disagree on row count.
struct PairingError : Error {
    using Error::Error;
};

// A text input file does not match its declared format. Message carries
// the offending line number.
struct FormatError : Error {
    using Error::Error;
};

// Input data violates a documented constraint (patch-count caps, split
// files that do not partition the instances, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Checkpoint with an unsupported format version.
struct VersionError : Error {
    using Error::Error;
};

// Checkpoint file truncated or otherwise unreadable.
struct CorruptionError : Error {
    using Error::Error;
};

// Evaluation could not produce a result (e.g. every query excluded).
struct EvalError : Error {
    using Error::Error;
};

// Prints a warning to stderr. Non-fatal issues only.
void warn(const std::string& message);

}  // namespace xmodal
