#pragma once

#include <stdexcept>
#include <string>

namespace parskew {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-layer failures (bad files, malformed rationals, unknown keys).
struct ParseError : Error {
    using Error::Error;
};

// Element/shape misuse of an algebra operation.
struct InvalidElement : Error {
    using Error::Error;
};

struct NotCentralIdempotent : Error {
    using Error::Error;
};

struct NotASubring : Error {
    using Error::Error;
};

struct EmptyObjectSet : Error {
    using Error::Error;
};

struct UnknownObject : Error {
    using Error::Error;
};

struct NotConnected : Error {
    using Error::Error;
};

// A groupoid table that fails closure or an axiom; carries a witness string.
struct GroupoidAxiomViolation : Error {
    GroupoidAxiomViolation(const std::string& what, std::string witness_)
        : Error(what + " [witness: " + witness_ + "]"), witness(std::move(witness_)) {}
    std::string witness;
};

struct PartialActionAxiomViolation : Error {
    PartialActionAxiomViolation(std::string axiom_, const std::string& what, std::string witness_)
        : Error("axiom " + axiom_ + ": " + what + " [witness: " + witness_ + "]"),
          axiom(std::move(axiom_)),
          witness(std::move(witness_)) {}
    std::string axiom;
    std::string witness;
};

// Violations that indicate corrupted inputs slipped past validation.
struct AssociativityFailure : Error {
    using Error::Error;
};

struct CentralityFailure : Error {
    using Error::Error;
};

struct IsoFailure : Error {
    IsoFailure(int step_, const std::string& what) : Error("step " + std::to_string(step_) + ": " + what), step(step_) {}
    int step;
};

struct FrobeniusVerificationFailure : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

}  // namespace parskew
