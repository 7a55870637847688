#pragma once

#include <stdexcept>
#include <string>

namespace indexcode {

// Base for every error the library reports about caller-supplied input.
// The CLI maps this family to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A packet id appears in both the have and the want set of one user.
class OverlapError : public Error {
 public:
  using Error::Error;
};

// A packet has no want link.
class OrphanPacketError : public Error {
 public:
  using Error::Error;
};

// A user, packet, or traffic-type id is out of range.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A cycle leg's traffic type does not connect the cycle's users.
class LegMismatchError : public Error {
 public:
  using Error::Error;
};

// Three traffic types do not form the A+B+C double-cycle pattern.
class PatternMismatchError : public Error {
 public:
  using Error::Error;
};

// Some destination cannot reconstruct its packet from the broadcast messages.
class DecodeFailure : public Error {
 public:
  using Error::Error;
};

// An exhaustive search was asked to run above its configured size cap.
class SizeCapError : public Error {
 public:
  using Error::Error;
};

// A special-case clearance formula was called outside its hypothesis.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class TemplateActionError : public Error {
 public:
  using Error::Error;
};

}  // namespace indexcode
