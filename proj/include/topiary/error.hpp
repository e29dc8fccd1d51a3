#pragma once

#include <stdexcept>
#include <string>

namespace topiary {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IngestError : public Error {
 public:
  using Error::Error;
};

class EmptyCorpusError : public IngestError {
 public:
  using IngestError::IngestError;
};

class TrainError : public Error {
 public:
  using Error::Error;
};

class TagError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class HashMismatchError : public Error {
 public:
  using Error::Error;
};

/// Raised when the subsumption graph is not a DAG (only reachable when
/// the upper threshold is relaxed below 1).
class CycleError : public Error {
 public:
  using Error::Error;
};

}  // namespace topiary
