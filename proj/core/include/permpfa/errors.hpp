#pragma once

#include <stdexcept>
#include <string>

namespace permpfa {

// Base class for every error raised by the library. The CLI maps these to
// exit code 1 with a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// A cycle among useful states: the language is infinite.
class CyclicLanguage : public Error {
 public:
  using Error::Error;
};

class EmptyLanguage : public Error {
 public:
  using Error::Error;
};

class UselessState : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class UnderpoweredTest : public Error {
 public:
  using Error::Error;
};

}  // namespace permpfa
