#pragma once

#include <stdexcept>
#include <string>

namespace supercap {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A word does not fit its cell at one pixel per glyph.
class LayoutInfeasible : public Error {
 public:
  using Error::Error;
};

class OutOfVocabulary : public Error {
 public:
  explicit OutOfVocabulary(const std::string& token)
      : Error("token not in vocabulary: '" + token + "'"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

class ImageDecodeError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Errors that abort a caption decode: anything wrong with the classifier side.
class ClassifierError : public Error {
 public:
  using Error::Error;
};

class TransportError : public ClassifierError {
 public:
  using ClassifierError::ClassifierError;
};

class ProtocolError : public ClassifierError {
 public:
  using ClassifierError::ClassifierError;
};

class TimeoutError : public ClassifierError {
 public:
  using ClassifierError::ClassifierError;
};

/// A classifier returned a class index outside the vocabulary.
class IndexOutOfRange : public ClassifierError {
 public:
  using ClassifierError::ClassifierError;
};

}  // namespace supercap
