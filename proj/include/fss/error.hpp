#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fss {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input data or arguments violate a contract. The CLI maps these to exit code 1.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures. The CLI maps these to exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

class MalformedRow : public ValidationError {
 public:
  MalformedRow(std::string source, std::int64_t line, std::string reason)
      : ValidationError(source + ":" + std::to_string(line) + ": " + reason),
        source_(std::move(source)),
        line_(line),
        reason_(std::move(reason)) {}

  const std::string& source() const { return source_; }
  std::int64_t line() const { return line_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string source_;
  std::int64_t line_;
  std::string reason_;
};

class DuplicateId : public ValidationError {
 public:
  explicit DuplicateId(std::string id)
      : ValidationError("DuplicateId(\"" + id + "\")"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class YearOutOfWindow : public ValidationError {
 public:
  YearOutOfWindow(std::string pub_id, int year)
      : ValidationError("YearOutOfWindow(\"" + pub_id + "\", " + std::to_string(year) + ")"),
        pub_id_(std::move(pub_id)),
        year_(year) {}
  const std::string& pub_id() const { return pub_id_; }
  int year() const { return year_; }

 private:
  std::string pub_id_;
  int year_;
};

class EmptyByline : public ValidationError {
 public:
  explicit EmptyByline(std::string pub_id)
      : ValidationError("EmptyByline(\"" + pub_id + "\")"), pub_id_(std::move(pub_id)) {}
  const std::string& pub_id() const { return pub_id_; }

 private:
  std::string pub_id_;
};

class UnknownResearcher : public ValidationError {
 public:
  explicit UnknownResearcher(std::string id)
      : ValidationError("UnknownResearcher(\"" + id + "\")"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class MissingBaseline : public ValidationError {
 public:
  MissingBaseline(std::string field_id, int year)
      : ValidationError("MissingBaseline(\"" + field_id + "\", " + std::to_string(year) + ")"),
        field_id_(std::move(field_id)),
        year_(year) {}
  const std::string& field_id() const { return field_id_; }
  int year() const { return year_; }

 private:
  std::string field_id_;
  int year_;
};

class Unclassifiable : public ValidationError {
 public:
  explicit Unclassifiable(std::string id)
      : ValidationError("Unclassifiable(\"" + id + "\")"), id_(std::move(id)) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

class EmptyPortfolio : public ValidationError {
 public:
  EmptyPortfolio() : ValidationError("EmptyPortfolio") {}
};

class InvalidArgument : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace fss
