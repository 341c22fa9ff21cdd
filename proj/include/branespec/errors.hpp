#pragma once

#include <stdexcept>
#include <string>

namespace branespec {

/// Broad error classes. The CLI maps each class to its own exit code.
enum class ErrorClass { schema = 2, domain = 3, resource = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), class_(cls), name_(std::move(name)) {}

  ErrorClass error_class() const noexcept { return class_; }
  const std::string& name() const noexcept { return name_; }
  int exit_code() const noexcept { return static_cast<int>(class_); }

 private:
  ErrorClass class_;
  std::string name_;
};

/// Malformed input: wrong lengths, bad indices, non-primitive rays, missing fields.
class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what, std::string name = "SchemaError")
      : Error(ErrorClass::schema, std::move(name), what) {}
};

class InvalidFan : public SchemaError {
 public:
  explicit InvalidFan(const std::string& what) : SchemaError(what, "InvalidFan") {}
};

class DimensionMismatch : public SchemaError {
 public:
  explicit DimensionMismatch(const std::string& what) : SchemaError(what, "DimensionMismatch") {}
};

/// Well-formed input that violates a mathematical precondition.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what, std::string name = "DomainError")
      : Error(ErrorClass::domain, std::move(name), what) {}
};

class UnboundedChamber : public DomainError {
 public:
  explicit UnboundedChamber(const std::string& what) : DomainError(what, "UnboundedChamber") {}
};

class PoleError : public DomainError {
 public:
  PoleError(const std::string& what, std::size_t fixed_point, std::size_t weight)
      : DomainError(what, "PoleError"), fixed_point_(fixed_point), weight_(weight) {}
  std::size_t fixed_point() const noexcept { return fixed_point_; }
  std::size_t weight() const noexcept { return weight_; }

 private:
  std::size_t fixed_point_;
  std::size_t weight_;
};

/// Exceeded a configured enumeration or subset cap.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what, std::string name = "ResourceError")
      : Error(ErrorClass::resource, std::move(name), what) {}
};

class SubsetBlowup : public ResourceError {
 public:
  explicit SubsetBlowup(const std::string& what) : ResourceError(what, "SubsetBlowup") {}
};

}  // namespace branespec
