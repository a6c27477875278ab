#ifndef FORCING_ERRORS_HPP
#define FORCING_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace forcing {

/// Malformed input: bad literal, unknown label, parse failure, unresolved name.
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Syntax error in formula or HF literal text; `position` is a byte offset.
class parse_error : public input_error {
public:
  parse_error(const std::string& what, std::size_t position)
      : input_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// An operation's precondition does not hold (non-separative poset, mixed
/// algebras, set that is not an ideal, ...). `witness` names the offending
/// data when there is one.
class precondition_error : public std::logic_error {
public:
  explicit precondition_error(const std::string& what, std::string witness = {})
      : std::logic_error(what), witness_(std::move(witness)) {}

  const std::string& witness() const noexcept { return witness_; }

private:
  std::string witness_;
};

/// A dense-set oracle broke its refine contract.
class oracle_error : public std::runtime_error {
public:
  oracle_error(const std::string& what, std::size_t oracle_index, std::string oracle_name)
      : std::runtime_error(what), index_(oracle_index), name_(std::move(oracle_name)) {}

  std::size_t oracle_index() const noexcept { return index_; }
  const std::string& oracle_name() const noexcept { return name_; }

private:
  std::size_t index_;
  std::string name_;
};

} // namespace forcing

#endif
