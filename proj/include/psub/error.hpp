#ifndef PSUB_ERROR_HPP
#define PSUB_ERROR_HPP

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace psub
{

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define PSUB_DEFINE_ERROR(name)                                                \
  class name : public Error                                                    \
  {                                                                            \
  public:                                                                      \
    using Error::Error;                                                        \
  };

PSUB_DEFINE_ERROR(OrderLimitExceeded)
PSUB_DEFINE_ERROR(PrimeDoesNotDivide)
PSUB_DEFINE_ERROR(EmptyFamily)
PSUB_DEFINE_ERROR(EmptyPoset)
PSUB_DEFINE_ERROR(NotReducedLattice)
PSUB_DEFINE_ERROR(NeitherAtomicNorCoatomic)
PSUB_DEFINE_ERROR(SizeLimitExceeded)
PSUB_DEFINE_ERROR(MissingAction)
PSUB_DEFINE_ERROR(DimensionOutOfRange)
PSUB_DEFINE_ERROR(EmptyComplex)
PSUB_DEFINE_ERROR(DegreeMismatch)
PSUB_DEFINE_ERROR(InvariantViolation)
PSUB_DEFINE_ERROR(Timeout)

#undef PSUB_DEFINE_ERROR

class ParseError : public Error
{
public:
  ParseError(std::string const &what, std::size_t line, std::size_t column)
  : Error("line " + std::to_string(line) + ", column " + std::to_string(column) +
          ": " + what),
    line_(line), column_(column)
  {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

namespace detail
{

struct DeadlineState
{
  std::optional<std::chrono::steady_clock::time_point> at;
  unsigned countdown = 0;
};

inline DeadlineState &deadline_state()
{
  thread_local DeadlineState state;
  return state;
}

} // namespace detail

/// Installs a per-thread wall-clock budget for the enclosed computation.
/// Long-running loops call poll_deadline(), which throws Timeout once the
/// budget is spent. Nesting restores the outer deadline on exit.
class ScopedDeadline
{
public:
  explicit ScopedDeadline(std::chrono::duration<double> budget)
  : saved_(detail::deadline_state().at)
  {
    detail::deadline_state().at =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(budget);
    detail::deadline_state().countdown = 0;
  }

  ScopedDeadline(ScopedDeadline const &) = delete;
  ScopedDeadline &operator=(ScopedDeadline const &) = delete;

  ~ScopedDeadline() { detail::deadline_state().at = saved_; }

private:
  std::optional<std::chrono::steady_clock::time_point> saved_;
};

inline void poll_deadline()
{
  auto &state = detail::deadline_state();
  if (!state.at)
    return;
  if (state.countdown-- != 0)
    return;
  state.countdown = 1024;
  if (std::chrono::steady_clock::now() > *state.at)
    throw Timeout("wall-clock budget exceeded");
}

} // namespace psub

#endif // PSUB_ERROR_HPP
