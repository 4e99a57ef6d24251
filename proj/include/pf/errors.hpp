#ifndef PF_ERRORS_HPP
#define PF_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pf {

// Every failure raised by the library derives from Error.
struct Error : std::runtime_error
{
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define PF_DEFINE_ERROR(Name)                                        \
  struct Name : Error                                                \
  {                                                                  \
    using Error::Error;                                              \
    const char* kind() const noexcept override { return #Name; }     \
  }

PF_DEFINE_ERROR(ZeroPolynomial);
PF_DEFINE_ERROR(DegenerateInput);
PF_DEFINE_ERROR(DegreeTooSmall);
PF_DEFINE_ERROR(NotRegular);
PF_DEFINE_ERROR(InternalRankError);
PF_DEFINE_ERROR(NoSolution);
PF_DEFINE_ERROR(NumericalFailure);
PF_DEFINE_ERROR(PreconditionError);
PF_DEFINE_ERROR(TraceDiverged);
PF_DEFINE_ERROR(NotClosed);
PF_DEFINE_ERROR(SingularDenominator);

#undef PF_DEFINE_ERROR

struct ParseError : Error
{
  ParseError(std::size_t pos, const std::string& msg)
    : Error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos)
  {}
  const char* kind() const noexcept override { return "ParseError"; }
  std::size_t position;
};

} // namespace pf

#endif // PF_ERRORS_HPP
