#ifndef CPVDW_ERRORS_HPP
#define CPVDW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cpvdw {

// Base for all library errors. name() is the stable identifier that is
// carried through the C API and into CLI diagnostics.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string &what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string &name() const noexcept { return name_; }

private:
  std::string name_;
};

#define CPVDW_ERROR_CLASS(ClassName)                                           \
  class ClassName : public Error {                                            \
  public:                                                                      \
    explicit ClassName(const std::string &what) : Error(#ClassName, what) {}   \
  }

CPVDW_ERROR_CLASS(InvalidArgument);
CPVDW_ERROR_CLASS(ConfigError);
CPVDW_ERROR_CLASS(CoincidentPoints);
CPVDW_ERROR_CLASS(DenominatorViolation);
CPVDW_ERROR_CLASS(DivergentSeries);
CPVDW_ERROR_CLASS(UnsupportedOrder);
CPVDW_ERROR_CLASS(GeometryViolation);
CPVDW_ERROR_CLASS(NonFinite);
CPVDW_ERROR_CLASS(ConvergenceGateFailed);
CPVDW_ERROR_CLASS(IoError);

#undef CPVDW_ERROR_CLASS

} // namespace cpvdw

#endif
