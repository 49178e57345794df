#ifndef COSTCAP_ERRORS_HPP
#define COSTCAP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace costcap {

// Common base so callers (and the CLI exit-code mapping) can recover the
// error family by name without a catch cascade per type.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define COSTCAP_DEFINE_ERROR(NAME)                                   \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

COSTCAP_DEFINE_ERROR(InfeasibleCost);
COSTCAP_DEFINE_ERROR(NonConvergence);
COSTCAP_DEFINE_ERROR(UndefinedDensity);
COSTCAP_DEFINE_ERROR(BadPmf);
COSTCAP_DEFINE_ERROR(StepMismatch);
COSTCAP_DEFINE_ERROR(BudgetExceeded);
COSTCAP_DEFINE_ERROR(InfeasibleType);
COSTCAP_DEFINE_ERROR(InfeasibleDistortion);
COSTCAP_DEFINE_ERROR(NoPositiveSolution);
COSTCAP_DEFINE_ERROR(DomainError);
COSTCAP_DEFINE_ERROR(SeriesBudget);

#undef COSTCAP_DEFINE_ERROR

}  // namespace costcap

#endif
