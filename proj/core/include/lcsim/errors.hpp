#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lcsim {

struct Error : std::runtime_error {
    explicit Error(const std::string& what, std::string kind = "Error")
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
};

#define LCSIM_DEFINE_ERROR(NAME)                      \
    struct NAME : Error {                             \
        explicit NAME(const std::string& what)        \
            : Error(what, #NAME) {}                   \
    }

LCSIM_DEFINE_ERROR(UnknownParent);
LCSIM_DEFINE_ERROR(UnknownBlock);
LCSIM_DEFINE_ERROR(NonMonotoneTime);
LCSIM_DEFINE_ERROR(InvalidRate);
LCSIM_DEFINE_ERROR(InvalidArgument);
LCSIM_DEFINE_ERROR(PopulationOverflow);
LCSIM_DEFINE_ERROR(StrategyViolation);
LCSIM_DEFINE_ERROR(MalformedSchedule);
LCSIM_DEFINE_ERROR(TargetNeverMined);
LCSIM_DEFINE_ERROR(ModelMismatch);
LCSIM_DEFINE_ERROR(OutOfRegime);
LCSIM_DEFINE_ERROR(SearchBudgetExceeded);
LCSIM_DEFINE_ERROR(IndexOutOfRange);

#undef LCSIM_DEFINE_ERROR

}  // namespace lcsim
