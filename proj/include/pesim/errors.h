#ifndef PESIM_ERRORS_H
#define PESIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace pesim {

/// A requested state or table does not fit the configured memory budget.
class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A persisted file (CSV, manifest, statevector dump) is malformed.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace pesim

#endif
