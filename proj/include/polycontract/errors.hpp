#pragma once

#include <stdexcept>
#include <string>

namespace polycontract {

/// Malformed input: bad documents, broken certificates, out-of-range
/// arguments. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace polycontract
