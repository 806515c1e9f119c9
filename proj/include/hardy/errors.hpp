#pragma once

#include <stdexcept>
#include <string>

namespace hardy {

class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class range_error : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class degenerate_input_error : public argument_error {
public:
    using argument_error::argument_error;
};

class parameter_error : public argument_error {
public:
    using argument_error::argument_error;
};

class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class conditioning_error : public numeric_error {
public:
    conditioning_error(const std::string& what, std::size_t first, std::size_t second)
        : numeric_error(what), first_(first), second_(second) {}
    std::size_t first() const { return first_; }
    std::size_t second() const { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

class diagnostic_error : public numeric_error {
public:
    using numeric_error::numeric_error;
};

}  // namespace hardy
