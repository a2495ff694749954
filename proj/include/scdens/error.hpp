#pragma once

#include <stdexcept>
#include <string>

namespace scdens {

// Exit-code classes used by the command-line front end.
enum class ErrorClass { Config = 2, Mismatch = 3, Numerical = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), cls_(cls), kind_(std::move(kind)) {}

    ErrorClass error_class() const noexcept { return cls_; }
    const std::string& kind() const noexcept { return kind_; }

private:
    ErrorClass cls_;
    std::string kind_;
};

[[noreturn]] inline void config_error(std::string kind, const std::string& what)
{
    throw Error(ErrorClass::Config, std::move(kind), what);
}

[[noreturn]] inline void mismatch_error(std::string kind, const std::string& what)
{
    throw Error(ErrorClass::Mismatch, std::move(kind), what);
}

[[noreturn]] inline void numerical_error(std::string kind, const std::string& what)
{
    throw Error(ErrorClass::Numerical, std::move(kind), what);
}

} // namespace scdens
