#ifndef SBELL_ERRORS_HPP
#define SBELL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sbell {

// Exit codes used by the CLI: 0 success, 2 domain error, 3 truncation
// failure, 4 regime error.  Internal consistency failures map to 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 2;
};

class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 3;
};

class regime_error : public std::runtime_error {
public:
    explicit regime_error(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 4;
};

class internal_error : public std::runtime_error {
public:
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
    static constexpr int exit_code = 1;
};

} // namespace sbell

#endif
