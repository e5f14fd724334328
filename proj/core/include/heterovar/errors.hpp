#pragma once

#include <stdexcept>
#include <string>

namespace heterovar {

//! Invalid configuration or input data. The CLI maps this to exit code 1.
class invalid_config : public std::runtime_error {
public:
    explicit invalid_config(const std::string& what) : std::runtime_error(what) {}
};

//! A bandwidth that leaves too few usable observations for a local fit.
class bandwidth_too_small : public invalid_config {
public:
    explicit bandwidth_too_small(const std::string& what) : invalid_config(what) {}
};

//! A numerical routine failed to reach its accuracy target. CLI exit code 2.
class tolerance_error : public std::runtime_error {
public:
    explicit tolerance_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace heterovar
