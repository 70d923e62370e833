#pragma once

#include <stdexcept>
#include <string>

namespace lfpdc
{

// Raised when an input sits on a pole, a branch point or outside the
// region where a formula is defined.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Raised when a model violates one of its invariants. `path` names the
// offending field (e.g. "media.resonances[0].gamma").
class ValidationError : public std::invalid_argument
{
public:
    ValidationError(std::string path, const std::string& what)
        : std::invalid_argument(path + ": " + what), path_(std::move(path))
    {
    }

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace lfpdc
