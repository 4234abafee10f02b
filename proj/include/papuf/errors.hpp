#pragma once

#include <stdexcept>
#include <string>

namespace papuf {

// Every error carries a short machine-readable kind so the CLI can emit
// `error: kind=<kind> message=...` lines.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct ParameterError : Error {
    explicit ParameterError(const std::string& m) : Error("parameter", m) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& m) : Error("shape", m) {}
};

struct NetlistError : Error {
    explicit NetlistError(const std::string& m) : Error("netlist", m) {}
};

struct PopulationError : Error {
    explicit PopulationError(const std::string& m) : Error("population", m) {}
};

struct AlignmentError : Error {
    explicit AlignmentError(const std::string& m) : Error("alignment", m) {}
};

struct DegenerateSeedError : Error {
    explicit DegenerateSeedError(const std::string& m) : Error("degenerate_seed", m) {}
};

struct CalibrationError : Error {
    explicit CalibrationError(const std::string& m) : Error("calibration", m) {}
};

struct InsufficientDataError : Error {
    explicit InsufficientDataError(const std::string& m) : Error("insufficient_data", m) {}
};

struct FormatError : Error {
    explicit FormatError(const std::string& m) : Error("format", m) {}
};

} // namespace papuf
