#pragma once

#include <stdexcept>
#include <string>

namespace manet {

/// Raised when a scenario, region, plan or CLI input violates one of its
/// documented invariants. The message names the offending field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// ORA recomputes the structure (route or CDS) at every snapshot; LORA keeps
/// the previously discovered structure alive until it stops being valid.
enum class Strategy { Ora, Lora };

inline const char* to_string(Strategy s) { return s == Strategy::Ora ? "ora" : "lora"; }

} // namespace manet
