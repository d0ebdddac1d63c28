#pragma once

#include <ostream>
#include <span>
#include <string>

namespace rulelens::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Runs one command line (without the program name).
///
///   reason  (--fixture ID | --facts F --rules R) [--dump base|inferred|rules]
///   explain (--fixture ID | --facts F --rules R) --type T --statement "s p o"
///           [--against SUBJ] [--alt-facts F] [--desired V] [--labels J]
///   fixtures list
///   serve --port N [--host H] [--fixtures-dir D]
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rulelens::cli
