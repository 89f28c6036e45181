#pragma once

#include <stdexcept>
#include <string>

namespace duelknap {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Preference matrix validation
struct NotSkewComplement : Error { using Error::Error; };
struct BadDiagonal : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };

// Score / ordering queries
struct NoCondorcetWinner : Error { using Error::Error; };
struct OrderNotCertifying : Error { using Error::Error; };

// LP solver
struct Infeasible : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

// Environment
struct AlreadyStopped : Error { using Error::Error; };

// Policies
struct GammaOutOfRange : Error { using Error::Error; };

// Instance generators and files
struct EpsilonTooLarge : Error { using Error::Error; };
struct BadCsv : Error { using Error::Error; };
struct InconsistentPairCount : Error { using Error::Error; };
struct KMismatch : Error { using Error::Error; };
struct SchemaMismatch : Error { using Error::Error; };
struct ValidationFailure : Error { using Error::Error; };

// Harness
struct KindMismatch : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace duelknap
