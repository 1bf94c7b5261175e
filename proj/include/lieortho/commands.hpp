#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lieortho/descent.hpp"
#include "lieortho/liealg.hpp"
#include "lieortho/serialize.hpp"
#include "lieortho/types.hpp"

namespace lieortho {

/// Everything a command run depends on.  Identical configs give
/// byte-identical certificates apart from the timestamp field.
struct RunConfig {
  Family        family   = Family::su;
  int           n        = 2;
  double        tol      = 1e-8;
  std::uint64_t seed     = 0;
  int           max_iter = 10000;
  GotoStrategy  strategy = GotoStrategy::descent;
};

/// A JSON verification certificate plus the overall verdict.  The
/// certificate always carries the config echo, per-check verdicts with
/// their residuals, and a command-specific payload.
struct CommandResult {
  Json certificate;
  bool pass = false;
};

/// Builds the standard and orthogonal Cartan pair and verifies both plus
/// their mutual orthogonality.
CommandResult cmd_construct(const RunConfig& cfg);

/// Builds the Coxeter lift (su only), checks the fixed-point determinant,
/// the Cartan-in-bracket-image containment, and the regular strengthening.
CommandResult cmd_coxeter(const RunConfig& cfg);

/// Descends an element (given, or seeded random) into the orthogonal
/// complement of the standard Cartan; certifies convergence, the strictly
/// decreasing trace, and group membership of the conjugator.
CommandResult cmd_descend(const RunConfig& cfg,
                          const std::optional<Mat>& input = std::nullopt);

/// Factorizes an element (given, or seeded random) as x = [a, b] with a
/// regular, by the configured strategy; certifies the reconstruction,
/// regularity, and the orthogonality of x to the centralizer of a.
CommandResult cmd_factorize(const RunConfig& cfg,
                            const std::optional<Mat>& input = std::nullopt);

/// Convexity check of the diagonal projection of a conjugation orbit
/// against the permutation hull (su(n), n <= 5 only).
CommandResult cmd_kostant(const RunConfig& cfg, int samples = 200,
                          const std::optional<Mat>& input = std::nullopt);

/// Runs every applicable command for one (family, n) and aggregates the
/// results; section certificates are embedded without timestamps so the
/// whole document is reproducible.
CommandResult cmd_suite(const RunConfig& cfg);

/// Certificate emitted when a command dies on an exception.
Json error_certificate(const std::string& command, const std::string& type,
                       const std::string& message);

}  // namespace lieortho
