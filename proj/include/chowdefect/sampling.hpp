#pragma once

// Reproducible sampling of linear forms. Every form is drawn from its own
// substream keyed by (seed, role, indices), so changing the number of points
// or the loop order never shifts any other sample.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chowdefect/gfpoly.hpp"

namespace chowdefect {

inline constexpr const char* kSubstreamAlgorithm = "splitmix64-keyed-v1";

std::uint64_t splitmix64_next(std::uint64_t& state);

/// Seed of retry attempt `attempt` (attempt 0 is the master seed itself).
std::uint64_t derive_attempt_seed(std::uint64_t master, int attempt);

/// Role letter plus index tuple, printed as e.g. "l_{0,3}".
struct FormLabel {
  std::string role;
  std::vector<std::int64_t> index;

  std::string text() const;
  static FormLabel parse(const std::string& text);
  bool operator==(const FormLabel&) const = default;
  auto operator<=>(const FormLabel&) const = default;
};

struct RecordedForm {
  FormLabel label;
  std::vector<Coeff> coeffs;
};

/// Supplies the linear forms a builder asks for. Coordinates in
/// [zero_begin, zero_end) are forced to zero (restricted points).
class FormSource {
 public:
  virtual ~FormSource() = default;
  virtual LinearForm draw(const FormLabel& label, int nvars, int zero_begin, int zero_end) = 0;
};

/// Uniform coefficients in {0,...,P-1}; an all-zero draw is redrawn from the
/// same substream and counted.
class KeyedSampler final : public FormSource {
 public:
  KeyedSampler(std::uint64_t seed, const PrimeField& field) : seed_(seed), field_(field) {}
  LinearForm draw(const FormLabel& label, int nvars, int zero_begin, int zero_end) override;
  std::int64_t resamples() const { return resamples_; }

 private:
  std::uint64_t seed_;
  PrimeField field_;
  std::int64_t resamples_ = 0;
};

/// Hands back previously recorded forms; used to rebuild from a certificate.
class ReplaySource final : public FormSource {
 public:
  ReplaySource(const std::vector<RecordedForm>& forms, const PrimeField& field);
  LinearForm draw(const FormLabel& label, int nvars, int zero_begin, int zero_end) override;
  /// Throws DimensionMismatch unless every recorded form was requested.
  void check_all_used() const;

 private:
  PrimeField field_;
  std::map<FormLabel, std::vector<Coeff>> forms_;
  std::size_t used_ = 0;
};

}  // namespace chowdefect
