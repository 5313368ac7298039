#include "chowdefect/sampling.hpp"

#include <charconv>

#include "chowdefect/error.hpp"

namespace chowdefect {

std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
  std::uint64_t s = h ^ v;
  return splitmix64_next(s);
}

std::uint64_t substream_state(std::uint64_t seed, const FormLabel& label) {
  std::uint64_t h = absorb(0x6368'6f77'6465'6674ULL, seed);
  for (unsigned char c : label.role) h = absorb(h, c);
  h = absorb(h, label.index.size());
  for (auto i : label.index) h = absorb(h, static_cast<std::uint64_t>(i));
  return h;
}

std::uint32_t uniform_below(std::uint64_t& state, std::uint32_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = splitmix64_next(state);
    if (x < limit) return static_cast<std::uint32_t>(x % bound);
  }
}

void check_zero_range(int nvars, int zero_begin, int zero_end) {
  require(nvars >= 1, ErrorCode::InvalidArgument, "form needs at least one variable");
  require(0 <= zero_begin && zero_begin <= zero_end && zero_end <= nvars, ErrorCode::InvalidArgument,
          "bad zero block");
  require(zero_end - zero_begin < nvars, ErrorCode::InvalidArgument, "zero block covers every variable");
}

}  // namespace

std::uint64_t derive_attempt_seed(std::uint64_t master, int attempt) {
  if (attempt == 0) return master;
  std::uint64_t s = master ^ (0xa5a5'0000'0000'0000ULL + static_cast<std::uint64_t>(attempt));
  splitmix64_next(s);
  return splitmix64_next(s);
}

std::string FormLabel::text() const {
  std::string out = role + "_{";
  for (std::size_t q = 0; q < index.size(); ++q) {
    if (q) out += ',';
    out += std::to_string(index[q]);
  }
  return out + "}";
}

FormLabel FormLabel::parse(const std::string& text) {
  const auto us = text.find("_{");
  require(us != std::string::npos && us > 0 && text.size() > us + 2 && text.back() == '}', ErrorCode::ParseError,
          "bad form label '" + text + "'");
  FormLabel label;
  label.role = text.substr(0, us);
  const char* p = text.data() + us + 2;
  const char* end = text.data() + text.size() - 1;
  while (true) {
    std::int64_t v = 0;
    auto [next, ec] = std::from_chars(p, end, v);
    require(ec == std::errc() && v >= 0, ErrorCode::ParseError, "bad index in form label '" + text + "'");
    label.index.push_back(v);
    if (next == end) break;
    require(*next == ',', ErrorCode::ParseError, "bad separator in form label '" + text + "'");
    p = next + 1;
  }
  return label;
}

LinearForm KeyedSampler::draw(const FormLabel& label, int nvars, int zero_begin, int zero_end) {
  check_zero_range(nvars, zero_begin, zero_end);
  std::uint64_t state = substream_state(seed_, label);
  std::vector<Coeff> c(static_cast<std::size_t>(nvars), 0);
  for (;;) {
    bool nonzero = false;
    for (int v = 0; v < nvars; ++v) {
      if (v >= zero_begin && v < zero_end) continue;
      c[static_cast<std::size_t>(v)] = static_cast<Coeff>(uniform_below(state, field_.modulus()));
      nonzero |= c[static_cast<std::size_t>(v)] != 0;
    }
    if (nonzero) break;
    ++resamples_;
  }
  return LinearForm(std::move(c), field_);
}

ReplaySource::ReplaySource(const std::vector<RecordedForm>& forms, const PrimeField& field) : field_(field) {
  for (const auto& f : forms) {
    for (Coeff c : f.coeffs)
      require(c < field.modulus(), ErrorCode::InvariantViolation,
              "coefficient of " + f.label.text() + " is not below the prime");
    require(forms_.emplace(f.label, f.coeffs).second, ErrorCode::DimensionMismatch,
            "form " + f.label.text() + " is recorded twice");
  }
}

LinearForm ReplaySource::draw(const FormLabel& label, int nvars, int zero_begin, int zero_end) {
  check_zero_range(nvars, zero_begin, zero_end);
  auto it = forms_.find(label);
  require(it != forms_.end(), ErrorCode::DimensionMismatch, "certificate lacks form " + label.text());
  const auto& c = it->second;
  require(static_cast<int>(c.size()) == nvars, ErrorCode::DimensionMismatch,
          "form " + label.text() + " has " + std::to_string(c.size()) + " coefficients, expected " +
              std::to_string(nvars));
  for (int v = zero_begin; v < zero_end; ++v)
    require(c[static_cast<std::size_t>(v)] == 0, ErrorCode::DimensionMismatch,
            "form " + label.text() + " must vanish on its restricted block");
  ++used_;
  return LinearForm(c, field_);
}

void ReplaySource::check_all_used() const {
  require(used_ == forms_.size(), ErrorCode::DimensionMismatch,
          "certificate records " + std::to_string(forms_.size()) + " forms but the point plan uses " +
              std::to_string(used_));
}

}  // namespace chowdefect
